// Copyright 2026 The SKD Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "skd/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace skd {
namespace {

constexpr std::int32_t kNone = -1;

struct ActionNode {
  int visits = 0;
  double value_sum = 0.0;
  // (observation bin, child belief node) pairs; small, scanned linearly.
  std::vector<std::pair<std::int64_t, std::int32_t>> children;
};

struct BeliefNode {
  int visits = 0;
  std::array<ActionNode, kNumActions> actions;
};

class SearchTree {
 public:
  SearchTree(const PomdpModel& model, const PlannerConfig& cfg, Rng& rng)
      : model_(model), cfg_(cfg), rng_(rng) {
    nodes_.reserve(static_cast<std::size_t>(cfg.budget) + 1);
    nodes_.emplace_back();
  }

  void simulate(const JointState& root_state) { descend(0, root_state, 0); }

  const BeliefNode& root() const { return nodes_[0]; }

 private:
  double descend(std::int32_t node_id, const JointState& s, int depth) {
    if (depth >= cfg_.horizon || model_.is_terminal(s)) return 0.0;

    const std::size_t ai = select_action(node_id);
    const AdvAction a = kAllActions[ai];
    const JointState next = model_.transition(s, a, rng_);
    const double r = model_.reward(next, a);

    double future = 0.0;
    if (!model_.is_terminal(next) && depth + 1 >= cfg_.horizon) {
      future = model_.leaf_value(next);
    } else if (!model_.is_terminal(next)) {
      const double o = model_.sample_observation(next, rng_);
      const auto bin = static_cast<std::int64_t>(std::floor(o / cfg_.obs_bin_width));
      std::int32_t child = find_child(node_id, ai, bin);
      if (child == kNone) {
        child = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
        nodes_[node_id].actions[ai].children.emplace_back(bin, child);
        future = rollout(next, depth + 1);
        ++nodes_[child].visits;
      } else {
        future = descend(child, next, depth + 1);
      }
    }

    const double total = r + model_.discount() * future;
    BeliefNode& node = nodes_[node_id];
    ++node.visits;
    ++node.actions[ai].visits;
    node.actions[ai].value_sum += total;
    return total;
  }

  std::size_t select_action(std::int32_t node_id) const {
    const BeliefNode& node = nodes_[node_id];
    for (std::size_t i = 0; i < kNumActions; ++i) {
      if (node.actions[i].visits == 0) return i;
    }
    const double log_n = std::log(static_cast<double>(node.visits));
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < kNumActions; ++i) {
      const ActionNode& an = node.actions[i];
      const double score = an.value_sum / an.visits +
                           cfg_.exploration * std::sqrt(log_n / an.visits);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    return best;
  }

  std::int32_t find_child(std::int32_t node_id, std::size_t ai, std::int64_t bin) const {
    for (const auto& [b, id] : nodes_[node_id].actions[ai].children) {
      if (b == bin) return id;
    }
    return kNone;
  }

  double rollout(JointState s, int depth) {
    std::uniform_int_distribution<std::size_t> pick(0, kNumActions - 1);
    double total = 0.0;
    double discount = 1.0;
    const int stop = cfg_.rollout_depth < 0 ? cfg_.horizon
                                            : std::min(cfg_.horizon, depth + cfg_.rollout_depth);
    for (; depth < stop && !model_.is_terminal(s); ++depth) {
      const AdvAction a = kAllActions[pick(rng_)];
      s = model_.transition(s, a, rng_);
      total += discount * model_.reward(s, a);
      discount *= model_.discount();
    }
    if (!model_.is_terminal(s)) total += discount * model_.leaf_value(s);
    return total;
  }

  const PomdpModel& model_;
  const PlannerConfig& cfg_;
  Rng& rng_;
  std::vector<BeliefNode> nodes_;
};

}  // namespace

PlanResult plan(const Belief& belief, const PomdpModel& model, const PlannerConfig& cfg, Rng& rng) {
  if (belief.size() == 0) throw std::invalid_argument("empty belief");
  if (cfg.horizon < 1) throw std::invalid_argument("planning horizon must be at least 1");

  SearchTree tree(model, cfg, rng);
  const int budget = std::max<int>(cfg.budget, static_cast<int>(kNumActions));
  for (int i = 0; i < budget; ++i) tree.simulate(belief.sample(rng));

  PlanResult result;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kNumActions; ++i) {
    const ActionNode& an = tree.root().actions[i];
    result.visits[i] = an.visits;
    result.q[i] = an.visits > 0 ? an.value_sum / an.visits : -std::numeric_limits<double>::infinity();
    if (an.visits > 0 && result.q[i] > best) {
      best = result.q[i];
      result.action = kAllActions[i];
    }
  }
  return result;
}

}  // namespace skd
