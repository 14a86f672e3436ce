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

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "skd/dynamics.hpp"
#include "skd/scenario.hpp"

namespace skd {

/// Parameters of the simplified car policy the adversary reasons about.
/// The multiplier is known to the planner; the reaction delay (in steps)
/// and brake strength scale absorb the behaviour it does not model.
struct CarPolicyParams {
  double multiplier = 1.0;
  int reaction_delay = 0;
  double brake_scale = 1.0;
};

/// Full joint state of the adversary problem, one per particle.
struct JointState {
  AdvState ped;
  CarState car;
  CarPolicyParams policy;
  int trigger_steps = 0;  // consecutive steps the braking trigger has held
  int t = 0;              // step index; ped position is the trajectory point t
  bool collided = false;
  bool reached_goal = false;
};

struct RewardWeights {
  double collision = 1000.0;
  double goal = 1000.0;
  double deviation = 10.0;
  double step = 1.0;
};

/// Collision reward or the negative distance to phi at (clamped) index t,
/// minus the step cost.
double kamikaze_reward(const JointState& s, bool collided, const Trajectory& phi, int t,
                       const RewardWeights& w);

double safe_reward(const JointState& s, bool collided, bool reached_goal, const RewardWeights& w);

/// Generative model of the adversary POMDP: pedestrian dynamics, the
/// adversary's predictive car model, Gaussian distance observations and a
/// pluggable reward. The six pedestrian actions form the action set.
class PomdpModel {
 public:
  using RewardFn = std::function<double(const JointState& next, AdvAction action)>;
  // Return-to-go estimate for a non-terminal state where search is cut off.
  using LeafValueFn = std::function<double(const JointState& s)>;

  struct Settings {
    ScenarioConfig scenario;
    double kappa = 0.0;            // stopping distance used by the car policy
    double vel_noise_frac = 0.05;  // velocity jitter in the predictive car model
    double acc_noise_frac = 0.0;   // braking jitter in the predictive car model
    double obs_sigma = 1.0;
    double gamma = 0.95;
    bool terminal_on_goal = false;
  };

  PomdpModel(Settings settings, RewardFn reward, LeafValueFn leaf_value = {});

  const Settings& settings() const { return settings_; }
  const ScenarioConfig& scenario() const { return settings_.scenario; }
  double discount() const { return settings_.gamma; }

  /// Samples s' ~ T(s, a). Pedestrian and car factors are advanced
  /// independently from the current state.
  JointState transition(const JointState& s, AdvAction a, Rng& rng) const;
  double sample_observation(const JointState& next, Rng& rng) const;
  /// log Z(o | s') up to an additive constant shared by all states.
  double observation_log_likelihood(double o, const JointState& next) const;
  double reward(const JointState& next, AdvAction a) const { return reward_(next, a); }
  /// Zero unless a leaf estimate was supplied.
  double leaf_value(const JointState& s) const { return leaf_value_ ? leaf_value_(s) : 0.0; }
  const LeafValueFn& leaf_value_fn() const { return leaf_value_; }
  bool is_terminal(const JointState& s) const {
    return s.collided || (settings_.terminal_on_goal && s.reached_goal);
  }

 private:
  Settings settings_;
  RewardFn reward_;
  LeafValueFn leaf_value_;
};

struct Particle {
  JointState state;
  double weight = 0.0;
};

class BeliefCollapse : public std::runtime_error {
 public:
  BeliefCollapse() : std::runtime_error("belief collapse") {}
};

/// Weighted particle set; weights are nonnegative and normalized.
class Belief {
 public:
  Belief() = default;
  explicit Belief(std::vector<Particle> particles);

  static Belief uniform(std::vector<JointState> states);

  const std::vector<Particle>& particles() const { return particles_; }
  std::size_t size() const { return particles_.size(); }
  double effective_sample_size() const;
  /// Index drawn in proportion to weight.
  std::size_t sample_index(Rng& rng) const;
  const JointState& sample(Rng& rng) const { return particles_[sample_index(rng)].state; }

 private:
  std::vector<Particle> particles_;
  std::vector<double> cumulative_;
};

/// Propagate, reweight by Z(o | s', a), normalize, and resample
/// systematically when the effective sample size drops below half the count.
/// Throws BeliefCollapse when no particle explains the observation.
Belief update_belief(const Belief& b, AdvAction a, double o, const PomdpModel& model, Rng& rng);

/// Prior over the residual car-policy parameters.
struct PolicyPrior {
  int max_reaction_delay = 2;  // uniform on {0, ..., max}
  double brake_scale_lo = 0.9;
  double brake_scale_hi = 1.1;

  static PolicyPrior exact() { return {0, 1.0, 1.0}; }
};

/// Prior particles for a scenario: car start jittered along the heading,
/// v = v_max, policy residuals drawn from the prior.
Belief initial_belief(const ScenarioConfig& cfg, double multiplier, std::size_t count, Rng& rng,
                      const PolicyPrior& prior = {});

}  // namespace skd
