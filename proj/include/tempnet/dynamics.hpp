// Copyright 2026 The tempnet authors
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

#ifndef TEMPNET_DYNAMICS_HPP
#define TEMPNET_DYNAMICS_HPP

#include <cstdint>
#include <iosfwd>

#include "tempnet/temporal_graph.hpp"

namespace tempnet {

enum class TrajectoryKind { Nonlinear, Linear, StochasticSample };

// states holds x^1 .. x^{K+1}
struct Trajectory {
    TrajectoryKind kind = TrajectoryKind::Nonlinear;
    std::vector<Eigen::VectorXd> states;
};

// Stage costs are alpha^{k-1} * C x^k for k = 1..K (step 1 undiscounted).
struct CostReport {
    double total = 0.0;
    std::vector<double> per_step;
};

// x_i' = x_i + h(1-x_i) * sum_j beta_ij x_j - h delta_i x_i
Eigen::VectorXd step_nonlinear(const Eigen::VectorXd& x, const TemporalNetwork& net, int k,
                               const RateSchedule& rates);

Eigen::VectorXd step_linear(const Eigen::VectorXd& x, const Eigen::SparseMatrix<double>& A);

// Stochastic kind: synchronous per-step update from binary states; an infected
// node recovers w.p. h*delta_i^k, a susceptible node is infected by each
// currently infected in-neighbor j independently w.p. h*beta_ij^k.  A node
// cannot be reinfected or recover-and-reinfect within one step.
Trajectory simulate(const TemporalNetwork& net, const RateSchedule& rates,
                    const Eigen::VectorXd& x1, TrajectoryKind kind, std::uint64_t seed = 0);

CostReport trajectory_cost(const Trajectory& traj, const Eigen::VectorXd& cost, double alpha);

struct MonteCarloSummary {
    int runs = 0;
    std::uint64_t seed = 0;
    double mean_cost = 0.0;
    double stderr_mean = 0.0;
};

// Runs stochastic samples with per-run seeds derived from (seed, run index).
// When sample_initial is true, X_i^1 ~ Bernoulli(x1_i) independently per run;
// otherwise x1 must be binary and is used as-is.
MonteCarloSummary monte_carlo(const TemporalNetwork& net, const RateSchedule& rates,
                              const Eigen::VectorXd& x1, int runs, std::uint64_t seed,
                              bool sample_initial = true);

// Per-run mean infection indicator at a given step (1-based), for consistency
// checks against the mean-field prediction.
Eigen::VectorXd monte_carlo_state_mean(const TemporalNetwork& net, const RateSchedule& rates,
                                       const Eigen::VectorXd& x1, int step, int runs,
                                       std::uint64_t seed, bool sample_initial = true);

// CSV columns: step,node,value (nodes 1-based).
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

}  // namespace tempnet

#endif  // TEMPNET_DYNAMICS_HPP
