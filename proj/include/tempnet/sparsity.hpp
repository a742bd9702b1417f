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

#ifndef TEMPNET_SPARSITY_HPP
#define TEMPNET_SPARSITY_HPP

#include "tempnet/ecp_builder.hpp"

namespace tempnet {

// Iterative reweighting: iteration q re-solves with weights 1/(value_{q-1}+eps)
// on every resource increment, approximating support-size minimization.  No
// convergence or global-optimality guarantee; in practice the support shrinks
// or stalls within a few iterations.
struct ReweightSettings {
    double epsilon = 1e-4;
    int max_iters = 10;             // q_max
    double support_tol = 1e-6;      // "nonzero" threshold for support counts
    ProblemKind problem = ProblemKind::ResourceMin;
    double gamma = 0.0;             // Problem-2 variant: risk bound
    double support_bound = -1.0;    // Problem-1 variant: phi^q <= M
    bool relax_budgets = false;     // drop budget rows on reweighted iterations
    BuildOptions build;             // box mode, ties, ... (budget flags managed here)
    SolverSettings solver;
};

struct ReweightIterate {
    int q = 0;
    int support_size = 0;
    double objective = 0.0;
    double max_risk = 0.0;
    Residuals residuals;
    SolveStatus status = SolveStatus::IterationLimit;
};

struct ReweightResult {
    AllocationResult final;
    std::vector<ReweightIterate> trace;
    bool converged = false;  // support set unchanged between the last two solves
    std::string stop_reason;
};

struct SparsifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ReweightResult reweighted_l1(const TemporalNetwork& net, const ReweightSettings& settings);

}  // namespace tempnet

#endif  // TEMPNET_SPARSITY_HPP
