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

#ifndef TEMPNET_ECP_BUILDER_HPP
#define TEMPNET_ECP_BUILDER_HPP

#include "tempnet/conic.hpp"
#include "tempnet/risk_bound.hpp"
#include "tempnet/solver.hpp"
#include "tempnet/temporal_graph.hpp"

namespace tempnet {

// Log-domain compilation of the two allocation problems.  Writing y = log p,
// the backward inequality for node j at step k divides through by p_j^k and
// becomes a log-sum-exp constraint whose terms are affine in (y, u, v):
//
//   exp(log c_j - y_j^k)
// + exp(y_j^{k+1} + log(alpha (1 - h D)) - y_j^k)                      D = delta_bar
// + exp(y_j^{k+1} + log(alpha h (D - delta_lo_j^k)) - V_j^k - y_j^k)
// + sum over out-edges (m <- j) of
//   exp(y_m^{k+1} + log(alpha h beta_hi_mj^k) - U_mj^k - y_j^k)  <=  1
//
// where U and V are the accumulated log reductions bought so far (cumulative
// box mode) or the step's own purchase (per-step mode).  Each multi-term
// constraint becomes one exponential cone per term plus a simplex row; a
// single-term constraint degenerates to a linear row.

enum class ProblemKind { RiskMin, ResourceMin };  // Problem 1 / Problem 2
enum class BoxMode { Cumulative, PerStep };

struct BuildError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BuildOptions {
    BoxMode box_mode = BoxMode::Cumulative;
    bool tie_node_resources = false;
    // Budget rows: Problem 1 includes them unless dropped here (reweighted-l1
    // --relax-budgets); Problem 2 omits them unless forced on.
    bool drop_budget_rows = false;
    bool force_budget_rows = false;
    // Reweighted-l1 hooks; weights are indexed like VariableBook::resources.
    const std::vector<double>* resource_weights = nullptr;
    double support_bound = -1.0;  // Problem-1 variant: weighted row <= bound
};

// Identifies one resource increment variable.
struct ResourceRef {
    bool is_edge = false;
    int k = 0;        // 0-based step
    int edge_id = -1; // into TemporalNetwork::edges, when is_edge
    int node = -1;    // 0-based, when !is_edge
    int var = -1;     // column in the conic program
};

struct VariableBook {
    int nvars = 0;
    int t_var = -1;                      // epigraph scalar (Problem 1)
    std::vector<std::vector<int>> y;     // [k][i] -> var or -1 (pinned p=0)
    std::vector<std::vector<int>> u;     // [k][edge_id] -> var or -1
    std::vector<std::vector<int>> v;     // [k][i] -> var or -1
    std::vector<ResourceRef> resources;  // all active u/v increments, build order
    int first_slack = -1;                // slack variables occupy [first_slack, nvars)
};

struct BuildResult {
    ConicProgram program;
    VariableBook book;
};

BuildResult build_problem1(const TemporalNetwork& net, const BuildOptions& opts = {});
BuildResult build_problem2(const TemporalNetwork& net, double gamma,
                           const BuildOptions& opts = {});

struct AllocationResult {
    SolveStatus status = SolveStatus::IterationLimit;
    double objective = 0.0;  // solver objective (log-domain for Problem 1)
    std::vector<std::vector<double>> u_amount;  // [k][edge_id], 0 where inactive
    std::vector<std::vector<double>> v_amount;  // [k][node]
    RateSchedule rates;                         // effective rates
    RiskCertificate certificate;                // p^k = exp(y^k), pinned -> 0
    CertificateReport verification;
    double max_risk = 0.0;
    double total_risk = 0.0;
    std::vector<double> budget_used;  // per step
    double budget_used_total = 0.0;
    Residuals residuals;
    int iterations = 0;
};

// Exponentiates y, accumulates resources into effective rates (clamped to
// their boxes at 1e-9), and verifies the recovered certificate.
AllocationResult recover(const Solution& sol, const VariableBook& book,
                         const TemporalNetwork& net, const BuildOptions& opts = {});

// Strictly feasible-ish point for tests: u = v = 0, p = tight certificate
// (boundary of the log-sum-exp rows), slacks set to match.
Eigen::VectorXd feasible_point(const TemporalNetwork& net, const VariableBook& book,
                               const ConicProgram& prog);

}  // namespace tempnet

#endif  // TEMPNET_ECP_BUILDER_HPP
