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

#ifndef TEMPNET_TEMPORAL_GRAPH_HPP
#define TEMPNET_TEMPORAL_GRAPH_HPP

#include <Eigen/Sparse>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tempnet {

// Directed-rate convention used throughout: an edge record (from=j, to=i)
// carries the rate beta_{ij} at which the process spreads from node j into
// node i.  Row i of the state matrix therefore sums h*beta over the in-edges
// of i.  Node ids are 0-based in memory and 1-based in scenario files and in
// diagnostics.

enum class HorizonMode { Finite, Infinite };

struct GlobalParams {
    int n = 0;
    int K = 1;
    double h = 0.0;                       // step length, > 0
    double alpha = 1.0;                   // discount, (0,1]
    double delta_bar = 0.0;               // recovery ceiling, h*delta_bar < 1
    std::vector<double> budget_per_step;  // length K, each >= 0
    double budget_total = 0.0;
    HorizonMode horizon_mode = HorizonMode::Finite;
};

struct NodeStepParams {
    double delta_lo = 0.0;  // natural (unboosted) recovery rate
    double delta_hi = 0.0;  // max achievable recovery rate, < delta_bar
    double w_rec = 1.0;     // cost weight of boosting recovery
};

struct NodeParams {
    double cost = 0.0;   // c_i, time-invariant
    double x_hat = 0.0;  // outbreak probability at step 1
    std::vector<NodeStepParams> per_step;  // length K
};

struct EdgeStepParams {
    double beta_lo = 0.0;  // floor reachable with resources
    double beta_hi = 0.0;  // raw (pre-allocation) spread rate at this step
    double w_spread = 1.0;
};

struct Edge {
    int from = 0;  // source j (0-based)
    int to = 0;    // target i (0-based)
    std::vector<std::optional<EdgeStepParams>> per_step;  // length K; nullopt = absent
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// rule names the violated invariant; k/i/j are 1-based for messages, -1 if n/a
struct ValidationError : std::runtime_error {
    std::string rule;
    int k = -1, i = -1, j = -1;
    ValidationError(std::string rule_, std::string msg, int k_ = -1, int i_ = -1, int j_ = -1)
        : std::runtime_error(std::move(msg)), rule(std::move(rule_)), k(k_), i(i_), j(j_) {}
};

struct ValidateOptions {
    // h*sum_j beta_hi >= 1 breaks well-posedness of the nonlinear model but not
    // the risk bound; the CLI exposes an override for it.
    bool allow_row_sum_violation = false;
};

struct TemporalNetwork {
    GlobalParams globals;
    std::vector<NodeParams> nodes;  // size n
    std::vector<Edge> edges;

    // Derived adjacency, filled by finalize(): per step k (0-based), edge ids
    // present, and per node the in-/out-edge id lists.
    std::vector<std::vector<int>> edges_at;
    std::vector<std::vector<std::vector<int>>> in_edges_at;   // [k][to]
    std::vector<std::vector<std::vector<int>>> out_edges_at;  // [k][from]

    int n() const { return globals.n; }
    int K() const { return globals.K; }

    Eigen::VectorXd cost_vector() const;
    Eigen::VectorXd x_hat_vector() const;

    void finalize();  // builds adjacency; called by validate()
};

// Effective rates after allocation, indexed [k][edge_id] / [k][node].
// beta entries for absent edges are NaN and ignored.
struct RateSchedule {
    std::vector<std::vector<double>> beta;
    std::vector<std::vector<double>> delta;
};

void validate(TemporalNetwork& net, const ValidateOptions& opts = {});

// Raw rates: beta = beta_hi, delta = delta_lo (no resources applied).
RateSchedule nominal_rates(const TemporalNetwork& net);

// Checks every rate against its per-step box; throws ValidationError.
void validate_rates(const TemporalNetwork& net, const RateSchedule& rates);

TemporalNetwork load_scenario(const std::filesystem::path& path, const ValidateOptions& opts = {});
void save_scenario(const TemporalNetwork& net, const std::filesystem::path& path);
std::string scenario_to_json(const TemporalNetwork& net);
TemporalNetwork scenario_from_json(const std::string& text, const ValidateOptions& opts = {});

// A^k: a_ii = 1 - h*delta_i^k, a_ij = h*beta_ij^k on in-edges, 0 elsewhere.
Eigen::SparseMatrix<double> build_state_matrix(const TemporalNetwork& net, int k,
                                               const RateSchedule& rates);

// One step's worth of data, detached from the horizon; used for averaging.
struct Snapshot {
    int n = 0;
    std::vector<NodeStepParams> nodes;
    struct SnapEdge {
        int from, to;
        EdgeStepParams params;
    };
    std::vector<SnapEdge> edges;
};

Snapshot snapshot_of(const TemporalNetwork& net, int k);

// Convex combination lambda*s1 + (1-lambda)*s2 over the edge union; an edge
// missing on one side contributes zero rates, and the averaged beta_lo is
// floored to keep the strict-positivity invariant.
Snapshot average_snapshot(const Snapshot& s1, const Snapshot& s2, double lambda,
                          double beta_lo_floor = 1e-12);

}  // namespace tempnet

#endif  // TEMPNET_TEMPORAL_GRAPH_HPP
