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

#include "tempnet/temporal_graph.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tempnet {

using nlohmann::ordered_json;

Eigen::VectorXd TemporalNetwork::cost_vector() const {
    Eigen::VectorXd c(n());
    for (int i = 0; i < n(); ++i) c[i] = nodes[i].cost;
    return c;
}

Eigen::VectorXd TemporalNetwork::x_hat_vector() const {
    Eigen::VectorXd x(n());
    for (int i = 0; i < n(); ++i) x[i] = nodes[i].x_hat;
    return x;
}

void TemporalNetwork::finalize() {
    const int N = n(), steps = K();
    edges_at.assign(steps, {});
    in_edges_at.assign(steps, std::vector<std::vector<int>>(N));
    out_edges_at.assign(steps, std::vector<std::vector<int>>(N));
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        for (int k = 0; k < steps; ++k) {
            if (!edges[e].per_step[k]) continue;
            edges_at[k].push_back(e);
            in_edges_at[k][edges[e].to].push_back(e);
            out_edges_at[k][edges[e].from].push_back(e);
        }
    }
}

namespace {

bool finite_pos(double v) { return std::isfinite(v) && v > 0.0; }

[[noreturn]] void fail(const std::string& rule, const std::string& msg, int k = -1, int i = -1,
                       int j = -1) {
    std::ostringstream os;
    os << "validation failed [" << rule << "]";
    if (k >= 0) os << " at step k=" << k;
    if (i >= 0) os << " node i=" << i;
    if (j >= 0) os << " node j=" << j;
    os << ": " << msg;
    throw ValidationError(rule, os.str(), k, i, j);
}

}  // namespace

void validate(TemporalNetwork& net, const ValidateOptions& opts) {
    const GlobalParams& g = net.globals;
    if (g.n < 1) fail("node_count", "n must be >= 1");
    if (g.K < 1) fail("horizon", "K must be >= 1");
    if (!finite_pos(g.h)) fail("step_length", "h must be > 0");
    if (!(g.alpha > 0.0 && g.alpha <= 1.0)) fail("alpha_range", "alpha must lie in (0,1]");
    if (!finite_pos(g.delta_bar)) fail("delta_bar", "delta_bar must be > 0");
    if (!(g.h * g.delta_bar < 1.0))
        fail("h_delta_bar", "h*delta_bar must be < 1 (got " + std::to_string(g.h * g.delta_bar) + ")");
    if (static_cast<int>(g.budget_per_step.size()) != g.K)
        fail("budget_length", "budget_per_step must have K entries");
    for (int k = 0; k < g.K; ++k)
        if (!(g.budget_per_step[k] >= 0.0))
            fail("budget_nonneg", "per-step budget must be >= 0", k + 1);
    if (!(g.budget_total >= 0.0)) fail("budget_nonneg", "total budget must be >= 0");

    if (static_cast<int>(net.nodes.size()) != g.n)
        fail("node_count", "nodes array must have n entries");
    for (int i = 0; i < g.n; ++i) {
        const NodeParams& nd = net.nodes[i];
        if (!(nd.cost >= 0.0)) fail("cost_nonneg", "cost must be >= 0", -1, i + 1);
        if (!(nd.x_hat >= 0.0 && nd.x_hat <= 1.0))
            fail("x_hat_range", "x_hat must lie in [0,1]", -1, i + 1);
        if (static_cast<int>(nd.per_step.size()) != g.K)
            fail("per_step_length", "node per_step must have K entries", -1, i + 1);
        for (int k = 0; k < g.K; ++k) {
            const NodeStepParams& p = nd.per_step[k];
            if (!finite_pos(p.delta_lo)) fail("delta_box", "delta_lo must be > 0", k + 1, i + 1);
            if (!(p.delta_lo <= p.delta_hi))
                fail("delta_box", "delta_lo must be <= delta_hi", k + 1, i + 1);
            if (!(p.delta_hi < g.delta_bar))
                fail("delta_box", "delta_hi must be < delta_bar", k + 1, i + 1);
            if (!(g.h * p.delta_hi <= 1.0))
                fail("h_delta", "h*delta_hi must be <= 1", k + 1, i + 1);
            if (!finite_pos(p.w_rec)) fail("w_positive", "w_rec must be > 0", k + 1, i + 1);
        }
    }

    std::set<std::pair<int, int>> seen;
    for (const Edge& e : net.edges) {
        if (e.from < 0 || e.from >= g.n || e.to < 0 || e.to >= g.n)
            fail("node_index", "edge endpoint out of range", -1, e.to + 1, e.from + 1);
        if (e.from == e.to) fail("self_loop", "self-loops are not allowed", -1, e.to + 1, e.from + 1);
        if (!seen.insert({e.from, e.to}).second)
            fail("duplicate_edge", "duplicate directed edge", -1, e.to + 1, e.from + 1);
        if (static_cast<int>(e.per_step.size()) != g.K)
            fail("per_step_length", "edge per_step must have K entries", -1, e.to + 1, e.from + 1);
        for (int k = 0; k < g.K; ++k) {
            if (!e.per_step[k]) continue;
            const EdgeStepParams& p = *e.per_step[k];
            if (!finite_pos(p.beta_lo)) fail("beta_box", "beta_lo must be > 0", k + 1, e.to + 1, e.from + 1);
            if (!(p.beta_lo <= p.beta_hi))
                fail("beta_box", "beta_lo must be <= beta_hi", k + 1, e.to + 1, e.from + 1);
            if (!finite_pos(p.w_spread)) fail("w_positive", "w_spread must be > 0", k + 1, e.to + 1, e.from + 1);
        }
    }

    net.finalize();

    if (!opts.allow_row_sum_violation) {
        for (int k = 0; k < g.K; ++k) {
            for (int i = 0; i < g.n; ++i) {
                double row = 0.0;
                for (int e : net.in_edges_at[k][i]) row += net.edges[e].per_step[k]->beta_hi;
                if (!(g.h * row < 1.0))
                    fail("row_sum",
                         "h*sum of in-edge beta_hi must be < 1 for well-posedness (got " +
                             std::to_string(g.h * row) + ")",
                         k + 1, i + 1);
            }
        }
    }
}

RateSchedule nominal_rates(const TemporalNetwork& net) {
    RateSchedule r;
    r.beta.assign(net.K(), std::vector<double>(net.edges.size(),
                                               std::numeric_limits<double>::quiet_NaN()));
    r.delta.assign(net.K(), std::vector<double>(net.n(), 0.0));
    for (int k = 0; k < net.K(); ++k) {
        for (int e : net.edges_at[k]) r.beta[k][e] = net.edges[e].per_step[k]->beta_hi;
        for (int i = 0; i < net.n(); ++i) r.delta[k][i] = net.nodes[i].per_step[k].delta_lo;
    }
    return r;
}

void validate_rates(const TemporalNetwork& net, const RateSchedule& rates) {
    constexpr double tol = 1e-9;
    if (static_cast<int>(rates.beta.size()) != net.K() ||
        static_cast<int>(rates.delta.size()) != net.K())
        fail("rate_shape", "rate schedule must have K steps");
    for (int k = 0; k < net.K(); ++k) {
        if (rates.beta[k].size() != net.edges.size() ||
            static_cast<int>(rates.delta[k].size()) != net.n())
            fail("rate_shape", "rate schedule shape mismatch", k + 1);
        for (int e : net.edges_at[k]) {
            const EdgeStepParams& p = *net.edges[e].per_step[k];
            double b = rates.beta[k][e];
            if (!(b >= p.beta_lo - tol && b <= p.beta_hi + tol))
                fail("beta_box", "beta outside its box", k + 1, net.edges[e].to + 1,
                     net.edges[e].from + 1);
        }
        for (int i = 0; i < net.n(); ++i) {
            const NodeStepParams& p = net.nodes[i].per_step[k];
            double d = rates.delta[k][i];
            if (!(d >= p.delta_lo - tol && d <= p.delta_hi + tol))
                fail("delta_box", "delta outside its box", k + 1, i + 1);
        }
    }
}

Eigen::SparseMatrix<double> build_state_matrix(const TemporalNetwork& net, int k,
                                               const RateSchedule& rates) {
    const int N = net.n();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(N + net.edges_at[k].size());
    for (int i = 0; i < N; ++i)
        trip.emplace_back(i, i, 1.0 - net.globals.h * rates.delta[k][i]);
    for (int e : net.edges_at[k])
        trip.emplace_back(net.edges[e].to, net.edges[e].from, net.globals.h * rates.beta[k][e]);
    Eigen::SparseMatrix<double> A(N, N);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

Snapshot snapshot_of(const TemporalNetwork& net, int k) {
    Snapshot s;
    s.n = net.n();
    s.nodes.reserve(s.n);
    for (int i = 0; i < s.n; ++i) s.nodes.push_back(net.nodes[i].per_step[k]);
    for (int e : net.edges_at[k])
        s.edges.push_back({net.edges[e].from, net.edges[e].to, *net.edges[e].per_step[k]});
    return s;
}

Snapshot average_snapshot(const Snapshot& s1, const Snapshot& s2, double lambda,
                          double beta_lo_floor) {
    if (s1.n != s2.n) fail("node_count", "snapshots must share the node set");
    if (!(lambda >= 0.0 && lambda <= 1.0)) fail("lambda_range", "lambda must lie in [0,1]");
    Snapshot out;
    out.n = s1.n;
    out.nodes.resize(s1.n);
    const double mu = 1.0 - lambda;
    for (int i = 0; i < s1.n; ++i) {
        out.nodes[i].delta_lo = lambda * s1.nodes[i].delta_lo + mu * s2.nodes[i].delta_lo;
        out.nodes[i].delta_hi = lambda * s1.nodes[i].delta_hi + mu * s2.nodes[i].delta_hi;
        out.nodes[i].w_rec = lambda * s1.nodes[i].w_rec + mu * s2.nodes[i].w_rec;
    }
    std::map<std::pair<int, int>, std::pair<const EdgeStepParams*, const EdgeStepParams*>> uni;
    for (const auto& e : s1.edges) uni[{e.from, e.to}].first = &e.params;
    for (const auto& e : s2.edges) uni[{e.from, e.to}].second = &e.params;
    for (const auto& [key, pair] : uni) {
        EdgeStepParams p;
        const EdgeStepParams* a = pair.first;
        const EdgeStepParams* b = pair.second;
        p.beta_hi = lambda * (a ? a->beta_hi : 0.0) + mu * (b ? b->beta_hi : 0.0);
        p.beta_lo = lambda * (a ? a->beta_lo : 0.0) + mu * (b ? b->beta_lo : 0.0);
        p.beta_lo = std::max(p.beta_lo, beta_lo_floor);
        p.beta_hi = std::max(p.beta_hi, p.beta_lo);
        if (a && b)
            p.w_spread = lambda * a->w_spread + mu * b->w_spread;
        else
            p.w_spread = a ? a->w_spread : b->w_spread;
        out.edges.push_back({key.first, key.second, p});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Scenario file I/O

namespace {

double get_num(const ordered_json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ParseError("missing or non-numeric field '" + key + "'");
    return j[key].get<double>();
}

int get_int(const ordered_json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ParseError("missing or non-integer field '" + key + "'");
    return j[key].get<int>();
}

}  // namespace

std::string scenario_to_json(const TemporalNetwork& net) {
    ordered_json j;
    const GlobalParams& g = net.globals;
    j["globals"] = {{"n", g.n},
                    {"K", g.K},
                    {"h", g.h},
                    {"alpha", g.alpha},
                    {"delta_bar", g.delta_bar},
                    {"budget_per_step", g.budget_per_step},
                    {"budget_total", g.budget_total},
                    {"horizon_mode", g.horizon_mode == HorizonMode::Finite ? "finite" : "infinite"}};
    j["nodes"] = ordered_json::array();
    for (int i = 0; i < g.n; ++i) {
        const NodeParams& nd = net.nodes[i];
        ordered_json steps = ordered_json::array();
        for (const NodeStepParams& p : nd.per_step)
            steps.push_back({{"delta_lo", p.delta_lo}, {"delta_hi", p.delta_hi}, {"w_rec", p.w_rec}});
        j["nodes"].push_back(
            {{"id", i + 1}, {"cost", nd.cost}, {"x_hat", nd.x_hat}, {"per_step", steps}});
    }
    j["edges"] = ordered_json::array();
    for (const Edge& e : net.edges) {
        ordered_json steps = ordered_json::array();
        for (const auto& p : e.per_step) {
            if (p)
                steps.push_back(
                    {{"beta_lo", p->beta_lo}, {"beta_hi", p->beta_hi}, {"w_spread", p->w_spread}});
            else
                steps.push_back(nullptr);
        }
        j["edges"].push_back({{"from", e.from + 1}, {"to", e.to + 1}, {"per_step", steps}});
    }
    return j.dump(2) + "\n";
}

TemporalNetwork scenario_from_json(const std::string& text, const ValidateOptions& opts) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("globals") || !j.contains("nodes") || !j.contains("edges"))
        throw ParseError("scenario must be an object with 'globals', 'nodes' and 'edges'");

    TemporalNetwork net;
    GlobalParams& g = net.globals;
    const ordered_json& jg = j["globals"];
    g.n = get_int(jg, "n");
    g.K = get_int(jg, "K");
    g.h = get_num(jg, "h");
    g.alpha = get_num(jg, "alpha");
    g.delta_bar = get_num(jg, "delta_bar");
    if (!jg.contains("budget_per_step") || !jg["budget_per_step"].is_array())
        throw ParseError("globals.budget_per_step must be an array");
    g.budget_per_step = jg["budget_per_step"].get<std::vector<double>>();
    g.budget_total = get_num(jg, "budget_total");
    std::string mode = jg.value("horizon_mode", "finite");
    if (mode == "finite")
        g.horizon_mode = HorizonMode::Finite;
    else if (mode == "infinite")
        g.horizon_mode = HorizonMode::Infinite;
    else
        throw ParseError("horizon_mode must be 'finite' or 'infinite'");

    if (g.n >= 0) net.nodes.resize(static_cast<size_t>(std::max(g.n, 0)));
    std::vector<bool> node_seen(std::max(g.n, 0), false);
    for (const ordered_json& jn : j["nodes"]) {
        int id = get_int(jn, "id");
        if (id < 1 || id > g.n) throw ParseError("node id " + std::to_string(id) + " out of range");
        if (node_seen[id - 1]) throw ParseError("duplicate node id " + std::to_string(id));
        node_seen[id - 1] = true;
        NodeParams& nd = net.nodes[id - 1];
        nd.cost = get_num(jn, "cost");
        nd.x_hat = get_num(jn, "x_hat");
        if (!jn.contains("per_step") || !jn["per_step"].is_array())
            throw ParseError("node per_step must be an array");
        for (const ordered_json& js : jn["per_step"]) {
            NodeStepParams p;
            p.delta_lo = get_num(js, "delta_lo");
            p.delta_hi = get_num(js, "delta_hi");
            p.w_rec = get_num(js, "w_rec");
            nd.per_step.push_back(p);
        }
    }
    for (int i = 0; i < g.n; ++i)
        if (!node_seen[i]) throw ParseError("missing node id " + std::to_string(i + 1));

    for (const ordered_json& je : j["edges"]) {
        Edge e;
        e.from = get_int(je, "from") - 1;
        e.to = get_int(je, "to") - 1;
        if (!je.contains("per_step") || !je["per_step"].is_array())
            throw ParseError("edge per_step must be an array");
        for (const ordered_json& js : je["per_step"]) {
            if (js.is_null()) {
                e.per_step.push_back(std::nullopt);
            } else {
                EdgeStepParams p;
                p.beta_lo = get_num(js, "beta_lo");
                p.beta_hi = get_num(js, "beta_hi");
                p.w_spread = get_num(js, "w_spread");
                e.per_step.push_back(p);
            }
        }
        net.edges.push_back(std::move(e));
    }

    validate(net, opts);
    return net;
}

TemporalNetwork load_scenario(const std::filesystem::path& path, const ValidateOptions& opts) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str(), opts);
}

void save_scenario(const TemporalNetwork& net, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path.string());
    out << scenario_to_json(net);
}

}  // namespace tempnet
