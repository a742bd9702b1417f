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

#include "tempnet/ecp_builder.hpp"

#include <cmath>
#include <map>

#include "tempnet/log.hpp"

namespace tempnet {

namespace {

constexpr double kCapEps = 1e-12;

// Structural zeros of the minimal certificate: p_j^k = 0 iff c_j = 0 and every
// step-k successor (the node itself plus its out-neighbors) is pinned at k+1.
// Infinite mode seeds the terminal step by cost-reachability on E^K.
std::vector<std::vector<char>> pinned_pattern(const TemporalNetwork& net) {
    const int K = net.K(), n = net.n();
    std::vector<std::vector<char>> pinned(K, std::vector<char>(n, 0));

    if (net.globals.horizon_mode == HorizonMode::Finite) {
        for (int i = 0; i < n; ++i) pinned[K - 1][i] = net.nodes[i].cost == 0.0;
    } else {
        // reachable-to-positive-cost on the terminal snapshot
        std::vector<char> hits_cost(n, 0);
        std::vector<int> stack;
        for (int i = 0; i < n; ++i)
            if (net.nodes[i].cost > 0.0) {
                hits_cost[i] = 1;
                stack.push_back(i);
            }
        while (!stack.empty()) {
            int m = stack.back();
            stack.pop_back();
            for (int e : net.in_edges_at[K - 1][m]) {
                int j = net.edges[e].from;  // j spreads to m
                if (!hits_cost[j]) {
                    hits_cost[j] = 1;
                    stack.push_back(j);
                }
            }
        }
        for (int i = 0; i < n; ++i) pinned[K - 1][i] = !hits_cost[i];
    }

    for (int k = K - 2; k >= 0; --k) {
        for (int j = 0; j < n; ++j) {
            if (net.nodes[j].cost > 0.0) continue;
            if (!pinned[k + 1][j]) continue;
            bool all = true;
            for (int e : net.out_edges_at[k][j])
                if (!pinned[k + 1][net.edges[e].to]) {
                    all = false;
                    break;
                }
            pinned[k][j] = all;
        }
    }
    return pinned;
}

struct Section {
    std::vector<Eigen::Triplet<double>> trips;
    std::vector<double> b;
    std::vector<RowNote> notes;
    int add_row(double bval, RowNote note) {
        b.push_back(bval);
        notes.push_back(std::move(note));
        return static_cast<int>(b.size()) - 1;
    }
    void coef(int row, int var, double cf) {
        if (cf != 0.0) trips.emplace_back(row, var, cf);
    }
    int rows() const { return static_cast<int>(b.size()); }
};

// One log-sum-exp term: z = constant + sum coef*var.
struct Term {
    std::string tag;
    int j2 = 0;        // 1-based target node for edge terms
    int edge_id = -1;  // source edge for edge terms
    double constant = 0.0;
    std::map<int, double> lin;
    void add(int var, double cf) {
        lin[var] += cf;
        if (std::abs(lin[var]) < 1e-15) lin.erase(var);
    }
};

struct Builder {
    const TemporalNetwork& net;
    const BuildOptions& opts;
    ProblemKind kind;
    double gamma = 0.0;

    int K, n;
    double h, alpha, dbar;
    bool infinite;
    bool include_budgets;

    std::vector<std::vector<char>> pinned;
    std::vector<std::vector<char>> u_dem, v_dem;  // demanded by some term
    VariableBook book;

    Builder(const TemporalNetwork& net_, const BuildOptions& opts_, ProblemKind kind_)
        : net(net_), opts(opts_), kind(kind_), K(net_.K()), n(net_.n()), h(net_.globals.h),
          alpha(net_.globals.alpha), dbar(net_.globals.delta_bar),
          infinite(net_.globals.horizon_mode == HorizonMode::Infinite) {
        include_budgets = (kind == ProblemKind::RiskMin && !opts.drop_budget_rows) ||
                          opts.force_budget_rows;
    }

    bool has_successor(int k) const { return k < K - 1 || infinite; }
    int successor(int k) const { return k < K - 1 ? k + 1 : K - 1; }

    double ucap(int e, int k) const {
        const EdgeStepParams& p = *net.edges[e].per_step[k];
        return std::log(p.beta_hi / p.beta_lo);
    }
    double vcap(int j, int k) const {
        const NodeStepParams& p = net.nodes[j].per_step[k];
        return std::log((dbar - p.delta_lo) / (dbar - p.delta_hi));
    }

    // Forward-looking cap: a purchase at step k must respect the box at every
    // later step the edge/node is live (cumulative mode).
    bool u_controllable(int e, int k) const {
        if (opts.box_mode == BoxMode::PerStep) return ucap(e, k) > kCapEps;
        for (int t = k; t < K; ++t)
            if (net.edges[e].per_step[t] && ucap(e, t) <= kCapEps) return false;
        return true;
    }
    bool v_controllable(int j, int k) const {
        if (opts.box_mode == BoxMode::PerStep) return vcap(j, k) > kCapEps;
        for (int t = k; t < K; ++t)
            if (vcap(j, t) <= kCapEps) return false;
        return true;
    }

    bool budget_open(int k) const {
        if (!include_budgets) return true;
        return net.globals.budget_per_step[k] > 0.0 && net.globals.budget_total > 0.0;
    }

    void mark_u(int e, int k) {
        if (opts.box_mode == BoxMode::PerStep) {
            u_dem[k][e] = 1;
            return;
        }
        for (int t = 0; t <= k; ++t)
            if (net.edges[e].per_step[t]) u_dem[t][e] = 1;
    }
    void mark_v(int j, int k) {
        if (opts.box_mode == BoxMode::PerStep) {
            v_dem[k][j] = 1;
            return;
        }
        for (int t = 0; t <= k; ++t) v_dem[t][j] = 1;
    }

    std::vector<std::vector<Term>> collect_terms();
    void decide_active();
    void assign_vars();
    void add_resource_sum(Term& t, bool is_edge, int id, int k, double sign);
    BuildResult emit(const std::vector<std::vector<Term>>& rows);
};

// Terms of row (k, j), in a fixed order: cost, survive, recover, out-edges.
std::vector<std::vector<Term>> Builder::collect_terms() {
    std::vector<std::vector<Term>> rows(static_cast<size_t>(K) * n);
    u_dem.assign(K, std::vector<char>(net.edges.size(), 0));
    v_dem.assign(K, std::vector<char>(n, 0));

    for (int k = 0; k < K; ++k) {
        for (int j = 0; j < n; ++j) {
            if (pinned[k][j]) continue;
            auto& terms = rows[static_cast<size_t>(k) * n + j];
            const double cj = net.nodes[j].cost;
            if (cj > 0.0) {
                Term t;
                t.tag = "cost";
                t.constant = std::log(cj);
                terms.push_back(std::move(t));
            }
            if (!has_successor(k)) continue;
            const int kn = successor(k);
            if (!pinned[kn][j]) {
                {
                    Term t;
                    t.tag = "survive";
                    t.constant = std::log(alpha * (1.0 - h * dbar));
                    terms.push_back(std::move(t));
                }
                {
                    Term t;
                    t.tag = "recover";
                    t.constant = std::log(alpha * h * (dbar - net.nodes[j].per_step[k].delta_lo));
                    mark_v(j, k);
                    terms.push_back(std::move(t));
                }
            }
            for (int e : net.out_edges_at[k][j]) {
                const int m = net.edges[e].to;
                if (pinned[kn][m]) continue;
                Term t;
                t.tag = "edge";
                t.j2 = m + 1;
                t.edge_id = e;
                t.constant = std::log(alpha * h * net.edges[e].per_step[k]->beta_hi);
                mark_u(e, k);
                terms.push_back(std::move(t));
            }
        }
    }
    return rows;
}

void Builder::decide_active() {
    book.u.assign(K, std::vector<int>(net.edges.size(), -1));
    book.v.assign(K, std::vector<int>(n, -1));
    // -2 marks "active, index to be assigned"
    auto u_ok = [&](int e, int k) {
        return u_dem[k][e] && net.edges[e].per_step[k] && budget_open(k) && u_controllable(e, k);
    };
    auto v_ok = [&](int j, int k) { return v_dem[k][j] && budget_open(k) && v_controllable(j, k); };

    if (!opts.tie_node_resources) {
        for (int k = 0; k < K; ++k) {
            for (size_t e = 0; e < net.edges.size(); ++e)
                if (u_ok(static_cast<int>(e), k)) book.u[k][e] = -2;
            for (int j = 0; j < n; ++j)
                if (v_ok(j, k)) book.v[k][j] = -2;
        }
        return;
    }

    // Tied mode: targeting node j at step k buys its recovery boost and a
    // matching reduction on every in-edge, all equal.  A group is usable only
    // if every member is controllable and at least one member is demanded.
    for (int k = 0; k < K; ++k) {
        for (int j = 0; j < n; ++j) {
            if (!budget_open(k)) continue;
            bool demanded = v_dem[k][j];
            bool controllable = v_controllable(j, k);
            for (int e : net.in_edges_at[k][j]) {
                demanded = demanded || u_dem[k][e];
                controllable = controllable && u_controllable(e, k);
            }
            if (!demanded || !controllable) continue;
            book.v[k][j] = -2;
            for (int e : net.in_edges_at[k][j]) book.u[k][e] = -2;
        }
    }
}

void Builder::assign_vars() {
    int next = 0;
    if (kind == ProblemKind::RiskMin) book.t_var = next++;
    book.y.assign(K, std::vector<int>(n, -1));
    for (int k = 0; k < K; ++k)
        for (int i = 0; i < n; ++i)
            if (!pinned[k][i]) book.y[k][i] = next++;
    for (int k = 0; k < K; ++k) {
        for (size_t e = 0; e < net.edges.size(); ++e) {
            if (book.u[k][e] == -2) {
                book.u[k][e] = next;
                book.resources.push_back({true, k, static_cast<int>(e), -1, next});
                ++next;
            }
        }
        for (int j = 0; j < n; ++j) {
            if (book.v[k][j] == -2) {
                book.v[k][j] = next;
                book.resources.push_back({false, k, -1, j, next});
                ++next;
            }
        }
    }
    book.first_slack = next;
    book.nvars = next;  // slacks appended during emission
}

// Appends the accumulated log-reduction sum for beta (is_edge) or delta.
void Builder::add_resource_sum(Term& t, bool is_edge, int id, int k, double sign) {
    const int t0 = opts.box_mode == BoxMode::PerStep ? k : 0;
    for (int step = t0; step <= k; ++step) {
        int var = is_edge ? book.u[step][id] : book.v[step][id];
        if (var < 0) continue;
        double w = is_edge ? net.edges[id].per_step[step]->w_spread
                           : net.nodes[id].per_step[step].w_rec;
        t.add(var, sign / w);
    }
}

BuildResult Builder::emit(const std::vector<std::vector<Term>>& rows) {
    Section zero, nonneg;
    Section expz;  // exp triples, appended three rows at a time
    int nexp = 0;
    int nslack = 0;

    // -- tie equalities
    if (opts.tie_node_resources) {
        for (int k = 0; k < K; ++k) {
            for (int j = 0; j < n; ++j) {
                if (book.v[k][j] < 0) continue;
                for (int e : net.in_edges_at[k][j]) {
                    if (book.u[k][e] < 0) continue;
                    int r = zero.add_row(0.0, {"tie", k + 1, j + 1, net.edges[e].from + 1});
                    zero.coef(r, book.u[k][e], 1.0);
                    zero.coef(r, book.v[k][j], -1.0);
                }
            }
        }
    }

    // -- objective epigraph / risk-bound rows
    int risk_rows = 0;
    for (int i = 0; i < n; ++i) {
        const double xh = net.nodes[i].x_hat;
        if (xh <= 0.0 || book.y[0][i] < 0) continue;
        if (kind == ProblemKind::RiskMin) {
            int r = nonneg.add_row(-std::log(xh), {"epigraph", 1, i + 1, 0});
            nonneg.coef(r, book.t_var, -1.0);
            nonneg.coef(r, book.y[0][i], 1.0);
        } else {
            int r = nonneg.add_row(std::log(gamma) - std::log(xh), {"risk_bound", 1, i + 1, 0});
            nonneg.coef(r, book.y[0][i], 1.0);
        }
        ++risk_rows;
    }
    if (kind == ProblemKind::RiskMin && risk_rows == 0)
        throw BuildError(
            "problem 1 is unbounded: every outbreak probability is zero (or structurally "
            "risk-free); nothing constrains the epigraph variable");

    // -- resource nonnegativity
    for (const ResourceRef& res : book.resources) {
        int r = nonneg.add_row(0.0, {res.is_edge ? "u_nonneg" : "v_nonneg", res.k + 1,
                                     res.is_edge ? net.edges[res.edge_id].to + 1 : res.node + 1,
                                     res.is_edge ? net.edges[res.edge_id].from + 1 : 0});
        nonneg.coef(r, res.var, -1.0);
    }

    // -- box caps on accumulated reductions
    for (int k = 0; k < K; ++k) {
        for (size_t e = 0; e < net.edges.size(); ++e) {
            if (!net.edges[e].per_step[k]) continue;
            Term acc;
            add_resource_sum(acc, true, static_cast<int>(e), k, 1.0);
            if (acc.lin.empty()) continue;
            int r = nonneg.add_row(ucap(static_cast<int>(e), k),
                                   {"u_box", k + 1, net.edges[e].to + 1, net.edges[e].from + 1});
            for (auto [var, cf] : acc.lin) nonneg.coef(r, var, cf);
        }
        for (int j = 0; j < n; ++j) {
            Term acc;
            add_resource_sum(acc, false, j, k, 1.0);
            if (acc.lin.empty()) continue;
            int r = nonneg.add_row(vcap(j, k), {"v_box", k + 1, j + 1, 0});
            for (auto [var, cf] : acc.lin) nonneg.coef(r, var, cf);
        }
    }

    // -- budgets
    if (include_budgets && !book.resources.empty()) {
        for (int k = 0; k < K; ++k) {
            bool any = false;
            for (const ResourceRef& res : book.resources) any = any || res.k == k;
            if (!any) continue;
            int r = nonneg.add_row(net.globals.budget_per_step[k], {"budget_step", k + 1, 0, 0});
            for (const ResourceRef& res : book.resources)
                if (res.k == k) nonneg.coef(r, res.var, 1.0);
        }
        int r = nonneg.add_row(net.globals.budget_total, {"budget_total", 0, 0, 0});
        for (const ResourceRef& res : book.resources) nonneg.coef(r, res.var, 1.0);
    }

    // -- reweighted support row (Problem-1 variant)
    if (opts.support_bound >= 0.0) {
        if (!opts.resource_weights ||
            opts.resource_weights->size() != book.resources.size())
            throw BuildError("support_bound requires one weight per resource variable");
        int r = nonneg.add_row(opts.support_bound, {"support", 0, 0, 0});
        for (size_t i = 0; i < book.resources.size(); ++i)
            nonneg.coef(r, book.resources[i].var, (*opts.resource_weights)[i]);
    }

    // -- log-sum-exp rows
    for (int k = 0; k < K; ++k) {
        for (int j = 0; j < n; ++j) {
            const auto& terms = rows[static_cast<size_t>(k) * n + j];
            if (terms.empty()) continue;

            // materialize affine expressions
            std::vector<Term> zs;
            zs.reserve(terms.size());
            const int kn = has_successor(k) ? successor(k) : -1;
            for (const Term& t : terms) {
                Term z = t;
                z.add(book.y[k][j], -1.0);
                if (t.tag == "survive") z.add(book.y[kn][j], 1.0);
                if (t.tag == "recover") {
                    z.add(book.y[kn][j], 1.0);
                    add_resource_sum(z, false, j, k, -1.0);
                }
                if (t.tag == "edge") {
                    z.add(book.y[kn][t.j2 - 1], 1.0);
                    add_resource_sum(z, true, t.edge_id, k, -1.0);
                }
                zs.push_back(std::move(z));
            }

            if (zs.size() == 1) {
                // single term: z <= 0 is a linear row
                int r = nonneg.add_row(-zs[0].constant, {"lse_linear", k + 1, j + 1, 0});
                for (auto [var, cf] : zs[0].lin) nonneg.coef(r, var, cf);
                continue;
            }

            int srow = nonneg.add_row(1.0, {"lse_simplex", k + 1, j + 1, 0});
            for (const Term& z : zs) {
                int svar = book.nvars + nslack++;
                nonneg.coef(srow, svar, 1.0);
                int r0 = expz.add_row(z.constant, {"lse_term_" + z.tag, k + 1, j + 1, z.j2});
                for (auto [var, cf] : z.lin) expz.coef(r0, var, -cf);
                expz.add_row(1.0, {"lse_one", k + 1, j + 1, 0});
                int r2 = expz.add_row(0.0, {"lse_slack", k + 1, j + 1, 0});
                expz.coef(r2, svar, -1.0);
                ++nexp;
            }
        }
    }

    book.nvars += nslack;

    BuildResult out;
    ConicProgram& prog = out.program;
    prog.nvars = book.nvars;
    prog.nzero = zero.rows();
    prog.nnonneg = nonneg.rows();
    prog.nexp = nexp;

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(zero.trips.size() + nonneg.trips.size() + expz.trips.size());
    prog.b.resize(prog.rows());
    prog.notes.clear();
    prog.notes.reserve(prog.rows());
    int off = 0;
    for (Section* sec : {&zero, &nonneg, &expz}) {
        for (const auto& t : sec->trips) trips.emplace_back(t.row() + off, t.col(), t.value());
        for (int r = 0; r < sec->rows(); ++r) {
            prog.b[off + r] = sec->b[r];
            prog.notes.push_back(sec->notes[r]);
        }
        off += sec->rows();
    }
    prog.A.resize(prog.rows(), prog.nvars);
    prog.A.setFromTriplets(trips.begin(), trips.end());

    prog.c = Eigen::VectorXd::Zero(prog.nvars);
    if (kind == ProblemKind::RiskMin) {
        prog.c[book.t_var] = 1.0;
    } else {
        for (size_t i = 0; i < book.resources.size(); ++i) {
            double w = opts.resource_weights ? (*opts.resource_weights)[i] : 1.0;
            prog.c[book.resources[i].var] = w;
        }
    }

    prog.check_layout();
    out.book = std::move(book);
    return out;
}

BuildResult build(const TemporalNetwork& net, const BuildOptions& opts, ProblemKind kind,
                  double gamma) {
    Builder bld(net, opts, kind);
    bld.gamma = gamma;
    if (kind == ProblemKind::ResourceMin && !(gamma > 0.0))
        throw BuildError("gamma must be > 0");
    if (kind == ProblemKind::ResourceMin && opts.support_bound >= 0.0)
        throw BuildError("support_bound applies to the Problem-1 variant only");
    bld.pinned = pinned_pattern(net);
    auto rows = bld.collect_terms();
    bld.decide_active();
    bld.assign_vars();
    if (opts.resource_weights && opts.resource_weights->size() != bld.book.resources.size())
        throw BuildError("resource_weights must have one entry per active resource");
    return bld.emit(rows);
}

}  // namespace

BuildResult build_problem1(const TemporalNetwork& net, const BuildOptions& opts) {
    return build(net, opts, ProblemKind::RiskMin, 0.0);
}

BuildResult build_problem2(const TemporalNetwork& net, double gamma, const BuildOptions& opts) {
    return build(net, opts, ProblemKind::ResourceMin, gamma);
}

AllocationResult recover(const Solution& sol, const VariableBook& book,
                         const TemporalNetwork& net, const BuildOptions& opts) {
    const int K = net.K(), n = net.n();
    AllocationResult res;
    res.status = sol.status;
    res.objective = sol.obj_primal;
    res.residuals = sol.residuals;
    res.iterations = sol.iterations;

    res.u_amount.assign(K, std::vector<double>(net.edges.size(), 0.0));
    res.v_amount.assign(K, std::vector<double>(n, 0.0));
    for (int k = 0; k < K; ++k) {
        for (size_t e = 0; e < net.edges.size(); ++e)
            if (book.u[k][e] >= 0) res.u_amount[k][e] = std::max(0.0, sol.x[book.u[k][e]]);
        for (int j = 0; j < n; ++j)
            if (book.v[k][j] >= 0) res.v_amount[k][j] = std::max(0.0, sol.x[book.v[k][j]]);
    }

    res.rates.beta.assign(K, std::vector<double>(net.edges.size(),
                                                 std::numeric_limits<double>::quiet_NaN()));
    res.rates.delta.assign(K, std::vector<double>(n, 0.0));
    const double dbar = net.globals.delta_bar;
    for (int k = 0; k < K; ++k) {
        for (int e : net.edges_at[k]) {
            const EdgeStepParams& p = *net.edges[e].per_step[k];
            double L = 0.0;
            int t0 = opts.box_mode == BoxMode::PerStep ? k : 0;
            for (int t = t0; t <= k; ++t)
                if (net.edges[e].per_step[t] && res.u_amount[t][e] > 0.0)
                    L += res.u_amount[t][e] / net.edges[e].per_step[t]->w_spread;
            double beta = p.beta_hi * std::exp(-L);
            res.rates.beta[k][e] = std::clamp(beta, p.beta_lo, p.beta_hi);
        }
        for (int j = 0; j < n; ++j) {
            const NodeStepParams& p = net.nodes[j].per_step[k];
            double M = 0.0;
            int t0 = opts.box_mode == BoxMode::PerStep ? k : 0;
            for (int t = t0; t <= k; ++t)
                if (res.v_amount[t][j] > 0.0) M += res.v_amount[t][j] / net.nodes[j].per_step[t].w_rec;
            double delta = dbar - (dbar - p.delta_lo) * std::exp(-M);
            res.rates.delta[k][j] = std::clamp(delta, p.delta_lo, p.delta_hi);
        }
    }

    res.certificate.mode = net.globals.horizon_mode;
    res.certificate.p.assign(K, Eigen::VectorXd::Zero(n));
    for (int k = 0; k < K; ++k)
        for (int i = 0; i < n; ++i)
            if (book.y[k][i] >= 0) res.certificate.p[k][i] = std::exp(sol.x[book.y[k][i]]);

    res.verification = verify_certificate(res.certificate, net, res.rates, 1e-6);
    Eigen::VectorXd R = risk_vector(res.certificate, net.x_hat_vector());
    res.max_risk = max_risk(R);
    res.total_risk = total_risk(R);

    res.budget_used.assign(K, 0.0);
    for (int k = 0; k < K; ++k) {
        for (size_t e = 0; e < net.edges.size(); ++e) res.budget_used[k] += res.u_amount[k][e];
        for (int j = 0; j < n; ++j) res.budget_used[k] += res.v_amount[k][j];
        res.budget_used_total += res.budget_used[k];
    }
    return res;
}

Eigen::VectorXd feasible_point(const TemporalNetwork& net, const VariableBook& book,
                               const ConicProgram& prog) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(book.nvars);
    RiskCertificate cert = net.globals.horizon_mode == HorizonMode::Finite
                               ? tight_certificate(net, nominal_rates(net))
                               : infinite_certificate(net, nominal_rates(net));
    for (int k = 0; k < net.K(); ++k)
        for (int i = 0; i < net.n(); ++i)
            if (book.y[k][i] >= 0) x[book.y[k][i]] = std::log(cert.p[k][i]);
    if (book.t_var >= 0) {
        double t = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < net.n(); ++i)
            if (net.nodes[i].x_hat > 0.0 && book.y[0][i] >= 0)
                t = std::max(t, std::log(net.nodes[i].x_hat) + x[book.y[0][i]]);
        x[book.t_var] = t;
    }
    // slacks: each exp triple's first row is z_l = b - A x over non-slack vars
    Eigen::SparseMatrix<double, Eigen::RowMajor> Ar(prog.A);
    for (int bidx = 0; bidx < prog.nexp; ++bidx) {
        int r = prog.exp_start() + 3 * bidx;
        double z = prog.b[r];
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(Ar, r); it; ++it)
            z -= it.value() * x[it.col()];
        // the slack variable is the single entry of the third row
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(Ar, r + 2); it; ++it)
            x[it.col()] = std::exp(z);
    }
    return x;
}

}  // namespace tempnet
