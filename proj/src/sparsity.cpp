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

#include "tempnet/sparsity.hpp"

#include <set>

#include "tempnet/log.hpp"

namespace tempnet {

namespace {

using Key = std::tuple<bool, int, int>;  // (is_edge, step, edge_id-or-node)

Key key_of(const ResourceRef& r) {
    return {r.is_edge, r.k, r.is_edge ? r.edge_id : r.node};
}

double value_of(const AllocationResult& a, const ResourceRef& r) {
    return r.is_edge ? a.u_amount[r.k][r.edge_id] : a.v_amount[r.k][r.node];
}

std::set<Key> support_of(const AllocationResult& a, const VariableBook& book, double tol) {
    std::set<Key> s;
    for (const ResourceRef& r : book.resources)
        if (value_of(a, r) > tol) s.insert(key_of(r));
    return s;
}

}  // namespace

ReweightResult reweighted_l1(const TemporalNetwork& net, const ReweightSettings& settings) {
    if (!(settings.epsilon > 0.0)) throw SparsifyError("epsilon must be > 0");
    if (settings.max_iters < 1) throw SparsifyError("max_iters must be >= 1");
    const bool p1 = settings.problem == ProblemKind::RiskMin;
    if (p1 && settings.support_bound < 0.0)
        throw SparsifyError("the Problem-1 variant needs a support bound M");

    ReweightResult out;

    // iteration 0: unweighted solve with the problem's own rows
    BuildOptions base = settings.build;
    base.resource_weights = nullptr;
    base.support_bound = -1.0;
    BuildResult built = p1 ? build_problem1(net, base)
                           : build_problem2(net, settings.gamma, base);
    Solution sol = solve(built.program, settings.solver);
    if (sol.status != SolveStatus::Optimal)
        throw SparsifyError(std::string("base solve not optimal: status ") +
                            to_string(sol.status));
    AllocationResult alloc = recover(sol, built.book, net, base);
    std::set<Key> support = support_of(alloc, built.book, settings.support_tol);

    auto record = [&](int q, const AllocationResult& a, int support_size) {
        ReweightIterate it;
        it.q = q;
        it.support_size = support_size;
        it.objective = a.objective;
        it.max_risk = a.max_risk;
        it.residuals = a.residuals;
        it.status = a.status;
        out.trace.push_back(it);
    };
    record(0, alloc, static_cast<int>(support.size()));
    out.final = alloc;

    // reweighted iterations share one build configuration (and thus one
    // variable book); --relax-budgets drops budget rows from them
    BuildOptions wopts = settings.build;
    wopts.drop_budget_rows = settings.build.drop_budget_rows || settings.relax_budgets;
    std::map<Key, double> prev_value;
    for (int q = 1; q < settings.max_iters; ++q) {
        if (support.empty()) {
            out.converged = true;
            out.stop_reason = "support is empty";
            return out;
        }
        prev_value.clear();
        for (const ResourceRef& r : built.book.resources)
            prev_value[key_of(r)] = value_of(alloc, r);

        // dry build to size the weight vector for this configuration
        BuildOptions dry = wopts;
        dry.resource_weights = nullptr;
        dry.support_bound = -1.0;
        BuildResult shape = p1 ? build_problem1(net, dry)
                               : build_problem2(net, settings.gamma, dry);
        std::vector<double> weights(shape.book.resources.size());
        for (size_t i = 0; i < weights.size(); ++i) {
            auto it = prev_value.find(key_of(shape.book.resources[i]));
            double v = it == prev_value.end() ? 0.0 : it->second;
            weights[i] = 1.0 / (v + settings.epsilon);
        }

        BuildOptions iter_opts = wopts;
        iter_opts.resource_weights = &weights;
        if (p1) iter_opts.support_bound = settings.support_bound;
        BuildResult wb = p1 ? build_problem1(net, iter_opts)
                            : build_problem2(net, settings.gamma, iter_opts);
        Solution wsol = solve(wb.program, settings.solver);
        if (wsol.status != SolveStatus::Optimal) {
            record(q, out.final, static_cast<int>(support.size()));
            out.trace.back().status = wsol.status;
            out.stop_reason = std::string("iteration ") + std::to_string(q) +
                              " not optimal (" + to_string(wsol.status) +
                              "); keeping previous iterate";
            return out;
        }
        alloc = recover(wsol, wb.book, net, iter_opts);
        built = std::move(wb);
        std::set<Key> next = support_of(alloc, built.book, settings.support_tol);
        record(q, alloc, static_cast<int>(next.size()));
        out.final = alloc;
        if (next == support) {
            out.converged = true;
            out.stop_reason = "support set stabilized";
            return out;
        }
        support = std::move(next);
    }
    out.stop_reason = "iteration limit";
    return out;
}

}  // namespace tempnet
