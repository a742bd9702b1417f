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

// Residual recomputation for solver output.  Deliberately kept apart from
// solver.cpp: it reads only the program data and the returned vectors, so the
// two code paths can disagree when one of them is wrong.

#include <cmath>

#include "tempnet/solver.hpp"

namespace tempnet {

bool KktReport::pass(const SolverSettings& settings, double factor) const {
    return primal_res <= factor * settings.feas_tol && dual_res <= factor * settings.feas_tol &&
           rel_gap <= factor * settings.gap_tol && primal_cone_viol <= factor * settings.feas_tol &&
           dual_cone_viol <= factor * settings.feas_tol;
}

KktReport check_kkt(const ConicProgram& prog, const Solution& sol) {
    prog.check_layout();
    KktReport rep;
    const int m = prog.rows();
    if (sol.x.size() != prog.nvars || sol.s.size() != m || sol.z.size() != m)
        throw std::invalid_argument("solution dimensions do not match program");

    Eigen::VectorXd pr = prog.A * sol.x + sol.s - prog.b;
    rep.primal_res = pr.lpNorm<Eigen::Infinity>() / (1.0 + prog.b.lpNorm<Eigen::Infinity>());

    Eigen::VectorXd dr = prog.A.transpose() * sol.z + prog.c;
    rep.dual_res = dr.lpNorm<Eigen::Infinity>() / (1.0 + prog.c.lpNorm<Eigen::Infinity>());

    double cx = prog.c.dot(sol.x);
    double bz = prog.b.dot(sol.z);
    rep.rel_gap = std::abs(cx + bz) / (1.0 + std::abs(cx) + std::abs(bz));

    for (int r = 0; r < prog.nzero; ++r)
        rep.primal_cone_viol = std::max(rep.primal_cone_viol, std::abs(sol.s[r]));
    for (int r = prog.nzero; r < prog.nzero + prog.nnonneg; ++r) {
        rep.primal_cone_viol = std::max(rep.primal_cone_viol, -sol.s[r]);
        rep.dual_cone_viol = std::max(rep.dual_cone_viol, -sol.z[r]);
    }
    for (int b = 0; b < prog.nexp; ++b) {
        int r = prog.exp_start() + 3 * b;
        rep.primal_cone_viol = std::max(
            rep.primal_cone_viol, exp_cone_violation(sol.s[r], sol.s[r + 1], sol.s[r + 2]));
        rep.dual_cone_viol = std::max(rep.dual_cone_viol,
                                      exp_dual_violation(sol.z[r], sol.z[r + 1], sol.z[r + 2]));
    }
    return rep;
}

}  // namespace tempnet
