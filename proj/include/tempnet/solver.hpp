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

#ifndef TEMPNET_SOLVER_HPP
#define TEMPNET_SOLVER_HPP

#include "tempnet/conic.hpp"

namespace tempnet {

struct SolverSettings {
    double feas_tol = 1e-8;
    double gap_tol = 1e-8;
    int max_iters = 200;
    bool verbose = false;
    // Deterministic relative perturbation of the starting point; used by
    // consistency tests, 0 in normal operation.
    double init_perturbation = 0.0;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(SolveStatus s);

struct Residuals {
    double primal_feas = 0.0;
    double dual_feas = 0.0;
    double rel_gap = 0.0;
};

struct Solution {
    SolveStatus status = SolveStatus::IterationLimit;
    Eigen::VectorXd x;  // variables (de-homogenized; infeasibility certificate otherwise)
    Eigen::VectorXd s;  // primal cone values, one per row
    Eigen::VectorXd z;  // dual values, one per row
    double obj_primal = 0.0;
    double obj_dual = 0.0;
    Residuals residuals;
    int iterations = 0;
    double wall_time_s = 0.0;
    double tau = 0.0, kappa = 0.0;
};

// Primal-dual interior-point method on the homogeneous self-dual embedding.
// status == Optimal implies residuals <= their tolerances.
Solution solve(const ConicProgram& prog, const SolverSettings& settings = {});

struct KktReport {
    double primal_res = 0.0;       // ||Ax + s - b||_inf / (1 + ||b||_inf)
    double dual_res = 0.0;         // ||A'z + c||_inf / (1 + ||c||_inf)
    double rel_gap = 0.0;          // |c'x + b'z| / (1 + |c'x| + |b'z|)
    double primal_cone_viol = 0.0; // worst membership violation of s
    double dual_cone_viol = 0.0;   // worst membership violation of z
    bool pass(const SolverSettings& settings, double factor = 10.0) const;
};

// Recomputes every residual from the program data alone; shares no bookkeeping
// with the solver (see kkt_check.cpp).
KktReport check_kkt(const ConicProgram& prog, const Solution& sol);

// Barrier derivatives of the dual exponential cone; exposed for tests.
void exp_dual_gradient(const double z[3], double g[3]);
void exp_dual_hessian(const double z[3], double H[9]);
// out = grad^3 F*(z)[d, d], the directional third derivative
void exp_dual_third_dir(const double z[3], const double d[3], double out[3]);

}  // namespace tempnet

#endif  // TEMPNET_SOLVER_HPP
