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

#include <doctest.h>

#include <cmath>
#include <random>

#include "tempnet/conic.hpp"
#include "tempnet/solver.hpp"

using namespace tempnet;

namespace {

ConicProgram make_program(int nvars, int nzero, int nnonneg, int nexp,
                          const std::vector<Eigen::Triplet<double>>& trips,
                          const std::vector<double>& b, const std::vector<double>& c) {
    ConicProgram p;
    p.nvars = nvars;
    p.nzero = nzero;
    p.nnonneg = nnonneg;
    p.nexp = nexp;
    p.A.resize(nzero + nnonneg + 3 * nexp, nvars);
    p.A.setFromTriplets(trips.begin(), trips.end());
    p.b = Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());
    p.c = Eigen::Map<const Eigen::VectorXd>(c.data(), c.size());
    p.check_layout();
    return p;
}

// random strictly-interior point of the dual exponential cone
void random_dual_interior(std::mt19937_64& rng, double z[3]) {
    std::uniform_real_distribution<double> unit(0.1, 2.0);
    for (;;) {
        z[0] = -unit(rng);
        z[1] = unit(rng) - 1.0;
        z[2] = unit(rng);
        if (in_exp_dual_interior(z[0], z[1], z[2])) return;
    }
}

}  // namespace

TEST_CASE("dual exponential barrier derivatives match finite differences") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        double z[3];
        random_dual_interior(rng, z);
        double g[3], H[9];
        exp_dual_gradient(z, g);
        exp_dual_hessian(z, H);

        auto F = [](const double p[3]) {
            double phi = (-p[0]) * std::log(p[2] / (-p[0])) + p[1] - p[0];
            return -std::log(phi) - std::log(-p[0]) - std::log(p[2]);
        };
        const double eps = 1e-6;
        for (int i = 0; i < 3; ++i) {
            double zp[3] = {z[0], z[1], z[2]}, zm[3] = {z[0], z[1], z[2]};
            zp[i] += eps;
            zm[i] -= eps;
            double fd = (F(zp) - F(zm)) / (2 * eps);
            CHECK(g[i] == doctest::Approx(fd).epsilon(1e-5));
            double gp[3], gm[3];
            exp_dual_gradient(zp, gp);
            exp_dual_gradient(zm, gm);
            for (int j = 0; j < 3; ++j) {
                double hd = (gp[j] - gm[j]) / (2 * eps);
                CHECK(H[3 * i + j] == doctest::Approx(hd).epsilon(1e-4));
            }
        }
        // logarithmic homogeneity: <-grad, z> = nu = 3
        CHECK(-(g[0] * z[0] + g[1] * z[1] + g[2] * z[2]) == doctest::Approx(3.0).epsilon(1e-12));
        // -grad lands in the primal cone interior
        CHECK(in_exp_cone_interior(-g[0], -g[1], -g[2]));
    }
}

TEST_CASE("dual cone pairs have nonnegative inner products") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.05, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
        double d = unit(rng), a = unit(rng) - 1.5;
        double cmin = d * std::exp(a / d);
        if (!std::isfinite(cmin) || cmin > 1e6) continue;
        double c = cmin * (1.0 + unit(rng));
        double z[3];
        random_dual_interior(rng, z);
        CHECK(a * z[0] + d * z[1] + c * z[2] >= -1e-12);
    }
}

TEST_CASE("linear programs") {
    SUBCASE("min x s.t. x >= 1") {
        // s = b - Ax = x - 1 >= 0
        auto p = make_program(1, 0, 1, 0, {{0, 0, -1.0}}, {-1.0}, {1.0});
        Solution sol = solve(p);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-7));
        KktReport kkt = check_kkt(p, sol);
        CHECK(kkt.pass(SolverSettings{}));
    }
    SUBCASE("equality rows: min x+y s.t. x+y=2, x>=0, y>=0") {
        auto p = make_program(2, 1, 2, 0,
                              {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, -1.0}, {2, 1, -1.0}},
                              {2.0, 0.0, 0.0}, {1.0, 1.0});
        Solution sol = solve(p);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.obj_primal == doctest::Approx(2.0).epsilon(1e-7));
    }
    SUBCASE("infeasible: x >= 1 and -x >= 0") {
        auto p = make_program(1, 0, 2, 0, {{0, 0, -1.0}, {1, 0, 1.0}}, {-1.0, 0.0}, {1.0});
        Solution sol = solve(p);
        CHECK(sol.status == SolveStatus::Infeasible);
    }
    SUBCASE("unbounded: min -x s.t. x >= 0") {
        auto p = make_program(1, 0, 1, 0, {{0, 0, -1.0}}, {0.0}, {-1.0});
        Solution sol = solve(p);
        CHECK(sol.status == SolveStatus::Unbounded);
    }
}

TEST_CASE("scalar exponential-cone problems") {
    SUBCASE("min t s.t. exp(-t) <= 1 gives t* = 0") {
        // rows: (-t, 1, 1) in K_exp
        auto p = make_program(1, 0, 0, 1, {{0, 0, 1.0}}, {0.0, 1.0, 1.0}, {1.0});
        Solution sol = solve(p);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(std::abs(sol.x[0]) < 1e-6);
    }
    SUBCASE("softmax epigraph: min t s.t. e^{a-t} + e^{b-t} <= 1") {
        const double a = 0.3, b = -1.2;
        // vars: t, s1, s2; cones (a - t, 1, s1), (b - t, 1, s2); row s1+s2 <= 1
        std::vector<Eigen::Triplet<double>> trips = {
            {0, 1, 1.0}, {0, 2, 1.0},   // 1 - s1 - s2 >= 0
            {1, 0, 1.0}, {3, 1, -1.0},  // (a - t, 1, s1)
            {4, 0, 1.0}, {6, 2, -1.0},  // (b - t, 1, s2)
        };
        auto p = make_program(3, 0, 1, 2, trips, {1.0, a, 1.0, 0.0, b, 1.0, 0.0},
                              {1.0, 0.0, 0.0});
        Solution sol = solve(p);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.x[0] == doctest::Approx(std::log(std::exp(a) + std::exp(b))).epsilon(1e-7));
        CHECK(check_kkt(p, sol).pass(SolverSettings{}));
    }
    SUBCASE("min c s.t. b*exp(a/b) <= c with a=1, b=2 pinned by zero rows") {
        std::vector<Eigen::Triplet<double>> trips = {
            {0, 0, 1.0}, {1, 1, 1.0},
            {2, 0, -1.0}, {3, 1, -1.0}, {4, 2, -1.0},
        };
        auto p = make_program(3, 2, 0, 1, trips, {1.0, 2.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 1.0});
        Solution sol = solve(p);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.obj_primal == doctest::Approx(2.0 * std::exp(0.5)).epsilon(1e-7));
    }
    SUBCASE("exp-cone infeasibility: exp(x) <= y with y forced negative") {
        // min y s.t. y <= -0.5 and (x, 1, y) in K_exp; dual stays feasible
        auto p = make_program(2, 0, 1, 1, {{0, 1, 1.0}, {1, 0, -1.0}, {3, 1, -1.0}},
                              {-0.5, 0.0, 1.0, 0.0}, {0.0, 1.0});
        Solution sol = solve(p);
        CHECK(sol.status == SolveStatus::Infeasible);
    }
}

TEST_CASE("kkt checker flags perturbed solutions") {
    const double a = 0.3, b = -1.2;
    std::vector<Eigen::Triplet<double>> trips = {
        {0, 1, 1.0}, {0, 2, 1.0}, {1, 0, 1.0}, {3, 1, -1.0}, {4, 0, 1.0}, {6, 2, -1.0},
    };
    auto p = make_program(3, 0, 1, 2, trips, {1.0, a, 1.0, 0.0, b, 1.0, 0.0}, {1.0, 0.0, 0.0});
    Solution sol = solve(p);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(check_kkt(p, sol).pass(SolverSettings{}));

    Solution bad = sol;
    bad.x[1] += 1e-2;  // breaks Ax + s = b
    CHECK(check_kkt(p, bad).primal_res >= 1e-3);
}

TEST_CASE("objective scaling moves the value, not the argmin") {
    const double a = 0.3, b = -1.2;
    std::vector<Eigen::Triplet<double>> trips = {
        {0, 1, 1.0}, {0, 2, 1.0}, {1, 0, 1.0}, {3, 1, -1.0}, {4, 0, 1.0}, {6, 2, -1.0},
    };
    auto p = make_program(3, 0, 1, 2, trips, {1.0, a, 1.0, 0.0, b, 1.0, 0.0}, {1.0, 0.0, 0.0});
    Solution s1 = solve(p);
    ConicProgram p10 = p;
    p10.c *= 10.0;
    Solution s10 = solve(p10);
    REQUIRE(s1.status == SolveStatus::Optimal);
    REQUIRE(s10.status == SolveStatus::Optimal);
    CHECK(s10.obj_primal == doctest::Approx(10.0 * s1.obj_primal).epsilon(1e-7));
    CHECK(s10.x[0] == doctest::Approx(s1.x[0]).epsilon(1e-6));
}

TEST_CASE("repeated solves are bit-identical and perturbed starts agree") {
    const double a = 0.3, b = -1.2;
    std::vector<Eigen::Triplet<double>> trips = {
        {0, 1, 1.0}, {0, 2, 1.0}, {1, 0, 1.0}, {3, 1, -1.0}, {4, 0, 1.0}, {6, 2, -1.0},
    };
    auto p = make_program(3, 0, 1, 2, trips, {1.0, a, 1.0, 0.0, b, 1.0, 0.0}, {1.0, 0.0, 0.0});
    Solution s1 = solve(p);
    Solution s2 = solve(p);
    CHECK(s1.obj_primal == s2.obj_primal);  // deterministic: exact equality
    SolverSettings pert;
    pert.init_perturbation = 0.05;
    Solution s3 = solve(p, pert);
    REQUIRE(s3.status == SolveStatus::Optimal);
    CHECK(s3.obj_primal == doctest::Approx(s1.obj_primal).epsilon(1e-6));
}

TEST_CASE("random max-of-log-sum-exp programs reach their closed-form optimum") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        int groups = 2 + trial % 3;
        int terms = 2 + trial % 2;
        int nvars = 1 + groups * terms;  // t + one slack per term
        std::vector<Eigen::Triplet<double>> trips;
        std::vector<double> b, c(nvars, 0.0);
        std::vector<std::vector<double>> offsets(groups, std::vector<double>(terms));
        c[0] = 1.0;
        for (int g = 0; g < groups; ++g) {
            b.push_back(1.0);  // simplex row per group
            for (int t = 0; t < terms; ++t) trips.emplace_back(g, 1 + g * terms + t, 1.0);
        }
        int row = groups;
        for (int g = 0; g < groups; ++g) {
            for (int t = 0; t < terms; ++t) {
                offsets[g][t] = unit(rng);
                trips.emplace_back(row, 0, 1.0);  // z = offset - t_var
                b.push_back(offsets[g][t]);
                ++row;
                b.push_back(1.0);
                ++row;
                trips.emplace_back(row, 1 + g * terms + t, -1.0);
                b.push_back(0.0);
                ++row;
            }
        }
        auto p = make_program(nvars, 0, groups, groups * terms, trips, b, c);
        Solution sol = solve(p);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(check_kkt(p, sol).pass(SolverSettings{}));
        double expect = -1e300;
        for (int g = 0; g < groups; ++g) {
            double lse = 0.0;
            for (int t = 0; t < terms; ++t) lse += std::exp(offsets[g][t]);
            expect = std::max(expect, std::log(lse));
        }
        CHECK(sol.obj_primal == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("third directional derivative matches differentiated Hessians") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        double z[3];
        random_dual_interior(rng, z);
        double d[3] = {unit(rng), unit(rng), unit(rng)};
        double t3[3];
        exp_dual_third_dir(z, d, t3);
        const double eps = 1e-6;
        double zp[3], zm[3], Hp[9], Hm[9];
        for (int i = 0; i < 3; ++i) {
            zp[i] = z[i] + eps * d[i];
            zm[i] = z[i] - eps * d[i];
        }
        exp_dual_hessian(zp, Hp);
        exp_dual_hessian(zm, Hm);
        for (int i = 0; i < 3; ++i) {
            double fd = 0.0;
            for (int j = 0; j < 3; ++j) fd += (Hp[3 * i + j] - Hm[3 * i + j]) / (2 * eps) * d[j];
            CHECK(t3[i] == doctest::Approx(fd).epsilon(1e-4));
        }
    }
}
