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

// Primal-dual interior-point method for programs over zero, nonnegative and
// exponential cones, on the homogeneous self-dual embedding
//
//     A'z + c tau = 0,   Ax + s - b tau = 0,   c'x + b'z + kappa = 0,
//     s in K, z in K*, tau >= 0, kappa >= 0.
//
// Exponential blocks are linearized with the Hessian of the dual-cone barrier
//     F*(u,v,w) = -log((-u) log(w/(-u)) + v - u) - log(-u) - log(w)
// at the current dual iterate; nonnegative coordinates use the standard
// primal-dual product linearization, with a Mehrotra correction on the
// symmetric part only.  Every Newton solve goes through one quasidefinite
// LDL' factorization with static regularization plus iterative refinement.
//
// The data is Ruiz-equilibrated first (row factors uniform across each
// exponential triple, which keeps both cones invariant) and b, c are brought
// to unit scale; all convergence metrics and certificates are evaluated in
// the original scaling.

#include "tempnet/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>
#include <chrono>
#include <cmath>
#include <iostream>

#include "tempnet/log.hpp"

namespace tempnet {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration-limit";
    }
    return "unknown";
}

void exp_dual_gradient(const double z[3], double g[3]) {
    const double u = z[0], v = z[1], w = z[2];
    const double L = std::log(w / (-u));
    const double phi = (-u) * L + v - u;
    g[0] = L / phi - 1.0 / u;
    g[1] = -1.0 / phi;
    g[2] = u / (w * phi) - 1.0 / w;
}

void exp_dual_hessian(const double z[3], double H[9]) {
    const double u = z[0], w = z[2];
    const double L = std::log(w / (-u));
    const double phi = (-u) * L + z[1] - u;
    // grad phi = (-L, 1, -u/w); hess phi = [[1/u,0,-1/w],[0,0,0],[-1/w,0,u/w^2]]
    const double gp[3] = {-L, 1.0, -u / w};
    const double inv_phi = 1.0 / phi;
    const double inv_phi2 = inv_phi * inv_phi;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) H[3 * r + c] = gp[r] * gp[c] * inv_phi2;
    H[0] += -inv_phi / u + 1.0 / (u * u);
    H[2] += inv_phi / w;
    H[6] += inv_phi / w;
    H[8] += -inv_phi * u / (w * w) + 1.0 / (w * w);
}

void exp_dual_third_dir(const double z[3], const double d[3], double out[3]) {
    const double u = z[0], w = z[2];
    const double L = std::log(w / (-u));
    const double phi = (-u) * L + z[1] - u;
    const double gp[3] = {-L, 1.0, -u / w};
    // hess phi = [[1/u,0,-1/w],[0,0,0],[-1/w,0,u/w^2]]
    const double hvec[3] = {d[0] / u - d[2] / w, 0.0, -d[0] / w + u * d[2] / (w * w)};
    const double a1 = gp[0] * d[0] + gp[1] * d[1] + gp[2] * d[2];
    const double a2 = d[0] * hvec[0] + d[2] * hvec[2];
    // grad^3 phi [d,d]
    const double p3[3] = {-d[0] * d[0] / (u * u) + d[2] * d[2] / (w * w), 0.0,
                          2.0 * d[0] * d[2] / (w * w) - 2.0 * u * d[2] * d[2] / (w * w * w)};
    const double inv_phi = 1.0 / phi;
    const double inv_phi2 = inv_phi * inv_phi;
    const double inv_phi3 = inv_phi2 * inv_phi;
    for (int i = 0; i < 3; ++i)
        out[i] = -p3[i] * inv_phi + (2.0 * hvec[i] * a1 + gp[i] * a2) * inv_phi2 -
                 2.0 * gp[i] * a1 * a1 * inv_phi3;
    out[0] += -2.0 * d[0] * d[0] / (u * u * u);
    out[2] += -2.0 * d[2] * d[2] / (w * w * w);
}

namespace {

// proximity thresholds: re-center beyond kEtaCenter, and cap predictor steps
// at the edge of the wide neighborhood
constexpr double kEtaCenter = 8.0;
constexpr double kEtaWide = 40.0;

struct Work {
    const SolverSettings& set;
    int n, m, mz, mn, me;
    double nu;  // barrier parameter

    // equilibrated data
    Eigen::SparseMatrix<double> A, At;
    Eigen::VectorXd b, c;          // scaled
    Eigen::VectorXd row_scale;     // E
    Eigen::VectorXd col_scale;     // D
    double bs = 1.0, cs = 1.0;     // scalar norms of Eb, Dc

    Eigen::VectorXd x, z, s;
    double tau = 1.0, kappa = 1.0;

    Eigen::VectorXd wdiag;              // nonneg scaling block
    std::vector<Eigen::Matrix3d> wexp;  // exp scaling blocks

    Eigen::SparseMatrix<double> M;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    bool analyzed = false;
    double reg = 1e-8;
    mutable int last_clip = -1;

    Work(const ConicProgram& p, const SolverSettings& s_)
        : set(s_), n(p.nvars), m(p.rows()), mz(p.nzero), mn(p.nnonneg), me(p.nexp) {
        nu = mn + 3.0 * me;
        equilibrate(p);
    }

    int exp_row(int blk) const { return mz + mn + 3 * blk; }

    void equilibrate(const ConicProgram& p);
    void init_point();
    double mu() const;
    void scaling_blocks();
    void assemble_kkt();
    bool factorize();
    void kkt_matvec(const Eigen::VectorXd& px, const Eigen::VectorXd& pz, Eigen::VectorXd& ox,
                    Eigen::VectorXd& oz) const;
    void solve_kkt(const Eigen::VectorXd& rx, const Eigen::VectorXd& rz, Eigen::VectorXd& px,
                   Eigen::VectorXd& pz) const;
    bool interior(const Eigen::VectorXd& s_, const Eigen::VectorXd& z_, double tau_,
                  double kappa_) const;
    double max_step(const Eigen::VectorXd& ds, const Eigen::VectorXd& dz, double dtau,
                    double dkappa, double fraction) const;
    double proximity(const Eigen::VectorXd& s_, const Eigen::VectorXd& z_, double tau_,
                     double kappa_) const;
};

void Work::equilibrate(const ConicProgram& p) {
    row_scale = Eigen::VectorXd::Ones(m);
    col_scale = Eigen::VectorXd::Ones(n);
    auto clampf = [](double v) { return std::clamp(v, 1e-4, 1e4); };
    for (int pass = 0; pass < 3; ++pass) {
        Eigen::VectorXd rmax = Eigen::VectorXd::Zero(m);
        for (int col = 0; col < p.A.outerSize(); ++col)
            for (Eigen::SparseMatrix<double>::InnerIterator it(p.A, col); it; ++it) {
                double v = std::abs(it.value()) * row_scale[it.row()] * col_scale[col];
                rmax[it.row()] = std::max(rmax[it.row()], v);
            }
        // uniform factor per exponential triple keeps the cone invariant
        for (int bn = 0; bn < me; ++bn) {
            int r = exp_row(bn);
            double mx = std::max({rmax[r], rmax[r + 1], rmax[r + 2]});
            rmax[r] = rmax[r + 1] = rmax[r + 2] = mx;
        }
        for (int r = 0; r < m; ++r)
            if (rmax[r] > 0.0) row_scale[r] = clampf(row_scale[r] / std::sqrt(rmax[r]));
        Eigen::VectorXd cmax = Eigen::VectorXd::Zero(n);
        for (int col = 0; col < p.A.outerSize(); ++col)
            for (Eigen::SparseMatrix<double>::InnerIterator it(p.A, col); it; ++it) {
                double v = std::abs(it.value()) * row_scale[it.row()] * col_scale[col];
                cmax[col] = std::max(cmax[col], v);
            }
        for (int col = 0; col < n; ++col)
            if (cmax[col] > 0.0) col_scale[col] = clampf(col_scale[col] / std::sqrt(cmax[col]));
    }
    A = row_scale.asDiagonal() * p.A * col_scale.asDiagonal();
    A.makeCompressed();
    At = A.transpose();
    b = row_scale.asDiagonal() * p.b;
    c = col_scale.asDiagonal() * p.c;
    bs = std::max(1.0, b.size() ? b.lpNorm<Eigen::Infinity>() : 0.0);
    cs = std::max(1.0, c.size() ? c.lpNorm<Eigen::Infinity>() : 0.0);
    b /= bs;
    c /= cs;
}

void Work::init_point() {
    x = Eigen::VectorXd::Zero(n);
    z = Eigen::VectorXd::Zero(m);
    s = Eigen::VectorXd::Zero(m);
    const double eps = set.init_perturbation;
    auto bump = [&](int idx) {
        double f = std::fmod(0.618033988749895 * (idx + 1), 1.0);
        return 1.0 + eps * f;
    };
    for (int i = 0; i < mn; ++i) {
        double zi = bump(i);
        z[mz + i] = zi;
        s[mz + i] = 1.0 / zi;
    }
    for (int bn = 0; bn < me; ++bn) {
        int r = exp_row(bn);
        double zb[3] = {-1.0 * bump(3 * bn), 0.5, 1.5 * bump(3 * bn + 1)};
        double g[3];
        exp_dual_gradient(zb, g);
        for (int t = 0; t < 3; ++t) {
            z[r + t] = zb[t];
            s[r + t] = -g[t];
        }
    }
    tau = 1.0;
    kappa = 1.0;
}

double Work::mu() const {
    double dot = tau * kappa;
    for (int i = mz; i < m; ++i) dot += s[i] * z[i];
    return dot / (nu + 1.0);
}

void Work::scaling_blocks() {
    const double m_u = mu();
    wdiag.resize(mn);
    for (int i = 0; i < mn; ++i) wdiag[i] = s[mz + i] / z[mz + i];
    wexp.assign(me, Eigen::Matrix3d());
    for (int bn = 0; bn < me; ++bn) {
        int r = exp_row(bn);
        double zb[3] = {z[r], z[r + 1], z[r + 2]};
        double H[9];
        exp_dual_hessian(zb, H);
        Eigen::Matrix3d B;
        for (int rr = 0; rr < 3; ++rr)
            for (int cc = 0; cc < 3; ++cc) B(rr, cc) = m_u * H[3 * rr + cc];
        // rank-two update enforcing the secant condition W z = s; keeps W
        // positive definite since <s,z> > 0 inside the cones (the 1-d analogue
        // collapses to the s/z scaling used on nonnegative coordinates)
        Eigen::Vector3d zv(zb[0], zb[1], zb[2]);
        Eigen::Vector3d sv(s[r], s[r + 1], s[r + 2]);
        Eigen::Vector3d Bz = B * zv;
        double ztBz = zv.dot(Bz);
        double sz = sv.dot(zv);
        if (ztBz > 0.0 && sz > 0.0) {
            wexp[bn] = B - (Bz * Bz.transpose()) / ztBz + (sv * sv.transpose()) / sz;
        } else {
            wexp[bn] = B;
        }
    }
}

void Work::assemble_kkt() {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(2 * A.nonZeros() + n + m + 9 * me));
    for (int i = 0; i < n; ++i) trip.emplace_back(i, i, reg);
    for (int col = 0; col < A.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it) {
            trip.emplace_back(n + static_cast<int>(it.row()), col, it.value());
            trip.emplace_back(col, n + static_cast<int>(it.row()), it.value());
        }
    }
    for (int r = 0; r < mz; ++r) trip.emplace_back(n + r, n + r, -reg);
    for (int i = 0; i < mn; ++i) trip.emplace_back(n + mz + i, n + mz + i, -wdiag[i] - reg);
    for (int bn = 0; bn < me; ++bn) {
        int r = n + exp_row(bn);
        for (int rr = 0; rr < 3; ++rr)
            for (int cc = 0; cc < 3; ++cc)
                trip.emplace_back(r + rr, r + cc, -wexp[bn](rr, cc) - (rr == cc ? reg : 0.0));
    }
    M.resize(n + m, n + m);
    M.setFromTriplets(trip.begin(), trip.end());
}

bool Work::factorize() {
    assemble_kkt();
    if (!analyzed) {
        ldlt.analyzePattern(M);
        analyzed = true;
    }
    ldlt.factorize(M);
    return ldlt.info() == Eigen::Success;
}

void Work::kkt_matvec(const Eigen::VectorXd& px, const Eigen::VectorXd& pz, Eigen::VectorXd& ox,
                      Eigen::VectorXd& oz) const {
    ox = At * pz;
    oz = A * px;
    for (int i = 0; i < mn; ++i) oz[mz + i] -= wdiag[i] * pz[mz + i];
    for (int bn = 0; bn < me; ++bn) {
        int r = exp_row(bn);
        Eigen::Vector3d seg(pz[r], pz[r + 1], pz[r + 2]);
        Eigen::Vector3d out = wexp[bn] * seg;
        oz[r] -= out[0];
        oz[r + 1] -= out[1];
        oz[r + 2] -= out[2];
    }
}

void Work::solve_kkt(const Eigen::VectorXd& rx, const Eigen::VectorXd& rz, Eigen::VectorXd& px,
                     Eigen::VectorXd& pz) const {
    Eigen::VectorXd rhs(n + m);
    rhs.head(n) = rx;
    rhs.tail(m) = rz;
    const double rhs_norm = 1.0 + rhs.lpNorm<Eigen::Infinity>();
    Eigen::VectorXd sol = ldlt.solve(rhs);
    // refine against the unregularized matrix until the residual bottoms out
    double prev = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < 10; ++pass) {
        Eigen::VectorXd ox, oz;
        kkt_matvec(sol.head(n), sol.tail(m), ox, oz);
        Eigen::VectorXd res(n + m);
        res.head(n) = rx - ox;
        res.tail(m) = rz - oz;
        double rn = res.lpNorm<Eigen::Infinity>();
        if (rn <= 1e-13 * rhs_norm || rn >= 0.5 * prev) break;
        prev = rn;
        sol += ldlt.solve(res);
    }
    px = sol.head(n);
    pz = sol.tail(m);
}

bool Work::interior(const Eigen::VectorXd& s_, const Eigen::VectorXd& z_, double tau_,
                    double kappa_) const {
    if (!(tau_ > 0.0) || !(kappa_ > 0.0)) return false;
    for (int i = 0; i < mn; ++i)
        if (!(s_[mz + i] > 0.0) || !(z_[mz + i] > 0.0)) return false;
    for (int bn = 0; bn < me; ++bn) {
        int r = exp_row(bn);
        if (!in_exp_cone_interior(s_[r], s_[r + 1], s_[r + 2])) return false;
        if (!in_exp_dual_interior(z_[r], z_[r + 1], z_[r + 2])) return false;
    }
    return true;
}

// Distance to the central path at barrier weight mu: the worst block value of
// ||s + mu grad F*(z)|| measured in the inverse Hessian norm, normalized by mu.
// 0 on the path; direction quality for the dual-Hessian linearization degrades
// quickly beyond ~1.
double Work::proximity(const Eigen::VectorXd& s_, const Eigen::VectorXd& z_, double tau_,
                       double kappa_) const {
    double dot = tau_ * kappa_;
    for (int i = mz; i < m; ++i) dot += s_[i] * z_[i];
    const double m_u = dot / (nu + 1.0);
    if (!(m_u > 0.0)) return std::numeric_limits<double>::infinity();
    double worst = std::abs(tau_ * kappa_ / m_u - 1.0);
    for (int i = 0; i < mn; ++i) {
        int r = mz + i;
        worst = std::max(worst, std::abs(s_[r] * z_[r] / m_u - 1.0));
    }
    for (int bn = 0; bn < me; ++bn) {
        int r = exp_row(bn);
        double zb[3] = {z_[r], z_[r + 1], z_[r + 2]};
        double g[3], H[9];
        exp_dual_gradient(zb, g);
        exp_dual_hessian(zb, H);
        Eigen::Matrix3d Hm;
        for (int rr = 0; rr < 3; ++rr)
            for (int cc = 0; cc < 3; ++cc) Hm(rr, cc) = H[3 * rr + cc];
        Eigen::Vector3d res(s_[r] + m_u * g[0], s_[r + 1] + m_u * g[1], s_[r + 2] + m_u * g[2]);
        double q = res.dot(Hm.ldlt().solve(res));
        // near the boundary the 3x3 solve can lose positivity to roundoff
        if (std::isnan(q)) return std::numeric_limits<double>::infinity();
        // matches |s z / mu - 1| on one-dimensional blocks
        worst = std::max(worst, std::sqrt(std::max(q, 0.0)) / m_u);
    }
    return worst;
}

double Work::max_step(const Eigen::VectorXd& ds, const Eigen::VectorXd& dz, double dtau,
                      double dkappa, double fraction) const {
    double a = 1.0;
    last_clip = -1;  // -1 tau/kappa/none, row index otherwise
    auto clip = [&](double val, double dval, int who) {
        if (dval < 0.0 && -val / dval < a) {
            a = -val / dval;
            last_clip = who;
        }
    };
    clip(tau, dtau, -2);
    clip(kappa, dkappa, -3);
    for (int i = 0; i < mn; ++i) {
        clip(s[mz + i], ds[mz + i], mz + i);
        clip(z[mz + i], dz[mz + i], 1000000 + mz + i);
    }
    a = std::min(1.0, fraction * a);
    auto exp_ok = [&](double t) {
        for (int bn = 0; bn < me; ++bn) {
            int r = exp_row(bn);
            if (!in_exp_cone_interior(s[r] + t * ds[r], s[r + 1] + t * ds[r + 1],
                                      s[r + 2] + t * ds[r + 2]) ||
                !in_exp_dual_interior(z[r] + t * dz[r], z[r + 1] + t * dz[r + 1],
                                      z[r + 2] + t * dz[r + 2]))
                return false;
        }
        return true;
    };
    if (exp_ok(a)) return a;
    // bisect the boundary crossing; stand off further than on the symmetric
    // part, since direction quality right at the exponential boundary is poor
    double lo = 0.0, hi = a;
    for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        if (exp_ok(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.85 * lo;
}

}  // namespace

Solution solve(const ConicProgram& prog, const SolverSettings& settings) {
    prog.check_layout();
    const auto t0 = std::chrono::steady_clock::now();

    Work w(prog, settings);
    w.init_point();

    const int n = w.n, m = w.m;
    const double bnorm_orig = prog.b.size() ? prog.b.lpNorm<Eigen::Infinity>() : 0.0;
    const double cnorm_orig = prog.c.size() ? prog.c.lpNorm<Eigen::Infinity>() : 0.0;

    Solution sol;
    sol.x = Eigen::VectorXd::Zero(n);
    sol.s = w.s;
    sol.z = w.z;

    auto finish = [&](SolveStatus st, int iters) {
        sol.status = st;
        sol.iterations = iters;
        sol.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return sol;
    };

    // maps back to the original scaling (still homogeneous in tau)
    auto unscale_x = [&](const Eigen::VectorXd& xv) -> Eigen::VectorXd {
        return w.bs * (w.col_scale.asDiagonal() * xv);
    };
    auto unscale_s = [&](const Eigen::VectorXd& sv) -> Eigen::VectorXd {
        return w.bs * (sv.cwiseQuotient(w.row_scale));
    };
    auto unscale_z = [&](const Eigen::VectorXd& zv) -> Eigen::VectorXd {
        return w.cs * (w.row_scale.asDiagonal() * zv);
    };

    double best_score = std::numeric_limits<double>::infinity();
    double last_alpha = 0.0, last_sigma = 0.0;

    for (int iter = 0; iter <= settings.max_iters; ++iter) {
        // residuals of the (scaled) embedding
        Eigen::VectorXd r_x = w.At * w.z + w.c * w.tau;
        Eigen::VectorXd r_z = w.A * w.x + w.s - w.b * w.tau;
        double r_tau = w.c.dot(w.x) + w.b.dot(w.z) + w.kappa;
        double m_u = w.mu();

        // convergence metrics in the original scaling
        Eigen::VectorXd x_u = unscale_x(w.x), s_u = unscale_s(w.s), z_u = unscale_z(w.z);
        double pobj = prog.c.dot(x_u) / w.tau;
        double dobj = -prog.b.dot(z_u) / w.tau;
        // r_z and r_x map back elementwise: bs*E^{-1} r_z = Ax_u + s_u - b*tau
        // and cs*D^{-1} r_x = A'z_u + c*tau
        Eigen::VectorXd pr_vec = w.bs * (r_z.cwiseQuotient(w.row_scale));
        Eigen::VectorXd dr_vec = w.cs * (r_x.cwiseQuotient(w.col_scale));
        double pres = pr_vec.lpNorm<Eigen::Infinity>() / w.tau / (1.0 + bnorm_orig);
        double dres = dr_vec.lpNorm<Eigen::Infinity>() / w.tau / (1.0 + cnorm_orig);
        double gap = std::abs(pobj - dobj) / (1.0 + std::max(std::abs(pobj), std::abs(dobj)));

        double score = std::max({pres, dres, gap});
        if (score < best_score || iter == 0) {
            best_score = score;
            sol.x = x_u / w.tau;
            sol.s = s_u / w.tau;
            sol.z = z_u / w.tau;
            sol.obj_primal = pobj;
            sol.obj_dual = dobj;
            sol.residuals = {pres, dres, gap};
            sol.tau = w.tau;
            sol.kappa = w.kappa;
        }

        if (settings.verbose) {
            std::cerr << "iter " << iter << " mu=" << m_u << " pres=" << pres << " dres=" << dres
                      << " gap=" << gap << " tau=" << w.tau << " kappa=" << w.kappa
                      << " alpha=" << last_alpha << " sigma=" << last_sigma
                      << " prox=" << w.proximity(w.s, w.z, w.tau, w.kappa)
                      << " clip=" << w.last_clip << "\n";
        }

        if (pres <= settings.feas_tol && dres <= settings.feas_tol && gap <= settings.gap_tol)
            return finish(SolveStatus::Optimal, iter);

        // infeasibility certificates (original scaling)
        double bz = prog.b.dot(z_u);
        if (bz < -1e-12) {
            Eigen::VectorXd Atz = w.cs * ((r_x - w.c * w.tau).cwiseQuotient(w.col_scale));
            double cert = Atz.lpNorm<Eigen::Infinity>() * std::max(1.0, bnorm_orig) / (-bz);
            if (cert <= settings.feas_tol) {
                sol.x = x_u;
                sol.s = s_u;
                sol.z = z_u / (-bz);
                sol.obj_primal = pobj;
                sol.obj_dual = dobj;
                sol.residuals = {pres, dres, gap};
                return finish(SolveStatus::Infeasible, iter);
            }
        }
        double cx = prog.c.dot(x_u);
        if (cx < -1e-12) {
            Eigen::VectorXd Axs = w.bs * ((r_z + w.b * w.tau).cwiseQuotient(w.row_scale));
            double cert = Axs.lpNorm<Eigen::Infinity>() * std::max(1.0, cnorm_orig) / (-cx);
            if (cert <= settings.feas_tol) {
                sol.x = x_u / (-cx);
                sol.s = s_u / (-cx);
                sol.z = z_u;
                sol.obj_primal = pobj;
                sol.obj_dual = dobj;
                sol.residuals = {pres, dres, gap};
                return finish(SolveStatus::Unbounded, iter);
            }
        }

        if (iter == settings.max_iters) break;

        w.scaling_blocks();
        // keep the static regularization well below the scaling-block entries,
        // which shrink with mu; otherwise late Newton systems are falsified
        w.reg = std::clamp(1e-8 * m_u, 1e-14, 1e-8);
        bool factor_ok = false;
        for (int attempt = 0; attempt < 6 && !factor_ok; ++attempt) {
            factor_ok = w.factorize();
            if (!factor_ok) w.reg *= 100.0;
        }
        if (!factor_ok) return finish(SolveStatus::IterationLimit, iter);

        Eigen::VectorXd p2, q2;
        w.solve_kkt(-w.c, w.b, p2, q2);

        double corr_weight = 1.0;
        auto direction = [&](double sigma, const Eigen::VectorXd* ds_aff,
                             const Eigen::VectorXd* dz_aff, double dtau_aff, double dkappa_aff,
                             Eigen::VectorXd& dx, Eigen::VectorXd& dz, Eigen::VectorXd& ds,
                             double& dtau, double& dkappa) {
            double eta = 1.0 - sigma;
            Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
            for (int i = 0; i < w.mn; ++i) {
                int r = w.mz + i;
                double corr = ds_aff ? (*ds_aff)[r] * (*dz_aff)[r] : 0.0;
                e[r] = (sigma * m_u - w.s[r] * w.z[r] - corr) / w.z[r];
            }
            for (int bk = 0; bk < w.me; ++bk) {
                int r = w.exp_row(bk);
                double zb[3] = {w.z[r], w.z[r + 1], w.z[r + 2]};
                double g[3];
                exp_dual_gradient(zb, g);
                double t3[3] = {0.0, 0.0, 0.0};
                if (dz_aff) {
                    // second-order term of s + sigma mu grad F*(z + a*dz),
                    // trusted only as far as the affine step reached
                    double db[3] = {(*dz_aff)[r], (*dz_aff)[r + 1], (*dz_aff)[r + 2]};
                    exp_dual_third_dir(zb, db, t3);
                }
                double base = 0.0, corr = 0.0;
                for (int t = 0; t < 3; ++t) {
                    base += std::pow(w.s[r + t] + sigma * m_u * g[t], 2);
                    corr += std::pow(0.5 * corr_weight * m_u * t3[t], 2);
                }
                // per-block trust bound on the correction
                double scale = corr > 0.25 * base ? std::sqrt(0.25 * base / corr) : 1.0;
                for (int t = 0; t < 3; ++t)
                    e[r + t] = -w.s[r + t] - sigma * m_u * g[t] -
                               scale * 0.5 * corr_weight * m_u * t3[t];
            }
            Eigen::VectorXd rx1 = -eta * r_x;
            Eigen::VectorXd rz1 = -eta * r_z - e;
            Eigen::VectorXd p1, q1;
            w.solve_kkt(rx1, rz1, p1, q1);

            double corr_tk = ds_aff ? dtau_aff * dkappa_aff : 0.0;
            double tk_rhs = (sigma * m_u - w.tau * w.kappa - corr_tk) / w.tau;
            double denom = w.c.dot(p2) + w.b.dot(q2) - w.kappa / w.tau;
            double num = -eta * r_tau - w.c.dot(p1) - w.b.dot(q1) - tk_rhs;
            dtau = std::abs(denom) > 1e-300 ? num / denom : 0.0;
            dx = p1 + dtau * p2;
            dz = q1 + dtau * q2;
            ds = Eigen::VectorXd::Zero(m);
            for (int i = 0; i < w.mn; ++i) {
                int r = w.mz + i;
                ds[r] = e[r] - w.wdiag[i] * dz[r];
            }
            for (int bk = 0; bk < w.me; ++bk) {
                int r = w.exp_row(bk);
                Eigen::Vector3d seg(dz[r], dz[r + 1], dz[r + 2]);
                Eigen::Vector3d hd = w.wexp[bk] * seg;
                for (int t = 0; t < 3; ++t) ds[r + t] = e[r + t] - hd[t];
            }
            dkappa = tk_rhs - (w.kappa / w.tau) * dtau;
        };

        // Off-center iterates give poor scaled directions mid-flight, so spend
        // an iteration re-centering when the proximity is large.  Near
        // convergence the measure itself turns numerically meaningless, so the
        // safeguard disengages and plain Mehrotra steps finish the job.
        const bool manage_centrality = m_u > 1e-7;
        const double prox =
            manage_centrality ? w.proximity(w.s, w.z, w.tau, w.kappa) : 0.0;
        Eigen::VectorXd dx, dz, ds;
        double dtau, dkappa, alpha, sigma;

        auto prox_at = [&](const Eigen::VectorXd& ds_, const Eigen::VectorXd& dz_, double dtau_,
                           double dkappa_, double a) {
            return w.proximity(w.s + a * ds_, w.z + a * dz_, w.tau + a * dtau_,
                               w.kappa + a * dkappa_);
        };
        // centering acceptance: any strict improvement of the center measure
        auto center_ok = [&](double p) { return p < prox; };

        bool have_step = false;
        if (manage_centrality && prox > kEtaCenter) {
            for (double sig : {0.8, 1.0}) {
                sigma = sig;
                direction(sig, nullptr, nullptr, 0.0, 0.0, dx, dz, ds, dtau, dkappa);
                if (!dx.allFinite() || !dz.allFinite() || !ds.allFinite()) continue;
                alpha = w.max_step(ds, dz, dtau, dkappa, 0.99);
                int guard = 0;
                while (alpha > 1e-9 && !center_ok(prox_at(ds, dz, dtau, dkappa, alpha)) &&
                       guard++ < 40)
                    alpha *= 0.7;
                if (alpha > 1e-9) {
                    have_step = true;
                    break;
                }
            }
        } else {
            // Mehrotra predictor-corrector
            Eigen::VectorXd dx_a, dz_a, ds_a;
            double dtau_a, dkappa_a;
            direction(0.0, nullptr, nullptr, 0.0, 0.0, dx_a, dz_a, ds_a, dtau_a, dkappa_a);
            if (dx_a.allFinite() && dz_a.allFinite() && ds_a.allFinite()) {
                double alpha_aff = w.max_step(ds_a, dz_a, dtau_a, dkappa_a, 0.99);
                double mu_aff = (w.tau + alpha_aff * dtau_a) * (w.kappa + alpha_aff * dkappa_a);
                for (int i = w.mz; i < m; ++i)
                    mu_aff += (w.s[i] + alpha_aff * ds_a[i]) * (w.z[i] + alpha_aff * dz_a[i]);
                mu_aff /= (w.nu + 1.0);
                sigma = std::clamp(std::pow(mu_aff / m_u, 3.0), 1e-4, 0.9999);

                corr_weight = alpha_aff * alpha_aff;
                direction(sigma, &ds_a, &dz_a, dtau_a, dkappa_a, dx, dz, ds, dtau, dkappa);
                if (dx.allFinite() && dz.allFinite() && ds.allFinite()) {
                    alpha = w.max_step(ds, dz, dtau, dkappa, 0.99);
                    int guard = 0;
                    while (manage_centrality && alpha > 1e-7 &&
                           prox_at(ds, dz, dtau, dkappa, alpha) > kEtaWide && guard++ < 40)
                        alpha *= 0.8;
                    have_step = alpha > 1e-7;
                }
            }
            if (!have_step) {
                // unusable predictor: re-center instead
                sigma = 1.0;
                direction(1.0, nullptr, nullptr, 0.0, 0.0, dx, dz, ds, dtau, dkappa);
                if (dx.allFinite() && dz.allFinite() && ds.allFinite()) {
                    alpha = w.max_step(ds, dz, dtau, dkappa, 0.90);
                    int guard = 0;
                    while (alpha > 1e-9 && !center_ok(prox_at(ds, dz, dtau, dkappa, alpha)) &&
                           guard++ < 40)
                        alpha *= 0.7;
                    have_step = alpha > 1e-9;
                }
            }
        }
        if (!have_step) {
            // last resort: the largest membership-safe sliver of the latest
            // direction; max_iters bounds how long this can go on
            if (!dx.allFinite() || !dz.allFinite() || !ds.allFinite())
                return finish(SolveStatus::IterationLimit, iter);
            alpha = 0.5 * w.max_step(ds, dz, dtau, dkappa, 0.90);
            if (!(alpha > 0.0)) return finish(SolveStatus::IterationLimit, iter);
        }

        w.x += alpha * dx;
        w.z += alpha * dz;
        w.s += alpha * ds;
        w.tau += alpha * dtau;
        w.kappa += alpha * dkappa;
        last_alpha = alpha;
        last_sigma = sigma;
        if (!w.interior(w.s, w.z, w.tau, w.kappa))
            return finish(SolveStatus::IterationLimit, iter + 1);
    }

    return finish(SolveStatus::IterationLimit, settings.max_iters);
}

}  // namespace tempnet
