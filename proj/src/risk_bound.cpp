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

#include "tempnet/risk_bound.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace tempnet {

RiskCertificate tight_certificate(const TemporalNetwork& net, const RateSchedule& rates) {
    const int K = net.K();
    const Eigen::VectorXd C = net.cost_vector();
    RiskCertificate cert;
    cert.mode = HorizonMode::Finite;
    cert.p.assign(K, Eigen::VectorXd());
    cert.p[K - 1] = C;
    for (int k = K - 2; k >= 0; --k) {
        Eigen::SparseMatrix<double> A = build_state_matrix(net, k, rates);
        // (p^{k+1} A^k)_j = sum_i p_i a_ij = (A^T p)_j
        cert.p[k] = C + net.globals.alpha * (Eigen::SparseMatrix<double>(A.transpose()) * cert.p[k + 1]);
    }
    return cert;
}

SpectralEstimate spectral_radius_estimate(const Eigen::SparseMatrix<double>& M, int max_iters,
                                          double tol) {
    SpectralEstimate est;
    const int n = static_cast<int>(M.rows());
    if (n == 0) {
        est.converged = true;
        return est;
    }
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    double best_hi = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iters; ++it) {
        Eigen::VectorXd y = M * x;
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (int i = 0; i < n; ++i) {
            double ratio = y[i] / x[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        best_hi = std::min(best_hi, hi);
        est.iterations = it;
        if (hi - lo <= tol * std::max(1.0, hi)) {
            est.rho = hi;
            est.converged = true;
            return est;
        }
        double norm = y.lpNorm<Eigen::Infinity>();
        if (norm == 0.0) {  // nilpotent-ish; rho = 0
            est.rho = 0.0;
            est.converged = true;
            return est;
        }
        // keep strictly positive so Collatz-Wielandt ratios stay defined
        x = y / norm + Eigen::VectorXd::Constant(n, 1e-300);
    }
    // Non-convergence (e.g. reducible/periodic structure): fall back to the
    // best Collatz-Wielandt upper bound seen, flagged low-confidence.
    est.rho = best_hi;
    est.converged = false;
    return est;
}

Eigen::VectorXd infinite_terminal(const Eigen::SparseMatrix<double>& A_K,
                                  const Eigen::VectorXd& cost, double alpha) {
    const int n = static_cast<int>(A_K.rows());
    Eigen::SparseMatrix<double> aA = alpha * A_K;
    SpectralEstimate est = spectral_radius_estimate(aA);
    if (est.rho >= 1.0 - 1e-9) {
        std::ostringstream os;
        os << "infinite-horizon certificate does not exist: spectral radius of alpha*A^K is "
           << est.rho << (est.converged ? "" : " (upper bound, power iteration did not converge)");
        throw DivergenceError(os.str(), est.rho);
    }

    // Solve p (I - alpha A) = C, i.e. (I - alpha A)^T p = C^T.
    Eigen::SparseMatrix<double> I(n, n);
    I.setIdentity();
    Eigen::SparseMatrix<double> M = Eigen::SparseMatrix<double>((I - aA).transpose());
    M.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(M);
    if (lu.info() != Eigen::Success)
        throw DivergenceError("LU factorization of (I - alpha A^K)^T failed", est.rho);
    Eigen::VectorXd p = lu.solve(cost);
    double resid = (M * p - cost).norm();
    if (resid > 1e-9 * std::max(1.0, cost.norm()))
        throw DivergenceError("terminal solve residual too large: " + std::to_string(resid),
                              est.rho);
    // Neumann series of a nonnegative matrix: clip roundoff negatives.
    p = p.cwiseMax(0.0);
    return p;
}

Eigen::VectorXd infinite_terminal(const TemporalNetwork& net, const RateSchedule& rates) {
    return infinite_terminal(build_state_matrix(net, net.K() - 1, rates), net.cost_vector(),
                             net.globals.alpha);
}

RiskCertificate infinite_certificate(const TemporalNetwork& net, const RateSchedule& rates) {
    const int K = net.K();
    const Eigen::VectorXd C = net.cost_vector();
    RiskCertificate cert;
    cert.mode = HorizonMode::Infinite;
    cert.p.assign(K, Eigen::VectorXd());
    cert.p[K - 1] = infinite_terminal(net, rates);
    for (int k = K - 2; k >= 0; --k) {
        Eigen::SparseMatrix<double> A = build_state_matrix(net, k, rates);
        cert.p[k] = C + net.globals.alpha * (Eigen::SparseMatrix<double>(A.transpose()) * cert.p[k + 1]);
    }
    return cert;
}

CertificateReport verify_certificate(const RiskCertificate& cert, const TemporalNetwork& net,
                                     const RateSchedule& rates, double tol) {
    const int K = net.K();
    const int n = net.n();
    CertificateReport rep;
    rep.tol = tol;
    if (static_cast<int>(cert.p.size()) != K)
        throw std::invalid_argument("certificate must hold p^1..p^K");

    for (int k = 0; k < K; ++k) {
        if (cert.p[k].size() != n) throw std::invalid_argument("certificate dimension mismatch");
        rep.nonneg_violation = std::max(rep.nonneg_violation, -cert.p[k].minCoeff());
    }

    const Eigen::VectorXd C = net.cost_vector();
    auto check_step = [&](int k, const Eigen::VectorXd& p_next, const Eigen::VectorXd& p_k) {
        Eigen::SparseMatrix<double> A = build_state_matrix(net, k, rates);
        Eigen::VectorXd rhs =
            C + net.globals.alpha * (Eigen::SparseMatrix<double>(A.transpose()) * p_next);
        for (int i = 0; i < n; ++i) {
            double viol = rhs[i] - p_k[i];
            if (viol > rep.max_violation) {
                rep.max_violation = viol;
                rep.worst_k = k + 1;
                rep.worst_i = i + 1;
            }
        }
    };

    for (int k = 0; k < K - 1; ++k) check_step(k, cert.p[k + 1], cert.p[k]);
    if (cert.mode == HorizonMode::Finite) {
        // p^{K+1} = 0: the step-K inequality reduces to p^K >= C.
        for (int i = 0; i < n; ++i) {
            double viol = C[i] - cert.p[K - 1][i];
            if (viol > rep.max_violation) {
                rep.max_violation = viol;
                rep.worst_k = K;
                rep.worst_i = i + 1;
            }
        }
    } else {
        check_step(K - 1, cert.p[K - 1], cert.p[K - 1]);
    }

    rep.pass = rep.max_violation <= tol && rep.nonneg_violation <= tol;
    return rep;
}

Eigen::VectorXd risk_vector(const RiskCertificate& cert, const Eigen::VectorXd& x_hat) {
    if (cert.p.empty() || cert.p[0].size() != x_hat.size())
        throw std::invalid_argument("certificate/x_hat dimension mismatch");
    return cert.p[0].cwiseProduct(x_hat);
}

double max_risk(const Eigen::VectorXd& R) { return R.size() ? R.maxCoeff() : 0.0; }
double total_risk(const Eigen::VectorXd& R) { return R.sum(); }

double terminal_dominance_gap(const Eigen::SparseMatrix<double>& A_K,
                              const std::vector<Eigen::SparseMatrix<double>>& future) {
    double worst = -std::numeric_limits<double>::infinity();
    Eigen::MatrixXd terminal = Eigen::MatrixXd(A_K);
    for (const auto& A : future) {
        Eigen::MatrixXd gap = Eigen::MatrixXd(A) - terminal;
        worst = std::max(worst, gap.maxCoeff());
    }
    return future.empty() ? 0.0 : worst;
}

void write_certificate_json(const RiskCertificate& cert, const CertificateReport& report,
                            const Eigen::VectorXd& x_hat, std::ostream& os) {
    nlohmann::ordered_json j;
    j["mode"] = cert.mode == HorizonMode::Finite ? "finite" : "infinite";
    auto rows = nlohmann::ordered_json::array();
    for (const auto& p : cert.p) {
        auto row = nlohmann::ordered_json::array();
        for (int i = 0; i < p.size(); ++i) row.push_back(p[i]);
        rows.push_back(row);
    }
    j["p"] = rows;
    Eigen::VectorXd R = risk_vector(cert, x_hat);
    j["max_risk"] = max_risk(R);
    j["total_risk"] = total_risk(R);
    j["verification"] = {{"max_violation", report.max_violation},
                         {"nonneg_violation", report.nonneg_violation},
                         {"tol", report.tol},
                         {"pass", report.pass}};
    os << j.dump(2) << "\n";
}

}  // namespace tempnet
