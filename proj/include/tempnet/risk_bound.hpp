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

#ifndef TEMPNET_RISK_BOUND_HPP
#define TEMPNET_RISK_BOUND_HPP

#include <iosfwd>

#include "tempnet/temporal_graph.hpp"

namespace tempnet {

// Witness of the backward inequality p^k >= C + alpha p^{k+1} A^k, k = 1..K,
// with p^{K+1} = 0 in finite mode; infinite mode additionally requires
// p^K >= C + alpha p^K A^K and reuses p^K for every later step.
// p[k] stores the row vector p^{k+1} (0-based) as a column.
struct RiskCertificate {
    HorizonMode mode = HorizonMode::Finite;
    std::vector<Eigen::VectorXd> p;
};

struct CertificateReport {
    bool pass = false;
    double max_violation = 0.0;     // worst (C + alpha p^{k+1} A^k - p^k)_i
    double nonneg_violation = 0.0;  // worst -p_i^k
    int worst_k = -1;               // 1-based step of max_violation
    int worst_i = -1;               // 1-based node of max_violation
    double tol = 0.0;
};

// Equality recursion p^K = C, p^k = C + alpha p^{k+1} A^k; the elementwise
// minimal finite-mode certificate at the given rates.
RiskCertificate tight_certificate(const TemporalNetwork& net, const RateSchedule& rates);

struct SpectralEstimate {
    double rho = 0.0;      // estimate (upper bound if !converged)
    bool converged = false;
    int iterations = 0;
};

// Collatz-Wielandt bounds via power iteration on a nonnegative matrix.
SpectralEstimate spectral_radius_estimate(const Eigen::SparseMatrix<double>& M,
                                          int max_iters = 500, double tol = 1e-10);

struct DivergenceError : std::runtime_error {
    double rho;
    DivergenceError(const std::string& msg, double rho_) : std::runtime_error(msg), rho(rho_) {}
};

// Minimal terminal vector p^K = C (I - alpha A^K)^{-1}; throws DivergenceError
// when rho(alpha A^K) is not safely below 1, or when the sparse solve residual
// exceeds 1e-9 * ||C||.
Eigen::VectorXd infinite_terminal(const Eigen::SparseMatrix<double>& A_K,
                                  const Eigen::VectorXd& cost, double alpha);
Eigen::VectorXd infinite_terminal(const TemporalNetwork& net, const RateSchedule& rates);

// Terminal from infinite_terminal, then the finite recursion for k < K.
RiskCertificate infinite_certificate(const TemporalNetwork& net, const RateSchedule& rates);

CertificateReport verify_certificate(const RiskCertificate& cert, const TemporalNetwork& net,
                                     const RateSchedule& rates, double tol = 1e-9);

// R_i = p_i^1 * x_hat_i
Eigen::VectorXd risk_vector(const RiskCertificate& cert, const Eigen::VectorXd& x_hat);
double max_risk(const Eigen::VectorXd& R);
double total_risk(const Eigen::VectorXd& R);

// Elementwise check A^K >= A of each supplied future snapshot (the premise for
// reusing p^K past the horizon); returns the largest violation (<= 0 means ok).
double terminal_dominance_gap(const Eigen::SparseMatrix<double>& A_K,
                              const std::vector<Eigen::SparseMatrix<double>>& future);

void write_certificate_json(const RiskCertificate& cert, const CertificateReport& report,
                            const Eigen::VectorXd& x_hat, std::ostream& os);

}  // namespace tempnet

#endif  // TEMPNET_RISK_BOUND_HPP
