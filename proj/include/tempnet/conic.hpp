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

#ifndef TEMPNET_CONIC_HPP
#define TEMPNET_CONIC_HPP

#include <Eigen/Sparse>
#include <iosfwd>
#include <string>
#include <vector>

namespace tempnet {

// Canonical geometric form
//
//   minimize    c'x
//   subject to  s = b - Ax,  s in K
//
// where K is a product of (in row order) a zero cone, a nonnegative cone and
// exponential-cone triples.  An exponential triple (a, d, e) occupies three
// consecutive rows and means  d * exp(a/d) <= e  (d > 0, plus closure).
//
// The dual cone, under the standard inner product, is
//   zero rows: free;  nonnegative rows: z >= 0;
//   exp triples (u, v, w): u <= 0, w >= 0, (-u) log(w/(-u)) + v - u >= 0.

struct RowNote {
    std::string tag;  // constraint family, e.g. "lse_term", "budget_step"
    int k = 0;        // 1-based step, 0 if n/a
    int i = 0;        // 1-based node, 0 if n/a
    int j = 0;        // 1-based second node, 0 if n/a
};

struct ConicProgram {
    int nvars = 0;
    int nzero = 0;    // leading equality rows
    int nnonneg = 0;  // then nonnegative rows
    int nexp = 0;     // then nexp exponential triples (3*nexp rows)
    Eigen::SparseMatrix<double> A;  // rows() x nvars
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    std::vector<RowNote> notes;  // empty or one per row

    int rows() const { return nzero + nnonneg + 3 * nexp; }
    int exp_start() const { return nzero + nnonneg; }

    // Throws std::invalid_argument when the layout is inconsistent.
    void check_layout() const;

    // Stable plain-text dump (objective, triplet rows, cone list) for diffing.
    void dump(std::ostream& os) const;
};

// Membership helpers shared by solver, kkt checks and tests.
bool in_exp_cone_interior(double a, double d, double e);
bool in_exp_dual_interior(double u, double v, double w);
// Nonnegative violation measures (0 inside the closed cone).
double exp_cone_violation(double a, double d, double e);
double exp_dual_violation(double u, double v, double w);

}  // namespace tempnet

#endif  // TEMPNET_CONIC_HPP
