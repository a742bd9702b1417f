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

#include "tempnet/conic.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace tempnet {

void ConicProgram::check_layout() const {
    if (nvars < 0 || nzero < 0 || nnonneg < 0 || nexp < 0)
        throw std::invalid_argument("negative cone sizes");
    if (A.rows() != rows() || A.cols() != nvars)
        throw std::invalid_argument("A dimensions do not match cone layout");
    if (b.size() != rows() || c.size() != nvars)
        throw std::invalid_argument("b/c dimensions do not match program");
    if (!notes.empty() && static_cast<int>(notes.size()) != rows())
        throw std::invalid_argument("row notes must be empty or cover every row");
}

namespace {
void put_num(std::ostream& os, double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    os.write(buf, end - buf);
}
}  // namespace

void ConicProgram::dump(std::ostream& os) const {
    os << "conic-program vars=" << nvars << " rows=" << rows() << "\n";
    os << "cones zero=" << nzero << " nonneg=" << nnonneg << " exp=" << nexp << "\n";
    os << "objective";
    for (int i = 0; i < c.size(); ++i) {
        if (c[i] != 0.0) {
            os << ' ' << i << ':';
            put_num(os, c[i]);
        }
    }
    os << "\n";
    Eigen::SparseMatrix<double, Eigen::RowMajor> Ar(A);
    for (int r = 0; r < rows(); ++r) {
        os << "row " << r << " b=";
        put_num(os, b[r]);
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(Ar, r); it; ++it) {
            os << ' ' << it.col() << ':';
            put_num(os, it.value());
        }
        if (!notes.empty() && !notes[r].tag.empty()) {
            os << "  # " << notes[r].tag;
            if (notes[r].k) os << " k=" << notes[r].k;
            if (notes[r].i) os << " i=" << notes[r].i;
            if (notes[r].j) os << " j=" << notes[r].j;
        }
        os << "\n";
    }
}

bool in_exp_cone_interior(double a, double d, double e) {
    return d > 0.0 && e > 0.0 && d * std::log(e / d) > a;
}

bool in_exp_dual_interior(double u, double v, double w) {
    return u < 0.0 && w > 0.0 && (-u) * std::log(w / (-u)) + v - u > 0.0;
}

double exp_cone_violation(double a, double d, double e) {
    if (d > 0.0) {
        if (e > 0.0) return std::max(0.0, a - d * std::log(e / d));
        return std::max(a, -e);  // e <= 0: need a <= 0 impossible unless boundary
    }
    // closure ray: d = 0 requires a <= 0, e >= 0
    return std::max({-d, a, -e, 0.0});
}

double exp_dual_violation(double u, double v, double w) {
    if (u < 0.0) {
        if (w > 0.0) return std::max(0.0, -((-u) * std::log(w / (-u)) + v - u));
        return std::max(-w, 0.0) + std::max(0.0, -v);
    }
    // closure: u = 0 requires v >= 0, w >= 0
    return std::max({u, -v, -w, 0.0});
}

}  // namespace tempnet
