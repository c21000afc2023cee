// Copyright 2026 The lazyhaar Authors
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

#include "lazyhaar/common.hpp"

#include <limits>

namespace lazyhaar {

void require_cap(std::size_t dim, std::size_t cap, const std::string &what) {
    if (dim > cap) {
        throw CapExceeded(what + ": dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
    }
}

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap, const std::string &what) {
    std::size_t r = 1;
    for (std::size_t k = 0; k < exp; k++) {
        if (base != 0 && r > cap / base) {
            throw CapExceeded(what + ": " + std::to_string(base) + "^" + std::to_string(exp) + " exceeds cap " +
                              std::to_string(cap));
        }
        r *= base;
    }
    return r;
}

double op_norm(const Mat &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

bool is_isometry(const Mat &m, double tol) {
    if (m.rows() < m.cols()) {
        return false;
    }
    if (m.cols() == 0) {
        return true;
    }
    Mat g = m.adjoint() * m;
    return (g - Mat::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Mat &m, double tol) {
    return m.rows() == m.cols() && is_isometry(m, tol);
}

}  // namespace lazyhaar
