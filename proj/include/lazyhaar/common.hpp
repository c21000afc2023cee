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

#ifndef LAZYHAAR_COMMON_HPP
#define LAZYHAAR_COMMON_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lazyhaar {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kTauNorm = 1e-9;
inline constexpr double kTauIso = 1e-8;

/// Largest pure-state workspace, in amplitudes.
inline constexpr std::size_t kMaxStateDim = std::size_t{1} << 14;
/// Largest Choi matrix side.
inline constexpr std::size_t kMaxChoiDim = std::size_t{1} << 8;

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Shapes or register dimensions do not line up.
class DimensionError : public Error {
   public:
    using Error::Error;
};

/// Unknown register label, or a collision between labels.
class LabelError : public Error {
   public:
    using Error::Error;
};

/// A configured size cap would be exceeded.
class CapExceeded : public Error {
   public:
    using Error::Error;
};

/// Input outside the domain of an operation.
class DomainError : public Error {
   public:
    using Error::Error;
};

void require_cap(std::size_t dim, std::size_t cap, const std::string &what);

/// Integer power with overflow check against `cap`.
std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap, const std::string &what);

inline std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    while (exp--) {
        r *= base;
    }
    return r;
}

/// ||a - b|| in operator 2-norm.
double op_norm(const Mat &m);

bool is_isometry(const Mat &m, double tol = kTauIso);
bool is_unitary(const Mat &m, double tol = kTauIso);

}  // namespace lazyhaar

#endif
