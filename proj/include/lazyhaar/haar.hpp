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

#ifndef LAZYHAAR_HAAR_HPP
#define LAZYHAAR_HAAR_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "lazyhaar/common.hpp"

namespace lazyhaar {

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double normal() { return normal_(eng_); }
    cd complex_normal() {
        double re = normal();
        double im = normal();
        return {re, im};
    }
    std::uint64_t next() { return eng_(); }
    std::mt19937_64 &engine() { return eng_; }

   private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Normalized complex Gaussian vector.
Vec haar_state(std::size_t d, Rng &rng);
/// Ginibre matrix, QR, and the diagonal phase correction.
Mat haar_unitary(std::size_t d, Rng &rng);

using Perm = std::vector<std::size_t>;

std::vector<Perm> all_perms(std::size_t t);
std::size_t cycle_count(const Perm &p);

/// Pseudoinverse of the Gram matrix d^{#cycles(σ^{-1}τ)}, indexed by all_perms(t).
/// Well defined also when d < t.
Mat weingarten_matrix(std::size_t d, std::size_t t);
/// Textbook closed forms for t <= 3, valid for d >= t.
double weingarten_closed_form(const Perm &p, std::size_t d);

/// E[m m†] for m = vec(O_1) ⊗ ... ⊗ vec(O_t) over Haar U, where O_j = U when
/// forward[j] and U† otherwise; vec is row-major. Index of m: slot-major, slot 0 most
/// significant, (a, b) -> a*d + b within a slot.
Mat moment_matrix(std::size_t d, const std::vector<bool> &forward);

/// m(U) for the same pattern.
Vec moment_vector(const Mat &u, const std::vector<bool> &forward);

}  // namespace lazyhaar

#endif
