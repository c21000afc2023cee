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

#ifndef LAZYHAAR_SYMMETRIC_HPP
#define LAZYHAAR_SYMMETRIC_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lazyhaar/registers.hpp"

namespace lazyhaar {

/// Largest square operator side built by the symmetric toolbox.
inline constexpr std::size_t kMaxOperatorDim = std::size_t{1} << 12;

/// Sorted t-tuple of n-bit strings; strings are stored as integers, so numeric order is
/// lexicographic order.
class OrderedTuple {
   public:
    OrderedTuple(std::size_t n, std::vector<std::uint32_t> entries);

    std::size_t n() const { return n_; }
    std::size_t t() const { return entries_.size(); }
    const std::vector<std::uint32_t> &entries() const { return entries_; }
    /// f_x for every x present.
    std::map<std::uint32_t, std::size_t> multiplicities() const;
    std::size_t multiplicity(std::uint32_t x) const;
    /// Computational basis index of the concatenated strings.
    std::size_t basis_index() const;

    bool operator==(const OrderedTuple &) const = default;
    auto operator<=>(const OrderedTuple &) const = default;

   private:
    std::size_t n_;
    std::vector<std::uint32_t> entries_;
};

std::string to_string(const OrderedTuple &a);

std::vector<OrderedTuple> enumerate_basis(std::size_t n, std::size_t t);
/// C(2^n + t - 1, t); throws CapExceeded on overflow.
std::uint64_t sym_dim(std::size_t n, std::size_t t);

OrderedTuple insert_string(const OrderedTuple &a, std::uint32_t x);
OrderedTuple remove_string(const OrderedTuple &a, std::uint32_t x);

/// True when the digits of `index` (t digits base 2^n) are non-decreasing.
bool is_sorted_index(std::size_t index, std::size_t n, std::size_t t);
/// Sorted tuple from a basis index of t n-bit registers.
OrderedTuple tuple_of_index(std::size_t index, std::size_t n, std::size_t t);

/// Registers prefix.1 ... prefix.t of n qubits each.
RegisterSystem copies(const std::string &prefix, std::size_t n, std::size_t t, std::size_t first = 1);

Statevector sym_vector(const OrderedTuple &a, const std::string &prefix = "A");

struct SchmidtTerm {
    double coefficient;
    OrderedTuple rest;
    std::uint32_t x;
};
std::vector<SchmidtTerm> schmidt_expand(const OrderedTuple &a);

/// Columns are |Sym(α)> in enumeration order.
Mat sym_basis_matrix(std::size_t n, std::size_t t);
LinearMap sym_projector(std::size_t n, std::size_t t);
/// U|α> = |Sym(α)> on sorted inputs; QR completion elsewhere. Memoized.
LinearMap u_sym(std::size_t n, std::size_t t);

Statevector psi_alpha(const OrderedTuple &a, const std::string &label = "A");
/// Same state assembled from the two-component superposition of the prep module.
Statevector psi_alpha_via_prep(const OrderedTuple &a, double eps, const std::string &label = "A");

/// Composed isometry B^t -> A_{t+1} B^{t+1} on all of B^t (unsorted inputs go to the
/// completion subspace). Registers: in B.1..B.t, out A.{t+1}, B.1..B.{t+1}. Memoized.
LinearMap v_increment_full(std::size_t n, std::size_t t);
/// v_increment_full restricted to Sym^t, so V†V = Π_Sym.
LinearMap v_increment(std::size_t n, std::size_t t);
/// Least-squares solution of (1 ⊗ V)|Φ_t> = |Φ_{t+1}> for the normalized symmetric
/// maximally entangled states; independent of the composed construction.
LinearMap v_increment_oracle(std::size_t n, std::size_t t);
/// Unitary on (B^t, A, B_{t+1}) with U|b>|0>|0> = V_full|b>, outputs ordered as
/// (A_{t+1}, B^{t+1}).
Mat v_dilation(std::size_t n, std::size_t t);

/// Normalized Σ_α |Sym α>_{A^t} |Sym α>_{B^t}.
Statevector max_entangled_sym(std::size_t n, std::size_t t);

/// Householder-completed unitary whose first column is `v` (unit norm).
Mat complete_to_unitary(const Vec &v);
/// Orthonormal basis of the complement of the column span of `cols` (orthonormal).
Mat orthonormal_complement(const Mat &cols);

}  // namespace lazyhaar

#endif
