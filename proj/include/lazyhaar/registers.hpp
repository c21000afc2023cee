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

#ifndef LAZYHAAR_REGISTERS_HPP
#define LAZYHAAR_REGISTERS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lazyhaar/common.hpp"

namespace lazyhaar {

struct Register {
    std::string label;
    std::size_t dim;
    bool operator==(const Register &) const = default;
};

/// Ordered list of named registers. The first register is the most significant
/// tensor factor of a flattened index.
class RegisterSystem {
   public:
    RegisterSystem() = default;
    explicit RegisterSystem(std::vector<Register> regs);

    static RegisterSystem qubits(const std::vector<std::string> &labels, std::size_t n = 1);

    std::size_t size() const { return regs_.size(); }
    bool empty() const { return regs_.empty(); }
    const Register &operator[](std::size_t k) const { return regs_[k]; }
    const std::vector<Register> &registers() const { return regs_; }
    std::size_t total_dim() const;
    std::vector<std::size_t> dims() const;
    std::vector<std::string> labels() const;

    std::optional<std::size_t> find(std::string_view label) const;
    /// Throws LabelError when absent.
    std::size_t index(std::string_view label) const;
    bool contains(std::string_view label) const { return find(label).has_value(); }
    std::size_t dim_of(std::string_view label) const { return regs_[index(label)].dim; }

    /// Disjoint union, `this` first. Throws LabelError on collision.
    RegisterSystem concat(const RegisterSystem &other) const;
    /// Registers with the given labels, in the given order.
    RegisterSystem select(const std::vector<std::string> &labels) const;

    bool operator==(const RegisterSystem &) const = default;

   private:
    std::vector<Register> regs_;
};

namespace tensor {

/// Reorders tensor factors: factor k of the result is factor perm[k] of `v`.
Vec permute(const Vec &v, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &perm);

struct Applied {
    Vec v;
    std::vector<std::size_t> dims;
    /// Per result factor: k >= 0 for input factor k, or -1-j for op output j.
    std::vector<long> source;
};

/// Applies `op` (prod(out_dims) x prod(dims[pos])) to the factors at `pos`. When the
/// number of output factors equals the number of targets, output k lands at pos[k];
/// otherwise the outputs are inserted contiguously where pos[0] was.
Applied apply_local(const Vec &v, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &pos,
                    const Mat &op, const std::vector<std::size_t> &out_dims);

/// A * rho restricted to factors `pos` (rho square over `dims`). Result has rows over the
/// new layout and columns over the old one.
Mat apply_left(const Mat &rho, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &pos,
               const Mat &op, const std::vector<std::size_t> &out_dims);

/// Partial trace of |v><v| keeping `keep` (in that order).
Mat reduce_pure(const Vec &v, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &keep);

/// Partial trace of a square operator keeping `keep` (in that order).
Mat reduce(const Mat &rho, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &keep);

}  // namespace tensor

class Statevector {
   public:
    struct Unchecked {};

    Statevector() : amps_(Vec::Ones(1)) {}
    /// Throws DomainError unless the vector has unit norm within kTauNorm.
    Statevector(RegisterSystem system, Vec amps);
    /// Skips the normalization check; used for branch states.
    Statevector(RegisterSystem system, Vec amps, Unchecked);

    static Statevector basis(RegisterSystem system, std::size_t index);

    const RegisterSystem &system() const { return system_; }
    const Vec &amplitudes() const { return amps_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    double norm() const { return amps_.norm(); }

   private:
    RegisterSystem system_;
    Vec amps_;
};

class DensityOperator {
   public:
    struct Unchecked {};

    DensityOperator() : matrix_(Mat::Ones(1, 1)) {}
    /// Throws DomainError unless Hermitian, unit trace and positive within kTauNorm.
    DensityOperator(RegisterSystem system, Mat matrix);
    DensityOperator(RegisterSystem system, Mat matrix, Unchecked);

    static DensityOperator pure(const Statevector &psi);

    const RegisterSystem &system() const { return system_; }
    const Mat &matrix() const { return matrix_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

   private:
    RegisterSystem system_;
    Mat matrix_;
};

class LinearMap {
   public:
    LinearMap() = default;
    /// Throws DimensionError when the shape does not match the systems.
    LinearMap(RegisterSystem in, RegisterSystem out, Mat matrix);
    /// Square map on `sys`.
    LinearMap(RegisterSystem sys, Mat matrix);

    const RegisterSystem &in_system() const { return in_; }
    const RegisterSystem &out_system() const { return out_; }
    const Mat &matrix() const { return matrix_; }

    bool is_isometry(double tol = kTauIso) const { return lazyhaar::is_isometry(matrix_, tol); }
    bool is_unitary(double tol = kTauIso) const { return lazyhaar::is_unitary(matrix_, tol); }
    LinearMap adjoint() const { return LinearMap(out_, in_, matrix_.adjoint()); }

   private:
    RegisterSystem in_;
    RegisterSystem out_;
    Mat matrix_;
};

Statevector tensor_product(const Statevector &a, const Statevector &b);

/// Applies op ⊗ identity. The op's input dims must match the targets in order; its
/// output registers (labels from op.out_system()) replace the targets.
Statevector apply_to_registers(const LinearMap &op, const std::vector<std::string> &targets,
                               const Statevector &state);

DensityOperator partial_trace(const DensityOperator &rho, const std::vector<std::string> &keep);
DensityOperator partial_trace(const Statevector &psi, const std::vector<std::string> &keep);

/// Half the trace norm of (rho - sigma), via a Hermitian eigensolver.
double trace_distance(const DensityOperator &rho, const DensityOperator &sigma);
double trace_distance(const Mat &rho, const Mat &sigma);

/// (1/sqrt d) sum_i |i>|i> on registers (a, b).
Statevector max_entangled(std::size_t d, const std::string &a = "A", const std::string &b = "B");

/// Result register k holds what register perm[k] of `labels` held; all registers in
/// `labels` must share one dimension.
Statevector permute_registers(const std::vector<std::size_t> &perm, const std::vector<std::string> &labels,
                              const Statevector &state);

/// Unitary that permutes `k` equal registers of dimension `d`, as a matrix.
Mat permutation_matrix(const std::vector<std::size_t> &perm, std::size_t d);

}  // namespace lazyhaar

#endif
