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

#ifndef LAZYHAAR_WORKSPACE_HPP
#define LAZYHAAR_WORKSPACE_HPP

#include <string>
#include <vector>

#include "lazyhaar/registers.hpp"

namespace lazyhaar {

/// Mutable labelled ket shared by an adversary and the machines it queries. Norm is
/// not enforced so that measurement branches can carry their weight.
class Workspace {
   public:
    Workspace() : v_(Vec::Ones(1)) {}
    explicit Workspace(const Statevector &psi) : sys_(psi.system()), v_(psi.amplitudes()) {}

    const RegisterSystem &system() const { return sys_; }
    const Vec &vec() const { return v_; }
    std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
    double norm2() const { return v_.squaredNorm(); }
    bool has(const std::string &label) const { return sys_.contains(label); }

    /// Appends a register holding `init`.
    void add(const std::string &label, const Vec &init);
    void add_basis(const std::string &label, std::size_t dim, std::size_t index = 0);

    /// Square operator on `targets`, labels unchanged.
    void apply(const Mat &op, const std::vector<std::string> &targets);
    /// General operator whose outputs `outputs` replace `targets`.
    void apply(const Mat &op, const std::vector<std::string> &targets, const std::vector<Register> &outputs);
    /// |0><0| ⊗ 1 + |1><1| ⊗ op, with `control` a qubit.
    void controlled(const std::string &control, const Mat &op, const std::vector<std::string> &targets);

    void rename(const std::string &from, const std::string &to);
    /// Projects `label` onto basis state `value` and removes the register.
    void collapse(const std::string &label, std::size_t value);
    /// Moves `label` to the end of the register list.
    void move_to_back(const std::string &label);

    /// Reduced (unnormalized) density operator on `keep`, in that order.
    Mat reduced(const std::vector<std::string> &keep) const;
    Statevector state() const { return Statevector(sys_, v_, Statevector::Unchecked{}); }

   private:
    RegisterSystem sys_;
    Vec v_;
};

/// Zeroes every entry whose row and column disagree on one of the factors `pos`.
Mat dephase(const Mat &rho, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &pos);

}  // namespace lazyhaar

#endif
