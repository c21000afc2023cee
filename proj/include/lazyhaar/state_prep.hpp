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

#ifndef LAZYHAAR_STATE_PREP_HPP
#define LAZYHAAR_STATE_PREP_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "lazyhaar/registers.hpp"

namespace lazyhaar {

/// Largest support handled by the sparse preparation.
inline constexpr std::size_t kMaxSupport = 1024;

struct SparseStateDescription {
    std::size_t n;
    std::vector<std::pair<std::uint64_t, cd>> entries;
};

struct SmallSet {
    std::size_t n;
    std::vector<std::uint64_t> elements;
};

struct PrepResult {
    /// Output register, ancillas projected to zero and renormalized.
    Statevector state;
    double epsilon = 0;
    /// 2-norm distance between the full output (with ancillas) and target ⊗ |0...0>.
    double error = 0;
    /// 1 - fidelity of the ancilla registers with the all-zero state.
    double ancilla_error = 0;
    /// Repeat-until-success rounds actually used, and the nominal schedule.
    std::size_t rounds = 0;
    std::size_t rounds_nominal = 0;
    /// Purity of the control qubit of the superposition scheme.
    double control_purity = 1;
    /// Largest norm left in a per-round scratch register after its uncomputation.
    double scratch_residual = 0;
};

/// Callable producing a prepared n-qubit state for an accuracy parameter.
using PrepRoutine = std::function<Statevector(double eps)>;

Vec sparse_target(const SparseStateDescription &desc);
Vec complement_target(const SmallSet &s);

/// Index-register scheme: Householder on ceil(log2 |supp|) qubits, XOR x_i into the
/// output, then XOR i back into the index register.
PrepResult prep_poly_support(const SparseStateDescription &desc, double eps);

/// Nominal round count max(1, ceil(log2(3|S|/eps) - n)).
std::size_t complement_rounds_nominal(const SmallSet &s, double eps);
/// Smallest round count whose full-output 2-norm error is at most eps.
std::size_t complement_rounds_sufficient(const SmallSet &s, double eps);
/// Repeat-until-success with max(nominal, sufficient) rounds.
PrepResult prep_complement(const SmallSet &s, double eps);
/// Repeat-until-success with a fixed number of rounds.
PrepResult prep_complement_rounds(const SmallSet &s, std::size_t rounds, double eps);
Statevector complement_direct(const SmallSet &s);

/// Control-qubit scheme for z0|ζ0> + z1|ζ1> with orthogonal ζ0, ζ1.
PrepResult prep_superposition(const PrepRoutine &prep0, const PrepRoutine &prep1, cd z0, cd z1, double eps);

}  // namespace lazyhaar

#endif
