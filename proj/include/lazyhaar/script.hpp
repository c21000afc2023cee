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

#ifndef LAZYHAAR_SCRIPT_HPP
#define LAZYHAAR_SCRIPT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lazyhaar/workspace.hpp"

namespace lazyhaar {

enum class OpKind { Gen, Ver, CReflect, Eval, Invert, AdvUnitary };

std::string to_string(OpKind k);
OpKind op_kind_from_string(const std::string &s);

struct ScriptOp {
    OpKind kind = OpKind::AdvUnitary;
    /// Ver / CReflect / Eval / Invert payload register.
    std::string target;
    /// CReflect control qubit.
    std::string control;
    /// AdvUnitary registers.
    std::vector<std::string> targets;
    /// Gate name for AdvUnitary; empty when `matrix` is given explicitly.
    std::string gate;
    Mat matrix;
};

/// Adversary interaction. Every input register X is maximally entangled with a
/// reference R.X, so the final visible state is the Choi state of the channel.
struct Script {
    std::string name;
    std::size_t n = 1;
    std::vector<Register> inputs;
    std::vector<ScriptOp> ops;

    std::size_t oracle_calls() const;
};

nlohmann::json script_to_json(const Script &s);
Script script_from_json(const nlohmann::json &j);

/// I, X, Y, Z, H, S, T on one qubit; CNOT, CZ, SWAP on two (first register is control).
Mat named_gate(const std::string &name);

/// Machine side of an interaction. Labels beginning with '$' belong to the machine.
class Oracle {
   public:
    virtual ~Oracle() = default;
    virtual void gen(Workspace &ws, const std::string &out);
    /// Appends a flag qubit `flag` (1 = acc) in deferred-measurement form.
    virtual void ver(Workspace &ws, const std::string &target, const std::string &flag);
    virtual void creflect(Workspace &ws, const std::string &control, const std::string &target);
    virtual void eval(Workspace &ws, const std::string &target);
    virtual void invert(Workspace &ws, const std::string &target);
};

struct RunResult {
    Workspace ws;
    /// Adversary-visible registers in creation order.
    std::vector<std::string> visible;
    std::vector<std::string> flags;
};

/// Prepares inputs and their references, then runs the ops against `oracle`.
/// Gen outputs are labelled A.1, A.2, ...; Ver flags F.1, F.2, ...
RunResult run_script(const Script &s, Oracle &oracle);
Workspace initial_workspace(const Script &s);

struct ChannelChoi {
    std::vector<Register> registers;
    std::vector<std::string> flags;
    Mat matrix;

    std::vector<std::size_t> dims() const;
};

/// Reduced state on the visible registers with flag qubits dephased.
ChannelChoi choi_of(const RunResult &r);
ChannelChoi adversary_channel(const Script &s, Oracle &oracle);
/// Trace distance; throws DimensionError when the register layouts differ.
double choi_distance(const ChannelChoi &a, const ChannelChoi &b);

/// Eight two-register adversary unitaries used between oracle calls (n = 1): II, HI, IH,
/// CNOT, CNOT reversed, SWAP, (S ⊗ H)CZ and one Haar unitary drawn from `seed`.
std::vector<std::pair<std::string, Mat>> interlude_set(std::uint64_t seed);

}  // namespace lazyhaar

#endif
