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

#ifndef LAZYHAAR_STATE_SAMPLER_HPP
#define LAZYHAAR_STATE_SAMPLER_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "lazyhaar/haar.hpp"
#include "lazyhaar/script.hpp"

namespace lazyhaar {

/// Holds a fixed Haar state φ and answers with it directly.
class IdealStateSampler : public Oracle {
   public:
    IdealStateSampler(std::size_t n, Rng &rng);
    IdealStateSampler(std::size_t n, Vec phi);

    std::size_t n() const { return n_; }
    const Vec &phi() const { return phi_; }
    std::size_t gen_count() const { return t_gen_; }
    std::size_t ver_count() const { return t_ver_; }
    std::size_t creflect_count() const { return t_creflect_; }

    void gen(Workspace &ws, const std::string &out) override;
    void ver(Workspace &ws, const std::string &target, const std::string &flag) override;
    void creflect(Workspace &ws, const std::string &control, const std::string &target) override;

   private:
    std::size_t n_;
    Vec phi_;
    std::size_t t_gen_ = 0, t_ver_ = 0, t_creflect_ = 0;
};

struct BudgetEntry {
    std::string call;
    std::size_t t = 0;
    std::size_t q = 0;
    double amount = 0;
};

/// Lazy sampler: keeps B.1..B.t in the shared workspace (labels "$B.k") so that the
/// joint state with the emitted registers stays maximally entangled over Sym^t.
class EfficientStateSampler : public Oracle {
   public:
    EfficientStateSampler(std::size_t n, double eps);

    std::size_t n() const { return n_; }
    double epsilon() const { return eps_; }
    bool initialized() const { return init_; }
    /// Gen count.
    std::size_t t() const { return t_; }
    /// CReflect count, including the reflections used by Ver.
    std::size_t q() const { return q_; }
    const std::vector<BudgetEntry> &budget() const { return budget_; }
    double budget_used() const;
    /// Machine registers currently held, in order.
    std::vector<std::string> b_labels() const;

    /// Adds |φ+> on ($A.1, $B.1). Called by the first Gen when needed.
    void init(Workspace &ws);
    void gen(Workspace &ws, const std::string &out) override;
    /// |+> flag, controlled reflection, H on the flag.
    void ver(Workspace &ws, const std::string &target, const std::string &flag) override;
    void creflect(Workspace &ws, const std::string &control, const std::string &target) override;

   private:
    std::size_t n_;
    double eps_;
    bool init_ = false;
    std::size_t t_ = 0;
    std::size_t q_ = 0;
    std::vector<BudgetEntry> budget_;
};

struct VerBranch {
    bool accept = false;
    double probability = 0;
    /// Normalized post-measurement state with the flag removed; empty when probability is 0.
    Workspace post;
};
/// Measures the flag qubit: [rej, acc].
std::array<VerBranch, 2> measure_flag(const Workspace &ws, const std::string &flag);

enum class SlotKind { Vector, Projector };

/// The final ket of an interaction is linear in each oracle slot: φ for Gen and
/// |φ><φ| for Ver / CReflect. Columns hold the ket for every basis assignment.
struct SlotExpansion {
    std::size_t d = 2;
    std::vector<SlotKind> kinds;
    RegisterSystem system;
    Mat columns;
};

using Interaction = std::function<Workspace(Oracle &)>;

SlotExpansion expand_slots(std::size_t n, const Interaction &run);
/// E[m m†] over Haar φ with m = ⊗ (φ or vec(φφ†)) per slot.
Mat slot_moment(std::size_t d, const std::vector<SlotKind> &kinds);
/// m(φ) for the same layout.
Vec slot_vector(const Vec &phi, const std::vector<SlotKind> &kinds);
/// Σ over branches of C·moment·C†, reduced to `keep` and dephased on `flags`.
Mat expansion_state(const SlotExpansion &e, const Mat &moment, const std::vector<std::string> &keep,
                    const std::vector<std::string> &flags);

/// Haar-averaged Choi of a script against the ideal sampler, exact.
ChannelChoi choi_is_exact(const Script &s);
ChannelChoi choi_es(const Script &s, double eps);

struct McChoi {
    ChannelChoi mean;
    /// sqrt of the summed per-entry squared standard errors.
    double se_total = 0;
    std::size_t samples = 0;
};
/// Monte Carlo Haar average; all scripts share the same φ samples.
std::vector<McChoi> choi_is_mc(const std::vector<Script> &scripts, std::size_t samples, Rng &rng);

struct FamilyScript {
    Script script;
    std::vector<OpKind> sequence;
    std::string interlude;
    bool reflects = false;
};

/// All call sequences over {Gen, Ver, CReflect} of length 0..max_len (n = 1), each
/// combined with every interlude unitary. Inputs W.0 and C; Ver and CReflect target
/// W.0, CReflect is controlled by C; after each call the interlude acts on W.0 and
/// the latest bill (C before any Gen).
std::vector<FamilyScript> state_family(std::size_t max_len, std::uint64_t interlude_seed, bool gen_first);

}  // namespace lazyhaar

#endif
