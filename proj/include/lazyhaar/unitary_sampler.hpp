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

#ifndef LAZYHAAR_UNITARY_SAMPLER_HPP
#define LAZYHAAR_UNITARY_SAMPLER_HPP

#include <string>
#include <vector>

#include "lazyhaar/designs.hpp"
#include "lazyhaar/script.hpp"
#include "lazyhaar/state_sampler.hpp"

namespace lazyhaar {

class IdealUnitarySampler : public Oracle {
   public:
    IdealUnitarySampler(std::size_t n, Rng &rng);
    IdealUnitarySampler(std::size_t n, Mat u);

    const Mat &unitary() const { return u_; }
    std::size_t eval_count() const { return t_e_; }
    std::size_t invert_count() const { return t_i_; }

    void eval(Workspace &ws, const std::string &target) override;
    void invert(Workspace &ws, const std::string &target) override;

   private:
    std::size_t n_;
    Mat u_;
    std::size_t t_e_ = 0, t_i_ = 0;
};

struct TransitionRecord {
    std::size_t t = 0;
    std::size_t ell = 0;
    double residual = 0;
    double idempotence_defect = 0;
    double support_defect = 0;
};

/// Keeps a design index register "$E" entangled with the answered queries. Before
/// query t + 1 the register is moved from D_t to D_{t+1} by the transition isometry.
class EfficientUnitarySampler : public Oracle {
   public:
    explicit EfficientUnitarySampler(DesignFamily family, double design_tol = 1e-10);

    std::size_t eval_count() const { return t_e_; }
    std::size_t invert_count() const { return t_i_; }
    std::size_t t() const { return t_e_ + t_i_; }
    /// Current dimension of "$E" (0 before the first query).
    std::size_t env_dim() const { return env_dim_; }
    const std::vector<TransitionRecord> &transitions() const { return transitions_; }

    void eval(Workspace &ws, const std::string &target) override;
    void invert(Workspace &ws, const std::string &target) override;

   private:
    void query(Workspace &ws, const std::string &target, bool forward);
    const UnitaryDesign &design(std::size_t t);

    DesignFamily family_;
    double tol_;
    std::vector<bool> verified_;
    std::size_t t_e_ = 0, t_i_ = 0;
    std::size_t env_dim_ = 0;
    std::vector<TransitionRecord> transitions_;
};

/// Haar-averaged Choi of an Eval/Invert script, exact (Weingarten).
ChannelChoi choi_iu_exact(const Script &s);
ChannelChoi choi_eu(const Script &s, const DesignFamily &family, std::vector<TransitionRecord> *transitions = nullptr);

/// Every Eval/Invert sequence of length 1..max_len (n = 1) with every interlude.
/// Inputs W.0 and W.1; call j acts on W.(j mod 2); interludes act on (W.0, W.1).
std::vector<FamilyScript> unitary_family(std::size_t max_len, std::uint64_t interlude_seed);

}  // namespace lazyhaar

#endif
