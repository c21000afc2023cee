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

#ifndef LAZYHAAR_MONEY_HPP
#define LAZYHAAR_MONEY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lazyhaar/state_sampler.hpp"

namespace lazyhaar {

enum class BankKind { Efficient, Ideal };

struct MoneyBranch;

/// Haar money bank. Mint is the sampler's Gen; Ver runs the sampler's Ver, and on
/// acceptance consumes the bill and mints a fresh one, on rejection outputs |0^n>.
/// Consumed bills and flags stay in the workspace under private "$" labels.
class Bank {
   public:
    static Bank efficient(std::size_t n, double eps);
    /// n = lambda, eps = 2^-lambda.
    static Bank from_lambda(std::size_t lambda);
    static Bank ideal(std::size_t n, Vec phi);
    static Bank ideal(std::size_t n, Rng &rng);

    BankKind kind() const { return kind_; }
    std::size_t n() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }
    std::size_t mint_count() const { return mints_; }
    std::size_t ver_count() const { return vers_; }
    /// Null for an ideal bank.
    const EfficientStateSampler *efficient_sampler() const { return es_ ? &*es_ : nullptr; }
    const IdealStateSampler *ideal_sampler() const { return is_ ? &*is_ : nullptr; }
    /// Bank registers in the workspace ("$B.k"), empty for an ideal bank.
    std::vector<std::string> internal_labels() const;

    void mint(Workspace &ws, const std::string &out);

    /// Money Ver of `bill`; the verdict register is `out`. Returns [rej, acc], dropping
    /// branches of zero weight.
    std::vector<MoneyBranch> ver(const Workspace &ws, const std::string &bill, const std::string &out) const;

   private:
    Bank() = default;
    friend struct MoneyBranch;
    Oracle &sampler();

    BankKind kind_ = BankKind::Efficient;
    std::size_t n_ = 1;
    std::optional<EfficientStateSampler> es_;
    std::optional<IdealStateSampler> is_;
    std::size_t mints_ = 0, vers_ = 0;
};

struct MoneyBranch {
    bool accept = false;
    /// Unnormalized: the squared norm is the branch weight.
    Workspace ws;
    /// Bank state after this branch (an accepted Ver mints).
    Bank bank;
};

/// Acts on the workspace holding bills M.1..M.k and returns k + 1 register labels.
struct Forger {
    std::string name;
    std::string description;
    std::function<std::vector<std::string>(Workspace &, const std::vector<std::string> &bills, std::size_t n)> forge;
};

struct ForgeryResult {
    std::string forger;
    std::string bank;
    std::size_t n = 1, k = 1;
    double success = 0;
    /// symDim(n, k) / symDim(n, k + 1).
    double bound = 0;
};

/// Ceiling on any forger's success with k bills.
double forgery_bound(std::size_t n, std::size_t k);
/// Exact probability that all k + 1 money Vers accept, by branch enumeration.
ForgeryResult forgery_experiment(const Bank &bank, const Forger &forger, std::size_t k);
/// The same against the ideal bank averaged over Haar φ, exact via slot moments.
ForgeryResult forgery_haar_exact(std::size_t n, const Forger &forger, std::size_t k);

/// Sets up k bills in the workspace (minting through the bank) and names them.
struct Tracer {
    std::string name;
    std::string description;
    std::size_t k = 2;
    std::vector<std::size_t> perm;
    std::function<std::vector<std::string>(Workspace &, Bank &)> setup;
};

struct GameBranch {
    int b = 0;
    std::vector<bool> flags;
    std::size_t accepted = 0;
    double probability = 0;
};

struct GameTranscript {
    std::string tracer;
    std::string bank;
    int b = 0;
    int guess = 0;
    bool win = false;
    /// Flags of the sampled run, one per submitted bill.
    std::vector<bool> flags;
    /// Verification slots that accepted in the sampled run.
    std::vector<std::size_t> accepted;
    std::size_t discards = 0;
    /// Registers handed to the adversary: accepted bills (unordered), bank registers, kept registers.
    std::vector<std::string> view;
    std::size_t bank_mints = 0, bank_vers = 0;
    /// Exact optimal win probability over both challenge values.
    double win_probability = 0;
    double distance = 0;
    std::vector<GameBranch> branches;
};

/// Plays the permute-or-not game. Probabilities are exact; `rng` only draws the
/// challenge, the verdicts and the guess for the recorded sample run.
GameTranscript untrace_game(const Bank &bank, const Tracer &tracer, Rng &rng);

struct InvarianceResult {
    std::size_t k = 0;
    double accept_probability = 0;
    /// max over permutations of the bill registers of ||P psi - psi||.
    double max_deviation = 0;
};
/// Mints k bills, verifies all of them and checks the all-accept global state.
InvarianceResult permutation_invariance(const Bank &bank, std::size_t k);

struct CorrectnessResult {
    std::size_t mints = 0;
    std::size_t position = 0;
    double accept_probability = 0;
};
/// Every Mint position in runs of 1..max_mints mints.
std::vector<CorrectnessResult> correctness(const Bank &bank, std::size_t max_mints);

std::vector<Forger> builtin_forgers();
std::vector<Tracer> builtin_tracers();
const Forger &find_forger(const std::string &name);
const Tracer &find_tracer(const std::string &name);

std::string to_string(BankKind k);
nlohmann::json transcript_to_json(const GameTranscript &t);
nlohmann::json forgery_to_json(const ForgeryResult &r);

}  // namespace lazyhaar

#endif
