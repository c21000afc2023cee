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

#include <gtest/gtest.h>

#include "lazyhaar/money.hpp"
#include "lazyhaar/symmetric.hpp"

#include <algorithm>

#include <unsupported/Eigen/KroneckerProduct>

namespace lazyhaar {
namespace {

constexpr double kEps = 1e-9;

double accept_weight(const std::vector<MoneyBranch> &branches) {
    double p = 0;
    for (const auto &b : branches) {
        if (b.accept) {
            p += b.ws.norm2();
        }
    }
    return p;
}

TEST(Bank, MintThenVerAccepts) {
    auto bank = Bank::efficient(1, kEps);
    Workspace ws;
    bank.mint(ws, "M.1");
    EXPECT_EQ(bank.mint_count(), 1u);
    EXPECT_EQ(bank.efficient_sampler()->t(), 1u);
    EXPECT_GE(accept_weight(bank.ver(ws, "M.1", "O")), 1 - 1e-7);
}

TEST(Bank, TwoMintsGiveSymmetricProjector) {
    auto bank = Bank::efficient(1, kEps);
    Workspace ws;
    bank.mint(ws, "M.1");
    bank.mint(ws, "M.2");
    Mat expect = sym_projector(1, 2).matrix() / 3.0;
    EXPECT_LT((ws.reduced({"M.1", "M.2"}) - expect).norm(), 1e-8);
}

TEST(Bank, RejectOutputsZero) {
    auto bank = Bank::efficient(1, kEps);
    Workspace ws;
    bank.mint(ws, "M.1");
    ws.apply(named_gate("X"), {"M.1"});
    bool saw_reject = false;
    for (const auto &b : bank.ver(ws, "M.1", "O")) {
        if (!b.accept) {
            saw_reject = true;
            Mat rho = b.ws.reduced({"O"}) / b.ws.norm2();
            EXPECT_NEAR(rho(0, 0).real(), 1.0, 1e-12);
        }
    }
    EXPECT_TRUE(saw_reject);
}

TEST(Bank, ZeroBillAtFirstMint) {
    // Oracle: with one bill out the machine projects (X, B.1) onto |φ+>, and B.1 is
    // maximally mixed, so the weight is <φ+|(|0><0| ⊗ 1/2)|φ+>.
    auto bank = Bank::efficient(1, kEps);
    Workspace ws;
    bank.mint(ws, "M.1");
    ws.add_basis("X", 2);
    Vec phi = max_entangled(2, "a", "b").amplitudes();
    Mat rho = Eigen::kroneckerProduct(Mat(Vec::Unit(2, 0) * Vec::Unit(2, 0).adjoint()), Mat(Mat::Identity(2, 2) / 2.0)).eval();
    double oracle = (phi.adjoint() * rho * phi)(0, 0).real();
    EXPECT_NEAR(accept_weight(bank.ver(ws, "X", "O")), oracle, 1e-12);
}

TEST(Bank, IdealVerOnBill) {
    Rng rng(3);
    auto bank = Bank::ideal(1, rng);
    Workspace ws;
    bank.mint(ws, "M.1");
    EXPECT_NEAR(accept_weight(bank.ver(ws, "M.1", "O")), 1.0, 1e-12);
}

TEST(Bank, DimensionMismatch) {
    auto bank = Bank::efficient(1, kEps);
    Workspace ws;
    bank.mint(ws, "M.1");
    ws.add_basis("Y", 4);
    EXPECT_THROW(bank.ver(ws, "Y", "O"), DimensionError);
}

TEST(Forgery, HonestIdealHaar) {
    // E|<0|φ>|^2 = 1/2 for k = 1.
    auto r = forgery_haar_exact(1, find_forger("honest"), 1);
    EXPECT_NEAR(r.success, 0.5, 1e-12);
    EXPECT_NEAR(r.bound, 2.0 / 3.0, 1e-15);
}

TEST(Forgery, HonestEfficientOracle) {
    // Direct computation: |φ+> on (M, B.1) passes its Ver untouched, the re-mint applies
    // V^{1->2} to B.1, and the |0> register is weighed against V^{1->2}V^{1->2}†.
    Mat v = v_increment_full(1, 1).matrix();
    Workspace ws(max_entangled(2, "M", "B.1"));
    ws.apply(v, {"B.1"}, {{"O", 2}, {"B.1", 2}, {"B.2", 2}});
    ws.add_basis("X", 2);
    Workspace proj = ws;
    proj.apply(v.adjoint(), {"X", "B.1", "B.2"}, {{"B.1", 2}});
    double oracle = proj.norm2();
    auto r = forgery_experiment(Bank::efficient(1, kEps), find_forger("honest"), 1);
    EXPECT_NEAR(r.success, oracle, 1e-8);
}

TEST(Forgery, MixedPaddingBaseline) {
    EXPECT_NEAR(forgery_haar_exact(1, find_forger("mixed-padding"), 1).success, 0.5, 1e-12);
    EXPECT_NEAR(forgery_experiment(Bank::efficient(1, kEps), find_forger("mixed-padding"), 1).success, 1.0 / 3.0, 1e-8);
}

TEST(Forgery, BuiltinsRespectBound) {
    for (const auto &f : builtin_forgers()) {
        for (std::size_t k : {1u, 2u}) {
            auto es = forgery_experiment(Bank::efficient(1, kEps), f, k);
            auto is = forgery_haar_exact(1, f, k);
            EXPECT_LE(es.success, es.bound + 1e-7) << f.name;
            EXPECT_LE(is.success, is.bound + 1e-7) << f.name;
        }
    }
}

class TracerTest : public ::testing::TestWithParam<std::string> {};

TEST_P(TracerTest, IdealBankHidesChallenge) {
    Rng rng(5);
    for (int s = 0; s < 4; s++) {
        auto t = untrace_game(Bank::ideal(1, rng), find_tracer(GetParam()), rng);
        EXPECT_NEAR(t.win_probability, 0.5, 1e-7);
    }
}

TEST_P(TracerTest, EfficientBankHidesChallenge) {
    Rng rng(5);
    auto t = untrace_game(Bank::efficient(1, kEps), find_tracer(GetParam()), rng);
    EXPECT_NEAR(t.win_probability, 0.5, 1e-7);
}

INSTANTIATE_TEST_SUITE_P(Builtins, TracerTest,
                         ::testing::Values("honest-swap", "honest-identity", "orthogonal-marker", "entangling"),
                         [](const auto &info) {
                             std::string s = info.param;
                             std::replace(s.begin(), s.end(), '-', '_');
                             return s;
                         });

TEST(Untrace, IdentityIsExactlyHalf) {
    Rng rng(6);
    auto t = untrace_game(Bank::efficient(1, kEps), find_tracer("honest-identity"), rng);
    EXPECT_EQ(t.distance, 0.0);
}

TEST(Untrace, MarkerRecordsDiscards) {
    Rng rng(7);
    auto t = untrace_game(Bank::efficient(1, kEps), find_tracer("orthogonal-marker"), rng);
    bool discard = false;
    for (const auto &b : t.branches) {
        discard |= b.accepted < 2 && b.probability > 1e-3;
    }
    EXPECT_TRUE(discard);
    EXPECT_EQ(t.discards + t.accepted.size(), 2u);
    EXPECT_EQ(transcript_to_json(t)["flags"].size(), 2u);
}

TEST(Untrace, MalformedPermutation) {
    Rng rng(8);
    auto t = find_tracer("honest-swap");
    t.perm = {0, 0};
    EXPECT_THROW(untrace_game(Bank::efficient(1, kEps), t, rng), DomainError);
}

TEST(Money, PermutationInvariance) {
    for (std::size_t k = 1; k <= 3; k++) {
        auto r = permutation_invariance(Bank::efficient(1, kEps), k);
        EXPECT_GE(r.accept_probability, 1 - 1e-7);
        EXPECT_LT(r.max_deviation, 1e-8) << k;
    }
}

TEST(Money, Correctness) {
    for (const auto &c : correctness(Bank::efficient(1, kEps), 3)) {
        EXPECT_GE(c.accept_probability, 1 - 1e-7) << c.mints << " " << c.position;
    }
}

}  // namespace
}  // namespace lazyhaar
