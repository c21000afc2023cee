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

#include "lazyhaar/haar.hpp"
#include "lazyhaar/symmetric.hpp"

namespace lazyhaar {
namespace {

const std::vector<std::pair<std::size_t, std::size_t>> kSizes = {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}};

OrderedTuple tup(std::size_t n, std::vector<std::uint32_t> e) { return OrderedTuple(n, std::move(e)); }

// Brute-force Sym vector: sum over all t! orderings.
Vec sym_by_all_perms(const OrderedTuple &a) {
    std::size_t d = std::size_t{1} << a.n();
    Vec v = Vec::Zero(ipow(d, a.t()));
    for (const auto &p : all_perms(a.t())) {
        std::size_t idx = 0;
        for (auto k : p) {
            idx = idx * d + a.entries()[k];
        }
        v[idx] += 1.0;
    }
    return v.normalized();
}

TEST(OrderedTuple, Validation) {
    EXPECT_THROW(tup(1, {1, 0}), DomainError);
    EXPECT_THROW(tup(1, {2}), DomainError);
    auto a = tup(2, {0, 3, 3});
    EXPECT_EQ(a.multiplicity(3), 2u);
    EXPECT_EQ(a.multiplicity(1), 0u);
    EXPECT_EQ(a.basis_index(), 0u * 16 + 3 * 4 + 3);
}

TEST(EnumerateBasis, Examples) {
    auto b = enumerate_basis(1, 2);
    ASSERT_EQ(b.size(), 3u);
    EXPECT_EQ(b[0], tup(1, {0, 0}));
    EXPECT_EQ(b[1], tup(1, {0, 1}));
    EXPECT_EQ(b[2], tup(1, {1, 1}));
    auto e = enumerate_basis(1, 0);
    ASSERT_EQ(e.size(), 1u);
    EXPECT_EQ(e[0].t(), 0u);
    EXPECT_EQ(enumerate_basis(2, 2).size(), 10u);
}

TEST(EnumerateBasis, SortedAndCountMatches) {
    for (auto [n, t] : kSizes) {
        auto b = enumerate_basis(n, t);
        EXPECT_EQ(b.size(), sym_dim(n, t));
        for (std::size_t k = 1; k < b.size(); k++) {
            EXPECT_LT(b[k - 1], b[k]);
        }
    }
}

TEST(SymDim, Values) {
    EXPECT_EQ(sym_dim(1, 2), 3u);
    EXPECT_EQ(sym_dim(1, 3), 4u);
    for (std::size_t n = 1; n <= 5; n++) {
        EXPECT_EQ(sym_dim(n, 1), std::uint64_t{1} << n);
    }
    EXPECT_EQ(sym_dim(1, 3), enumerate_basis(1, 3).size());
    EXPECT_THROW(sym_dim(16, 100), CapExceeded);
    EXPECT_THROW(sym_dim(60, 2), DomainError);
}

TEST(InsertRemove, Examples) {
    EXPECT_EQ(insert_string(tup(1, {0, 1}), 0), tup(1, {0, 0, 1}));
    EXPECT_EQ(remove_string(tup(1, {0, 1}), 1), tup(1, {0}));
    EXPECT_THROW(remove_string(tup(1, {0, 0}), 1), DomainError);
    for (const auto &a : enumerate_basis(2, 2)) {
        for (std::uint32_t x = 0; x < 4; x++) {
            EXPECT_EQ(remove_string(insert_string(a, x), x), a);
        }
    }
}

TEST(SymVector, TwoQubitExample) {
    auto v = sym_vector(tup(1, {0, 1})).amplitudes();
    Vec expect = Vec::Zero(4);
    expect[1] = expect[2] = 1.0 / std::sqrt(2.0);
    EXPECT_LT((v - expect).norm(), 1e-15);
}

TEST(SymVector, ConstantTupleIsProduct) {
    auto v = sym_vector(tup(2, {3, 3, 3})).amplitudes();
    EXPECT_NEAR(std::abs(v[63]), 1.0, 1e-15);
    EXPECT_NEAR(v.norm(), 1.0, 1e-15);
}

TEST(SymVector, MatchesAllPermutationSum) {
    for (auto [n, t] : kSizes) {
        for (const auto &a : enumerate_basis(n, t)) {
            EXPECT_LT((sym_vector(a).amplitudes() - sym_by_all_perms(a)).norm(), 1e-12) << to_string(a);
        }
    }
}

TEST(SymVector, Orthonormal) {
    for (auto [n, t] : kSizes) {
        Mat s = sym_basis_matrix(n, t);
        Mat g = s.adjoint() * s;
        EXPECT_LT((g - Mat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff(), 1e-10) << n << "," << t;
    }
}

TEST(SchmidtExpand, Examples) {
    auto terms = schmidt_expand(tup(1, {0, 1}));
    ASSERT_EQ(terms.size(), 2u);
    EXPECT_NEAR(terms[0].coefficient, std::sqrt(0.5), 1e-15);
    EXPECT_EQ(terms[0].rest, tup(1, {1}));
    EXPECT_EQ(terms[0].x, 0u);
    EXPECT_EQ(terms[1].rest, tup(1, {0}));
    EXPECT_EQ(terms[1].x, 1u);
    auto same = schmidt_expand(tup(1, {0, 0}));
    ASSERT_EQ(same.size(), 1u);
    EXPECT_NEAR(same[0].coefficient, 1.0, 1e-15);
    EXPECT_THROW(schmidt_expand(tup(1, {})), DomainError);
}

TEST(SchmidtExpand, Reconstruction) {
    for (auto [n, t] : kSizes) {
        std::size_t d = std::size_t{1} << n;
        for (const auto &a : enumerate_basis(n, t)) {
            Vec acc = Vec::Zero(ipow(d, t));
            for (const auto &term : schmidt_expand(a)) {
                Vec rest = sym_vector(term.rest).amplitudes();
                for (Eigen::Index i = 0; i < rest.size(); i++) {
                    acc[i * d + term.x] += term.coefficient * rest[i];
                }
            }
            EXPECT_LT((acc - sym_vector(a).amplitudes()).norm(), 1e-10) << to_string(a);
        }
    }
}

TEST(SymProjector, Properties) {
    EXPECT_LT((sym_projector(1, 1).matrix() - Mat::Identity(2, 2)).norm(), 1e-15);
    EXPECT_NEAR(sym_projector(1, 2).matrix().trace().real(), 3.0, 1e-12);
    for (auto [n, t] : kSizes) {
        Mat p = sym_projector(n, t).matrix();
        EXPECT_LT((p * p - p).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_LT((p - p.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_NEAR(p.trace().real(), static_cast<double>(sym_dim(n, t)), 1e-9);
        for (const auto &a : enumerate_basis(n, t)) {
            Vec v = sym_vector(a).amplitudes();
            EXPECT_LT((p * v - v).norm(), 1e-9);
        }
    }
}

TEST(SymProjector, EqualsPermutationAverage) {
    for (auto [n, t] : kSizes) {
        std::size_t d = std::size_t{1} << n;
        auto perms = all_perms(t);
        Mat avg = Mat::Zero(ipow(d, t), ipow(d, t));
        for (const auto &p : perms) {
            avg += permutation_matrix(p, d);
        }
        avg /= static_cast<double>(perms.size());
        EXPECT_LT((avg - sym_projector(n, t).matrix()).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(USym, Columns) {
    auto u = u_sym(1, 2).matrix();
    Vec c = u.col(1);
    EXPECT_NEAR(std::abs(c[1] - cd(1 / std::sqrt(2.0))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c[2] - cd(1 / std::sqrt(2.0))), 0.0, 1e-15);
    for (auto [n, t] : kSizes) {
        auto m = u_sym(n, t).matrix();
        EXPECT_TRUE(is_unitary(m));
        for (const auto &a : enumerate_basis(n, t)) {
            EXPECT_LT((m.col(a.basis_index()) - sym_vector(a).amplitudes()).norm(), 1e-12);
        }
    }
}

TEST(PsiAlpha, Examples) {
    auto empty = psi_alpha(tup(2, {})).amplitudes();
    EXPECT_LT((empty - Vec::Constant(4, 0.5)).norm(), 1e-15);
    auto one = psi_alpha(tup(1, {0})).amplitudes();
    EXPECT_NEAR(one[0].real(), std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(one[1].real(), std::sqrt(1.0 / 3.0), 1e-15);
}

TEST(PsiAlpha, PrepRouteAgrees) {
    for (auto [n, t] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}, {1, 1}, {1, 3}, {2, 0}, {2, 2}, {2, 3}}) {
        for (const auto &a : enumerate_basis(n, t)) {
            auto direct = psi_alpha(a).amplitudes();
            auto prepared = psi_alpha_via_prep(a, 1e-9).amplitudes();
            EXPECT_NEAR(direct.norm(), 1.0, 1e-12);
            EXPECT_LT((direct - prepared).norm(), 1e-9) << to_string(a);
        }
    }
}

TEST(MaxEntangledSym, Properties) {
    auto one = max_entangled_sym(2, 1).amplitudes();
    EXPECT_LT((one - max_entangled(4).amplitudes()).norm(), 1e-14);
    auto phi = max_entangled_sym(1, 2);
    auto rho = partial_trace(phi, {"A.1", "A.2"});
    EXPECT_LT((rho.matrix() - sym_projector(1, 2).matrix() / 3.0).norm(), 1e-12);
    auto phi3 = max_entangled_sym(1, 3);
    for (const auto &p : all_perms(3)) {
        EXPECT_LT((permute_registers(p, {"A.1", "A.2", "A.3"}, phi3).amplitudes() - phi3.amplitudes()).norm(), 1e-12);
    }
}

TEST(VIncrement, FirstQueryMakesMaxEntangled) {
    auto v = v_increment(1, 0);
    EXPECT_EQ(v.in_system().total_dim(), 1u);
    EXPECT_LT((v.matrix().col(0) - max_entangled(2).amplitudes()).norm(), 1e-14);
}

TEST(VIncrement, GrowsSymmetricEntangledState) {
    for (auto [n, t] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}, {1, 1}, {1, 2}, {2, 1}}) {
        auto v = v_increment(n, t);
        std::vector<std::string> bs;
        for (std::size_t k = 1; k <= t; k++) {
            bs.push_back("B." + std::to_string(k));
        }
        auto src = max_entangled_sym(n, t);
        Vec out;
        if (t == 0) {
            out = v.matrix().col(0);
        } else {
            out = apply_to_registers(v, bs, src).amplitudes();
        }
        auto target = max_entangled_sym(n, t + 1).amplitudes();
        EXPECT_LT((out - target).norm(), 1e-8) << n << "," << t;
        EXPECT_NEAR(std::abs(target.dot(out)), 1.0, 1e-9);
    }
}

TEST(VIncrement, IsometryOnSymmetricSupport) {
    for (auto [n, t] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
        Mat v = v_increment(n, t).matrix();
        Mat p = sym_projector(n, t).matrix();
        EXPECT_LT((v.adjoint() * v - p).cwiseAbs().maxCoeff(), 1e-8);
        EXPECT_TRUE(is_isometry(v_increment_full(n, t).matrix()));
    }
}

TEST(VIncrement, MatchesAlgebraicOracle) {
    for (auto [n, t] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 2}, {2, 1}}) {
        Mat p = sym_projector(n, t).matrix();
        Mat diff = (v_increment(n, t).matrix() - v_increment_oracle(n, t).matrix()) * p;
        EXPECT_LT(op_norm(diff), 1e-8) << n << "," << t;
    }
}

TEST(VIncrement, DilationExtendsFullMap) {
    for (auto [n, t] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 2}, {2, 1}}) {
        std::size_t d = std::size_t{1} << n;
        Mat u = v_dilation(n, t);
        Mat v = v_increment_full(n, t).matrix();
        EXPECT_TRUE(is_unitary(u));
        for (Eigen::Index c = 0; c < v.cols(); c++) {
            EXPECT_LT((u.col(c * d * d) - v.col(c)).norm(), 1e-12);
        }
    }
}

}  // namespace
}  // namespace lazyhaar
