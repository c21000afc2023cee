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

#include "lazyhaar/state_prep.hpp"
#include "lazyhaar/symmetric.hpp"

namespace lazyhaar {
namespace {

const double kEps[] = {1e-3, 1e-6, 1e-9};

TEST(PrepPolySupport, SingleString) {
    auto r = prep_poly_support({3, {{5, cd(1)}}}, 1e-9);
    EXPECT_NEAR(std::abs(r.state.amplitudes()[5]), 1.0, 1e-14);
    EXPECT_LE(r.error, 1e-9);
}

TEST(PrepPolySupport, BellPair) {
    double h = 1 / std::sqrt(2.0);
    auto r = prep_poly_support({2, {{0, cd(h)}, {3, cd(h)}}}, 1e-9);
    Vec expect = Vec::Zero(4);
    expect[0] = expect[3] = h;
    EXPECT_LT((r.state.amplitudes() - expect).norm(), 1e-14);
}

TEST(PrepPolySupport, ThreePointUniform) {
    double a = 1 / std::sqrt(3.0);
    SparseStateDescription desc{3, {{1, cd(a)}, {4, cd(a)}, {6, cd(a)}}};
    Vec ind = Vec::Zero(8);
    ind[1] = ind[4] = ind[6] = 1;
    for (double eps : kEps) {
        auto r = prep_poly_support(desc, eps);
        EXPECT_LT((r.state.amplitudes() - ind.normalized()).norm(), eps);
        EXPECT_LE(r.error, eps);
        EXPECT_LE(r.ancilla_error, eps);
        EXPECT_NEAR(r.state.norm(), 1.0, 1e-9);
        EXPECT_EQ(r.epsilon, eps);
    }
}

TEST(PrepPolySupport, ComplexAmplitudes) {
    SparseStateDescription desc{2, {{0, cd(0.6, 0)}, {2, cd(0, 0.48)}, {3, cd(-0.64, 0)}}};
    auto r = prep_poly_support(desc, 1e-9);
    EXPECT_LE(r.error, 1e-9);
    EXPECT_LT((r.state.amplitudes() - sparse_target(desc)).norm(), 1e-12);
}

TEST(PrepPolySupport, Errors) {
    EXPECT_THROW(prep_poly_support({2, {{0, cd(1)}, {1, cd(1)}}}, 1e-9), DomainError);
    EXPECT_THROW(prep_poly_support({2, {{0, cd(1)}, {0, cd(0)}}}, 1e-9), DomainError);
    EXPECT_THROW(prep_poly_support({2, {{4, cd(1)}}}, 1e-9), DomainError);
    EXPECT_THROW(prep_poly_support({2, {}}, 1e-9), DomainError);
}

TEST(PrepComplement, EmptySetIsUniform) {
    auto r = prep_complement({2, {}}, 1e-9);
    EXPECT_LT((r.state.amplitudes() - Vec::Constant(4, 0.5)).norm(), 1e-12);
}

TEST(PrepComplement, HalfSet) {
    auto r = prep_complement({2, {0, 1}}, 1e-6);
    Vec expect = Vec::Zero(4);
    expect[2] = expect[3] = 1 / std::sqrt(2.0);
    EXPECT_LT((r.state.amplitudes() - expect).norm(), 1e-6);
    EXPECT_LE(r.error, 1e-6);
}

TEST(PrepComplement, AgreesWithDirectConstruction) {
    SmallSet s{3, {0}};
    auto r = prep_complement(s, 1e-6);
    double fid = std::norm(complement_direct(s).amplitudes().dot(r.state.amplitudes()));
    EXPECT_GE(fid, 1 - 1e-6);
}

TEST(PrepComplement, MeetsBoundAndIsClean) {
    std::vector<SmallSet> sets = {{1, {0}}, {2, {0}}, {2, {1, 2, 3}}, {3, {0}}, {3, {2, 5, 7}}, {3, {0, 1, 2, 3, 4, 5, 6}}};
    for (const auto &s : sets) {
        for (double eps : kEps) {
            auto r = prep_complement(s, eps);
            EXPECT_LE(r.error, eps) << s.n << " " << s.elements.size() << " " << eps;
            EXPECT_LE(r.ancilla_error, eps);
            EXPECT_LE(r.scratch_residual, 1e-12);
            EXPECT_GE(r.rounds, r.rounds_nominal);
            EXPECT_NEAR(r.state.norm(), 1.0, 1e-9);
            EXPECT_LT((r.state.amplitudes() - complement_target(s)).norm(), eps);
        }
    }
}

TEST(PrepComplement, NominalScheduleValues) {
    EXPECT_EQ(complement_rounds_nominal({3, {0}}, 1e-6), 19u);
    EXPECT_EQ(complement_rounds_nominal({2, {}}, 1e-6), 1u);
    EXPECT_EQ(complement_rounds_nominal({1, {0}}, 0.9), 1u);
}

TEST(PrepComplement, NominalScheduleCanFallShort) {
    // When half of the space is excluded, the failure amplitude decays as 2^{-r/2},
    // so the nominal count (which assumes decay 2^{-r}) leaves a 2-norm error above eps.
    SmallSet s{1, {0}};
    double eps = 1e-3;
    auto nominal = complement_rounds_nominal(s, eps);
    auto r = prep_complement_rounds(s, nominal, eps);
    EXPECT_GT(r.error, eps);
    EXPECT_GT(complement_rounds_sufficient(s, eps), nominal);
    EXPECT_LE(prep_complement(s, eps).error, eps);
}

TEST(PrepComplement, ErrorMatchesModel) {
    SmallSet s{2, {0, 3}};
    for (std::size_t rounds = 1; rounds <= 6; rounds++) {
        auto r = prep_complement_rounds(s, rounds, 1e-3);
        double p = std::pow(0.5, static_cast<double>(rounds));
        double keep = std::sqrt(1 - p);
        EXPECT_NEAR(r.error, std::sqrt((1 - keep) * (1 - keep) + p), 1e-12);
    }
}

TEST(PrepComplement, Errors) {
    EXPECT_THROW(prep_complement({1, {0, 1}}, 1e-3), DomainError);
    EXPECT_THROW(prep_complement_rounds({2, {0}}, 0, 1e-3), DomainError);
}

PrepRoutine basis_prep(std::size_t n, std::uint64_t x) {
    return [n, x](double e) { return prep_poly_support({n, {{x, cd(1)}}}, e).state; };
}

TEST(PrepSuperposition, DegenerateWeights) {
    auto r0 = prep_superposition(basis_prep(2, 1), basis_prep(2, 2), 1, 0, 1e-9);
    EXPECT_NEAR(std::abs(r0.state.amplitudes()[1]), 1.0, 1e-12);
    auto r1 = prep_superposition(basis_prep(2, 1), basis_prep(2, 2), 0, 1, 1e-9);
    EXPECT_NEAR(std::abs(r1.state.amplitudes()[2]), 1.0, 1e-12);
}

TEST(PrepSuperposition, SetAndComplement) {
    SmallSet s{2, {0}};
    PrepRoutine p0 = [](double e) { return prep_poly_support({2, {{0, cd(1)}}}, e).state; };
    PrepRoutine p1 = [s](double e) { return prep_complement(s, e).state; };
    double h = 1 / std::sqrt(2.0);
    Vec direct = (h * Vec::Unit(4, 0) + h * complement_target(s)).normalized();
    for (double eps : kEps) {
        auto r = prep_superposition(p0, p1, h, h, eps);
        EXPECT_LT((r.state.amplitudes() - direct).norm(), eps);
        EXPECT_LE(r.error, eps);
        EXPECT_GE(r.control_purity, 1 - eps);
    }
}

TEST(PrepSuperposition, ComplexWeights) {
    PrepRoutine p0 = [](double e) {
        double a = 1 / std::sqrt(2.0);
        return prep_poly_support({3, {{1, cd(a)}, {2, cd(0, a)}}}, e).state;
    };
    PrepRoutine p1 = [](double e) { return prep_complement({3, {1, 2}}, e).state; };
    cd z0(0.6, 0.0), z1(0.0, 0.8);
    auto r = prep_superposition(p0, p1, z0, z1, 1e-9);
    Vec target = z0 * p0(1e-12).amplitudes() + z1 * p1(1e-12).amplitudes();
    EXPECT_LT((r.state.amplitudes() - target).norm(), 1e-9);
    EXPECT_GE(r.control_purity, 1 - 1e-9);
}

TEST(PrepSuperposition, DetectsNonOrthogonalFamilies) {
    double a = 1 / std::sqrt(2.0);
    PrepRoutine overlap = [a](double e) { return prep_poly_support({1, {{0, cd(a)}, {1, cd(a)}}}, e).state; };
    EXPECT_THROW(prep_superposition(basis_prep(1, 0), overlap, a, a, 1e-9), DomainError);
    // Overlap just above the threshold.
    double tiny = 1e-8;
    PrepRoutine near = [tiny](double e) {
        return prep_poly_support({1, {{0, cd(tiny)}, {1, cd(std::sqrt(1 - tiny * tiny))}}}, e).state;
    };
    EXPECT_THROW(prep_superposition(basis_prep(1, 0), near, a, a, 1e-9), DomainError);
    // Overlap below it passes.
    double below = 1e-11;
    PrepRoutine ok = [below](double e) {
        return prep_poly_support({1, {{0, cd(below)}, {1, cd(std::sqrt(1 - below * below))}}}, e).state;
    };
    EXPECT_NO_THROW(prep_superposition(basis_prep(1, 0), ok, a, a, 1e-9));
    EXPECT_THROW(prep_superposition(basis_prep(1, 0), basis_prep(1, 1), 1, 1, 1e-9), DomainError);
}

}  // namespace
}  // namespace lazyhaar
