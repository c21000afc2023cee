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
#include "lazyhaar/registers.hpp"

namespace lazyhaar {
namespace {

TEST(Rng, Deterministic) {
    Rng a(7), b(7), c(8);
    EXPECT_EQ(a.next(), b.next());
    EXPECT_NE(Rng(7).next(), c.next());
}

TEST(HaarState, NormalizedAndSpread) {
    Rng rng(1);
    Vec mean = Vec::Zero(4);
    double p0 = 0;
    const int n = 20000;
    for (int i = 0; i < n; i++) {
        Vec v = haar_state(4, rng);
        EXPECT_NEAR(v.norm(), 1.0, 1e-12);
        mean += v;
        p0 += std::norm(v[0]);
    }
    EXPECT_LT((mean / n).norm(), 0.03);
    EXPECT_NEAR(p0 / n, 0.25, 0.01);
}

TEST(HaarUnitary, IsUnitary) {
    Rng rng(2);
    for (std::size_t d : {1, 2, 3, 8}) {
        EXPECT_TRUE(is_unitary(haar_unitary(d, rng), 1e-10));
    }
}

TEST(HaarUnitary, TraceMoments) {
    // E|tr U|^2 = 1 and E|tr U|^4 = 2 for d >= 2.
    Rng rng(3);
    const int n = 100000;
    double m2 = 0, m4 = 0;
    for (int i = 0; i < n; i++) {
        double a = std::norm(haar_unitary(3, rng).trace());
        m2 += a;
        m4 += a * a;
    }
    EXPECT_NEAR(m2 / n, 1.0, 0.02);
    EXPECT_NEAR(m4 / n, 2.0, 0.08);
}

TEST(Permutations, CountAndCycles) {
    EXPECT_EQ(all_perms(3).size(), 6u);
    EXPECT_EQ(all_perms(0).size(), 1u);
    EXPECT_EQ(cycle_count({0, 1, 2}), 3u);
    EXPECT_EQ(cycle_count({1, 0, 2}), 2u);
    EXPECT_EQ(cycle_count({1, 2, 0}), 1u);
}

TEST(Weingarten, MatchesClosedForms) {
    for (std::size_t t = 1; t <= 3; t++) {
        auto perms = all_perms(t);
        for (std::size_t d = std::max<std::size_t>(t, 2); d <= 5; d++) {
            if (t == 3 && d < 3) {
                continue;
            }
            Mat wg = weingarten_matrix(d, t);
            for (std::size_t i = 0; i < perms.size(); i++) {
                for (std::size_t j = 0; j < perms.size(); j++) {
                    // Wg(σ, τ) depends on σ^{-1}τ.
                    Perm inv(t), rel(t);
                    for (std::size_t k = 0; k < t; k++) {
                        inv[perms[i][k]] = k;
                    }
                    for (std::size_t k = 0; k < t; k++) {
                        rel[k] = inv[perms[j][k]];
                    }
                    EXPECT_NEAR(wg(i, j).real(), weingarten_closed_form(rel, d), 1e-12) << d << " " << t;
                }
            }
        }
    }
}

TEST(Weingarten, ClosedFormValues) {
    EXPECT_DOUBLE_EQ(weingarten_closed_form({0}, 2), 0.5);
    EXPECT_DOUBLE_EQ(weingarten_closed_form({0, 1}, 2), 1.0 / 3);
    EXPECT_DOUBLE_EQ(weingarten_closed_form({1, 0}, 2), -1.0 / 6);
    EXPECT_THROW(weingarten_closed_form({0, 1, 2}, 2), DomainError);
}

TEST(Weingarten, RankDeficientCase) {
    // d = 2, t = 3: the Gram matrix is singular and the pseudoinverse is used.
    Mat wg = weingarten_matrix(2, 3);
    EXPECT_TRUE(wg.allFinite());
    EXPECT_LT((wg - wg.adjoint()).norm(), 1e-12);
}

TEST(MomentMatrix, FirstMoment) {
    // E[U_ab conj(U_cd)] = δ_ac δ_bd / d.
    Mat m = moment_matrix(3, {true});
    EXPECT_LT((m - Mat::Identity(9, 9) / 3.0).norm(), 1e-12);
    Mat mi = moment_matrix(3, {false});
    EXPECT_LT((mi - Mat::Identity(9, 9) / 3.0).norm(), 1e-12);
}

TEST(MomentMatrix, HermitianPsdUnitTrace) {
    for (auto pattern : std::vector<std::vector<bool>>{{true, true}, {true, false}, {false, true, true}, {true, true, true}}) {
        Mat m = moment_matrix(2, pattern);
        EXPECT_LT((m - m.adjoint()).norm(), 1e-12);
        Eigen::SelfAdjointEigenSolver<Mat> es(m);
        EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
        // E‖m‖^2 = Π ‖vec U‖^2 = d^t.
        EXPECT_NEAR(m.trace().real(), std::pow(2.0, static_cast<double>(pattern.size())), 1e-10);
    }
}

TEST(MomentMatrix, MatchesMonteCarlo) {
    Rng rng(11);
    std::vector<bool> pattern = {true, false, true};
    Mat exact = moment_matrix(2, pattern);
    const std::size_t n = 100000, batch = 1000;
    Mat acc = Mat::Zero(64, 64);
    Mat cols(64, batch);
    for (std::size_t done = 0; done < n; done += batch) {
        for (std::size_t b = 0; b < batch; b++) {
            cols.col(b) = moment_vector(haar_unitary(2, rng), pattern);
        }
        acc.noalias() += cols * cols.adjoint();
    }
    acc /= static_cast<double>(n);
    EXPECT_LT((acc - exact).cwiseAbs().maxCoeff(), 1.5e-2);
}

TEST(MomentVector, Layout) {
    Mat u(2, 2);
    u << 1, 2, 3, 4;
    Vec f = moment_vector(u, {true});
    EXPECT_EQ(f[1], cd(2));
    Vec i = moment_vector(u, {false});
    EXPECT_EQ(i[1], cd(3));
    EXPECT_EQ(moment_vector(u, {true, false}).size(), 16);
}

}  // namespace
}  // namespace lazyhaar
