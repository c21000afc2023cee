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

#include <limits>

#include <unsupported/Eigen/KroneckerProduct>

#include "lazyhaar/haar.hpp"
#include "lazyhaar/registers.hpp"
#include "lazyhaar/symmetric.hpp"

namespace lazyhaar {
namespace {

Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Statevector ket(const std::string &label, std::size_t dim, std::size_t idx) {
    return Statevector::basis(RegisterSystem({{label, dim}}), idx);
}

Mat random_density(std::size_t d, Rng &rng) {
    Mat g(d, d);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            g(i, j) = rng.complex_normal();
        }
    }
    Mat rho = g * g.adjoint();
    return rho / rho.trace();
}

TEST(RegisterSystem, RejectsDuplicateLabels) {
    EXPECT_THROW(RegisterSystem({{"A", 2}, {"A", 2}}), LabelError);
}

TEST(RegisterSystem, ConcatAndSelect) {
    auto a = RegisterSystem::qubits({"A", "B"});
    auto c = a.concat(RegisterSystem({{"C", 4}}));
    EXPECT_EQ(c.total_dim(), 16u);
    EXPECT_EQ(c.select({"C", "A"}).dims(), (std::vector<std::size_t>{4, 2}));
    EXPECT_THROW(a.concat(a), LabelError);
    EXPECT_THROW(a.index("Z"), LabelError);
}

TEST(TensorProduct, BasisStates) {
    auto s = tensor_product(ket("A", 2, 0), ket("B", 2, 1));
    EXPECT_EQ(s.dim(), 4u);
    EXPECT_NEAR(std::abs(s.amplitudes()[1] - cd(1)), 0.0, 1e-15);
}

TEST(TensorProduct, NormAndLabelCollision) {
    auto s = tensor_product(max_entangled(2, "A", "B"), ket("C", 2, 0));
    EXPECT_EQ(s.dim(), 8u);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    EXPECT_THROW(tensor_product(ket("A", 2, 0), ket("A", 2, 1)), LabelError);
}

TEST(TensorProduct, ProductStateTraceIsPure) {
    Rng rng(3);
    Statevector a(RegisterSystem({{"A", 2}}), haar_state(2, rng));
    Statevector b(RegisterSystem({{"B", 4}}), haar_state(4, rng));
    auto rho = partial_trace(tensor_product(a, b), {"A"});
    Mat expect = a.amplitudes() * a.amplitudes().adjoint();
    EXPECT_LT((rho.matrix() - expect).norm(), 1e-12);
}

TEST(ApplyToRegisters, PauliXOnSecondRegister) {
    auto s = tensor_product(ket("A", 2, 0), ket("B", 2, 0));
    auto out = apply_to_registers(LinearMap(RegisterSystem({{"X", 2}}), pauli_x()), {"B"}, s);
    EXPECT_NEAR(std::abs(out.amplitudes()[1]), 1.0, 1e-15);
    EXPECT_EQ(out.system().labels(), (std::vector<std::string>{"A", "B"}));
}

TEST(ApplyToRegisters, Swap) {
    auto s = tensor_product(ket("A", 2, 0), ket("B", 2, 1));
    auto out = apply_to_registers(LinearMap(RegisterSystem::qubits({"P", "Q"}), permutation_matrix({1, 0}, 2)),
                                  {"A", "B"}, s);
    EXPECT_NEAR(std::abs(out.amplitudes()[2]), 1.0, 1e-15);
}

TEST(ApplyToRegisters, ZMirrorsAcrossMaxEntangled) {
    auto phi = max_entangled(2);
    LinearMap z(RegisterSystem({{"Z", 2}}), pauli_z());
    auto left = apply_to_registers(z, {"A"}, phi);
    auto right = apply_to_registers(z, {"B"}, phi);
    EXPECT_LT((left.amplitudes() - right.amplitudes()).norm(), 1e-14);
}

TEST(ApplyToRegisters, Errors) {
    auto s = tensor_product(ket("A", 2, 0), ket("B", 4, 0));
    LinearMap x(RegisterSystem({{"X", 2}}), pauli_x());
    EXPECT_THROW(apply_to_registers(x, {"B"}, s), DimensionError);
    EXPECT_THROW(apply_to_registers(x, {"C"}, s), LabelError);
    EXPECT_THROW(apply_to_registers(x, {"A", "B"}, s), DimensionError);
}

TEST(ApplyToRegisters, IsometryReplacesTarget) {
    // |0> -> |00> style embedding into a 4-dim output.
    Mat v = Mat::Zero(4, 2);
    v(0, 0) = 1;
    v(3, 1) = 1;
    LinearMap iso(RegisterSystem({{"in", 2}}), RegisterSystem({{"out", 4}}), v);
    auto out = apply_to_registers(iso, {"B"}, max_entangled(2));
    EXPECT_EQ(out.system().labels(), (std::vector<std::string>{"A", "out"}));
    EXPECT_NEAR(out.norm(), 1.0, 1e-14);
}

TEST(ApplyToRegisters, UnitaryPreservesNorm) {
    Rng rng(11);
    RegisterSystem sys({{"A", 2}, {"B", 4}, {"C", 2}});
    Statevector s(sys, haar_state(16, rng));
    for (int k = 0; k < 20; k++) {
        auto u = haar_unitary(4, rng);
        s = apply_to_registers(LinearMap(RegisterSystem({{"U", 4}}), u), {"B"}, s);
    }
    EXPECT_NEAR(s.norm(), 1.0, 10 * std::numeric_limits<double>::epsilon() * 16 * 20);
}

TEST(PartialTrace, MaxEntangledIsMaximallyMixed) {
    auto rho = partial_trace(max_entangled(2), {"A"});
    EXPECT_LT((rho.matrix() - Mat::Identity(2, 2) / 2.0).norm(), 1e-15);
    auto rho_b = partial_trace(max_entangled(4), {"B"});
    EXPECT_LT((rho_b.matrix() - Mat::Identity(4, 4) / 4.0).norm(), 1e-15);
}

TEST(PartialTrace, ProductOfDensities) {
    Rng rng(5);
    Mat ra = random_density(2, rng);
    Mat sb = random_density(4, rng);
    Mat joint = Eigen::kroneckerProduct(ra, sb);
    DensityOperator rho(RegisterSystem({{"A", 2}, {"B", 4}}), joint);
    auto red = partial_trace(rho, {"A"});
    EXPECT_LT((red.matrix() - ra).norm(), 1e-12);
    EXPECT_NEAR(red.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_THROW(partial_trace(rho, {"Q"}), LabelError);
}

TEST(TraceDistance, Examples) {
    Mat z0 = Mat::Zero(2, 2), z1 = Mat::Zero(2, 2);
    z0(0, 0) = 1;
    z1(1, 1) = 1;
    EXPECT_NEAR(trace_distance(z0, z0), 0.0, 1e-15);
    EXPECT_NEAR(trace_distance(z0, z1), 1.0, 1e-15);
    EXPECT_NEAR(trace_distance(Mat(Mat::Identity(2, 2) / 2.0), z0), 0.5, 1e-15);
    EXPECT_THROW(trace_distance(z0, Mat(Mat::Zero(4, 4))), DimensionError);
}

TEST(TraceDistance, MetricAndMonotone) {
    Rng rng(17);
    RegisterSystem sys({{"A", 2}, {"B", 2}});
    for (int k = 0; k < 50; k++) {
        Mat a = random_density(4, rng), b = random_density(4, rng), c = random_density(4, rng);
        double ab = trace_distance(a, b), ba = trace_distance(b, a);
        EXPECT_NEAR(ab, ba, 1e-12);
        EXPECT_LE(ab, trace_distance(a, c) + trace_distance(c, b) + kTauNorm);
        EXPECT_LE(ab, 1.0 + kTauNorm);
        DensityOperator ra(sys, a, DensityOperator::Unchecked{}), rb(sys, b, DensityOperator::Unchecked{});
        EXPECT_LE(trace_distance(partial_trace(ra, {"A"}), partial_trace(rb, {"A"})), ab + kTauNorm);
    }
}

TEST(DensityOperator, ValidatesInput) {
    Mat bad = Mat::Identity(2, 2);
    EXPECT_THROW(DensityOperator(RegisterSystem({{"A", 2}}), bad), DomainError);
    Mat neg = Mat::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityOperator(RegisterSystem({{"A", 2}}), neg), DomainError);
}

TEST(Statevector, ValidatesNorm) {
    Vec v = Vec::Ones(2);
    EXPECT_THROW(Statevector(RegisterSystem({{"A", 2}}), v), DomainError);
    EXPECT_THROW(Statevector(RegisterSystem({{"A", 4}}), Vec(Vec::Ones(2) / std::sqrt(2.0))), DimensionError);
}

TEST(MaxEntangled, QubitPair) {
    auto phi = max_entangled(2);
    Vec expect = Vec::Zero(4);
    expect[0] = expect[3] = 1.0 / std::sqrt(2.0);
    EXPECT_LT((phi.amplitudes() - expect).norm(), 1e-15);
}

TEST(MaxEntangled, TransposeTrick) {
    Rng rng(23);
    for (std::size_t d : {2u, 4u}) {
        auto u = haar_unitary(d, rng);
        auto phi = max_entangled(d);
        auto left = apply_to_registers(LinearMap(RegisterSystem({{"U", d}}), u), {"A"}, phi);
        auto right = apply_to_registers(LinearMap(RegisterSystem({{"U", d}}), u.transpose()), {"B"}, phi);
        EXPECT_LT((left.amplitudes() - right.amplitudes()).norm(), 1e-12);
    }
}

TEST(MaxEntangled, MirrorForGeneralOperators) {
    Rng rng(29);
    for (std::size_t d : {2u, 4u}) {
        Mat x(d, d);
        for (std::size_t i = 0; i < d; i++) {
            for (std::size_t j = 0; j < d; j++) {
                x(i, j) = rng.complex_normal();
            }
        }
        auto phi = max_entangled(d);
        auto left = apply_to_registers(LinearMap(RegisterSystem({{"X", d}}), x), {"A"}, phi);
        auto right = apply_to_registers(LinearMap(RegisterSystem({{"X", d}}), x.transpose()), {"B"}, phi);
        EXPECT_LT((left.amplitudes() - right.amplitudes()).norm(), 1e-12);
    }
}

TEST(MaxEntangled, MirrorForIsometries) {
    // (V ⊗ 1)|φ+_A> = sqrt(dB/dA) (1 ⊗ V^T)|φ+_B>, with V: A -> B.
    Rng rng(31);
    std::size_t da = 2, db = 4;
    Mat v = haar_unitary(db, rng).leftCols(da);
    auto phi_a = max_entangled(da, "A", "R");
    auto phi_b = max_entangled(db, "A", "R");
    auto left = apply_to_registers(LinearMap(RegisterSystem({{"in", da}}), RegisterSystem({{"A", db}}), v), {"A"},
                                   phi_a);
    auto right = apply_to_registers(
        LinearMap(RegisterSystem({{"in", db}}), RegisterSystem({{"R", da}}), v.transpose()), {"R"}, phi_b);
    double scale = std::sqrt(static_cast<double>(db) / static_cast<double>(da));
    EXPECT_LT((left.amplitudes() - scale * right.amplitudes()).norm(), 1e-12);
}

TEST(PermuteRegisters, IdentityAndSwap) {
    auto s = tensor_product(ket("A", 2, 0), ket("B", 2, 1));
    EXPECT_LT((permute_registers({0, 1}, {"A", "B"}, s).amplitudes() - s.amplitudes()).norm(), 1e-15);
    auto sw = permute_registers({1, 0}, {"A", "B"}, s);
    EXPECT_NEAR(std::abs(sw.amplitudes()[2]), 1.0, 1e-15);
}

TEST(PermuteRegisters, Errors) {
    auto s = tensor_product(ket("A", 2, 0), ket("B", 4, 1));
    EXPECT_THROW(permute_registers({1, 0}, {"A", "B"}, s), DimensionError);
    auto t = tensor_product(ket("A", 2, 0), ket("B", 2, 1));
    EXPECT_THROW(permute_registers({0, 0}, {"A", "B"}, t), DomainError);
}

TEST(PermuteRegisters, SymmetricEntangledStateInvariant) {
    auto phi = max_entangled_sym(1, 3);
    for (const auto &p : all_perms(3)) {
        auto out = permute_registers(p, {"A.1", "A.2", "A.3"}, phi);
        EXPECT_LT((out.amplitudes() - phi.amplitudes()).norm(), 1e-12);
    }
}

}  // namespace
}  // namespace lazyhaar
