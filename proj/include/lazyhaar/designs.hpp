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

#ifndef LAZYHAAR_DESIGNS_HPP
#define LAZYHAAR_DESIGNS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "lazyhaar/haar.hpp"

namespace lazyhaar {

struct UnitaryDesign {
    std::string name;
    std::size_t n = 1;
    std::size_t claimed_order = 0;
    /// Set by verify(); 0 until a check has passed.
    std::size_t verified_order = 0;
    std::vector<Mat> elements;

    std::size_t dim() const { return std::size_t{1} << n; }
    std::size_t size() const { return elements.size(); }
};

struct TwirlSpec {
    std::size_t t = 1;
    /// Number of forward copies; they come first.
    std::size_t ell = 1;
    std::size_t d = 2;

    void validate() const;
    std::vector<bool> pattern() const;
};

/// Exact Haar twirl (Weingarten) for t <= 3.
Mat haar_twirl(const TwirlSpec &spec, const Mat &x);

struct TwirlEstimate {
    Mat mean;
    /// Per-entry standard error of the mean.
    Eigen::MatrixXd stderr_;
    std::size_t samples = 0;
};
/// Monte Carlo Haar twirl, any t.
TwirlEstimate haar_twirl_mc(const TwirlSpec &spec, const Mat &x, std::size_t samples, Rng &rng);

Mat design_twirl(const UnitaryDesign &design, const TwirlSpec &spec, const Mat &x);

/// (1/|D|) Σ_i m(U_i) m(U_i)†, same layout as moment_matrix.
Mat design_moment(const UnitaryDesign &design, const std::vector<bool> &forward);

/// Worst Frobenius deviation of T(E_su) over the operator basis, for two moment matrices.
double twirl_deviation(const Mat &m1, const Mat &m2, std::size_t d, std::size_t t);

struct DesignCertificate {
    bool pass = false;
    std::size_t t = 0;
    double tolerance = 0;
    double max_deviation = 0;
    std::size_t worst_ell = 0;
    /// Deviation for ell = 0..t.
    std::vector<double> deviation;
};

/// Checks every mixed twirl ell = 0..t against the exact Haar moments.
DesignCertificate is_design(const UnitaryDesign &design, std::size_t t, double tol);
/// Runs is_design for 1..max_t and records the largest passing order.
std::size_t verify(UnitaryDesign &design, std::size_t max_t, double tol);

UnitaryDesign pauli_group(std::size_t n);
/// Projective closure of {H_k, S_k, CNOT} by breadth-first search.
UnitaryDesign clifford_group(std::size_t n);
UnitaryDesign identity_design(std::size_t n);

/// Elements equal up to a global phase.
bool projectively_equal(const Mat &a, const Mat &b, double tol = 1e-9);

/// "pauli1", "clifford1", "clifford2", "identity1".
UnitaryDesign builtin_design(const std::string &name);
std::vector<std::string> builtin_design_names();

nlohmann::json design_to_json(const UnitaryDesign &design);
/// Checks unitarity of every element; runs is_design up to claimed_order when `verify_order`.
UnitaryDesign design_from_json(const nlohmann::json &j, bool verify_order = false);

/// D_1, D_2, ... indexed by order.
struct DesignFamily {
    std::string name;
    std::size_t n = 1;
    std::vector<UnitaryDesign> by_order;

    std::size_t depth() const { return by_order.size(); }
    /// Throws DomainError once the family is exhausted.
    const UnitaryDesign &at(std::size_t t) const;
};

/// "clifford" (n = 1, 2) or "pauli-clifford" (n = 1).
DesignFamily builtin_family(const std::string &name, std::size_t n);

/// Σ_i G_i ⊗ |i>/sqrt|I| written as rows K[i, (out, in)], G_i = U_i^{⊗ell} ⊗ U_i^{†⊗(t-ell)}.
Mat dilation_rows(const UnitaryDesign &design, std::size_t t, std::size_t ell);

struct Transition {
    std::size_t t = 0;
    std::size_t ell = 0;
    Mat w;
    double residual = 0;
    /// ‖(W†W)^2 - W†W‖.
    double idempotence_defect = 0;
    /// ‖W†W - projector onto the environment support‖.
    double support_defect = 0;
};

/// Partial isometry W: B_t -> B_{t+1} with W K_t = K_{t+1}.
Transition compute_transition(const UnitaryDesign &dt, const UnitaryDesign &dt1, std::size_t t, std::size_t ell);

struct SpaceRow {
    std::size_t q = 0;
    std::size_t design_size = 0;
    double log2_size = 0;
    /// Leading term 2q(2n + log2 e).
    double bound = 0;
};
struct SpaceReport {
    std::string family;
    std::size_t n = 0;
    std::vector<SpaceRow> rows;
    std::string note;
};
SpaceReport space_report(const DesignFamily &family);

}  // namespace lazyhaar

#endif
