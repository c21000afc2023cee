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

#include "lazyhaar/designs.hpp"

#include <cmath>
#include <deque>
#include <set>

#include <unsupported/Eigen/KroneckerProduct>

namespace lazyhaar {

void TwirlSpec::validate() const {
    if (t == 0 || ell > t) {
        throw DomainError("twirl needs t >= 1 and ell <= t");
    }
    if (d < 2) {
        throw DomainError("twirl needs d >= 2");
    }
}

std::vector<bool> TwirlSpec::pattern() const {
    std::vector<bool> p(t, false);
    for (std::size_t k = 0; k < ell; k++) {
        p[k] = true;
    }
    return p;
}

namespace {

// Interleaved index of (row digit tuple r, column digit tuple s) in the moment layout.
std::vector<std::size_t> interleave_table(std::size_t d, std::size_t t) {
    std::size_t dt = ipow(d, t);
    std::vector<std::size_t> table(dt * dt);
    for (std::size_t r = 0; r < dt; r++) {
        for (std::size_t s = 0; s < dt; s++) {
            std::size_t idx = 0, rr = r, ss = s, scale = 1;
            for (std::size_t k = 0; k < t; k++) {
                idx += ((rr % d) * d + ss % d) * scale;
                rr /= d;
                ss /= d;
                scale *= d * d;
            }
            table[r * dt + s] = idx;
        }
    }
    return table;
}

Mat apply_moment(const Mat &m, std::size_t d, std::size_t t, const Mat &x) {
    std::size_t dt = ipow(d, t);
    if (static_cast<std::size_t>(x.rows()) != dt || static_cast<std::size_t>(x.cols()) != dt) {
        throw DimensionError("twirl input must be d^t x d^t");
    }
    auto idx = interleave_table(d, t);
    Mat out = Mat::Zero(dt, dt);
    for (std::size_t r = 0; r < dt; r++) {
        for (std::size_t c = 0; c < dt; c++) {
            cd acc = 0;
            for (std::size_t s = 0; s < dt; s++) {
                std::size_t row = idx[r * dt + s];
                for (std::size_t u = 0; u < dt; u++) {
                    acc += m(row, idx[c * dt + u]) * x(s, u);
                }
            }
            out(r, c) = acc;
        }
    }
    return out;
}

Mat tensor_copies(const Mat &u, const std::vector<bool> &forward) {
    Mat g = Mat::Identity(1, 1);
    Mat ud = u.adjoint();
    for (bool f : forward) {
        Mat next = Eigen::kroneckerProduct(g, f ? u : ud).eval();
        g = std::move(next);
    }
    return g;
}

Mat gate_h() {
    double h = 1 / std::sqrt(2.0);
    Mat m(2, 2);
    m << h, h, h, -h;
    return m;
}

Mat gate_s() {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = cd(0, 1);
    return m;
}

std::vector<long long> projective_key(const Mat &u) {
    cd phase = 1;
    for (Eigen::Index i = 0; i < u.size(); i++) {
        cd x = u.data()[i];
        if (std::abs(x) > 1e-6) {
            phase = std::conj(x) / std::abs(x);
            break;
        }
    }
    std::vector<long long> key;
    key.reserve(2 * u.size());
    for (Eigen::Index i = 0; i < u.size(); i++) {
        cd x = u.data()[i] * phase;
        key.push_back(std::llround(x.real() * 1e6));
        key.push_back(std::llround(x.imag() * 1e6));
    }
    return key;
}

Mat canonical_phase(const Mat &u) {
    for (Eigen::Index i = 0; i < u.size(); i++) {
        cd x = u.data()[i];
        if (std::abs(x) > 1e-6) {
            return u * (std::conj(x) / std::abs(x));
        }
    }
    return u;
}

Mat embed_single(const Mat &g, std::size_t n, std::size_t k) {
    Mat out = Mat::Identity(1, 1);
    for (std::size_t q = 0; q < n; q++) {
        Mat f = q == k ? g : Mat::Identity(2, 2);
        Mat next = Eigen::kroneckerProduct(out, f).eval();
        out = std::move(next);
    }
    return out;
}

}  // namespace

Mat haar_twirl(const TwirlSpec &spec, const Mat &x) {
    spec.validate();
    if (spec.t > 3) {
        throw DomainError("exact Haar twirl supports t <= 3; use haar_twirl_mc");
    }
    return apply_moment(moment_matrix(spec.d, spec.pattern()), spec.d, spec.t, x);
}

TwirlEstimate haar_twirl_mc(const TwirlSpec &spec, const Mat &x, std::size_t samples, Rng &rng) {
    spec.validate();
    if (samples < 2) {
        throw DomainError("need at least two samples");
    }
    auto pattern = spec.pattern();
    Mat sum = Mat::Zero(x.rows(), x.cols());
    Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(x.rows(), x.cols());
    for (std::size_t i = 0; i < samples; i++) {
        Mat g = tensor_copies(haar_unitary(spec.d, rng), pattern);
        Mat y = g * x * g.adjoint();
        sum += y;
        sq += y.cwiseAbs2();
    }
    double n = static_cast<double>(samples);
    TwirlEstimate est;
    est.mean = sum / n;
    Eigen::MatrixXd var = (sq / n - est.mean.cwiseAbs2()).cwiseMax(0.0) * (n / (n - 1));
    est.stderr_ = (var / n).cwiseSqrt();
    est.samples = samples;
    return est;
}

Mat design_moment(const UnitaryDesign &design, const std::vector<bool> &forward) {
    if (design.elements.empty()) {
        throw DomainError("empty design");
    }
    std::size_t d = design.dim();
    std::size_t dim = ipow(d * d, forward.size());
    require_cap(dim, kMaxChoiDim * 4, "design moment");
    Mat cols(dim, design.size());
    for (std::size_t i = 0; i < design.size(); i++) {
        cols.col(i) = moment_vector(design.elements[i], forward);
    }
    Mat m = cols * cols.adjoint();
    return m / static_cast<double>(design.size());
}

Mat design_twirl(const UnitaryDesign &design, const TwirlSpec &spec, const Mat &x) {
    spec.validate();
    if (spec.d != design.dim()) {
        throw DimensionError("twirl dimension does not match design");
    }
    auto pattern = spec.pattern();
    Mat out = Mat::Zero(x.rows(), x.cols());
    for (const auto &u : design.elements) {
        Mat g = tensor_copies(u, pattern);
        out += g * x * g.adjoint();
    }
    return out / static_cast<double>(design.size());
}

double twirl_deviation(const Mat &m1, const Mat &m2, std::size_t d, std::size_t t) {
    std::size_t dt = ipow(d, t);
    if (static_cast<std::size_t>(m1.rows()) != dt * dt || m1.rows() != m2.rows()) {
        throw DimensionError("moment matrices do not match");
    }
    // Split interleaved index into (row tuple, input tuple).
    std::vector<std::size_t> in_part(dt * dt);
    for (std::size_t idx = 0; idx < dt * dt; idx++) {
        std::size_t rem = idx, s = 0, scale = 1;
        for (std::size_t k = 0; k < t; k++) {
            s += (rem % d) * scale;
            rem /= d * d;
            scale *= d;
        }
        in_part[idx] = s;
    }
    Eigen::MatrixXd norm2 = Eigen::MatrixXd::Zero(dt, dt);
    for (std::size_t i = 0; i < dt * dt; i++) {
        for (std::size_t j = 0; j < dt * dt; j++) {
            norm2(in_part[i], in_part[j]) += std::norm(m1(i, j) - m2(i, j));
        }
    }
    return std::sqrt(norm2.maxCoeff());
}

DesignCertificate is_design(const UnitaryDesign &design, std::size_t t, double tol) {
    if (t == 0) {
        throw DomainError("design order must be >= 1");
    }
    DesignCertificate cert;
    cert.t = t;
    cert.tolerance = tol;
    std::size_t d = design.dim();
    for (std::size_t ell = 0; ell <= t; ell++) {
        TwirlSpec spec{t, ell, d};
        auto pattern = spec.pattern();
        double dev = twirl_deviation(moment_matrix(d, pattern), design_moment(design, pattern), d, t);
        cert.deviation.push_back(dev);
        if (dev >= cert.max_deviation) {
            cert.max_deviation = dev;
            cert.worst_ell = ell;
        }
    }
    cert.pass = cert.max_deviation <= tol;
    return cert;
}

std::size_t verify(UnitaryDesign &design, std::size_t max_t, double tol) {
    design.verified_order = 0;
    for (std::size_t t = 1; t <= max_t; t++) {
        if (!is_design(design, t, tol).pass) {
            break;
        }
        design.verified_order = t;
    }
    return design.verified_order;
}

bool projectively_equal(const Mat &a, const Mat &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    cd ip = (b.adjoint() * a).trace();
    if (std::abs(ip) < tol) {
        return a.norm() < tol && b.norm() < tol;
    }
    cd phase = ip / std::abs(ip);
    return (a - phase * b).norm() < tol * std::max(1.0, a.norm());
}

UnitaryDesign pauli_group(std::size_t n) {
    if (n == 0 || n > 4) {
        throw DomainError("pauli_group supports 1 <= n <= 4");
    }
    std::vector<Mat> single(4, Mat::Zero(2, 2));
    single[0] = Mat::Identity(2, 2);
    single[1] << 0, 1, 1, 0;
    single[2] << 0, cd(0, -1), cd(0, 1), 0;
    single[3] << 1, 0, 0, -1;
    UnitaryDesign out{"pauli" + std::to_string(n), n, 1, 0, {}};
    std::size_t count = ipow(4, n);
    for (std::size_t code = 0; code < count; code++) {
        Mat p = Mat::Identity(1, 1);
        std::size_t rem = code;
        for (std::size_t q = 0; q < n; q++) {
            Mat next = Eigen::kroneckerProduct(p, single[rem % 4]).eval();
            p = std::move(next);
            rem /= 4;
        }
        out.elements.push_back(p);
    }
    return out;
}

UnitaryDesign clifford_group(std::size_t n) {
    if (n == 0 || n > 2) {
        throw DomainError("clifford_group supports n = 1, 2");
    }
    std::vector<Mat> gens;
    for (std::size_t k = 0; k < n; k++) {
        gens.push_back(embed_single(gate_h(), n, k));
        gens.push_back(embed_single(gate_s(), n, k));
    }
    if (n == 2) {
        Mat cx = Mat::Zero(4, 4);
        cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1;
        gens.push_back(cx);
    }
    std::size_t d = std::size_t{1} << n;
    UnitaryDesign out{"clifford" + std::to_string(n), n, 3, 0, {}};
    std::set<std::vector<long long>> seen;
    std::deque<Mat> queue;
    Mat id = Mat::Identity(d, d);
    seen.insert(projective_key(id));
    queue.push_back(id);
    while (!queue.empty()) {
        Mat u = queue.front();
        queue.pop_front();
        out.elements.push_back(u);
        for (const auto &g : gens) {
            Mat v = canonical_phase(g * u);
            if (seen.insert(projective_key(v)).second) {
                queue.push_back(v);
            }
        }
    }
    return out;
}

UnitaryDesign identity_design(std::size_t n) {
    std::size_t d = std::size_t{1} << n;
    return {"identity" + std::to_string(n), n, 0, 0, {Mat::Identity(d, d)}};
}

std::vector<std::string> builtin_design_names() {
    return {"identity1", "pauli1", "pauli2", "clifford1", "clifford2"};
}

UnitaryDesign builtin_design(const std::string &name) {
    if (name == "identity1") {
        return identity_design(1);
    }
    if (name == "pauli1") {
        return pauli_group(1);
    }
    if (name == "pauli2") {
        return pauli_group(2);
    }
    if (name == "clifford1") {
        return clifford_group(1);
    }
    if (name == "clifford2") {
        return clifford_group(2);
    }
    throw DomainError("unknown design: " + name);
}

nlohmann::json design_to_json(const UnitaryDesign &design) {
    nlohmann::json j;
    j["schema"] = "lazyhaar.design/1";
    j["name"] = design.name;
    j["n"] = design.n;
    j["claimed_order"] = design.claimed_order;
    auto &elems = j["elements"] = nlohmann::json::array();
    for (const auto &u : design.elements) {
        nlohmann::json flat = nlohmann::json::array();
        for (Eigen::Index r = 0; r < u.rows(); r++) {
            for (Eigen::Index c = 0; c < u.cols(); c++) {
                flat.push_back({u(r, c).real(), u(r, c).imag()});
            }
        }
        elems.push_back(flat);
    }
    return j;
}

UnitaryDesign design_from_json(const nlohmann::json &j, bool verify_order) {
    UnitaryDesign out;
    out.name = j.value("name", std::string("custom"));
    out.n = j.at("n").get<std::size_t>();
    out.claimed_order = j.value("claimed_order", std::size_t{0});
    if (out.n == 0 || out.n > 4) {
        throw DomainError("design n must be in [1, 4]");
    }
    std::size_t d = out.dim();
    for (const auto &flat : j.at("elements")) {
        if (flat.size() != d * d) {
            throw DimensionError("design element has wrong size");
        }
        Mat u(d, d);
        for (std::size_t k = 0; k < d * d; k++) {
            u(k / d, k % d) = cd(flat[k].at(0).get<double>(), flat[k].at(1).get<double>());
        }
        if (!is_unitary(u)) {
            throw DomainError("design element is not unitary");
        }
        out.elements.push_back(u);
    }
    if (out.elements.empty()) {
        throw DomainError("design has no elements");
    }
    if (verify_order && out.claimed_order > 0) {
        auto cert = is_design(out, out.claimed_order, 1e-9);
        if (!cert.pass) {
            throw DomainError("design fails its claimed order (deviation " + std::to_string(cert.max_deviation) + ")");
        }
        out.verified_order = out.claimed_order;
    }
    return out;
}

const UnitaryDesign &DesignFamily::at(std::size_t t) const {
    if (t == 0 || t > by_order.size()) {
        throw DomainError("design family '" + name + "' has no member of order " + std::to_string(t));
    }
    return by_order[t - 1];
}

DesignFamily builtin_family(const std::string &name, std::size_t n) {
    DesignFamily f{name, n, {}};
    if (name == "clifford" && (n == 1 || n == 2)) {
        auto c = clifford_group(n);
        f.by_order = {c, c, c};
    } else if (name == "pauli-clifford" && n == 1) {
        auto c = clifford_group(1);
        f.by_order = {pauli_group(1), c, c};
    } else {
        throw DomainError("unknown design family '" + name + "' for n = " + std::to_string(n));
    }
    return f;
}

Mat dilation_rows(const UnitaryDesign &design, std::size_t t, std::size_t ell) {
    if (ell > t) {
        throw DomainError("ell must be <= t");
    }
    std::vector<bool> pattern(t, false);
    for (std::size_t k = 0; k < ell; k++) {
        pattern[k] = true;
    }
    std::size_t dt = ipow(design.dim(), t);
    require_cap(dt * dt, kMaxChoiDim * 4, "dilation rows");
    Mat k(design.size(), dt * dt);
    double scale = 1 / std::sqrt(static_cast<double>(design.size()));
    for (std::size_t i = 0; i < design.size(); i++) {
        Mat g = tensor_copies(design.elements[i], pattern);
        for (std::size_t r = 0; r < dt; r++) {
            for (std::size_t c = 0; c < dt; c++) {
                k(i, r * dt + c) = g(r, c) * scale;
            }
        }
    }
    return k;
}

Transition compute_transition(const UnitaryDesign &dt, const UnitaryDesign &dt1, std::size_t t, std::size_t ell) {
    if (dt.n != dt1.n) {
        throw DimensionError("designs act on different n");
    }
    Mat k1 = dilation_rows(dt, t, ell);
    Mat k2 = dilation_rows(dt1, t, ell);
    Mat raw = k2 * k1.completeOrthogonalDecomposition().pseudoInverse();

    Eigen::JacobiSVD<Mat> svd(raw, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd sigma = svd.singularValues();
    Eigen::VectorXd snapped = (sigma.array() > 1e-6).cast<double>();
    Mat u = svd.matrixU().leftCols(sigma.size());
    Mat v = svd.matrixV().leftCols(sigma.size());

    Transition tr;
    tr.t = t;
    tr.ell = ell;
    tr.w = u * snapped.cast<cd>().asDiagonal() * v.adjoint();
    tr.residual = op_norm(tr.w * k1 - k2);
    Mat p = tr.w.adjoint() * tr.w;
    tr.idempotence_defect = op_norm(p * p - p);

    Eigen::JacobiSVD<Mat> ks(k1, Eigen::ComputeFullU);
    Eigen::Index rank = (ks.singularValues().array() > 1e-8).count();
    Mat basis = ks.matrixU().leftCols(rank);
    tr.support_defect = op_norm(p - basis * basis.adjoint());
    return tr;
}

SpaceReport space_report(const DesignFamily &family) {
    SpaceReport rep;
    rep.family = family.name;
    rep.n = family.n;
    double log2e = 1 / std::log(2.0);
    for (std::size_t q = 1; q <= family.depth(); q++) {
        SpaceRow row;
        row.q = q;
        row.design_size = family.at(q).size();
        row.log2_size = std::log2(static_cast<double>(row.design_size));
        row.bound = 2.0 * static_cast<double>(q) * (2.0 * static_cast<double>(family.n) + log2e);
        rep.rows.push_back(row);
    }
    rep.note =
        "Built-in families are fixed finite groups with depth " + std::to_string(family.depth()) +
        "; they are not a q-design family with the O(q(2n + log e)) seed length for growing q, and calls beyond "
        "the depth are refused.";
    return rep;
}

}  // namespace lazyhaar
