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

#include "lazyhaar/registers.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace lazyhaar {

RegisterSystem::RegisterSystem(std::vector<Register> regs) : regs_(std::move(regs)) {
    std::set<std::string> seen;
    for (const auto &r : regs_) {
        if (r.dim == 0) {
            throw DimensionError("register '" + r.label + "' has dimension 0");
        }
        if (!seen.insert(r.label).second) {
            throw LabelError("duplicate register label '" + r.label + "'");
        }
    }
}

RegisterSystem RegisterSystem::qubits(const std::vector<std::string> &labels, std::size_t n) {
    std::vector<Register> regs;
    for (const auto &l : labels) {
        regs.push_back({l, ipow(2, n)});
    }
    return RegisterSystem(std::move(regs));
}

std::size_t RegisterSystem::total_dim() const {
    std::size_t d = 1;
    for (const auto &r : regs_) {
        d *= r.dim;
    }
    return d;
}

std::vector<std::size_t> RegisterSystem::dims() const {
    std::vector<std::size_t> out;
    for (const auto &r : regs_) {
        out.push_back(r.dim);
    }
    return out;
}

std::vector<std::string> RegisterSystem::labels() const {
    std::vector<std::string> out;
    for (const auto &r : regs_) {
        out.push_back(r.label);
    }
    return out;
}

std::optional<std::size_t> RegisterSystem::find(std::string_view label) const {
    for (std::size_t k = 0; k < regs_.size(); k++) {
        if (regs_[k].label == label) {
            return k;
        }
    }
    return std::nullopt;
}

std::size_t RegisterSystem::index(std::string_view label) const {
    auto k = find(label);
    if (!k) {
        throw LabelError("unknown register label '" + std::string(label) + "'");
    }
    return *k;
}

RegisterSystem RegisterSystem::concat(const RegisterSystem &other) const {
    auto regs = regs_;
    regs.insert(regs.end(), other.regs_.begin(), other.regs_.end());
    return RegisterSystem(std::move(regs));
}

RegisterSystem RegisterSystem::select(const std::vector<std::string> &labels) const {
    std::vector<Register> regs;
    for (const auto &l : labels) {
        regs.push_back(regs_[index(l)]);
    }
    return RegisterSystem(std::move(regs));
}

namespace tensor {

namespace {

std::vector<std::size_t> strides_of(const std::vector<std::size_t> &dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) {
        s[k - 1] = s[k] * dims[k];
    }
    return s;
}

std::size_t prod(const std::vector<std::size_t> &dims) {
    std::size_t p = 1;
    for (auto d : dims) {
        p *= d;
    }
    return p;
}

// For each flattened index of the permuted layout, the source index in the original layout.
std::vector<std::size_t> gather_map(const std::vector<std::size_t> &dims, const std::vector<std::size_t> &perm) {
    auto st = strides_of(dims);
    std::size_t k = perm.size();
    std::vector<std::size_t> nd(k), ns(k);
    for (std::size_t j = 0; j < k; j++) {
        nd[j] = dims[perm[j]];
        ns[j] = st[perm[j]];
    }
    std::size_t total = prod(dims);
    std::vector<std::size_t> out(total);
    std::vector<std::size_t> c(k, 0);
    std::size_t off = 0;
    for (std::size_t i = 0; i < total; i++) {
        out[i] = off;
        for (std::size_t j = k; j-- > 0;) {
            c[j]++;
            off += ns[j];
            if (c[j] < nd[j]) {
                break;
            }
            off -= ns[j] * nd[j];
            c[j] = 0;
        }
    }
    return out;
}

void check_positions(const std::vector<std::size_t> &dims, const std::vector<std::size_t> &pos) {
    std::vector<bool> used(dims.size(), false);
    for (auto p : pos) {
        if (p >= dims.size() || used[p]) {
            throw DimensionError("invalid or repeated target position");
        }
        used[p] = true;
    }
}

}  // namespace

Vec permute(const Vec &v, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &perm) {
    if (perm.size() != dims.size()) {
        throw DimensionError("permutation length does not match factor count");
    }
    check_positions(dims, perm);
    auto g = gather_map(dims, perm);
    Vec out(v.size());
    for (std::size_t i = 0; i < g.size(); i++) {
        out[i] = v[g[i]];
    }
    return out;
}

Applied apply_local(const Vec &v, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &pos,
                    const Mat &op, const std::vector<std::size_t> &out_dims) {
    check_positions(dims, pos);
    std::size_t in_dim = 1;
    for (auto p : pos) {
        in_dim *= dims[p];
    }
    std::size_t out_dim = prod(out_dims);
    if (static_cast<std::size_t>(op.cols()) != in_dim || static_cast<std::size_t>(op.rows()) != out_dim) {
        throw DimensionError("operator shape " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                             " does not match target dims " + std::to_string(out_dim) + "x" +
                             std::to_string(in_dim));
    }
    if (static_cast<std::size_t>(v.size()) != prod(dims)) {
        throw DimensionError("vector length does not match layout");
    }
    std::vector<std::size_t> rest;
    std::vector<bool> is_target(dims.size(), false);
    for (auto p : pos) {
        is_target[p] = true;
    }
    for (std::size_t k = 0; k < dims.size(); k++) {
        if (!is_target[k]) {
            rest.push_back(k);
        }
    }
    std::vector<std::size_t> perm = rest;
    perm.insert(perm.end(), pos.begin(), pos.end());
    Vec moved = permute(v, dims, perm);
    std::size_t rest_dim = moved.size() / std::max<std::size_t>(in_dim, 1);

    using RowMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> x(moved.data(), rest_dim, in_dim);
    RowMat y = x * op.transpose();

    // Layout of y: rest registers then op outputs.
    std::vector<std::size_t> mid_dims;
    std::vector<long> mid_src;
    for (auto r : rest) {
        mid_dims.push_back(dims[r]);
        mid_src.push_back(static_cast<long>(r));
    }
    for (std::size_t j = 0; j < out_dims.size(); j++) {
        mid_dims.push_back(out_dims[j]);
        mid_src.push_back(-1 - static_cast<long>(j));
    }

    // Final order: original order with the target block replaced.
    std::vector<long> final_src;
    if (out_dims.size() == pos.size()) {
        std::vector<long> slot(dims.size());
        for (std::size_t k = 0; k < dims.size(); k++) {
            slot[k] = static_cast<long>(k);
        }
        for (std::size_t j = 0; j < pos.size(); j++) {
            slot[pos[j]] = -1 - static_cast<long>(j);
        }
        final_src = slot;
    } else {
        std::size_t anchor = pos.empty() ? dims.size() : pos[0];
        for (std::size_t k = 0; k <= dims.size(); k++) {
            if (k == anchor) {
                for (std::size_t j = 0; j < out_dims.size(); j++) {
                    final_src.push_back(-1 - static_cast<long>(j));
                }
            }
            if (k < dims.size() && !is_target[k]) {
                final_src.push_back(static_cast<long>(k));
            }
        }
    }
    std::vector<std::size_t> back(final_src.size());
    std::vector<std::size_t> final_dims(final_src.size());
    for (std::size_t k = 0; k < final_src.size(); k++) {
        auto it = std::find(mid_src.begin(), mid_src.end(), final_src[k]);
        back[k] = static_cast<std::size_t>(it - mid_src.begin());
        final_dims[k] = mid_dims[back[k]];
    }
    Eigen::Map<const Vec> yv(y.data(), y.size());
    Applied out;
    out.v = permute(Vec(yv), mid_dims, back);
    out.dims = std::move(final_dims);
    out.source = std::move(final_src);
    return out;
}

Mat apply_left(const Mat &rho, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &pos,
               const Mat &op, const std::vector<std::size_t> &out_dims) {
    // Column-major storage puts the column index as the most significant factor.
    std::vector<std::size_t> ext{static_cast<std::size_t>(rho.cols())};
    ext.insert(ext.end(), dims.begin(), dims.end());
    std::vector<std::size_t> p;
    for (auto q : pos) {
        p.push_back(q + 1);
    }
    Eigen::Map<const Vec> flat(rho.data(), rho.size());
    auto a = apply_local(Vec(flat), ext, p, op, out_dims);
    std::size_t rows = a.v.size() / rho.cols();
    return Eigen::Map<const Mat>(a.v.data(), rows, rho.cols());
}

Mat reduce_pure(const Vec &v, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &keep) {
    check_positions(dims, keep);
    std::vector<bool> kept(dims.size(), false);
    std::size_t kd = 1;
    for (auto k : keep) {
        kept[k] = true;
        kd *= dims[k];
    }
    std::vector<std::size_t> perm = keep;
    for (std::size_t k = 0; k < dims.size(); k++) {
        if (!kept[k]) {
            perm.push_back(k);
        }
    }
    Vec moved = permute(v, dims, perm);
    std::size_t ed = moved.size() / kd;
    using RowMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> x(moved.data(), kd, ed);
    return x * x.adjoint();
}

Mat reduce(const Mat &rho, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &keep) {
    check_positions(dims, keep);
    std::vector<bool> kept(dims.size(), false);
    std::size_t kd = 1;
    for (auto k : keep) {
        kept[k] = true;
        kd *= dims[k];
    }
    std::vector<std::size_t> perm = keep;
    for (std::size_t k = 0; k < dims.size(); k++) {
        if (!kept[k]) {
            perm.push_back(k);
        }
    }
    auto g = gather_map(dims, perm);
    std::size_t ed = g.size() / kd;
    Mat out = Mat::Zero(kd, kd);
    for (std::size_t e = 0; e < ed; e++) {
        for (std::size_t c = 0; c < kd; c++) {
            std::size_t jc = g[c * ed + e];
            for (std::size_t r = 0; r < kd; r++) {
                out(r, c) += rho(g[r * ed + e], jc);
            }
        }
    }
    return out;
}

}  // namespace tensor

Statevector::Statevector(RegisterSystem system, Vec amps) : Statevector(std::move(system), std::move(amps), Unchecked{}) {
    if (std::abs(amps_.norm() - 1.0) > kTauNorm) {
        throw DomainError("statevector norm " + std::to_string(amps_.norm()) + " differs from 1");
    }
}

Statevector::Statevector(RegisterSystem system, Vec amps, Unchecked)
    : system_(std::move(system)), amps_(std::move(amps)) {
    if (static_cast<std::size_t>(amps_.size()) != system_.total_dim()) {
        throw DimensionError("amplitude count " + std::to_string(amps_.size()) + " does not match system dimension " +
                             std::to_string(system_.total_dim()));
    }
    require_cap(system_.total_dim(), kMaxStateDim, "statevector");
}

Statevector Statevector::basis(RegisterSystem system, std::size_t index) {
    Vec v = Vec::Zero(system.total_dim());
    if (index >= static_cast<std::size_t>(v.size())) {
        throw DimensionError("basis index out of range");
    }
    v[index] = 1.0;
    return Statevector(std::move(system), std::move(v));
}

DensityOperator::DensityOperator(RegisterSystem system, Mat matrix)
    : DensityOperator(std::move(system), std::move(matrix), Unchecked{}) {
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kTauNorm) {
        throw DomainError("density operator is not Hermitian");
    }
    if (std::abs(matrix_.trace() - cd(1.0)) > kTauNorm) {
        throw DomainError("density operator trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kTauNorm) {
        throw DomainError("density operator has a negative eigenvalue");
    }
}

DensityOperator::DensityOperator(RegisterSystem system, Mat matrix, Unchecked)
    : system_(std::move(system)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || static_cast<std::size_t>(matrix_.rows()) != system_.total_dim()) {
        throw DimensionError("density matrix shape does not match system");
    }
}

DensityOperator DensityOperator::pure(const Statevector &psi) {
    return DensityOperator(psi.system(), psi.amplitudes() * psi.amplitudes().adjoint(), Unchecked{});
}

LinearMap::LinearMap(RegisterSystem in, RegisterSystem out, Mat matrix)
    : in_(std::move(in)), out_(std::move(out)), matrix_(std::move(matrix)) {
    if (static_cast<std::size_t>(matrix_.cols()) != in_.total_dim() ||
        static_cast<std::size_t>(matrix_.rows()) != out_.total_dim()) {
        throw DimensionError("linear map shape " + std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()) + " does not match systems");
    }
}

LinearMap::LinearMap(RegisterSystem sys, Mat matrix) : LinearMap(sys, sys, std::move(matrix)) {}

Statevector tensor_product(const Statevector &a, const Statevector &b) {
    auto sys = a.system().concat(b.system());
    require_cap(sys.total_dim(), kMaxStateDim, "tensor product");
    Vec v(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); i++) {
        v.segment(i * b.dim(), b.dim()) = a.amplitudes()[i] * b.amplitudes();
    }
    return Statevector(std::move(sys), std::move(v), Statevector::Unchecked{});
}

Statevector apply_to_registers(const LinearMap &op, const std::vector<std::string> &targets,
                               const Statevector &state) {
    const auto &sys = state.system();
    std::vector<std::size_t> pos;
    for (const auto &t : targets) {
        pos.push_back(sys.index(t));
    }
    if (op.in_system().size() != targets.size()) {
        throw DimensionError("operator has " + std::to_string(op.in_system().size()) + " input registers but " +
                             std::to_string(targets.size()) + " targets were given");
    }
    for (std::size_t k = 0; k < pos.size(); k++) {
        if (sys[pos[k]].dim != op.in_system()[k].dim) {
            throw DimensionError("target '" + targets[k] + "' has dimension " + std::to_string(sys[pos[k]].dim) +
                                 ", operator expects " + std::to_string(op.in_system()[k].dim));
        }
    }
    auto out_dims = op.out_system().dims();
    auto a = tensor::apply_local(state.amplitudes(), sys.dims(), pos, op.matrix(), out_dims);
    std::vector<Register> regs;
    bool same_labels = op.in_system().labels() == op.out_system().labels();
    for (auto s : a.source) {
        if (s >= 0) {
            regs.push_back(sys[static_cast<std::size_t>(s)]);
        } else {
            std::size_t j = static_cast<std::size_t>(-1 - s);
            // A square relabel-free op keeps the caller's labels.
            Register r = op.out_system()[j];
            if (same_labels && out_dims.size() == targets.size()) {
                r.label = targets[j];
            }
            regs.push_back(r);
        }
    }
    return Statevector(RegisterSystem(std::move(regs)), std::move(a.v), Statevector::Unchecked{});
}

DensityOperator partial_trace(const DensityOperator &rho, const std::vector<std::string> &keep) {
    std::vector<std::size_t> pos;
    for (const auto &k : keep) {
        pos.push_back(rho.system().index(k));
    }
    return DensityOperator(rho.system().select(keep), tensor::reduce(rho.matrix(), rho.system().dims(), pos),
                           DensityOperator::Unchecked{});
}

DensityOperator partial_trace(const Statevector &psi, const std::vector<std::string> &keep) {
    std::vector<std::size_t> pos;
    for (const auto &k : keep) {
        pos.push_back(psi.system().index(k));
    }
    return DensityOperator(psi.system().select(keep), tensor::reduce_pure(psi.amplitudes(), psi.system().dims(), pos),
                           DensityOperator::Unchecked{});
}

double trace_distance(const Mat &rho, const Mat &sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw DimensionError("trace distance between operators of different shape");
    }
    Mat diff = rho - sigma;
    diff = 0.5 * (diff + diff.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityOperator &rho, const DensityOperator &sigma) {
    if (rho.system().dims() != sigma.system().dims()) {
        throw DimensionError("trace distance between different systems");
    }
    return trace_distance(rho.matrix(), sigma.matrix());
}

Statevector max_entangled(std::size_t d, const std::string &a, const std::string &b) {
    if (d == 0) {
        throw DimensionError("maximally entangled state needs d >= 1");
    }
    RegisterSystem sys({{a, d}, {b, d}});
    Vec v = Vec::Zero(d * d);
    for (std::size_t i = 0; i < d; i++) {
        v[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return Statevector(std::move(sys), std::move(v));
}

Statevector permute_registers(const std::vector<std::size_t> &perm, const std::vector<std::string> &labels,
                              const Statevector &state) {
    if (perm.size() != labels.size()) {
        throw DimensionError("permutation length does not match label count");
    }
    const auto &sys = state.system();
    std::vector<std::size_t> pos;
    for (const auto &l : labels) {
        pos.push_back(sys.index(l));
    }
    for (auto p : pos) {
        if (sys[p].dim != sys[pos[0]].dim) {
            throw DimensionError("permuted registers must share one dimension");
        }
    }
    std::vector<bool> seen(perm.size(), false);
    for (auto p : perm) {
        if (p >= perm.size() || seen[p]) {
            throw DomainError("malformed permutation");
        }
        seen[p] = true;
    }
    std::vector<std::size_t> full(sys.size());
    std::iota(full.begin(), full.end(), 0);
    for (std::size_t k = 0; k < perm.size(); k++) {
        full[pos[k]] = pos[perm[k]];
    }
    return Statevector(sys, tensor::permute(state.amplitudes(), sys.dims(), full), Statevector::Unchecked{});
}

Mat permutation_matrix(const std::vector<std::size_t> &perm, std::size_t d) {
    std::size_t k = perm.size();
    std::size_t n = ipow(d, k);
    std::vector<std::size_t> dims(k, d);
    Mat out = Mat::Zero(n, n);
    for (std::size_t col = 0; col < n; col++) {
        Vec e = Vec::Zero(n);
        e[col] = 1.0;
        out.col(col) = tensor::permute(e, dims, perm);
    }
    return out;
}

}  // namespace lazyhaar
