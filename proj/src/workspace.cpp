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

#include "lazyhaar/workspace.hpp"

#include <numeric>

namespace lazyhaar {

void Workspace::add(const std::string &label, const Vec &init) {
    if (sys_.contains(label)) {
        throw LabelError("register '" + label + "' already present");
    }
    require_cap(dim() * init.size(), kMaxStateDim, "workspace");
    Vec out(dim() * init.size());
    for (std::size_t i = 0; i < dim(); i++) {
        out.segment(i * init.size(), init.size()) = v_[i] * init;
    }
    auto regs = sys_.registers();
    regs.push_back({label, static_cast<std::size_t>(init.size())});
    sys_ = RegisterSystem(std::move(regs));
    v_ = std::move(out);
}

void Workspace::add_basis(const std::string &label, std::size_t dim, std::size_t index) {
    Vec e = Vec::Zero(dim);
    e[index] = 1.0;
    add(label, e);
}

void Workspace::apply(const Mat &op, const std::vector<std::string> &targets) {
    std::vector<Register> outs;
    for (const auto &t : targets) {
        outs.push_back(sys_[sys_.index(t)]);
    }
    apply(op, targets, outs);
}

void Workspace::apply(const Mat &op, const std::vector<std::string> &targets, const std::vector<Register> &outputs) {
    std::vector<std::size_t> pos;
    for (const auto &t : targets) {
        pos.push_back(sys_.index(t));
    }
    std::vector<std::size_t> out_dims;
    for (const auto &r : outputs) {
        out_dims.push_back(r.dim);
    }
    auto a = tensor::apply_local(v_, sys_.dims(), pos, op, out_dims);
    require_cap(static_cast<std::size_t>(a.v.size()), kMaxStateDim, "workspace");
    std::vector<Register> regs;
    for (auto s : a.source) {
        regs.push_back(s >= 0 ? sys_[static_cast<std::size_t>(s)] : outputs[static_cast<std::size_t>(-1 - s)]);
    }
    sys_ = RegisterSystem(std::move(regs));
    v_ = std::move(a.v);
}

void Workspace::controlled(const std::string &control, const Mat &op, const std::vector<std::string> &targets) {
    if (sys_.dim_of(control) != 2) {
        throw DimensionError("control register '" + control + "' is not a qubit");
    }
    auto m = op.rows();
    Mat big = Mat::Zero(2 * m, 2 * m);
    big.topLeftCorner(m, m) = Mat::Identity(m, m);
    big.bottomRightCorner(m, m) = op;
    std::vector<std::string> all{control};
    all.insert(all.end(), targets.begin(), targets.end());
    apply(big, all);
}

void Workspace::rename(const std::string &from, const std::string &to) {
    if (from == to) {
        return;
    }
    if (sys_.contains(to)) {
        throw LabelError("register '" + to + "' already present");
    }
    auto regs = sys_.registers();
    regs[sys_.index(from)].label = to;
    sys_ = RegisterSystem(std::move(regs));
}

void Workspace::collapse(const std::string &label, std::size_t value) {
    std::size_t d = sys_.dim_of(label);
    Mat proj = Mat::Zero(1, d);
    proj(0, value) = 1.0;
    apply(proj, {label}, {});
}

void Workspace::move_to_back(const std::string &label) {
    std::size_t k = sys_.index(label);
    std::vector<std::size_t> perm;
    for (std::size_t j = 0; j < sys_.size(); j++) {
        if (j != k) {
            perm.push_back(j);
        }
    }
    perm.push_back(k);
    v_ = tensor::permute(v_, sys_.dims(), perm);
    std::vector<Register> regs;
    for (auto p : perm) {
        regs.push_back(sys_[p]);
    }
    sys_ = RegisterSystem(std::move(regs));
}

Mat Workspace::reduced(const std::vector<std::string> &keep) const {
    std::vector<std::size_t> pos;
    for (const auto &k : keep) {
        pos.push_back(sys_.index(k));
    }
    return tensor::reduce_pure(v_, sys_.dims(), pos);
}

Mat dephase(const Mat &rho, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &pos) {
    std::size_t n = rho.rows();
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) {
        stride[k - 1] = stride[k] * dims[k];
    }
    std::vector<std::size_t> key(n, 0);
    for (std::size_t i = 0; i < n; i++) {
        std::size_t kv = 0;
        for (auto p : pos) {
            kv = kv * dims[p] + (i / stride[p]) % dims[p];
        }
        key[i] = kv;
    }
    Mat out = rho;
    for (std::size_t c = 0; c < n; c++) {
        for (std::size_t r = 0; r < n; r++) {
            if (key[r] != key[c]) {
                out(r, c) = 0.0;
            }
        }
    }
    return out;
}

}  // namespace lazyhaar
