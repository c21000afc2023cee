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

#include "lazyhaar/unitary_sampler.hpp"

#include <cmath>

namespace lazyhaar {

namespace {

std::size_t unitary_dim(std::size_t n) {
    if (n == 0 || n > 4) {
        throw DomainError("unitary sampler supports 1 <= n <= 4");
    }
    return std::size_t{1} << n;
}

void check_target(const Workspace &ws, const std::string &target, std::size_t d) {
    if (ws.system().dim_of(target) != d) {
        throw DimensionError("query register '" + target + "' has the wrong dimension");
    }
}

// Linear oracle answering query k with the matrix unit E_ab of its slot value.
class SlotUnitaryOracle : public Oracle {
   public:
    SlotUnitaryOracle(std::size_t d, std::vector<std::size_t> values) : d_(d), values_(std::move(values)) {}
    explicit SlotUnitaryOracle(std::size_t d) : d_(d), probe_(true) {}

    const std::vector<bool> &pattern() const { return pattern_; }

    void eval(Workspace &ws, const std::string &target) override { apply(ws, target, true); }
    void invert(Workspace &ws, const std::string &target) override { apply(ws, target, false); }

   private:
    void apply(Workspace &ws, const std::string &target, bool forward) {
        check_target(ws, target, d_);
        std::size_t slot = pattern_.size();
        pattern_.push_back(forward);
        std::size_t ab = 0;
        if (!probe_) {
            if (slot >= values_.size()) {
                throw DomainError("slot assignment shorter than the interaction");
            }
            ab = values_[slot];
        }
        Mat e = Mat::Zero(d_, d_);
        e(ab / d_, ab % d_) = 1;
        ws.apply(e, {target});
    }

    std::size_t d_;
    std::vector<std::size_t> values_;
    bool probe_ = false;
    std::vector<bool> pattern_;
};

}  // namespace

IdealUnitarySampler::IdealUnitarySampler(std::size_t n, Rng &rng) : n_(n), u_(haar_unitary(unitary_dim(n), rng)) {}

IdealUnitarySampler::IdealUnitarySampler(std::size_t n, Mat u) : n_(n), u_(std::move(u)) {
    if (static_cast<std::size_t>(u_.rows()) != unitary_dim(n) || !is_unitary(u_)) {
        throw DomainError("IU needs a 2^n x 2^n unitary");
    }
}

void IdealUnitarySampler::eval(Workspace &ws, const std::string &target) {
    check_target(ws, target, u_.rows());
    ws.apply(u_, {target});
    t_e_++;
}

void IdealUnitarySampler::invert(Workspace &ws, const std::string &target) {
    check_target(ws, target, u_.rows());
    ws.apply(u_.adjoint(), {target});
    t_i_++;
}

EfficientUnitarySampler::EfficientUnitarySampler(DesignFamily family, double design_tol)
    : family_(std::move(family)), tol_(design_tol), verified_(family_.depth(), false) {}

const UnitaryDesign &EfficientUnitarySampler::design(std::size_t t) {
    const auto &d = family_.at(t);
    if (!verified_[t - 1]) {
        if (d.verified_order < t) {
            auto cert = is_design(d, t, tol_);
            if (!cert.pass) {
                throw DomainError("family member " + std::to_string(t) + " is not a " + std::to_string(t) +
                                  "-design (deviation " + std::to_string(cert.max_deviation) + ")");
            }
        }
        verified_[t - 1] = true;
    }
    return d;
}

void EfficientUnitarySampler::query(Workspace &ws, const std::string &target, bool forward) {
    std::size_t t = this->t();
    const auto &next = design(t + 1);
    std::size_t d = next.dim();
    check_target(ws, target, d);
    std::size_t m = next.size();
    require_cap(m * d, 4096, "controlled design unitary");
    if (t == 0) {
        ws.add("$E", Vec::Constant(m, 1 / std::sqrt(static_cast<double>(m))));
    } else {
        auto tr = compute_transition(design(t), next, t, t_e_);
        transitions_.push_back({t, t_e_, tr.residual, tr.idempotence_defect, tr.support_defect});
        ws.apply(tr.w, {"$E"}, {{"$E", m}});
    }
    Mat op = Mat::Zero(m * d, m * d);
    for (std::size_t i = 0; i < m; i++) {
        op.block(i * d, i * d, d, d) = forward ? next.elements[i] : Mat(next.elements[i].adjoint());
    }
    ws.apply(op, {"$E", target});
    env_dim_ = m;
    (forward ? t_e_ : t_i_)++;
}

void EfficientUnitarySampler::eval(Workspace &ws, const std::string &target) { query(ws, target, true); }
void EfficientUnitarySampler::invert(Workspace &ws, const std::string &target) { query(ws, target, false); }

ChannelChoi choi_iu_exact(const Script &s) {
    std::size_t d = unitary_dim(s.n);
    SlotUnitaryOracle probe(d);
    RunResult layout = run_script(s, probe);
    auto pattern = probe.pattern();
    std::size_t cols = ipow(d * d, pattern.size());
    require_cap(cols, 4096, "slot expansion");
    Mat c(layout.ws.dim(), cols);
    std::vector<std::size_t> values(pattern.size());
    for (std::size_t col = 0; col < cols; col++) {
        std::size_t rem = col;
        for (std::size_t k = pattern.size(); k-- > 0;) {
            values[k] = rem % (d * d);
            rem /= d * d;
        }
        SlotUnitaryOracle o(d, values);
        auto r = run_script(s, o);
        c.col(col) = r.ws.vec();
    }
    Mat moment = pattern.empty() ? Mat::Ones(1, 1) : moment_matrix(d, pattern);
    Mat full = c * moment * c.adjoint();
    std::vector<std::size_t> pos;
    ChannelChoi out;
    for (const auto &l : layout.visible) {
        pos.push_back(layout.ws.system().index(l));
        out.registers.push_back({l, layout.ws.system().dim_of(l)});
    }
    require_cap(layout.ws.system().select(layout.visible).total_dim(), kMaxChoiDim, "Choi matrix");
    out.matrix = tensor::reduce(full, layout.ws.system().dims(), pos);
    return out;
}

ChannelChoi choi_eu(const Script &s, const DesignFamily &family, std::vector<TransitionRecord> *transitions) {
    EfficientUnitarySampler eu(family);
    auto c = adversary_channel(s, eu);
    if (transitions) {
        *transitions = eu.transitions();
    }
    return c;
}

std::vector<FamilyScript> unitary_family(std::size_t max_len, std::uint64_t interlude_seed) {
    auto interludes = interlude_set(interlude_seed);
    std::vector<FamilyScript> out;
    for (std::size_t len = 1; len <= max_len; len++) {
        for (std::size_t code = 0; code < (std::size_t{1} << len); code++) {
            std::vector<OpKind> seq(len);
            for (std::size_t k = 0; k < len; k++) {
                seq[k] = (code >> (len - 1 - k)) & 1 ? OpKind::Invert : OpKind::Eval;
            }
            std::string base;
            for (auto k : seq) {
                base += (base.empty() ? "" : "-") + to_string(k);
            }
            for (const auto &[name, u] : interludes) {
                FamilyScript fs;
                fs.sequence = seq;
                fs.interlude = name;
                fs.script.name = base + "/" + name;
                fs.script.n = 1;
                fs.script.inputs = {{"W.0", 2}, {"W.1", 2}};
                for (std::size_t j = 0; j < len; j++) {
                    ScriptOp op;
                    op.kind = seq[j];
                    op.target = "W." + std::to_string(j % 2);
                    fs.script.ops.push_back(op);
                    ScriptOp adv;
                    adv.kind = OpKind::AdvUnitary;
                    adv.targets = {"W.0", "W.1"};
                    adv.matrix = u;
                    fs.script.ops.push_back(adv);
                }
                out.push_back(std::move(fs));
            }
        }
    }
    return out;
}

}  // namespace lazyhaar
