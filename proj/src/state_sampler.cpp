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

#include "lazyhaar/state_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lazyhaar/symmetric.hpp"

namespace lazyhaar {

namespace {

std::size_t state_dim(std::size_t n) {
    if (n == 0 || n > 6) {
        throw DomainError("state sampler supports 1 <= n <= 6");
    }
    return std::size_t{1} << n;
}

// Rows flag = 0 then flag = 1: (tr Q - Q) and Q.
Mat flag_isometry(const Mat &q) {
    auto d = q.rows();
    Mat op(2 * d, d);
    op.topRows(d) = q.trace() * Mat::Identity(d, d) - q;
    op.bottomRows(d) = q;
    return op;
}

void append_flag(Workspace &ws, const Mat &q, const std::string &target, const std::string &flag) {
    std::size_t d = ws.system().dim_of(target);
    if (static_cast<std::size_t>(q.rows()) != d) {
        throw DimensionError("Ver target has dimension " + std::to_string(d));
    }
    ws.apply(flag_isometry(q), {target}, {{flag, 2}, {target, d}});
}

Mat plus_state_matrix() { return Mat::Constant(2, 1, 1 / std::sqrt(2.0)); }

}  // namespace

IdealStateSampler::IdealStateSampler(std::size_t n, Rng &rng) : n_(n), phi_(haar_state(state_dim(n), rng)) {}

IdealStateSampler::IdealStateSampler(std::size_t n, Vec phi) : n_(n), phi_(std::move(phi)) {
    if (static_cast<std::size_t>(phi_.size()) != state_dim(n)) {
        throw DimensionError("phi has the wrong dimension");
    }
    if (std::abs(phi_.norm() - 1) > kTauNorm) {
        throw DomainError("phi is not normalized");
    }
}

void IdealStateSampler::gen(Workspace &ws, const std::string &out) {
    ws.add(out, phi_);
    t_gen_++;
}

void IdealStateSampler::ver(Workspace &ws, const std::string &target, const std::string &flag) {
    append_flag(ws, phi_ * phi_.adjoint(), target, flag);
    t_ver_++;
}

void IdealStateSampler::creflect(Workspace &ws, const std::string &control, const std::string &target) {
    std::size_t d = phi_.size();
    if (ws.system().dim_of(target) != d) {
        throw DimensionError("CReflect target has the wrong dimension");
    }
    ws.controlled(control, Mat::Identity(d, d) - 2.0 * phi_ * phi_.adjoint(), {target});
    t_creflect_++;
}

EfficientStateSampler::EfficientStateSampler(std::size_t n, double eps) : n_(n), eps_(eps) {
    state_dim(n);
    if (!(eps > 0 && eps < 1)) {
        throw DomainError("epsilon must be in (0, 1)");
    }
}

double EfficientStateSampler::budget_used() const {
    double s = 0;
    for (const auto &b : budget_) {
        s += b.amount;
    }
    return s;
}

std::vector<std::string> EfficientStateSampler::b_labels() const {
    std::vector<std::string> out;
    if (!init_) {
        return out;
    }
    for (std::size_t k = 1; k <= std::max<std::size_t>(t_, 1); k++) {
        out.push_back("$B." + std::to_string(k));
    }
    return out;
}

void EfficientStateSampler::init(Workspace &ws) {
    if (init_) {
        throw DomainError("Init may be called only once");
    }
    std::size_t d = state_dim(n_);
    auto phi = max_entangled(d, "$A.1", "$B.1");
    ws.add_basis("$A.1", d);
    ws.add_basis("$B.1", d);
    ws.apply(complete_to_unitary(phi.amplitudes()), {"$A.1", "$B.1"});
    init_ = true;
}

void EfficientStateSampler::gen(Workspace &ws, const std::string &out) {
    if (!init_) {
        init(ws);
    }
    if (t_ == 0) {
        ws.rename("$A.1", out);
        t_ = 1;
        budget_.push_back({"Gen", t_, q_, 0.0});
        return;
    }
    std::size_t d = state_dim(n_);
    auto v = v_increment_full(n_, t_);
    std::vector<std::string> in;
    std::vector<Register> outs{{out, d}};
    for (std::size_t k = 1; k <= t_; k++) {
        in.push_back("$B." + std::to_string(k));
    }
    for (std::size_t k = 1; k <= t_ + 1; k++) {
        outs.push_back({"$B." + std::to_string(k), d});
    }
    ws.apply(v.matrix(), in, outs);
    t_++;
    budget_.push_back({"Gen", t_, q_, eps_ * std::ldexp(1.0, -static_cast<int>(t_ + 2 * q_))});
}

void EfficientStateSampler::creflect(Workspace &ws, const std::string &control, const std::string &target) {
    if (!init_ || t_ == 0) {
        throw DomainError("CReflect before any Gen is not supported");
    }
    std::size_t d = state_dim(n_);
    if (ws.system().dim_of(target) != d) {
        throw DimensionError("CReflect target has the wrong dimension");
    }
    Mat v = v_increment_full(n_, t_ - 1).matrix();
    Mat r = Mat::Identity(v.rows(), v.rows()) - 2.0 * v * v.adjoint();
    std::vector<std::string> targets{target};
    for (std::size_t k = 1; k <= t_; k++) {
        targets.push_back("$B." + std::to_string(k));
    }
    ws.controlled(control, r, targets);
    q_++;
    int e = static_cast<int>(t_ + 2 * (q_ - 1));
    budget_.push_back({"CReflect", t_, q_, eps_ * (std::ldexp(1.0, -e) + std::ldexp(1.0, -(e + 1)))});
}

void EfficientStateSampler::ver(Workspace &ws, const std::string &target, const std::string &flag) {
    ws.add(flag, plus_state_matrix().col(0));
    creflect(ws, flag, target);
    ws.apply(named_gate("H"), {flag});
}

std::array<VerBranch, 2> measure_flag(const Workspace &ws, const std::string &flag) {
    std::array<VerBranch, 2> out;
    for (std::size_t v = 0; v < 2; v++) {
        Workspace w = ws;
        w.collapse(flag, v);
        out[v].accept = v == 1;
        out[v].probability = w.norm2();
        if (out[v].probability > 0) {
            out[v].post = Workspace(Statevector(w.system(), w.vec() / std::sqrt(out[v].probability), Statevector::Unchecked{}));
        }
    }
    return out;
}

namespace {

// Linear oracle: each call takes its slot value from a basis assignment.
class SlotStateOracle : public Oracle {
   public:
    SlotStateOracle(std::size_t d, std::vector<std::size_t> values) : d_(d), values_(std::move(values)), probe_(false) {}
    explicit SlotStateOracle(std::size_t d) : d_(d), probe_(true) {}

    const std::vector<SlotKind> &kinds() const { return kinds_; }

    void gen(Workspace &ws, const std::string &out) override {
        Vec e = Vec::Zero(d_);
        e[next(SlotKind::Vector)] = 1;
        ws.add(out, e);
    }

    void ver(Workspace &ws, const std::string &target, const std::string &flag) override {
        append_flag(ws, projector_slot(), target, flag);
    }

    void creflect(Workspace &ws, const std::string &control, const std::string &target) override {
        Mat q = projector_slot();
        if (ws.system().dim_of(target) != d_) {
            throw DimensionError("CReflect target has the wrong dimension");
        }
        Mat big = Mat::Zero(2 * d_, 2 * d_);
        Mat id = Mat::Identity(d_, d_);
        big.topLeftCorner(d_, d_) = q.trace() * id;
        big.bottomRightCorner(d_, d_) = q.trace() * id - 2.0 * q;
        ws.apply(big, {control, target});
    }

   private:
    std::size_t next(SlotKind k) {
        std::size_t slot = kinds_.size();
        kinds_.push_back(k);
        if (probe_) {
            return 0;
        }
        if (slot >= values_.size()) {
            throw DomainError("slot assignment shorter than the interaction");
        }
        return values_[slot];
    }

    Mat projector_slot() {
        std::size_t pq = next(SlotKind::Projector);
        Mat q = Mat::Zero(d_, d_);
        q(pq / d_, pq % d_) = 1;
        return q;
    }

    std::size_t d_;
    std::vector<std::size_t> values_;
    bool probe_;
    std::vector<SlotKind> kinds_;
};

std::size_t slot_size(std::size_t d, SlotKind k) { return k == SlotKind::Vector ? d : d * d; }

}  // namespace

SlotExpansion expand_slots(std::size_t n, const Interaction &run) {
    SlotExpansion ex;
    ex.d = state_dim(n);
    SlotStateOracle probe(ex.d);
    Workspace first = run(probe);
    ex.kinds = probe.kinds();
    ex.system = first.system();
    std::size_t cols = 1;
    for (auto k : ex.kinds) {
        cols *= slot_size(ex.d, k);
        require_cap(cols, 4096, "slot expansion");
    }
    ex.columns = Mat::Zero(first.dim(), cols);
    std::vector<std::size_t> values(ex.kinds.size());
    for (std::size_t c = 0; c < cols; c++) {
        std::size_t rem = c;
        for (std::size_t k = ex.kinds.size(); k-- > 0;) {
            std::size_t s = slot_size(ex.d, ex.kinds[k]);
            values[k] = rem % s;
            rem /= s;
        }
        SlotStateOracle o(ex.d, values);
        Workspace ws = run(o);
        if (!(ws.system() == ex.system)) {
            throw DomainError("interaction layout depends on slot values");
        }
        ex.columns.col(c) = ws.vec();
    }
    return ex;
}

Mat slot_moment(std::size_t d, const std::vector<SlotKind> &kinds) {
    std::size_t dim = 1, deg = 0;
    for (auto k : kinds) {
        dim *= slot_size(d, k);
        deg += k == SlotKind::Vector ? 1 : 2;
    }
    require_cap(dim, 4096, "slot moment");
    std::vector<double> fact(deg + 1, 1.0);
    for (std::size_t k = 1; k <= deg; k++) {
        fact[k] = fact[k - 1] * static_cast<double>(k);
    }
    double rising = 1;
    for (std::size_t j = 0; j < deg; j++) {
        rising *= static_cast<double>(d + j);
    }
    // Per index: holomorphic and antiholomorphic letters it contributes.
    std::vector<std::vector<std::size_t>> hol(dim), anti(dim);
    for (std::size_t idx = 0; idx < dim; idx++) {
        std::size_t rem = idx;
        std::vector<std::size_t> digits(kinds.size());
        for (std::size_t k = kinds.size(); k-- > 0;) {
            std::size_t s = slot_size(d, kinds[k]);
            digits[k] = rem % s;
            rem /= s;
        }
        for (std::size_t k = 0; k < kinds.size(); k++) {
            if (kinds[k] == SlotKind::Vector) {
                hol[idx].push_back(digits[k]);
            } else {
                hol[idx].push_back(digits[k] / d);
                anti[idx].push_back(digits[k] % d);
            }
        }
    }
    Mat m = Mat::Zero(dim, dim);
    std::vector<std::size_t> h, a;
    for (std::size_t i = 0; i < dim; i++) {
        for (std::size_t j = 0; j < dim; j++) {
            // m_i conj(m_j): φ letters hol_i + anti_j, conj(φ) letters anti_i + hol_j.
            h = hol[i];
            h.insert(h.end(), anti[j].begin(), anti[j].end());
            a = anti[i];
            a.insert(a.end(), hol[j].begin(), hol[j].end());
            std::sort(h.begin(), h.end());
            std::sort(a.begin(), a.end());
            if (h != a) {
                continue;
            }
            double w = 1;
            for (std::size_t p = 0; p < h.size();) {
                std::size_t q = p;
                while (q < h.size() && h[q] == h[p]) {
                    q++;
                }
                w *= fact[q - p];
                p = q;
            }
            m(i, j) = w / rising;
        }
    }
    return m;
}

Vec slot_vector(const Vec &phi, const std::vector<SlotKind> &kinds) {
    std::size_t d = phi.size();
    Vec proj(d * d);
    for (std::size_t p = 0; p < d; p++) {
        for (std::size_t q = 0; q < d; q++) {
            proj[p * d + q] = phi[p] * std::conj(phi[q]);
        }
    }
    Vec m = Vec::Ones(1);
    for (auto k : kinds) {
        const Vec &f = k == SlotKind::Vector ? phi : proj;
        Vec next(m.size() * f.size());
        for (Eigen::Index i = 0; i < m.size(); i++) {
            next.segment(i * f.size(), f.size()) = m[i] * f;
        }
        m = std::move(next);
    }
    return m;
}

Mat expansion_state(const SlotExpansion &e, const Mat &moment, const std::vector<std::string> &keep,
                    const std::vector<std::string> &flags) {
    Mat full = e.columns * moment * e.columns.adjoint();
    std::vector<std::size_t> pos, kept_dims, flag_pos;
    for (std::size_t k = 0; k < keep.size(); k++) {
        pos.push_back(e.system.index(keep[k]));
        kept_dims.push_back(e.system.dim_of(keep[k]));
        if (std::find(flags.begin(), flags.end(), keep[k]) != flags.end()) {
            flag_pos.push_back(k);
        }
    }
    return dephase(tensor::reduce(full, e.system.dims(), pos), kept_dims, flag_pos);
}

namespace {

struct ScriptExpansion {
    SlotExpansion ex;
    RunResult layout;
};

ScriptExpansion expand_script(const Script &s) {
    ScriptExpansion out;
    out.ex = expand_slots(s.n, [&](Oracle &o) {
        out.layout = run_script(s, o);
        return out.layout.ws;
    });
    return out;
}

ChannelChoi layout_choi(const RunResult &layout, Mat matrix) {
    ChannelChoi c;
    c.flags = layout.flags;
    for (const auto &l : layout.visible) {
        c.registers.push_back({l, layout.ws.system().dim_of(l)});
    }
    c.matrix = std::move(matrix);
    return c;
}

}  // namespace

ChannelChoi choi_is_exact(const Script &s) {
    auto se = expand_script(s);
    require_cap(se.layout.ws.system().select(se.layout.visible).total_dim(), kMaxChoiDim, "Choi matrix");
    Mat rho = expansion_state(se.ex, slot_moment(se.ex.d, se.ex.kinds), se.layout.visible, se.layout.flags);
    return layout_choi(se.layout, std::move(rho));
}

ChannelChoi choi_es(const Script &s, double eps) {
    EfficientStateSampler es(s.n, eps);
    return adversary_channel(s, es);
}

std::vector<McChoi> choi_is_mc(const std::vector<Script> &scripts, std::size_t samples, Rng &rng) {
    if (samples < 2) {
        throw DomainError("need at least two samples");
    }
    std::size_t n = scripts.empty() ? 1 : scripts[0].n;
    std::size_t d = state_dim(n);
    std::vector<ScriptExpansion> exps;
    std::map<std::vector<SlotKind>, std::size_t> pattern_index;
    std::vector<std::vector<SlotKind>> patterns;
    std::vector<std::size_t> pattern_of;
    std::vector<std::vector<std::size_t>> row_group;
    std::vector<std::size_t> group_count;
    for (const auto &s : scripts) {
        if (s.n != n) {
            throw DomainError("Monte Carlo batch mixes different n");
        }
        exps.push_back(expand_script(s));
        const auto &e = exps.back();
        if (e.layout.visible.size() != e.ex.system.size()) {
            throw DomainError("Monte Carlo path needs every register visible");
        }
        auto [it, inserted] = pattern_index.emplace(e.ex.kinds, patterns.size());
        if (inserted) {
            patterns.push_back(e.ex.kinds);
        }
        pattern_of.push_back(it->second);
        // Group rows by flag values.
        auto dims = e.ex.system.dims();
        std::vector<std::size_t> stride(dims.size(), 1);
        for (std::size_t k = dims.size(); k-- > 1;) {
            stride[k - 1] = stride[k] * dims[k];
        }
        std::vector<std::size_t> fpos;
        for (const auto &f : e.layout.flags) {
            fpos.push_back(e.ex.system.index(f));
        }
        std::vector<std::size_t> groups(e.ex.columns.rows());
        for (std::size_t r = 0; r < groups.size(); r++) {
            std::size_t key = 0;
            for (auto p : fpos) {
                key = key * 2 + (r / stride[p]) % 2;
            }
            groups[r] = key;
        }
        row_group.push_back(groups);
        group_count.push_back(std::size_t{1} << fpos.size());
    }

    std::vector<Mat> mhat(patterns.size());
    for (std::size_t p = 0; p < patterns.size(); p++) {
        std::size_t dim = slot_vector(Vec::Zero(d), patterns[p]).size();
        mhat[p] = Mat::Zero(dim, dim);
    }
    std::vector<double> fourth(scripts.size(), 0.0);
    const std::size_t batch = 2048;
    std::vector<Vec> phis;
    std::vector<Mat> mb(patterns.size());
    for (std::size_t done = 0; done < samples; done += batch) {
        std::size_t b = std::min(batch, samples - done);
        phis.clear();
        for (std::size_t i = 0; i < b; i++) {
            phis.push_back(haar_state(d, rng));
        }
        for (std::size_t p = 0; p < patterns.size(); p++) {
            mb[p].resize(mhat[p].rows(), b);
            for (std::size_t i = 0; i < b; i++) {
                mb[p].col(i) = slot_vector(phis[i], patterns[p]);
            }
            mhat[p].noalias() += mb[p] * mb[p].adjoint();
        }
        for (std::size_t s = 0; s < scripts.size(); s++) {
            Mat y = exps[s].ex.columns * mb[pattern_of[s]];
            Eigen::MatrixXd w = Eigen::MatrixXd::Zero(group_count[s], b);
            for (Eigen::Index r = 0; r < y.rows(); r++) {
                w.row(row_group[s][r]) += y.row(r).cwiseAbs2();
            }
            fourth[s] += w.cwiseAbs2().sum();
        }
    }
    double nn = static_cast<double>(samples);
    std::vector<McChoi> out;
    for (std::size_t s = 0; s < scripts.size(); s++) {
        Mat m = mhat[pattern_of[s]] / nn;
        Mat rho = expansion_state(exps[s].ex, m, exps[s].layout.visible, exps[s].layout.flags);
        double var = std::max(0.0, fourth[s] / nn - rho.squaredNorm());
        out.push_back({layout_choi(exps[s].layout, std::move(rho)), std::sqrt(var / nn), samples});
    }
    return out;
}

std::vector<FamilyScript> state_family(std::size_t max_len, std::uint64_t interlude_seed, bool gen_first) {
    const OpKind calls[] = {OpKind::Gen, OpKind::Ver, OpKind::CReflect};
    auto interludes = interlude_set(interlude_seed);
    std::vector<std::vector<OpKind>> sequences{{}};
    for (std::size_t len = 1; len <= max_len; len++) {
        std::size_t count = ipow(3, len);
        for (std::size_t code = 0; code < count; code++) {
            std::vector<OpKind> seq(len);
            std::size_t rem = code;
            for (std::size_t k = len; k-- > 0;) {
                seq[k] = calls[rem % 3];
                rem /= 3;
            }
            if (!gen_first || seq[0] == OpKind::Gen) {
                sequences.push_back(seq);
            }
        }
    }
    std::vector<FamilyScript> out;
    for (const auto &seq : sequences) {
        std::string base;
        for (auto k : seq) {
            base += (base.empty() ? "" : "-") + to_string(k);
        }
        if (base.empty()) {
            base = "empty";
        }
        std::size_t reps = seq.empty() ? 1 : interludes.size();
        for (std::size_t i = 0; i < reps; i++) {
            FamilyScript fs;
            fs.sequence = seq;
            fs.interlude = seq.empty() ? "none" : interludes[i].first;
            fs.script.name = base + "/" + fs.interlude;
            fs.script.n = 1;
            fs.script.inputs = {{"W.0", 2}, {"C", 2}};
            std::size_t gens = 0;
            for (auto k : seq) {
                ScriptOp op;
                op.kind = k;
                if (k == OpKind::Gen) {
                    gens++;
                } else {
                    op.target = "W.0";
                    if (k == OpKind::CReflect) {
                        op.control = "C";
                        fs.reflects = true;
                    }
                }
                fs.script.ops.push_back(op);
                ScriptOp adv;
                adv.kind = OpKind::AdvUnitary;
                adv.targets = {"W.0", gens > 0 ? "A." + std::to_string(gens) : "C"};
                adv.matrix = interludes[i].second;
                fs.script.ops.push_back(adv);
            }
            out.push_back(std::move(fs));
        }
    }
    return out;
}

}  // namespace lazyhaar
