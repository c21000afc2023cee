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

#include "lazyhaar/money.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <unsupported/Eigen/KroneckerProduct>

#include "lazyhaar/symmetric.hpp"

namespace lazyhaar {

namespace {

// Below this relative weight a branch is dropped.
constexpr double kNullBranch = 1e-30;

std::size_t bank_dim(std::size_t n) {
    if (n == 0 || n > 4) {
        throw DomainError("money supports 1 <= n <= 4");
    }
    return std::size_t{1} << n;
}

bool is_private(const std::string &label) { return !label.empty() && label[0] == '$'; }

double uniform(Rng &rng) { return static_cast<double>(rng.next() >> 11) * 0x1.0p-53; }

// |x>|y> -> |x>|x xor y> on two registers of dimension d.
Mat copy_unitary(std::size_t d) {
    Mat u = Mat::Zero(d * d, d * d);
    for (std::size_t x = 0; x < d; x++) {
        for (std::size_t y = 0; y < d; y++) {
            u(x * d + (x ^ y), x * d + y) = 1;
        }
    }
    return u;
}

void check_labels(const Workspace &ws, const std::vector<std::string> &labels, std::size_t d, const std::string &who) {
    std::set<std::string> seen;
    for (const auto &l : labels) {
        if (is_private(l)) {
            throw LabelError(who + " returned machine register '" + l + "'");
        }
        if (!seen.insert(l).second) {
            throw LabelError(who + " returned '" + l + "' twice");
        }
        if (ws.system().dim_of(l) != d) {
            throw DimensionError(who + " returned '" + l + "' of the wrong dimension");
        }
    }
}

std::string bank_name(const Bank &b) { return to_string(b.kind()); }

}  // namespace

std::string to_string(BankKind k) { return k == BankKind::Efficient ? "efficient" : "ideal"; }

Bank Bank::efficient(std::size_t n, double eps) {
    Bank b;
    b.kind_ = BankKind::Efficient;
    b.n_ = n;
    bank_dim(n);
    b.es_.emplace(n, eps);
    return b;
}

Bank Bank::from_lambda(std::size_t lambda) { return efficient(lambda, std::ldexp(1.0, -static_cast<int>(lambda))); }

Bank Bank::ideal(std::size_t n, Vec phi) {
    Bank b;
    b.kind_ = BankKind::Ideal;
    b.n_ = n;
    bank_dim(n);
    b.is_.emplace(n, std::move(phi));
    return b;
}

Bank Bank::ideal(std::size_t n, Rng &rng) {
    bank_dim(n);
    return ideal(n, haar_state(std::size_t{1} << n, rng));
}

Oracle &Bank::sampler() {
    if (es_) {
        return *es_;
    }
    return *is_;
}

std::vector<std::string> Bank::internal_labels() const { return es_ ? es_->b_labels() : std::vector<std::string>{}; }

void Bank::mint(Workspace &ws, const std::string &out) {
    sampler().gen(ws, out);
    mints_++;
}

std::vector<MoneyBranch> Bank::ver(const Workspace &ws, const std::string &bill, const std::string &out) const {
    std::size_t d = dim();
    if (ws.system().dim_of(bill) != d) {
        throw DimensionError("bill '" + bill + "' has the wrong dimension");
    }
    Bank next = *this;
    std::size_t idx = ++next.vers_;
    std::string flag = "$F.v" + std::to_string(idx);
    Workspace w = ws;
    next.sampler().ver(w, bill, flag);
    w.rename(bill, "$V." + std::to_string(idx));
    std::vector<MoneyBranch> out_branches;
    for (std::size_t v = 0; v < 2; v++) {
        MoneyBranch br{v == 1, w, next};
        br.ws.collapse(flag, v);
        if (br.ws.norm2() <= kNullBranch * ws.norm2()) {
            continue;
        }
        if (br.accept) {
            br.bank.mint(br.ws, out);
        } else {
            br.ws.add_basis(out, d, 0);
        }
        out_branches.push_back(std::move(br));
    }
    return out_branches;
}

double forgery_bound(std::size_t n, std::size_t k) {
    return static_cast<double>(sym_dim(n, k)) / static_cast<double>(sym_dim(n, k + 1));
}

ForgeryResult forgery_experiment(const Bank &bank, const Forger &forger, std::size_t k) {
    if (k == 0) {
        throw DomainError("forgery needs k >= 1");
    }
    Workspace ws;
    Bank b = bank;
    std::vector<std::string> bills;
    for (std::size_t j = 1; j <= k; j++) {
        bills.push_back("M." + std::to_string(j));
        b.mint(ws, bills.back());
    }
    auto labels = forger.forge(ws, bills, b.n());
    if (labels.size() != k + 1) {
        throw DomainError("forger '" + forger.name + "' must return k + 1 registers");
    }
    check_labels(ws, labels, b.dim(), "forger '" + forger.name + "'");
    std::vector<MoneyBranch> live{{true, ws, b}};
    for (std::size_t j = 0; j <= k; j++) {
        std::vector<MoneyBranch> next;
        for (const auto &br : live) {
            for (auto &nb : br.bank.ver(br.ws, labels[j], "O." + std::to_string(j + 1))) {
                if (nb.accept) {
                    next.push_back(std::move(nb));
                }
            }
        }
        live = std::move(next);
    }
    ForgeryResult r{forger.name, bank_name(bank), bank.n(), k, 0.0, forgery_bound(bank.n(), k)};
    for (const auto &br : live) {
        r.success += br.ws.norm2();
    }
    return r;
}

ForgeryResult forgery_haar_exact(std::size_t n, const Forger &forger, std::size_t k) {
    if (k == 0) {
        throw DomainError("forgery needs k >= 1");
    }
    std::size_t d = bank_dim(n);
    std::vector<std::string> flags;
    for (std::size_t j = 1; j <= k + 1; j++) {
        flags.push_back("$F." + std::to_string(j));
    }
    // A fresh bill after an accepted Ver is a further independent copy of φ and cannot
    // change later verdicts, so only the sampler Vers are kept.
    auto e = expand_slots(n, [&](Oracle &o) {
        Workspace ws;
        std::vector<std::string> bills;
        for (std::size_t j = 1; j <= k; j++) {
            bills.push_back("M." + std::to_string(j));
            o.gen(ws, bills.back());
        }
        auto labels = forger.forge(ws, bills, n);
        if (labels.size() != k + 1) {
            throw DomainError("forger '" + forger.name + "' must return k + 1 registers");
        }
        check_labels(ws, labels, d, "forger '" + forger.name + "'");
        for (std::size_t j = 0; j <= k; j++) {
            o.ver(ws, labels[j], flags[j]);
        }
        return ws;
    });
    Mat rho = expansion_state(e, slot_moment(d, e.kinds), flags, flags);
    std::size_t all = (std::size_t{1} << (k + 1)) - 1;
    return {forger.name, "ideal-haar", n, k, rho(all, all).real(), forgery_bound(n, k)};
}

namespace {

struct ViewBranch {
    GameBranch info;
    std::vector<std::string> view;
    std::size_t mints = 0, vers = 0;
    Mat rho;
};

// Averages rho over permutations of its first m registers of dimension d.
Mat symmetrize_leading(const Mat &rho, std::size_t m, std::size_t d) {
    if (m < 2) {
        return rho;
    }
    std::size_t lead = ipow(d, m);
    std::size_t rest = static_cast<std::size_t>(rho.rows()) / lead;
    Mat acc = Mat::Zero(rho.rows(), rho.cols());
    auto perms = all_perms(m);
    for (const auto &p : perms) {
        Mat u = Eigen::kroneckerProduct(permutation_matrix(p, d), Mat::Identity(rest, rest)).eval();
        acc += u * rho * u.adjoint();
    }
    return acc / static_cast<double>(perms.size());
}

std::vector<ViewBranch> play(const Bank &bank, const Tracer &tracer, int b) {
    std::size_t d = bank.dim();
    Workspace ws;
    Bank bk = bank;
    auto labels = tracer.setup(ws, bk);
    if (labels.size() != tracer.k) {
        throw DomainError("tracer '" + tracer.name + "' must submit k registers");
    }
    check_labels(ws, labels, d, "tracer '" + tracer.name + "'");
    if (b == 1) {
        for (std::size_t j = 0; j < labels.size(); j++) {
            ws.rename(labels[tracer.perm[j]], "$P." + std::to_string(j));
        }
        for (std::size_t j = 0; j < labels.size(); j++) {
            ws.rename("$P." + std::to_string(j), labels[j]);
        }
    }
    struct Live {
        MoneyBranch br;
        std::vector<bool> flags;
    };
    std::vector<Live> live{{{true, ws, bk}, {}}};
    for (std::size_t j = 0; j < labels.size(); j++) {
        std::vector<Live> next;
        for (const auto &l : live) {
            for (auto &nb : l.br.bank.ver(l.br.ws, labels[j], "O." + std::to_string(j + 1))) {
                auto f = l.flags;
                f.push_back(nb.accept);
                next.push_back({std::move(nb), std::move(f)});
            }
        }
        live = std::move(next);
    }
    std::vector<ViewBranch> out;
    for (const auto &l : live) {
        ViewBranch v;
        v.info.b = b;
        v.info.flags = l.flags;
        v.info.probability = l.br.ws.norm2();
        for (std::size_t j = 0; j < l.flags.size(); j++) {
            if (l.flags[j]) {
                v.view.push_back("O." + std::to_string(j + 1));
            }
        }
        v.info.accepted = v.view.size();
        for (const auto &x : l.br.bank.internal_labels()) {
            v.view.push_back(x);
        }
        for (const auto &x : l.br.ws.system().labels()) {
            if (!is_private(x) && x.rfind("O.", 0) != 0) {
                v.view.push_back(x);
            }
        }
        v.mints = l.br.bank.mint_count();
        v.vers = l.br.bank.ver_count();
        v.rho = symmetrize_leading(l.br.ws.reduced(v.view), v.info.accepted, d);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

GameTranscript untrace_game(const Bank &bank, const Tracer &tracer, Rng &rng) {
    {
        auto sorted = tracer.perm;
        std::sort(sorted.begin(), sorted.end());
        bool ok = sorted.size() == tracer.k;
        for (std::size_t j = 0; ok && j < sorted.size(); j++) {
            ok = sorted[j] == j;
        }
        if (!ok) {
            throw DomainError("tracer '" + tracer.name + "' has a malformed permutation");
        }
    }
    std::array<std::vector<ViewBranch>, 2> runs{play(bank, tracer, 0), play(bank, tracer, 1)};
    // Blocks by accepted count: the adversary sees the accepted set, not the slots.
    std::array<std::map<std::size_t, Mat>, 2> blocks;
    for (int b = 0; b < 2; b++) {
        for (const auto &v : runs[b]) {
            auto &blk = blocks[b][v.info.accepted];
            if (blk.size() == 0) {
                blk = v.rho;
            } else {
                blk += v.rho;
            }
        }
    }
    std::map<std::size_t, Mat> helstrom;
    double distance = 0;
    std::set<std::size_t> counts;
    for (int b = 0; b < 2; b++) {
        for (const auto &[m, blk] : blocks[b]) {
            counts.insert(m);
        }
    }
    for (auto m : counts) {
        const Mat &ref = blocks[0].count(m) ? blocks[0][m] : blocks[1][m];
        Mat r0 = blocks[0].count(m) ? blocks[0][m] : Mat::Zero(ref.rows(), ref.cols());
        Mat r1 = blocks[1].count(m) ? blocks[1][m] : Mat::Zero(ref.rows(), ref.cols());
        distance += trace_distance(r0, r1);
        Mat delta = r0 - r1;
        delta = (0.5 * (delta + delta.adjoint())).eval();
        Eigen::SelfAdjointEigenSolver<Mat> es(delta);
        Mat proj = Mat::Zero(delta.rows(), delta.cols());
        for (Eigen::Index i = 0; i < delta.rows(); i++) {
            if (es.eigenvalues()[i] > 0) {
                proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
            }
        }
        helstrom[m] = proj;
    }

    GameTranscript t;
    t.tracer = tracer.name;
    t.bank = bank_name(bank);
    t.distance = distance;
    t.win_probability = 0.5 + 0.5 * distance;
    for (int b = 0; b < 2; b++) {
        for (const auto &v : runs[b]) {
            t.branches.push_back(v.info);
        }
    }

    // One sample run for the record.
    t.b = static_cast<int>(rng.next() & 1);
    const auto &run = runs[t.b];
    double u = uniform(rng), acc = 0;
    std::size_t pick = run.size() - 1;
    for (std::size_t i = 0; i < run.size(); i++) {
        acc += run[i].info.probability;
        if (u < acc) {
            pick = i;
            break;
        }
    }
    const auto &v = run[pick];
    double p0 = (helstrom[v.info.accepted] * v.rho).trace().real() / v.info.probability;
    t.guess = uniform(rng) < p0 ? 0 : 1;
    t.win = t.guess == t.b;
    t.flags = v.info.flags;
    for (std::size_t j = 0; j < v.info.flags.size(); j++) {
        if (v.info.flags[j]) {
            t.accepted.push_back(j + 1);
        }
    }
    t.discards = v.info.flags.size() - v.info.accepted;
    t.view = v.view;
    t.bank_mints = v.mints;
    t.bank_vers = v.vers;
    return t;
}

InvarianceResult permutation_invariance(const Bank &bank, std::size_t k) {
    if (k == 0) {
        throw DomainError("permutation check needs k >= 1");
    }
    Workspace ws;
    Bank b = bank;
    for (std::size_t j = 1; j <= k; j++) {
        b.mint(ws, "M." + std::to_string(j));
    }
    std::vector<MoneyBranch> live{{true, ws, b}};
    std::vector<std::string> outs;
    for (std::size_t j = 1; j <= k; j++) {
        outs.push_back("O." + std::to_string(j));
        std::vector<MoneyBranch> next;
        for (const auto &br : live) {
            for (auto &nb : br.bank.ver(br.ws, "M." + std::to_string(j), outs.back())) {
                if (nb.accept) {
                    next.push_back(std::move(nb));
                }
            }
        }
        live = std::move(next);
    }
    InvarianceResult r;
    r.k = k;
    if (live.empty()) {
        return r;
    }
    const Workspace &fin = live.front().ws;
    r.accept_probability = fin.norm2();
    double scale = 1 / std::sqrt(r.accept_probability);
    for (const auto &p : all_perms(k)) {
        Workspace w = fin;
        w.apply(permutation_matrix(p, b.dim()), outs);
        r.max_deviation = std::max(r.max_deviation, (w.vec() - fin.vec()).norm() * scale);
    }
    return r;
}

std::vector<CorrectnessResult> correctness(const Bank &bank, std::size_t max_mints) {
    std::vector<CorrectnessResult> out;
    for (std::size_t m = 1; m <= max_mints; m++) {
        Workspace ws;
        Bank b = bank;
        for (std::size_t j = 1; j <= m; j++) {
            b.mint(ws, "M." + std::to_string(j));
        }
        for (std::size_t j = 1; j <= m; j++) {
            double acc = 0;
            for (const auto &br : b.ver(ws, "M." + std::to_string(j), "O")) {
                if (br.accept) {
                    acc += br.ws.norm2();
                }
            }
            out.push_back({m, j, acc});
        }
    }
    return out;
}

std::vector<Forger> builtin_forgers() {
    std::vector<Forger> out;
    out.push_back({"honest", "returns its bills and a |0^n> register",
                   [](Workspace &ws, const std::vector<std::string> &bills, std::size_t n) {
                       ws.add_basis("X.0", std::size_t{1} << n);
                       auto r = bills;
                       r.push_back("X.0");
                       return r;
                   }});
    out.push_back({"mixed-padding", "returns its bills and half of a maximally entangled pair",
                   [](Workspace &ws, const std::vector<std::string> &bills, std::size_t n) {
                       std::size_t d = std::size_t{1} << n;
                       ws.add_basis("X.0", d);
                       ws.add_basis("K.0", d);
                       ws.apply(complete_to_unitary(max_entangled(d, "X.0", "K.0").amplitudes()), {"X.0", "K.0"});
                       auto r = bills;
                       r.push_back("X.0");
                       return r;
                   }});
    out.push_back({"cnot-copy", "copies the first bill in the computational basis",
                   [](Workspace &ws, const std::vector<std::string> &bills, std::size_t n) {
                       std::size_t d = std::size_t{1} << n;
                       ws.add_basis("X.0", d);
                       ws.apply(copy_unitary(d), {bills.front(), "X.0"});
                       auto r = bills;
                       r.push_back("X.0");
                       return r;
                   }});
    return out;
}

namespace {

std::vector<std::string> mint_two(Workspace &ws, Bank &bank) {
    bank.mint(ws, "M.1");
    bank.mint(ws, "M.2");
    return {"M.1", "M.2"};
}

}  // namespace

std::vector<Tracer> builtin_tracers() {
    std::vector<Tracer> out;
    out.push_back({"honest-swap", "submits two fresh bills, swapped when b = 1", 2, {1, 0}, mint_two});
    out.push_back({"honest-identity", "submits two fresh bills with the identity permutation", 2, {0, 1}, mint_two});
    out.push_back({"orthogonal-marker", "keeps the second bill and submits a |0^n> marker in its place", 2, {1, 0},
                   [](Workspace &ws, Bank &bank) {
                       mint_two(ws, bank);
                       ws.add_basis("Z", bank.dim());
                       return std::vector<std::string>{"M.1", "Z"};
                   }});
    out.push_back({"entangling", "copies the first bill into a kept register before submitting both", 2, {1, 0},
                   [](Workspace &ws, Bank &bank) {
                       mint_two(ws, bank);
                       ws.add_basis("K", bank.dim());
                       ws.apply(copy_unitary(bank.dim()), {"M.1", "K"});
                       return std::vector<std::string>{"M.1", "M.2"};
                   }});
    return out;
}

const Forger &find_forger(const std::string &name) {
    static const auto all = builtin_forgers();
    for (const auto &f : all) {
        if (f.name == name) {
            return f;
        }
    }
    throw DomainError("unknown forger '" + name + "'");
}

const Tracer &find_tracer(const std::string &name) {
    static const auto all = builtin_tracers();
    for (const auto &t : all) {
        if (t.name == name) {
            return t;
        }
    }
    throw DomainError("unknown tracer '" + name + "'");
}

nlohmann::json transcript_to_json(const GameTranscript &t) {
    nlohmann::json branches = nlohmann::json::array();
    for (const auto &b : t.branches) {
        branches.push_back({{"b", b.b}, {"flags", b.flags}, {"accepted", b.accepted}, {"probability", b.probability}});
    }
    return {{"tracer", t.tracer},
            {"bank", t.bank},
            {"b", t.b},
            {"guess", t.guess},
            {"win", t.win},
            {"flags", t.flags},
            {"accepted", t.accepted},
            {"discards", t.discards},
            {"view", t.view},
            {"bank_mints", t.bank_mints},
            {"bank_vers", t.bank_vers},
            {"win_probability", t.win_probability},
            {"distance", t.distance},
            {"branches", branches}};
}

nlohmann::json forgery_to_json(const ForgeryResult &r) {
    return {{"forger", r.forger}, {"bank", r.bank}, {"n", r.n}, {"k", r.k}, {"success", r.success}, {"bound", r.bound}};
}

}  // namespace lazyhaar
