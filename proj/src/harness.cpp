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

#include "lazyhaar/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <set>

#include "lazyhaar/designs.hpp"
#include "lazyhaar/money.hpp"
#include "lazyhaar/state_prep.hpp"
#include "lazyhaar/state_sampler.hpp"
#include "lazyhaar/symmetric.hpp"
#include "lazyhaar/unitary_sampler.hpp"

#ifndef LAZYHAAR_VERSION
#define LAZYHAAR_VERSION "0.0.0"
#endif

namespace lazyhaar {

using nlohmann::json;

std::string library_version() { return LAZYHAAR_VERSION; }

namespace {

// ---- config parsing -------------------------------------------------------

std::size_t get_size(const json &j, const std::string &where, bool positive) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        throw ConfigError(where + ": expected a non-negative integer");
    }
    auto v = j.get<std::uint64_t>();
    if (positive && v == 0) {
        throw ConfigError(where + ": must be positive");
    }
    return static_cast<std::size_t>(v);
}

double get_double(const json &j, const std::string &where) {
    if (!j.is_number()) {
        throw ConfigError(where + ": expected a number");
    }
    return j.get<double>();
}

std::string get_string(const json &j, const std::string &where) {
    if (!j.is_string()) {
        throw ConfigError(where + ": expected a string");
    }
    return j.get<std::string>();
}

// ---- check collection -----------------------------------------------------

class Suite {
   public:
    explicit Suite(const ExperimentConfig &cfg) : cfg_(cfg) {}

    void le(const std::string &name, double value, double default_tol) {
        auto it = cfg_.tolerances.find(name);
        double tol = (it == cfg_.tolerances.end() ? default_tol : it->second) * cfg_.tolerance_scale;
        checks_.push_back({name, value, tol, std::isfinite(value) && value <= tol});
    }
    /// Boolean requirement, recorded as 0 (holds) or 1 (violated) against tolerance 0.
    void require(const std::string &name, bool ok) { le(name, ok ? 0.0 : 1.0, 0.0); }

    std::vector<Check> take() {
        std::sort(checks_.begin(), checks_.end(), [](const Check &a, const Check &b) { return a.name < b.name; });
        return std::move(checks_);
    }

   private:
    const ExperimentConfig &cfg_;
    std::vector<Check> checks_;
};

struct Context {
    const ExperimentConfig &cfg;
    Suite &suite;
    json &details;
    Rng &rng;

    const json &param(const std::string &key) const {
        static const json null;
        auto it = cfg.params.find(key);
        return it == cfg.params.end() ? null : *it;
    }
    std::size_t size_param(const std::string &key, std::size_t fallback) const {
        const auto &p = param(key);
        return p.is_null() ? fallback : get_size(p, "config.params." + key, false);
    }
    std::string string_param(const std::string &key, const std::string &fallback) const {
        const auto &p = param(key);
        return p.is_null() ? fallback : get_string(p, "config.params." + key);
    }
    std::vector<std::string> list_param(const std::string &key, std::vector<std::string> fallback) const {
        const auto &p = param(key);
        if (p.is_null()) {
            return fallback;
        }
        if (!p.is_array()) {
            throw ConfigError("config.params." + key + ": expected an array of strings");
        }
        std::vector<std::string> out;
        for (std::size_t i = 0; i < p.size(); i++) {
            out.push_back(get_string(p[i], "config.params." + key + "[" + std::to_string(i) + "]"));
        }
        return out;
    }
};

using SizePairs = std::vector<std::pair<std::size_t, std::size_t>>;

SizePairs size_pairs(const Context &c, SizePairs fallback) {
    const auto &p = c.param("sizes");
    if (!p.is_null()) {
        if (!p.is_array()) {
            throw ConfigError("config.params.sizes: expected an array of [n, t] pairs");
        }
        SizePairs out;
        for (std::size_t i = 0; i < p.size(); i++) {
            std::string where = "config.params.sizes[" + std::to_string(i) + "]";
            if (!p[i].is_array() || p[i].size() != 2) {
                throw ConfigError(where + ": expected [n, t]");
            }
            out.emplace_back(get_size(p[i][0], where + "[0]", true), get_size(p[i][1], where + "[1]", false));
        }
        return out;
    }
    if (c.cfg.t) {
        return {{c.cfg.n, *c.cfg.t}};
    }
    return fallback;
}

std::string tag(std::size_t n, std::size_t t) { return "n" + std::to_string(n) + ".t" + std::to_string(t); }

std::string eps_tag(double e) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "eps%.0e", e);
    return buf;
}

Script load_script(const Context &c) {
    const auto &inline_script = c.param("script");
    if (!inline_script.is_null()) {
        try {
            return script_from_json(inline_script);
        } catch (const Error &e) {
            throw ConfigError(std::string("config.params.script: ") + e.what());
        }
    }
    std::string path = c.string_param("script_file", "");
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config.params.script_file: cannot open '" + path + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception &e) {
        throw ConfigError("config.params.script_file: " + std::string(e.what()));
    }
    try {
        return script_from_json(j);
    } catch (const Error &e) {
        throw ConfigError(path + ": " + e.what());
    }
}

bool has_script(const Context &c) { return !c.param("script").is_null() || !c.param("script_file").is_null(); }

// ---- symmetric subspace ---------------------------------------------------

void sym_selftest(Context &c) {
    for (auto [n, t] : size_pairs(c, {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}})) {
        if (t == 0) {
            throw ConfigError("config.t: sym-selftest needs t >= 1");
        }
        std::size_t d = std::size_t{1} << n;
        std::string p = tag(n, t) + ".";
        Mat b = sym_basis_matrix(n, t);
        c.suite.le(p + "dimension", std::abs(static_cast<double>(b.cols()) - static_cast<double>(sym_dim(n, t))), 0);
        c.suite.le(p + "orthonormality", (b.adjoint() * b - Mat::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff(), 1e-9);

        double schmidt = 0;
        for (const auto &a : enumerate_basis(n, t)) {
            Vec acc = Vec::Zero(ipow(d, t));
            for (const auto &term : schmidt_expand(a)) {
                Vec rest = t == 1 ? Vec::Ones(1) : sym_vector(term.rest).amplitudes();
                for (Eigen::Index i = 0; i < rest.size(); i++) {
                    acc[i * d + term.x] += term.coefficient * rest[i];
                }
            }
            schmidt = std::max(schmidt, (acc - sym_vector(a).amplitudes()).norm());
        }
        c.suite.le(p + "schmidt_reconstruction", schmidt, 1e-9);

        Mat proj = sym_projector(n, t).matrix();
        auto perms = all_perms(t);
        Mat avg = Mat::Zero(proj.rows(), proj.cols());
        for (const auto &pm : perms) {
            avg += permutation_matrix(pm, d);
        }
        avg /= static_cast<double>(perms.size());
        c.suite.le(p + "projector_vs_permutation_average", (avg - proj).cwiseAbs().maxCoeff(), 1e-9);
        c.suite.le(p + "projector_vs_basis", (b * b.adjoint() - proj).cwiseAbs().maxCoeff(), 1e-9);
        c.details[tag(n, t)] = {{"sym_dim", sym_dim(n, t)}, {"basis_size", b.cols()}};
    }
}

void sym_increment(Context &c) {
    for (auto [n, t] : size_pairs(c, {{1, 1}, {1, 2}, {2, 1}})) {
        if (t == 0) {
            throw ConfigError("config.t: sym-increment needs t >= 1");
        }
        std::string p = tag(n, t) + ".";
        auto v = v_increment(n, t);
        std::vector<std::string> bs;
        for (std::size_t k = 1; k <= t; k++) {
            bs.push_back("B." + std::to_string(k));
        }
        Vec out = apply_to_registers(v, bs, max_entangled_sym(n, t)).amplitudes();
        Vec target = max_entangled_sym(n, t + 1).amplitudes();
        c.suite.le(p + "maps_max_entangled_sym", (out - target).norm(), 1e-8);
        Mat proj = sym_projector(n, t).matrix();
        c.suite.le(p + "matches_algebraic_oracle", op_norm((v.matrix() - v_increment_oracle(n, t).matrix()) * proj), 1e-8);
        c.suite.le(p + "isometry_on_sym", (v.matrix().adjoint() * v.matrix() - proj).cwiseAbs().maxCoeff(), 1e-8);
        c.details[tag(n, t)] = {{"overlap", std::abs(target.dot(out))}};
    }
}

// ---- state preparation ----------------------------------------------------

void prep_check(Context &c) {
    std::vector<double> epsilons{1e-3, 1e-6, 1e-9};
    if (!c.param("epsilons").is_null()) {
        epsilons.clear();
        const auto &p = c.param("epsilons");
        if (!p.is_array()) {
            throw ConfigError("config.params.epsilons: expected an array of numbers");
        }
        for (std::size_t i = 0; i < p.size(); i++) {
            epsilons.push_back(get_double(p[i], "config.params.epsilons[" + std::to_string(i) + "]"));
        }
    }
    double a3 = 1 / std::sqrt(3.0);
    std::vector<std::pair<std::string, SparseStateDescription>> sparse = {
        {"basis3", {3, {{5, cd(1)}}}},
        {"uniform3", {3, {{1, cd(a3)}, {4, cd(a3)}, {6, cd(a3)}}}},
        {"complex2", {2, {{0, cd(0.6, 0)}, {2, cd(0, 0.48)}, {3, cd(-0.64, 0)}}}},
    };
    {
        // Seeded random amplitudes on a random support of size 3 in n = 3.
        std::set<std::uint64_t> support;
        while (support.size() < 3) {
            support.insert(c.rng.next() % 8);
        }
        Vec amp = haar_state(3, c.rng);
        SparseStateDescription desc{3, {}};
        std::size_t i = 0;
        for (auto x : support) {
            desc.entries.push_back({x, amp[static_cast<Eigen::Index>(i++)]});
        }
        sparse.push_back({"random3", desc});
    }
    std::vector<std::pair<std::string, SmallSet>> sets = {
        {"n1_s1", {1, {0}}},     {"n2_s1", {2, {0}}}, {"n2_s3", {2, {1, 2, 3}}},
        {"n3_s1", {3, {0}}},     {"n3_s3", {3, {2, 5, 7}}}, {"n3_s7", {3, {0, 1, 2, 3, 4, 5, 6}}},
    };
    json rounds = json::object();
    for (double eps : epsilons) {
        std::string et = eps_tag(eps);
        for (const auto &[name, desc] : sparse) {
            auto r = prep_poly_support(desc, eps);
            std::string p = "poly_support." + name + "." + et + ".";
            c.suite.le(p + "error", r.error, eps);
            c.suite.le(p + "ancilla", r.ancilla_error, eps);
            c.suite.le(p + "target", (r.state.amplitudes() - sparse_target(desc)).norm(), eps);
        }
        for (const auto &[name, s] : sets) {
            auto r = prep_complement(s, eps);
            std::string p = "complement." + name + "." + et + ".";
            c.suite.le(p + "error", r.error, eps);
            c.suite.le(p + "ancilla", r.ancilla_error, eps);
            c.suite.le(p + "scratch", r.scratch_residual, 1e-12);
            c.suite.le(p + "target", (r.state.amplitudes() - complement_target(s)).norm(), eps);
            c.suite.require(p + "rounds_at_least_nominal", r.rounds >= r.rounds_nominal);
            rounds[name + "." + et] = {{"rounds", r.rounds},
                                       {"nominal", r.rounds_nominal},
                                       {"nominal_error", prep_complement_rounds(s, r.rounds_nominal, eps).error}};
        }
        {
            SmallSet s{2, {0}};
            PrepRoutine p0 = [](double e) { return prep_poly_support({2, {{0, cd(1)}}}, e).state; };
            PrepRoutine p1 = [s](double e) { return prep_complement(s, e).state; };
            double h = 1 / std::sqrt(2.0);
            Vec direct = (h * Vec::Unit(4, 0) + h * complement_target(s)).normalized();
            auto r = prep_superposition(p0, p1, h, h, eps);
            std::string p = "superposition.set_and_complement." + et + ".";
            c.suite.le(p + "target", (r.state.amplitudes() - direct).norm(), eps);
            c.suite.le(p + "error", r.error, eps);
            c.suite.le(p + "control_purity", 1 - r.control_purity, eps);
        }
        {
            double a = 1 / std::sqrt(2.0);
            PrepRoutine p0 = [a](double e) { return prep_poly_support({3, {{1, cd(a)}, {2, cd(0, a)}}}, e).state; };
            PrepRoutine p1 = [](double e) { return prep_complement({3, {1, 2}}, e).state; };
            cd z0(0.6, 0), z1(0, 0.8);
            Vec zeta0 = Vec::Zero(8);
            zeta0[1] = a;
            zeta0[2] = cd(0, a);
            Vec direct = z0 * zeta0 + z1 * complement_target({3, {1, 2}});
            auto r = prep_superposition(p0, p1, z0, z1, eps);
            std::string p = "superposition.complex_weights." + et + ".";
            c.suite.le(p + "target", (r.state.amplitudes() - direct).norm(), eps);
            c.suite.le(p + "error", r.error, eps);
            c.suite.le(p + "control_purity", 1 - r.control_purity, eps);
        }
    }
    c.details["complement_rounds"] = rounds;
}

// ---- designs --------------------------------------------------------------

json certificate_json(const DesignCertificate &cert) {
    return {{"pass", cert.pass},
            {"t", cert.t},
            {"tolerance", cert.tolerance},
            {"max_deviation", cert.max_deviation},
            {"worst_ell", cert.worst_ell},
            {"deviation", cert.deviation}};
}

json space_json(const SpaceReport &r) {
    json rows = json::array();
    for (const auto &row : r.rows) {
        rows.push_back({{"q", row.q}, {"design_size", row.design_size}, {"log2_size", row.log2_size}, {"bound", row.bound}});
    }
    return {{"family", r.family}, {"n", r.n}, {"rows", rows}, {"note", r.note}};
}

void design_single(Context &c, UnitaryDesign design) {
    std::size_t t = c.cfg.t.value_or(design.claimed_order);
    if (t == 0) {
        throw ConfigError("config.t: design-check needs an order");
    }
    auto cert = is_design(design, t, 1e-10);
    c.suite.le(design.name + ".t" + std::to_string(t) + ".deviation", cert.max_deviation, 1e-10);
    c.details[design.name] = {{"size", design.size()}, {"certificate", certificate_json(cert)}};
}

void design_check(Context &c) {
    if (!c.param("builtin").is_null()) {
        design_single(c, builtin_design(c.string_param("builtin", "")));
        return;
    }
    if (!c.param("design_file").is_null()) {
        std::string path = c.string_param("design_file", "");
        std::ifstream in(path);
        if (!in) {
            throw ConfigError("config.params.design_file: cannot open '" + path + "'");
        }
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception &e) {
            throw ConfigError("config.params.design_file: " + std::string(e.what()));
        }
        design_single(c, design_from_json(j));
        return;
    }
    auto pauli = pauli_group(1);
    auto p1 = is_design(pauli, 1, 1e-10);
    auto p2 = is_design(pauli, 2, 1e-10);
    c.suite.le("pauli1.t1.deviation", p1.max_deviation, 1e-10);
    c.suite.require("pauli1.t2.fails", !p2.pass);
    c.details["pauli1"] = {{"size", pauli.size()}, {"t1", certificate_json(p1)}, {"t2", certificate_json(p2)}};

    auto cliff1 = clifford_group(1);
    auto c3 = is_design(cliff1, 3, 1e-10);
    auto c4 = is_design(cliff1, 4, 1e-10);
    c.suite.le("clifford1.t3.deviation", c3.max_deviation, 1e-10);
    c.suite.require("clifford1.t4.fails", !c4.pass);
    c.suite.le("clifford1.cardinality", std::abs(static_cast<double>(cliff1.size()) - 24), 0);
    c.details["clifford1"] = {{"size", cliff1.size()}, {"t3", certificate_json(c3)}, {"t4", certificate_json(c4)}};

    // The Weingarten moments are cross-checked by sampling.
    std::size_t samples = c.size_param("mc_samples", 1000000);
    if (samples > 0) {
        std::vector<bool> pattern{true, true, true};
        Mat exact = moment_matrix(2, pattern);
        Mat acc = Mat::Zero(exact.rows(), exact.cols());
        const std::size_t batch = 4096;
        Mat cols(exact.rows(), batch);
        for (std::size_t done = 0; done < samples;) {
            std::size_t m = std::min(batch, samples - done);
            for (std::size_t i = 0; i < m; i++) {
                cols.col(static_cast<Eigen::Index>(i)) = moment_vector(haar_unitary(2, c.rng), pattern);
            }
            auto block = cols.leftCols(static_cast<Eigen::Index>(m));
            acc.noalias() += block * block.adjoint();
            done += m;
        }
        acc /= static_cast<double>(samples);
        c.suite.le("weingarten.t3.monte_carlo", (acc - exact).cwiseAbs().maxCoeff(), 5e-3);
        c.details["weingarten_monte_carlo"] = {{"samples", samples}};
    }

    auto cliff2 = clifford_group(2);
    auto c22 = is_design(cliff2, 2, 1e-10);
    c.suite.le("clifford2.cardinality", std::abs(static_cast<double>(cliff2.size()) - 11520), 0);
    c.suite.le("clifford2.t2.deviation", c22.max_deviation, 1e-10);
    c.details["clifford2"] = {{"size", cliff2.size()}, {"t2", certificate_json(c22)}};

    json space = json::array();
    space.push_back(space_json(space_report(builtin_family("clifford", 1))));
    space.push_back(space_json(space_report(builtin_family("pauli-clifford", 1))));
    space.push_back(space_json(space_report(builtin_family("clifford", 2))));
    c.details["space"] = space;
}

// ---- state sampler --------------------------------------------------------

struct EsRun {
    ChannelChoi choi;
    double budget = 0;
};

EsRun run_es(const Script &s, double eps) {
    EfficientStateSampler es(s.n, eps);
    EsRun r{adversary_channel(s, es), es.budget_used()};
    return r;
}

void state_distinguish(Context &c) {
    double eps = c.cfg.epsilon;
    if (has_script(c)) {
        Script s = load_script(c);
        auto is = choi_is_exact(s);
        auto es = run_es(s, eps);
        double dist = choi_distance(is, es.choi);
        c.suite.le("script.distance", dist, std::max(eps, 1e-7));
        c.suite.le("script.budget", es.budget, eps);
        c.details["script"] = {{"name", s.name}, {"distance", dist}, {"budget", es.budget}};
        return;
    }
    if (c.cfg.n != 1) {
        throw ConfigError("config.n: the script family is defined for n = 1");
    }
    std::size_t max_len = c.size_param("max_len", 3);
    std::uint64_t seed = c.size_param("interlude_seed", 7);
    std::size_t samples = c.size_param("mc_samples", 1000000);
    auto family = state_family(max_len, seed, true);

    double worst = 0, worst_budget = 0;
    std::string worst_name;
    json rows = json::array();
    std::vector<Script> reflecting;
    std::vector<ChannelChoi> reflecting_es, reflecting_exact;
    std::size_t over = 0;
    for (const auto &f : family) {
        auto is = choi_is_exact(f.script);
        auto es = run_es(f.script, eps);
        double dist = choi_distance(is, es.choi);
        if (dist > worst) {
            worst = dist;
            worst_name = f.script.name;
        }
        over += dist > 1e-7;
        worst_budget = std::max(worst_budget, es.budget);
        rows.push_back({{"script", f.script.name}, {"distance", dist}, {"budget", es.budget}, {"reflects", f.reflects}});
        if (f.reflects) {
            reflecting.push_back(f.script);
            reflecting_es.push_back(es.choi);
            reflecting_exact.push_back(is);
        }
    }
    c.suite.le("exact.max_distance", worst, 1e-7);
    c.suite.le("budget.max", worst_budget, eps);

    json mc = json::array();
    if (samples > 0 && !reflecting.empty()) {
        auto est = choi_is_mc(reflecting, samples, c.rng);
        double worst_es = 0, worst_exact = 0;
        for (std::size_t i = 0; i < reflecting.size(); i++) {
            double se = est[i].se_total;
            double d_es = (est[i].mean.matrix - reflecting_es[i].matrix).norm();
            double d_ex = (est[i].mean.matrix - reflecting_exact[i].matrix).norm();
            double z_es = se > 0 ? d_es / se : (d_es < 1e-12 ? 0 : std::numeric_limits<double>::max());
            double z_ex = se > 0 ? d_ex / se : (d_ex < 1e-12 ? 0 : std::numeric_limits<double>::max());
            worst_es = std::max(worst_es, z_es);
            worst_exact = std::max(worst_exact, z_ex);
            mc.push_back({{"script", reflecting[i].name}, {"se_total", se}, {"z_efficient", z_es}, {"z_exact", z_ex}});
        }
        c.suite.le("mc.efficient_within_se", worst_es, 3);
        c.suite.le("mc.exact_within_se", worst_exact, 3);
    }

    // Sequences that call Ver or CReflect before any Gen are refused by the lazy sampler.
    std::size_t refused = 0, others = 0;
    for (const auto &f : state_family(max_len, seed, false)) {
        if (f.sequence.empty() || f.sequence.front() == OpKind::Gen) {
            continue;
        }
        others++;
        try {
            run_es(f.script, eps);
        } catch (const DomainError &) {
            refused++;
        }
    }
    c.suite.le("non_gen_first.accepted", static_cast<double>(others - refused), 0);

    c.details["family_size"] = family.size();
    c.details["reflecting_scripts"] = reflecting.size();
    c.details["non_gen_first_scripts"] = others;
    c.details["scripts_over_tolerance"] = over;
    c.details["worst_script"] = worst_name;
    c.details["scripts"] = rows;
    c.details["monte_carlo"] = {{"samples", samples}, {"scripts", mc}};
}

// ---- unitary sampler ------------------------------------------------------

void unitary_distinguish(Context &c) {
    auto families = c.list_param("families", {"clifford", "pauli-clifford"});
    if (has_script(c)) {
        Script s = load_script(c);
        for (const auto &name : families) {
            std::vector<TransitionRecord> tr;
            auto fam = builtin_family(name, s.n);
            double dist = choi_distance(choi_iu_exact(s), choi_eu(s, fam, &tr));
            double res = 0;
            for (const auto &r : tr) {
                res = std::max(res, r.residual);
            }
            c.suite.le(name + ".script.distance", dist, 1e-8);
            c.suite.le(name + ".script.transition_residual", res, 1e-9);
            c.details[name] = {{"distance", dist}, {"transitions", tr.size()}};
        }
        return;
    }
    if (c.cfg.n != 1) {
        throw ConfigError("config.n: the script family is defined for n = 1");
    }
    std::size_t max_len = c.size_param("max_len", 3);
    std::uint64_t seed = c.size_param("interlude_seed", 7);
    auto scripts = unitary_family(max_len, seed);
    for (const auto &name : families) {
        auto fam = builtin_family(name, 1);
        double worst = 0, res = 0, idem = 0;
        std::string worst_name;
        std::map<std::pair<std::size_t, std::size_t>, double> reached;
        std::vector<ChannelChoi> iu;
        for (const auto &f : scripts) {
            std::vector<TransitionRecord> tr;
            double dist = choi_distance(choi_iu_exact(f.script), choi_eu(f.script, fam, &tr));
            if (dist > worst) {
                worst = dist;
                worst_name = f.script.name;
            }
            for (const auto &r : tr) {
                res = std::max(res, r.residual);
                idem = std::max(idem, r.idempotence_defect);
                auto &slot = reached[{r.t, r.ell}];
                slot = std::max(slot, r.residual);
            }
        }
        c.suite.le(name + ".choi.max_distance", worst, 1e-8);
        c.suite.le(name + ".transition.max_residual", res, 1e-9);
        c.suite.le(name + ".transition.max_idempotence_defect", idem, 1e-9);
        json pairs = json::array();
        for (const auto &[key, r] : reached) {
            pairs.push_back({{"t", key.first}, {"ell", key.second}, {"residual", r}});
        }
        c.details[name] = {{"scripts", scripts.size()},
                           {"worst_script", worst_name},
                           {"max_distance", worst},
                           {"transitions", pairs},
                           {"space", space_json(space_report(fam))}};
    }
}

// ---- money ----------------------------------------------------------------

std::vector<std::string> forger_names() {
    std::vector<std::string> out;
    for (const auto &f : builtin_forgers()) {
        out.push_back(f.name);
    }
    return out;
}

std::vector<std::string> tracer_names() {
    std::vector<std::string> out;
    for (const auto &t : builtin_tracers()) {
        out.push_back(t.name);
    }
    return out;
}

void forge_checks(Context &c, json &out) {
    std::size_t n = c.cfg.n;
    std::vector<std::size_t> ks{1, 2};
    if (c.cfg.t) {
        ks = {*c.cfg.t};
    }
    for (const auto &name : c.list_param("forgers", forger_names())) {
        const auto &f = find_forger(name);
        for (auto k : ks) {
            auto es = forgery_experiment(Bank::efficient(n, c.cfg.epsilon), f, k);
            auto is = forgery_haar_exact(n, f, k);
            std::string kt = ".k" + std::to_string(k);
            c.suite.le("forge.efficient." + name + kt + ".excess", es.success - es.bound, 1e-7);
            c.suite.le("forge.ideal." + name + kt + ".excess", is.success - is.bound, 1e-7);
            out.push_back(forgery_to_json(es));
            out.push_back(forgery_to_json(is));
        }
    }
}

void untrace_checks(Context &c, json &out) {
    std::size_t n = c.cfg.n;
    double tol = std::max(c.cfg.epsilon, 1e-7);
    std::size_t ideal_samples = c.size_param("ideal_samples", 8);
    for (const auto &name : c.list_param("tracers", tracer_names())) {
        const auto &t = find_tracer(name);
        auto es = untrace_game(Bank::efficient(n, c.cfg.epsilon), t, c.rng);
        c.suite.le("untrace.efficient." + name + ".advantage", std::abs(es.win_probability - 0.5), tol);
        out.push_back(transcript_to_json(es));
        double worst = 0;
        for (std::size_t s = 0; s < ideal_samples; s++) {
            auto is = untrace_game(Bank::ideal(n, c.rng), t, c.rng);
            worst = std::max(worst, std::abs(is.win_probability - 0.5));
            if (s == 0) {
                out.push_back(transcript_to_json(is));
            }
        }
        if (ideal_samples > 0) {
            c.suite.le("untrace.ideal." + name + ".advantage", worst, tol);
        }
    }
}

void money_forge(Context &c) {
    json out = json::array();
    forge_checks(c, out);
    c.details["forgery"] = out;
}

void money_untrace(Context &c) {
    json out = json::array();
    untrace_checks(c, out);
    c.details["transcripts"] = out;
}

void money_suite(Context &c) {
    std::size_t n = c.cfg.n;
    auto bank = Bank::efficient(n, c.cfg.epsilon);
    double deficit = 0;
    json corr = json::array();
    for (const auto &r : correctness(bank, c.size_param("max_mints", 3))) {
        deficit = std::max(deficit, 1 - r.accept_probability);
        corr.push_back({{"mints", r.mints}, {"position", r.position}, {"accept", r.accept_probability}});
    }
    c.suite.le("correctness.max_reject", deficit, 1e-7);
    c.details["correctness"] = corr;

    json inv = json::array();
    for (std::size_t k = 1; k <= c.size_param("max_mints", 3); k++) {
        auto r = permutation_invariance(bank, k);
        c.suite.le("invariance.k" + std::to_string(k) + ".deviation", r.max_deviation, 1e-8);
        inv.push_back({{"k", k}, {"accept", r.accept_probability}, {"deviation", r.max_deviation}});
    }
    c.details["invariance"] = inv;

    json forge = json::array(), trans = json::array();
    forge_checks(c, forge);
    untrace_checks(c, trans);
    c.details["forgery"] = forge;
    c.details["transcripts"] = trans;
}

// ---- determinism ----------------------------------------------------------

json default_determinism_targets() {
    return json::array({
        {{"experiment", "sym-selftest"}},
        {{"experiment", "sym-increment"}},
        {{"experiment", "prep-check"}},
        {{"experiment", "design-check"}, {"params", {{"mc_samples", 20000}}}},
        {{"experiment", "state-distinguish"}, {"params", {{"max_len", 2}, {"mc_samples", 20000}}}},
        {{"experiment", "unitary-distinguish"}, {"params", {{"max_len", 2}}}},
        {{"experiment", "money-suite"}},
    });
}

void determinism(Context &c) {
    json targets = c.param("targets").is_null() ? default_determinism_targets() : c.param("targets");
    if (!targets.is_array()) {
        throw ConfigError("config.params.targets: expected an array of configs");
    }
    json rows = json::array();
    for (std::size_t i = 0; i < targets.size(); i++) {
        json tj = targets[i];
        if (!tj.is_object()) {
            throw ConfigError("config.params.targets[" + std::to_string(i) + "]: expected an object");
        }
        if (!tj.contains("seed")) {
            tj["seed"] = c.cfg.seed;
        }
        ExperimentConfig sub;
        try {
            sub = ExperimentConfig::from_json(tj);
        } catch (const ConfigError &e) {
            throw ConfigError("config.params.targets[" + std::to_string(i) + "]: " + e.what());
        }
        if (sub.experiment == "determinism") {
            throw ConfigError("config.params.targets[" + std::to_string(i) + "]: determinism cannot nest");
        }
        auto a = run(sub).payload().dump();
        auto b = run(sub).payload().dump();
        std::string name = std::to_string(i) + "." + sub.experiment + ".identical";
        if (i < 10) {
            name = "0" + name;
        }
        c.suite.require(name, a == b);
        rows.push_back({{"experiment", sub.experiment}, {"identical", a == b}, {"payload_bytes", a.size()}});
    }
    c.details["targets"] = rows;
}

using Runner = std::function<void(Context &)>;

const std::map<std::string, Runner> &registry() {
    static const std::map<std::string, Runner> r = {
        {"sym-selftest", sym_selftest},
        {"sym-increment", sym_increment},
        {"prep-check", prep_check},
        {"design-check", design_check},
        {"state-distinguish", state_distinguish},
        {"unitary-distinguish", unitary_distinguish},
        {"money-forge", money_forge},
        {"money-untrace", money_untrace},
        {"money-suite", money_suite},
        {"determinism", determinism},
    };
    return r;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json &j) {
    if (!j.is_object()) {
        throw ConfigError("config: expected an object");
    }
    static const std::set<std::string> known = {"experiment", "n",         "t",      "epsilon", "seed",
                                                "tolerance_scale", "tolerances", "params", "out"};
    for (const auto &[key, value] : j.items()) {
        if (!known.count(key)) {
            throw ConfigError("config." + key + ": unknown key");
        }
    }
    ExperimentConfig c;
    if (!j.contains("experiment")) {
        throw ConfigError("config.experiment: missing");
    }
    c.experiment = get_string(j["experiment"], "config.experiment");
    if (!registry().count(c.experiment)) {
        throw ConfigError("config.experiment: unknown experiment '" + c.experiment + "'");
    }
    if (j.contains("n")) {
        c.n = get_size(j["n"], "config.n", true);
        if (c.n > 4) {
            throw ConfigError("config.n: at most 4 qubits are supported");
        }
    }
    if (j.contains("t") && !j["t"].is_null()) {
        c.t = get_size(j["t"], "config.t", false);
    }
    if (j.contains("epsilon")) {
        c.epsilon = get_double(j["epsilon"], "config.epsilon");
        if (!(c.epsilon > 0 && c.epsilon < 1)) {
            throw ConfigError("config.epsilon: must lie in (0, 1)");
        }
    }
    if (j.contains("seed")) {
        c.seed = get_size(j["seed"], "config.seed", false);
    }
    if (j.contains("tolerance_scale")) {
        c.tolerance_scale = get_double(j["tolerance_scale"], "config.tolerance_scale");
        if (!(c.tolerance_scale > 0)) {
            throw ConfigError("config.tolerance_scale: must be positive");
        }
    }
    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object()) {
            throw ConfigError("config.tolerances: expected an object");
        }
        for (const auto &[key, value] : j["tolerances"].items()) {
            c.tolerances[key] = get_double(value, "config.tolerances." + key);
        }
    }
    if (j.contains("params")) {
        if (!j["params"].is_object()) {
            throw ConfigError("config.params: expected an object");
        }
        c.params = j["params"];
    }
    if (j.contains("out")) {
        c.out = get_string(j["out"], "config.out");
    }
    return c;
}

json ExperimentConfig::to_json() const {
    json j = {{"experiment", experiment},
              {"n", n},
              {"t", t ? json(*t) : json(nullptr)},
              {"epsilon", epsilon},
              {"seed", seed},
              {"tolerance_scale", tolerance_scale},
              {"tolerances", tolerances},
              {"params", params}};
    return j;
}

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

json Report::payload() const {
    json checks_j = json::array();
    for (const auto &c : checks) {
        checks_j.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    return {{"schema", "lazyhaar.report/1"},
            {"version", version},
            {"experiment", config.experiment},
            {"config", config.to_json()},
            {"checks", checks_j},
            {"pass", pass()},
            {"details", details}};
}

json Report::to_json() const {
    json j = payload();
    j["timing"] = {{"seconds", seconds}};
    return j;
}

std::vector<std::string> experiment_names() {
    std::vector<std::string> out;
    for (const auto &[name, fn] : registry()) {
        out.push_back(name);
    }
    return out;
}

Report run(const ExperimentConfig &config) {
    auto it = registry().find(config.experiment);
    if (it == registry().end()) {
        throw ConfigError("config.experiment: unknown experiment '" + config.experiment + "'");
    }
    auto start = std::chrono::steady_clock::now();
    Report r;
    r.config = config;
    r.version = library_version();
    Suite suite(config);
    Rng rng(config.seed);
    Context ctx{config, suite, r.details, rng};
    it->second(ctx);
    r.checks = suite.take();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace lazyhaar
