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

#include "lazyhaar/script.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "lazyhaar/haar.hpp"

namespace lazyhaar {

std::string to_string(OpKind k) {
    switch (k) {
        case OpKind::Gen:
            return "Gen";
        case OpKind::Ver:
            return "Ver";
        case OpKind::CReflect:
            return "CReflect";
        case OpKind::Eval:
            return "Eval";
        case OpKind::Invert:
            return "Invert";
        case OpKind::AdvUnitary:
            return "AdvUnitary";
    }
    return "?";
}

OpKind op_kind_from_string(const std::string &s) {
    for (auto k : {OpKind::Gen, OpKind::Ver, OpKind::CReflect, OpKind::Eval, OpKind::Invert, OpKind::AdvUnitary}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw DomainError("unknown script op '" + s + "'");
}

std::size_t Script::oracle_calls() const {
    std::size_t c = 0;
    for (const auto &op : ops) {
        c += op.kind != OpKind::AdvUnitary;
    }
    return c;
}

Mat named_gate(const std::string &name) {
    double h = 1 / std::sqrt(2.0);
    Mat m;
    if (name == "I") {
        m = Mat::Identity(2, 2);
    } else if (name == "X") {
        m = Mat::Zero(2, 2);
        m(0, 1) = m(1, 0) = 1;
    } else if (name == "Y") {
        m = Mat::Zero(2, 2);
        m(0, 1) = cd(0, -1);
        m(1, 0) = cd(0, 1);
    } else if (name == "Z") {
        m = Mat::Identity(2, 2);
        m(1, 1) = -1;
    } else if (name == "H") {
        m = Mat::Constant(2, 2, h);
        m(1, 1) = -h;
    } else if (name == "S") {
        m = Mat::Identity(2, 2);
        m(1, 1) = cd(0, 1);
    } else if (name == "T") {
        m = Mat::Identity(2, 2);
        m(1, 1) = std::polar(1.0, M_PI / 4);
    } else if (name == "CNOT") {
        m = Mat::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    } else if (name == "CZ") {
        m = Mat::Identity(4, 4);
        m(3, 3) = -1;
    } else if (name == "SWAP") {
        m = Mat::Zero(4, 4);
        m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
    } else {
        throw DomainError("unknown gate '" + name + "'");
    }
    return m;
}

namespace {

nlohmann::json matrix_to_json(const Mat &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

Mat matrix_from_json(const nlohmann::json &j) {
    std::size_t rows = j.size();
    if (rows == 0) {
        throw DimensionError("empty matrix");
    }
    std::size_t cols = j[0].size();
    Mat m(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        if (j[r].size() != cols) {
            throw DimensionError("ragged matrix");
        }
        for (std::size_t c = 0; c < cols; c++) {
            m(r, c) = cd(j[r][c].at(0).get<double>(), j[r][c].at(1).get<double>());
        }
    }
    return m;
}

bool is_private(const std::string &label) { return !label.empty() && label[0] == '$'; }

void require_public(const std::string &label) {
    if (is_private(label)) {
        throw LabelError("register '" + label + "' belongs to the machine");
    }
}

}  // namespace

nlohmann::json script_to_json(const Script &s) {
    nlohmann::json j;
    j["schema"] = "lazyhaar.script/1";
    j["name"] = s.name;
    j["n"] = s.n;
    auto &in = j["inputs"] = nlohmann::json::array();
    for (const auto &r : s.inputs) {
        in.push_back({{"label", r.label}, {"dim", r.dim}});
    }
    auto &ops = j["ops"] = nlohmann::json::array();
    for (const auto &op : s.ops) {
        nlohmann::json o{{"op", to_string(op.kind)}};
        if (!op.target.empty()) {
            o["target"] = op.target;
        }
        if (!op.control.empty()) {
            o["control"] = op.control;
        }
        if (op.kind == OpKind::AdvUnitary) {
            o["targets"] = op.targets;
            if (!op.gate.empty()) {
                o["gate"] = op.gate;
            } else {
                o["matrix"] = matrix_to_json(op.matrix);
            }
        }
        ops.push_back(o);
    }
    return j;
}

Script script_from_json(const nlohmann::json &j) {
    if (j.contains("schema") && j["schema"] != "lazyhaar.script/1") {
        throw DomainError("unsupported script schema");
    }
    Script s;
    s.name = j.value("name", std::string("script"));
    s.n = j.value("n", std::size_t{1});
    if (j.contains("inputs")) {
        for (const auto &r : j["inputs"]) {
            s.inputs.push_back({r.at("label").get<std::string>(), r.at("dim").get<std::size_t>()});
        }
    }
    std::size_t k = 0;
    for (const auto &o : j.at("ops")) {
        ScriptOp op;
        try {
            op.kind = op_kind_from_string(o.at("op").get<std::string>());
            op.target = o.value("target", std::string());
            op.control = o.value("control", std::string());
            if (op.kind == OpKind::AdvUnitary) {
                op.targets = o.at("targets").get<std::vector<std::string>>();
                if (o.contains("gate")) {
                    op.gate = o["gate"].get<std::string>();
                    op.matrix = named_gate(op.gate);
                } else {
                    op.matrix = matrix_from_json(o.at("matrix"));
                }
                if (!is_unitary(op.matrix)) {
                    throw DomainError("adversary matrix is not unitary");
                }
            }
        } catch (const nlohmann::json::exception &e) {
            throw DomainError("script ops[" + std::to_string(k) + "]: " + e.what());
        }
        s.ops.push_back(std::move(op));
        k++;
    }
    return s;
}

void Oracle::gen(Workspace &, const std::string &) { throw DomainError("oracle has no Gen interface"); }
void Oracle::ver(Workspace &, const std::string &, const std::string &) {
    throw DomainError("oracle has no Ver interface");
}
void Oracle::creflect(Workspace &, const std::string &, const std::string &) {
    throw DomainError("oracle has no CReflect interface");
}
void Oracle::eval(Workspace &, const std::string &) { throw DomainError("oracle has no Eval interface"); }
void Oracle::invert(Workspace &, const std::string &) { throw DomainError("oracle has no Invert interface"); }

Workspace initial_workspace(const Script &s) {
    Statevector acc;
    for (const auto &r : s.inputs) {
        require_public(r.label);
        acc = tensor_product(acc, max_entangled(r.dim, r.label, "R." + r.label));
    }
    return Workspace(acc);
}

RunResult run_script(const Script &s, Oracle &oracle) {
    RunResult res{initial_workspace(s), {}, {}};
    for (const auto &r : s.inputs) {
        res.visible.push_back(r.label);
        res.visible.push_back("R." + r.label);
    }
    std::size_t gens = 0, vers = 0;
    for (const auto &op : s.ops) {
        switch (op.kind) {
            case OpKind::Gen: {
                std::string out = "A." + std::to_string(++gens);
                oracle.gen(res.ws, out);
                res.visible.push_back(out);
                break;
            }
            case OpKind::Ver: {
                require_public(op.target);
                std::string flag = "F." + std::to_string(++vers);
                oracle.ver(res.ws, op.target, flag);
                res.visible.push_back(flag);
                res.flags.push_back(flag);
                break;
            }
            case OpKind::CReflect:
                require_public(op.target);
                require_public(op.control);
                oracle.creflect(res.ws, op.control, op.target);
                break;
            case OpKind::Eval:
                require_public(op.target);
                oracle.eval(res.ws, op.target);
                break;
            case OpKind::Invert:
                require_public(op.target);
                oracle.invert(res.ws, op.target);
                break;
            case OpKind::AdvUnitary:
                for (const auto &t : op.targets) {
                    require_public(t);
                }
                res.ws.apply(op.matrix, op.targets);
                break;
        }
    }
    return res;
}

std::vector<std::size_t> ChannelChoi::dims() const {
    std::vector<std::size_t> d;
    for (const auto &r : registers) {
        d.push_back(r.dim);
    }
    return d;
}

ChannelChoi choi_of(const RunResult &r) {
    ChannelChoi c;
    c.flags = r.flags;
    std::vector<std::size_t> flag_pos;
    for (std::size_t k = 0; k < r.visible.size(); k++) {
        c.registers.push_back({r.visible[k], r.ws.system().dim_of(r.visible[k])});
        for (const auto &f : r.flags) {
            if (f == r.visible[k]) {
                flag_pos.push_back(k);
            }
        }
    }
    require_cap(r.ws.system().select(r.visible).total_dim(), kMaxChoiDim, "Choi matrix");
    c.matrix = dephase(r.ws.reduced(r.visible), c.dims(), flag_pos);
    return c;
}

ChannelChoi adversary_channel(const Script &s, Oracle &oracle) { return choi_of(run_script(s, oracle)); }

double choi_distance(const ChannelChoi &a, const ChannelChoi &b) {
    if (a.registers != b.registers) {
        throw DimensionError("Choi matrices have different register layouts");
    }
    return trace_distance(a.matrix, b.matrix);
}

std::vector<std::pair<std::string, Mat>> interlude_set(std::uint64_t seed) {
    Mat i2 = Mat::Identity(2, 2);
    Mat h = named_gate("H");
    Mat swap = named_gate("SWAP");
    Mat cnot = named_gate("CNOT");
    std::vector<std::pair<std::string, Mat>> out;
    out.emplace_back("II", Mat::Identity(4, 4));
    out.emplace_back("HI", Eigen::kroneckerProduct(h, i2).eval());
    out.emplace_back("IH", Eigen::kroneckerProduct(i2, h).eval());
    out.emplace_back("CNOT", cnot);
    out.emplace_back("CNOT_R", (swap * cnot * swap).eval());
    out.emplace_back("SWAP", swap);
    out.emplace_back("SH_CZ", (Eigen::kroneckerProduct(named_gate("S"), h).eval() * named_gate("CZ")).eval());
    Rng rng(seed);
    out.emplace_back("HAAR", haar_unitary(4, rng));
    return out;
}

}  // namespace lazyhaar
