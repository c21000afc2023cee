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

#include "lazyhaar/state_prep.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lazyhaar/symmetric.hpp"

namespace lazyhaar {

namespace {

std::size_t width_dim(std::size_t n) {
    if (n == 0 || n > 12) {
        throw DomainError("state preparation supports 1 <= n <= 12");
    }
    return std::size_t{1} << n;
}

RegisterSystem out_system(std::size_t n) {
    return RegisterSystem({{"O", width_dim(n)}});
}

void check_eps(double eps) {
    if (!(eps > 0) || eps >= 1) {
        throw DomainError("accuracy parameter must lie in (0, 1)");
    }
}

std::set<std::uint64_t> checked_set(const SmallSet &s) {
    std::size_t dim = width_dim(s.n);
    std::set<std::uint64_t> out;
    for (auto x : s.elements) {
        if (x >= dim) {
            throw DomainError("set element exceeds n bits");
        }
        if (!out.insert(x).second) {
            throw DomainError("set elements must be distinct");
        }
    }
    if (out.size() >= dim) {
        throw DomainError("complement of the full space is empty");
    }
    if (out.size() > kMaxSupport) {
        throw CapExceeded("set size exceeds the support cap");
    }
    return out;
}

}  // namespace

Vec sparse_target(const SparseStateDescription &desc) {
    std::size_t dim = width_dim(desc.n);
    Vec v = Vec::Zero(dim);
    for (auto [x, a] : desc.entries) {
        if (x >= dim) {
            throw DomainError("support string exceeds n bits");
        }
        v[x] += a;
    }
    return v;
}

Vec complement_target(const SmallSet &s) {
    auto in = checked_set(s);
    std::size_t dim = width_dim(s.n);
    Vec v = Vec::Zero(dim);
    double amp = 1.0 / std::sqrt(static_cast<double>(dim - in.size()));
    for (std::size_t x = 0; x < dim; x++) {
        if (!in.count(x)) {
            v[x] = amp;
        }
    }
    return v;
}

PrepResult prep_poly_support(const SparseStateDescription &desc, double eps) {
    check_eps(eps);
    std::size_t dim = width_dim(desc.n);
    std::size_t s = desc.entries.size();
    if (s == 0) {
        throw DomainError("empty support");
    }
    if (s > kMaxSupport) {
        throw CapExceeded("support size exceeds the support cap");
    }
    std::set<std::uint64_t> seen;
    double norm2 = 0;
    for (auto [x, a] : desc.entries) {
        if (x >= dim) {
            throw DomainError("support string exceeds n bits");
        }
        if (!seen.insert(x).second) {
            throw DomainError("support strings must be distinct");
        }
        norm2 += std::norm(a);
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > kTauNorm) {
        throw DomainError("sparse description is not normalized");
    }

    std::size_t idx_dim = 1;
    while (idx_dim < s) {
        idx_dim *= 2;
    }
    require_cap(idx_dim * dim, std::size_t{1} << 20, "sparse preparation workspace");
    // Layout (index, output); index most significant.
    Vec amps = Vec::Zero(idx_dim);
    for (std::size_t i = 0; i < s; i++) {
        amps[i] = desc.entries[i].second;
    }
    Mat u = complete_to_unitary(amps);
    Vec psi = Vec::Zero(idx_dim * dim);
    for (std::size_t i = 0; i < idx_dim; i++) {
        psi[i * dim] = u(i, 0);
    }
    // Output ^= x_i, controlled on index i.
    Vec next = Vec::Zero(psi.size());
    for (std::size_t i = 0; i < idx_dim; i++) {
        for (std::size_t y = 0; y < dim; y++) {
            std::size_t ny = i < s ? (y ^ desc.entries[i].first) : y;
            next[i * dim + ny] += psi[i * dim + y];
        }
    }
    psi = next;
    // Index ^= i, controlled on output = x_i.
    next.setZero();
    for (std::size_t j = 0; j < idx_dim; j++) {
        for (std::size_t y = 0; y < dim; y++) {
            std::size_t nj = j;
            for (std::size_t i = 0; i < s; i++) {
                if (desc.entries[i].first == y) {
                    nj = j ^ i;
                    break;
                }
            }
            next[nj * dim + y] += psi[j * dim + y];
        }
    }
    psi = next;

    Vec target = sparse_target(desc);
    Vec zero_block = psi.head(dim);
    PrepResult r{Statevector(out_system(desc.n), zero_block.normalized(), Statevector::Unchecked{})};
    r.epsilon = eps;
    r.error = std::sqrt((zero_block - target).squaredNorm() + psi.tail(psi.size() - dim).squaredNorm());
    r.ancilla_error = std::max(0.0, 1.0 - zero_block.squaredNorm());
    return r;
}

std::size_t complement_rounds_nominal(const SmallSet &s, double eps) {
    check_eps(eps);
    auto in = checked_set(s);
    if (in.empty()) {
        return 1;
    }
    double v = std::log2(3.0 * static_cast<double>(in.size()) / eps) - static_cast<double>(s.n);
    return static_cast<std::size_t>(std::max(1.0, std::ceil(v)));
}

namespace {

double complement_error(double fail_ratio, std::size_t r) {
    double p = std::pow(fail_ratio, static_cast<double>(r));
    double keep = std::sqrt(std::max(0.0, 1.0 - p));
    return std::sqrt((1.0 - keep) * (1.0 - keep) + p);
}

}  // namespace

std::size_t complement_rounds_sufficient(const SmallSet &s, double eps) {
    check_eps(eps);
    auto in = checked_set(s);
    double ratio = static_cast<double>(in.size()) / static_cast<double>(width_dim(s.n));
    std::size_t r = 1;
    while (complement_error(ratio, r) > eps) {
        r++;
        if (r > 100000) {
            throw CapExceeded("round count exceeds cap");
        }
    }
    return r;
}

Statevector complement_direct(const SmallSet &s) {
    return Statevector(out_system(s.n), complement_target(s));
}

PrepResult prep_complement(const SmallSet &s, double eps) {
    auto rp = complement_rounds_nominal(s, eps);
    auto rs = complement_rounds_sufficient(s, eps);
    auto r = prep_complement_rounds(s, std::max(rp, rs), eps);
    r.rounds_nominal = rp;
    return r;
}

PrepResult prep_complement_rounds(const SmallSet &s, std::size_t rounds, double eps) {
    check_eps(eps);
    if (rounds == 0) {
        throw DomainError("at least one round is required");
    }
    auto in = checked_set(s);
    std::size_t n = s.n;
    std::size_t dim = width_dim(n);
    std::size_t cdim = rounds + 1;
    std::size_t total = dim * cdim * 2 * dim;
    require_cap(total, std::size_t{1} << 22, "complement preparation workspace");
    auto at = [&](std::size_t b, std::size_t c, std::size_t f, std::size_t dd) {
        return ((b * cdim + c) * 2 + f) * dim + dd;
    };
    std::vector<bool> member(dim, false);
    for (auto x : in) {
        member[x] = true;
    }
    Mat hadamard = Mat::Ones(dim, dim);
    for (std::size_t i = 0; i < dim; i++) {
        for (std::size_t j = 0; j < dim; j++) {
            if (__builtin_popcountll(i & j) % 2) {
                hadamard(i, j) = -1.0;
            }
        }
    }
    hadamard /= std::sqrt(static_cast<double>(dim));
    Mat unprep = Mat::Identity(dim, dim);
    if (!in.empty()) {
        Vec uniform_s = Vec::Zero(dim);
        for (auto x : in) {
            uniform_s[x] = 1.0 / std::sqrt(static_cast<double>(in.size()));
        }
        unprep = complete_to_unitary(uniform_s).adjoint();
    }

    // Registers: B (output), C (failure count), F (done flag), D (scratch).
    Vec psi = Vec::Zero(total);
    psi[at(0, 0, 0, 0)] = 1.0;
    double scratch_residual = 0;
    for (std::size_t round = 1; round <= rounds; round++) {
        // Uniform superposition on D, controlled on F = 0.
        for (std::size_t b = 0; b < dim; b++) {
            for (std::size_t c = 0; c < cdim; c++) {
                Vec blk = psi.segment(at(b, c, 0, 0), dim);
                psi.segment(at(b, c, 0, 0), dim) = hadamard * blk;
            }
        }
        // Swap D into B and raise F when D lies outside S (involution on basis states).
        Vec next = Vec::Zero(total);
        for (std::size_t b = 0; b < dim; b++) {
            for (std::size_t c = 0; c < cdim; c++) {
                for (std::size_t f = 0; f < 2; f++) {
                    for (std::size_t dd = 0; dd < dim; dd++) {
                        cd a = psi[at(b, c, f, dd)];
                        bool moves = c == round - 1 && ((f == 0 && !member[dd]) || (f == 1 && !member[b]));
                        if (moves) {
                            next[at(dd, c, 1 - f, b)] += a;
                        } else {
                            next[at(b, c, f, dd)] += a;
                        }
                    }
                }
            }
        }
        psi = next;
        // Count the failure: C swaps round-1 <-> round, controlled on F = 0.
        for (std::size_t b = 0; b < dim; b++) {
            for (std::size_t dd = 0; dd < dim; dd++) {
                std::swap(psi[at(b, round - 1, 0, dd)], psi[at(b, round, 0, dd)]);
            }
        }
        // Uncompute the uniform-over-S scratch of the failed branch.
        for (std::size_t b = 0; b < dim; b++) {
            Vec blk = psi.segment(at(b, round, 0, 0), dim);
            psi.segment(at(b, round, 0, 0), dim) = unprep * blk;
        }
        double leak = 0;
        for (std::size_t b = 0; b < dim; b++) {
            for (std::size_t c = 0; c < cdim; c++) {
                for (std::size_t f = 0; f < 2; f++) {
                    leak += psi.segment(at(b, c, f, 1), dim - 1).squaredNorm();
                }
            }
        }
        scratch_residual = std::max(scratch_residual, std::sqrt(leak));
    }
    // Unprepare the counter profile of the success branches, then clear F.
    double ratio = static_cast<double>(in.size()) / static_cast<double>(dim);
    Vec profile = Vec::Zero(cdim);
    for (std::size_t l = 0; l < rounds; l++) {
        profile[l] = std::pow(ratio, 0.5 * static_cast<double>(l)) * std::sqrt(1.0 - ratio);
    }
    profile.normalize();
    Mat g_adj = complete_to_unitary(profile).adjoint();
    Vec next = Vec::Zero(total);
    for (std::size_t b = 0; b < dim; b++) {
        for (std::size_t f = 0; f < 2; f++) {
            for (std::size_t dd = 0; dd < dim; dd++) {
                Vec col(cdim);
                for (std::size_t c = 0; c < cdim; c++) {
                    col[c] = psi[at(b, c, f, dd)];
                }
                col = g_adj * col;
                for (std::size_t c = 0; c < cdim; c++) {
                    next[at(b, c, 1 - f, dd)] = col[c];
                }
            }
        }
    }
    psi = next;

    Vec target = complement_target(s);
    Vec zero_block(dim);
    for (std::size_t b = 0; b < dim; b++) {
        zero_block[b] = psi[at(b, 0, 0, 0)];
    }
    double rest = std::max(0.0, psi.squaredNorm() - zero_block.squaredNorm());
    PrepResult r{Statevector(out_system(n), zero_block.normalized(), Statevector::Unchecked{})};
    r.epsilon = eps;
    r.error = std::sqrt((zero_block - target).squaredNorm() + rest);
    r.ancilla_error = std::max(0.0, 1.0 - zero_block.squaredNorm());
    r.rounds = rounds;
    r.rounds_nominal = complement_rounds_nominal(s, eps);
    r.scratch_residual = scratch_residual;
    return r;
}

PrepResult prep_superposition(const PrepRoutine &prep0, const PrepRoutine &prep1, cd z0, cd z1, double eps) {
    check_eps(eps);
    if (std::abs(std::norm(z0) + std::norm(z1) - 1.0) > eps) {
        throw DomainError("|z0|^2 + |z1|^2 differs from 1");
    }
    Statevector s0 = prep0(eps / 2);
    Statevector s1 = prep1(eps / 2);
    if (s0.dim() != s1.dim()) {
        throw DimensionError("prepared families have different dimensions");
    }
    Vec zeta0 = s0.amplitudes().normalized();
    Vec zeta1 = s1.amplitudes().normalized();
    if (std::abs(zeta0.dot(zeta1)) > kTauNorm) {
        throw DomainError("prepared families are not orthogonal");
    }
    std::size_t dim = s0.dim();
    Mat p0 = complete_to_unitary(zeta0);
    Mat p1 = complete_to_unitary(zeta1);
    // Layout (Q, O).
    Vec psi = Vec::Zero(2 * dim);
    psi[0] = z0;
    psi[dim] = z1;
    psi.head(dim) = p0 * psi.head(dim).eval();
    psi.tail(dim) = p1 * psi.tail(dim).eval();
    Mat p0_adj = p0.adjoint();
    psi.head(dim) = p0_adj * psi.head(dim).eval();
    psi.tail(dim) = p0_adj * psi.tail(dim).eval();
    // X on Q controlled on O = 0.
    std::swap(psi[0], psi[dim]);
    psi.head(dim) = p0 * psi.head(dim).eval();
    psi.tail(dim) = p0 * psi.tail(dim).eval();
    // Q now holds |1>; return it to |0>.
    Vec q0 = psi.tail(dim);
    Vec q1 = psi.head(dim);
    psi << q0, q1;

    Vec target = z0 * zeta0 + z1 * zeta1;
    Mat rho_q(2, 2);
    rho_q(0, 0) = psi.head(dim).squaredNorm();
    rho_q(1, 1) = psi.tail(dim).squaredNorm();
    rho_q(0, 1) = psi.tail(dim).dot(psi.head(dim));
    rho_q(1, 0) = std::conj(rho_q(0, 1));
    PrepResult r{Statevector(RegisterSystem({{"O", dim}}), psi.head(dim).normalized(), Statevector::Unchecked{})};
    r.epsilon = eps;
    r.error = std::sqrt((psi.head(dim) - target).squaredNorm() + psi.tail(dim).squaredNorm());
    r.ancilla_error = std::max(0.0, 1.0 - psi.head(dim).squaredNorm());
    r.control_purity = (rho_q * rho_q).trace().real();
    return r;
}

}  // namespace lazyhaar
