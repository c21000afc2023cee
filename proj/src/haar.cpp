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

#include "lazyhaar/haar.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace lazyhaar {

Vec haar_state(std::size_t d, Rng &rng) {
    Vec v(d);
    for (std::size_t i = 0; i < d; i++) {
        v[i] = rng.complex_normal();
    }
    return v.normalized();
}

Mat haar_unitary(std::size_t d, Rng &rng) {
    Mat z(d, d);
    for (std::size_t j = 0; j < d; j++) {
        for (std::size_t i = 0; i < d; i++) {
            z(i, j) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<Mat> qr(z);
    Mat q = qr.householderQ() * Mat::Identity(d, d);
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t i = 0; i < d; i++) {
        cd rii = r(i, i);
        q.col(i) *= rii / std::abs(rii);
    }
    return q;
}

std::vector<Perm> all_perms(std::size_t t) {
    Perm p(t);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::size_t cycle_count(const Perm &p) {
    std::vector<bool> seen(p.size(), false);
    std::size_t c = 0;
    for (std::size_t i = 0; i < p.size(); i++) {
        if (seen[i]) {
            continue;
        }
        c++;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
        }
    }
    return c;
}

namespace {

Perm inverse_of(const Perm &p) {
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); i++) {
        q[p[i]] = i;
    }
    return q;
}

Perm compose(const Perm &a, const Perm &b) {
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        c[i] = a[b[i]];
    }
    return c;
}

}  // namespace

Mat weingarten_matrix(std::size_t d, std::size_t t) {
    static std::map<std::pair<std::size_t, std::size_t>, Mat> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({d, t});
        if (it != cache.end()) {
            return it->second;
        }
    }
    if (t > 5) {
        throw CapExceeded("Weingarten matrix supports t <= 5");
    }
    auto perms = all_perms(t);
    std::size_t k = perms.size();
    Eigen::MatrixXd gram(k, k);
    for (std::size_t i = 0; i < k; i++) {
        auto inv = inverse_of(perms[i]);
        for (std::size_t j = 0; j < k; j++) {
            gram(i, j) = std::pow(static_cast<double>(d), static_cast<double>(cycle_count(compose(inv, perms[j]))));
        }
    }
    Eigen::MatrixXd wg = gram.completeOrthogonalDecomposition().pseudoInverse();
    Mat out = wg.cast<cd>();
    std::lock_guard<std::mutex> lock(mu);
    cache[{d, t}] = out;
    return out;
}

double weingarten_closed_form(const Perm &p, std::size_t d) {
    double x = static_cast<double>(d);
    std::size_t t = p.size();
    std::size_t c = cycle_count(p);
    if (t > 3 || d < t) {
        throw DomainError("closed-form Weingarten needs t <= 3 and d >= t");
    }
    if (t == 1) {
        return 1.0 / x;
    }
    if (t == 2) {
        return c == 2 ? 1.0 / (x * x - 1) : -1.0 / (x * (x * x - 1));
    }
    double den = (x * x - 1) * (x * x - 4);
    if (c == 3) {
        return (x * x - 2) / (x * den);
    }
    if (c == 2) {
        return -1.0 / den;
    }
    return 2.0 / (x * den);
}

Mat moment_matrix(std::size_t d, const std::vector<bool> &forward) {
    std::size_t t = forward.size();
    std::size_t slot = d * d;
    std::size_t dim = 1;
    for (std::size_t k = 0; k < t; k++) {
        dim *= slot;
    }
    require_cap(dim, kMaxChoiDim * 4, "moment matrix");
    Mat wg = weingarten_matrix(d, t);
    auto perms = all_perms(t);

    // Digits per flattened index: a_k, b_k.
    std::vector<std::vector<std::size_t>> a(dim, std::vector<std::size_t>(t)), b = a;
    for (std::size_t idx = 0; idx < dim; idx++) {
        std::size_t rem = idx;
        for (std::size_t k = t; k-- > 0;) {
            std::size_t s = rem % slot;
            rem /= slot;
            a[idx][k] = s / d;
            b[idx][k] = s % d;
        }
    }
    Mat m = Mat::Zero(dim, dim);
    std::vector<std::size_t> ui(t), uj(t), vi(t), vj(t);
    for (std::size_t I = 0; I < dim; I++) {
        for (std::size_t J = 0; J < dim; J++) {
            for (std::size_t k = 0; k < t; k++) {
                if (forward[k]) {
                    ui[k] = a[I][k];
                    uj[k] = b[I][k];
                    vi[k] = a[J][k];
                    vj[k] = b[J][k];
                } else {
                    ui[k] = b[J][k];
                    uj[k] = a[J][k];
                    vi[k] = b[I][k];
                    vj[k] = a[I][k];
                }
            }
            // Quick multiset filter.
            auto si = ui, sv = vi, sj = uj, sw = vj;
            std::sort(si.begin(), si.end());
            std::sort(sv.begin(), sv.end());
            if (si != sv) {
                continue;
            }
            std::sort(sj.begin(), sj.end());
            std::sort(sw.begin(), sw.end());
            if (sj != sw) {
                continue;
            }
            cd acc = 0;
            for (std::size_t s = 0; s < perms.size(); s++) {
                bool ok = true;
                for (std::size_t k = 0; k < t && ok; k++) {
                    ok = ui[k] == vi[perms[s][k]];
                }
                if (!ok) {
                    continue;
                }
                for (std::size_t r = 0; r < perms.size(); r++) {
                    bool ok2 = true;
                    for (std::size_t k = 0; k < t && ok2; k++) {
                        ok2 = uj[k] == vj[perms[r][k]];
                    }
                    if (ok2) {
                        acc += wg(s, r);
                    }
                }
            }
            m(I, J) = acc;
        }
    }
    return m;
}

Vec moment_vector(const Mat &u, const std::vector<bool> &forward) {
    std::size_t d = u.rows();
    Vec fwd(d * d), inv(d * d);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            fwd[i * d + j] = u(i, j);
            inv[i * d + j] = std::conj(u(j, i));
        }
    }
    Vec m = Vec::Ones(1);
    for (bool f : forward) {
        const Vec &v = f ? fwd : inv;
        Vec next(m.size() * v.size());
        for (Eigen::Index i = 0; i < m.size(); i++) {
            next.segment(i * v.size(), v.size()) = m[i] * v;
        }
        m = std::move(next);
    }
    return m;
}

}  // namespace lazyhaar
