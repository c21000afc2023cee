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

#include "lazyhaar/symmetric.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "lazyhaar/state_prep.hpp"

namespace lazyhaar {

namespace {

std::size_t local_dim(std::size_t n) {
    if (n == 0 || n > 16) {
        throw DomainError("register width n must be in [1, 16]");
    }
    return std::size_t{1} << n;
}

template <typename F>
const Mat &memo(std::map<std::pair<std::size_t, std::size_t>, Mat> &cache, std::mutex &mu, std::size_t n,
                std::size_t t, F build) {
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({n, t});
        if (it != cache.end()) {
            return it->second;
        }
    }
    Mat m = build();
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_pair(n, t), std::move(m)).first->second;
}

}  // namespace

OrderedTuple::OrderedTuple(std::size_t n, std::vector<std::uint32_t> entries) : n_(n), entries_(std::move(entries)) {
    std::size_t d = local_dim(n);
    for (std::size_t k = 0; k < entries_.size(); k++) {
        if (entries_[k] >= d) {
            throw DomainError("tuple entry exceeds n bits");
        }
        if (k > 0 && entries_[k - 1] > entries_[k]) {
            throw DomainError("tuple entries must be sorted");
        }
    }
}

std::map<std::uint32_t, std::size_t> OrderedTuple::multiplicities() const {
    std::map<std::uint32_t, std::size_t> f;
    for (auto x : entries_) {
        f[x]++;
    }
    return f;
}

std::size_t OrderedTuple::multiplicity(std::uint32_t x) const {
    return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), x));
}

std::size_t OrderedTuple::basis_index() const {
    std::size_t d = std::size_t{1} << n_;
    std::size_t idx = 0;
    for (auto x : entries_) {
        idx = idx * d + x;
    }
    return idx;
}

std::string to_string(const OrderedTuple &a) {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < a.t(); k++) {
        if (k) {
            os << ",";
        }
        for (std::size_t b = a.n(); b-- > 0;) {
            os << ((a.entries()[k] >> b) & 1u);
        }
    }
    os << ")";
    return os.str();
}

std::uint64_t sym_dim(std::size_t n, std::size_t t) {
    unsigned __int128 d = local_dim(n);
    unsigned __int128 r = 1;
    for (std::size_t i = 1; i <= t; i++) {
        r = r * (d + i - 1) / i;
        if (r > static_cast<unsigned __int128>(UINT64_MAX)) {
            throw CapExceeded("symDim overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(r);
}

std::vector<OrderedTuple> enumerate_basis(std::size_t n, std::size_t t) {
    std::size_t d = local_dim(n);
    require_cap(sym_dim(n, t), std::size_t{1} << 20, "enumerateBasis");
    std::vector<OrderedTuple> out;
    std::vector<std::uint32_t> cur(t, 0);
    while (true) {
        out.emplace_back(n, cur);
        // Next non-decreasing tuple.
        std::size_t k = t;
        while (k > 0 && cur[k - 1] == d - 1) {
            k--;
        }
        if (k == 0) {
            break;
        }
        cur[k - 1]++;
        for (std::size_t j = k; j < t; j++) {
            cur[j] = cur[k - 1];
        }
    }
    return out;
}

OrderedTuple insert_string(const OrderedTuple &a, std::uint32_t x) {
    auto e = a.entries();
    e.insert(std::upper_bound(e.begin(), e.end(), x), x);
    return OrderedTuple(a.n(), std::move(e));
}

OrderedTuple remove_string(const OrderedTuple &a, std::uint32_t x) {
    auto e = a.entries();
    auto it = std::find(e.begin(), e.end(), x);
    if (it == e.end()) {
        throw DomainError("string not present in tuple");
    }
    e.erase(it);
    return OrderedTuple(a.n(), std::move(e));
}

bool is_sorted_index(std::size_t index, std::size_t n, std::size_t t) {
    std::size_t d = std::size_t{1} << n;
    std::size_t prev = d;
    for (std::size_t k = 0; k < t; k++) {
        std::size_t digit = index % d;
        index /= d;
        if (digit > prev) {
            return false;
        }
        prev = digit;
    }
    return true;
}

OrderedTuple tuple_of_index(std::size_t index, std::size_t n, std::size_t t) {
    std::size_t d = std::size_t{1} << n;
    std::vector<std::uint32_t> e(t);
    for (std::size_t k = t; k-- > 0;) {
        e[k] = static_cast<std::uint32_t>(index % d);
        index /= d;
    }
    std::sort(e.begin(), e.end());
    return OrderedTuple(n, std::move(e));
}

RegisterSystem copies(const std::string &prefix, std::size_t n, std::size_t t, std::size_t first) {
    std::vector<Register> regs;
    for (std::size_t k = 0; k < t; k++) {
        regs.push_back({prefix + "." + std::to_string(first + k), local_dim(n)});
    }
    return RegisterSystem(std::move(regs));
}

namespace {

Vec sym_amplitudes(const OrderedTuple &a) {
    std::size_t d = std::size_t{1} << a.n();
    std::size_t dim = checked_pow(d, a.t(), kMaxStateDim, "symVector");
    Vec v = Vec::Zero(dim);
    auto e = a.entries();
    std::vector<std::size_t> hits;
    do {
        std::size_t idx = 0;
        for (auto x : e) {
            idx = idx * d + x;
        }
        hits.push_back(idx);
    } while (std::next_permutation(e.begin(), e.end()));
    double amp = 1.0 / std::sqrt(static_cast<double>(hits.size()));
    for (auto h : hits) {
        v[h] = amp;
    }
    return v;
}

}  // namespace

Statevector sym_vector(const OrderedTuple &a, const std::string &prefix) {
    return Statevector(copies(prefix, a.n(), a.t()), sym_amplitudes(a));
}

std::vector<SchmidtTerm> schmidt_expand(const OrderedTuple &a) {
    if (a.t() == 0) {
        throw DomainError("Schmidt expansion needs t >= 1");
    }
    std::vector<SchmidtTerm> out;
    for (auto [x, f] : a.multiplicities()) {
        out.push_back({std::sqrt(static_cast<double>(f) / static_cast<double>(a.t())), remove_string(a, x), x});
    }
    return out;
}

Mat sym_basis_matrix(std::size_t n, std::size_t t) {
    std::size_t dim = checked_pow(local_dim(n), t, kMaxOperatorDim, "symmetric basis");
    auto basis = enumerate_basis(n, t);
    Mat s(dim, basis.size());
    for (std::size_t k = 0; k < basis.size(); k++) {
        s.col(k) = sym_amplitudes(basis[k]);
    }
    return s;
}

LinearMap sym_projector(std::size_t n, std::size_t t) {
    Mat s = sym_basis_matrix(n, t);
    return LinearMap(copies("A", n, t), s * s.adjoint());
}

Mat orthonormal_complement(const Mat &cols) {
    std::size_t dim = cols.rows();
    std::size_t k = cols.cols();
    if (k == 0) {
        return Mat::Identity(dim, dim);
    }
    Eigen::HouseholderQR<Mat> qr(cols);
    Mat q = qr.householderQ() * Mat::Identity(dim, dim);
    return q.rightCols(dim - k);
}

Mat complete_to_unitary(const Vec &v) {
    std::size_t dim = v.size();
    Mat col = v;
    Eigen::HouseholderQR<Mat> qr(col);
    Mat q = qr.householderQ() * Mat::Identity(dim, dim);
    // Column 0 equals v up to the phase R(0,0).
    q.col(0) = v;
    return q;
}

LinearMap u_sym(std::size_t n, std::size_t t) {
    static std::map<std::pair<std::size_t, std::size_t>, Mat> cache;
    static std::mutex mu;
    const Mat &u = memo(cache, mu, n, t, [&] {
        Mat s = sym_basis_matrix(n, t);
        Mat comp = orthonormal_complement(s);
        std::size_t dim = s.rows();
        Mat out(dim, dim);
        std::size_t next_sym = 0;
        std::size_t next_comp = 0;
        for (std::size_t idx = 0; idx < dim; idx++) {
            if (is_sorted_index(idx, n, t)) {
                out.col(idx) = s.col(next_sym++);
            } else {
                out.col(idx) = comp.col(next_comp++);
            }
        }
        return out;
    });
    return LinearMap(copies("B", n, t), u);
}

Statevector psi_alpha(const OrderedTuple &a, const std::string &label) {
    std::size_t d = local_dim(a.n());
    Vec v(d);
    double denom = static_cast<double>(d + a.t());
    for (std::size_t x = 0; x < d; x++) {
        v[x] = std::sqrt((1.0 + static_cast<double>(a.multiplicity(static_cast<std::uint32_t>(x)))) / denom);
    }
    return Statevector(RegisterSystem({{label, d}}), v);
}

Statevector psi_alpha_via_prep(const OrderedTuple &a, double eps, const std::string &label) {
    std::size_t d = local_dim(a.n());
    auto f = a.multiplicities();
    double denom = static_cast<double>(d + a.t());
    SparseStateDescription inside{a.n(), {}};
    SmallSet support{a.n(), {}};
    double w_in = 0;
    for (auto [x, fx] : f) {
        w_in += 1.0 + static_cast<double>(fx);
    }
    for (auto [x, fx] : f) {
        inside.entries.push_back({x, cd(std::sqrt((1.0 + static_cast<double>(fx)) / w_in))});
        support.elements.push_back(x);
    }
    cd z0 = std::sqrt(w_in / denom);
    cd z1 = std::sqrt(static_cast<double>(d - f.size()) / denom);
    Vec out;
    if (f.empty()) {
        out = prep_complement(support, eps).state.amplitudes();
    } else if (f.size() == d) {
        out = prep_poly_support(inside, eps).state.amplitudes();
    } else {
        PrepRoutine p0 = [inside](double e) { return prep_poly_support(inside, e).state; };
        PrepRoutine p1 = [support](double e) { return prep_complement(support, e).state; };
        out = prep_superposition(p0, p1, z0, z1, eps).state.amplitudes();
    }
    return Statevector(RegisterSystem({{label, d}}), out);
}

LinearMap v_increment_full(std::size_t n, std::size_t t) {
    static std::map<std::pair<std::size_t, std::size_t>, Mat> cache;
    static std::mutex mu;
    std::size_t d = local_dim(n);
    const Mat &v = memo(cache, mu, n, t, [&] {
        std::size_t in_dim = checked_pow(d, t, kMaxOperatorDim, "vIncrement");
        std::size_t next_dim = checked_pow(d, t + 1, kMaxOperatorDim, "vIncrement");
        require_cap(next_dim * d, kMaxOperatorDim, "vIncrement");
        Mat ut = u_sym(n, t).matrix();
        Mat ut1 = u_sym(n, t + 1).matrix();
        Mat out = Mat::Zero(d * next_dim, in_dim);
        double denom = static_cast<double>(d + t);
        for (std::size_t beta = 0; beta < in_dim; beta++) {
            // Image of |β> under U_{t+1} ∘ insert ∘ prep, before the leading U_t†.
            Vec img = Vec::Zero(d * next_dim);
            if (is_sorted_index(beta, n, t)) {
                auto alpha = tuple_of_index(beta, n, t);
                for (std::size_t x = 0; x < d; x++) {
                    auto ux = static_cast<std::uint32_t>(x);
                    double amp = std::sqrt((1.0 + static_cast<double>(alpha.multiplicity(ux))) / denom);
                    auto grown = insert_string(alpha, ux);
                    img.segment(x * next_dim, next_dim) += amp * ut1.col(grown.basis_index());
                }
            } else {
                img.segment(0, next_dim) = ut1.col(beta * d);
            }
            // Column c collects (U_t†)(β, c) img_β.
            for (std::size_t c = 0; c < in_dim; c++) {
                cd w = std::conj(ut(c, beta));
                if (w != cd(0.0)) {
                    out.col(c) += w * img;
                }
            }
        }
        return out;
    });
    RegisterSystem out_sys({{"A." + std::to_string(t + 1), d}});
    return LinearMap(copies("B", n, t), out_sys.concat(copies("B", n, t + 1)), v);
}

LinearMap v_increment(std::size_t n, std::size_t t) {
    auto full = v_increment_full(n, t);
    Mat s = sym_basis_matrix(n, t);
    return LinearMap(full.in_system(), full.out_system(), full.matrix() * (s * s.adjoint()));
}

LinearMap v_increment_oracle(std::size_t n, std::size_t t) {
    std::size_t d = local_dim(n);
    std::size_t dt = ipow(d, t);
    std::size_t dt1 = dt * d;
    auto phi_t = max_entangled_sym(n, t).amplitudes();
    auto phi_t1 = max_entangled_sym(n, t + 1).amplitudes();
    Mat x(dt, dt);
    for (std::size_t a = 0; a < dt; a++) {
        for (std::size_t b = 0; b < dt; b++) {
            x(b, a) = phi_t[a * dt + b];
        }
    }
    Mat y(d * dt1, dt);
    for (std::size_t a = 0; a < dt; a++) {
        y.col(a) = phi_t1.segment(a * d * dt1, d * dt1);
    }
    Mat v = y * x.completeOrthogonalDecomposition().pseudoInverse();
    RegisterSystem out_sys({{"A." + std::to_string(t + 1), d}});
    return LinearMap(copies("B", n, t), out_sys.concat(copies("B", n, t + 1)), v);
}

Mat v_dilation(std::size_t n, std::size_t t) {
    static std::map<std::pair<std::size_t, std::size_t>, Mat> cache;
    static std::mutex mu;
    return memo(cache, mu, n, t, [&] {
        std::size_t d = local_dim(n);
        Mat v = v_increment_full(n, t).matrix();
        std::size_t dim = v.rows();
        Mat comp = orthonormal_complement(v);
        Mat u(dim, dim);
        std::size_t next = 0;
        for (std::size_t idx = 0; idx < dim; idx++) {
            if (idx % (d * d) == 0) {
                u.col(idx) = v.col(idx / (d * d));
            } else {
                u.col(idx) = comp.col(next++);
            }
        }
        return u;
    });
}

Statevector max_entangled_sym(std::size_t n, std::size_t t) {
    std::size_t d = local_dim(n);
    std::size_t dt = checked_pow(d, t, kMaxStateDim, "maxEntangledSym");
    require_cap(dt * dt, kMaxStateDim, "maxEntangledSym");
    Mat s = sym_basis_matrix(n, t);
    Vec v = Vec::Zero(dt * dt);
    for (Eigen::Index k = 0; k < s.cols(); k++) {
        for (std::size_t a = 0; a < dt; a++) {
            if (s(a, k) == cd(0.0)) {
                continue;
            }
            v.segment(a * dt, dt) += s(a, k) * s.col(k);
        }
    }
    v /= std::sqrt(static_cast<double>(s.cols()));
    return Statevector(copies("A", n, t).concat(copies("B", n, t)), v);
}

}  // namespace lazyhaar
