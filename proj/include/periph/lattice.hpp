#pragma once

// Sparse integer lattices in echelon form and the structure of Z^n / L.
//
// Coefficients are either checked 64-bit integers, which raise
// detail::Overflow instead of wrapping, or arbitrary-precision Integers.

#include "periph/error.hpp"
#include "periph/integer.hpp"
#include "periph/smith.hpp"

#include <algorithm>
#include <climits>
#include <cstddef>
#include <exception>
#include <optional>
#include <utility>
#include <vector>

namespace periph {

namespace detail {

struct Overflow : std::exception {
    const char* what() const noexcept override { return "64-bit coefficient overflow"; }
};

template <class T>
struct Ops;

template <>
struct Ops<long long> {
    static long long add(long long a, long long b) {
        long long r;
        if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
        return r;
    }
    static long long mul(long long a, long long b) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
        return r;
    }
    static long long neg(long long a) {
        if (a == LLONG_MIN) throw Overflow{};
        return -a;
    }
    static Integer widen(long long a) { return Integer(a); }
};

template <>
struct Ops<Integer> {
    static Integer add(const Integer& a, const Integer& b) { return a + b; }
    static Integer mul(const Integer& a, const Integer& b) { return a * b; }
    static Integer neg(const Integer& a) { return -a; }
    static Integer widen(const Integer& a) { return a; }
};

template <class T>
T gcd_ext(T a, T b, T& s, T& t) {
    using O = Ops<T>;
    T old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
    while (r != 0) {
        T q = old_r / r;
        T tmp = O::add(old_r, O::neg(O::mul(q, r)));
        old_r = r;
        r = tmp;
        tmp = O::add(old_s, O::neg(O::mul(q, cur_s)));
        old_s = cur_s;
        cur_s = tmp;
        tmp = O::add(old_t, O::neg(O::mul(q, cur_t)));
        old_t = cur_t;
        cur_t = tmp;
    }
    if (old_r < 0) {
        old_r = O::neg(old_r);
        old_s = O::neg(old_s);
        old_t = O::neg(old_t);
    }
    s = old_s;
    t = old_t;
    return old_r;
}

}  // namespace detail

/// Sparse vector: (coordinate, nonzero value) pairs sorted by coordinate.
template <class T>
using SparseVec = std::vector<std::pair<int, T>>;

/// a*x + b*y
template <class T>
SparseVec<T> combine(const T& a, const SparseVec<T>& x, const T& b, const SparseVec<T>& y) {
    using O = detail::Ops<T>;
    SparseVec<T> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            if (a != 0) out.emplace_back(x[i].first, O::mul(a, x[i].second));
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            if (b != 0) out.emplace_back(y[j].first, O::mul(b, y[j].second));
            ++j;
        } else {
            T v = O::add(O::mul(a, x[i].second), O::mul(b, y[j].second));
            if (v != 0) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

template <class T>
SparseVec<Integer> widen(const SparseVec<T>& v) {
    SparseVec<Integer> out;
    out.reserve(v.size());
    for (const auto& [k, x] : v) out.emplace_back(k, detail::Ops<T>::widen(x));
    return out;
}

/// Lattice spanned by inserted vectors in Z^rows, kept as a reduced echelon
/// basis: each vector's pivot is its smallest coordinate, and every other
/// vector's entry in a pivot row is reduced into [0, pivot).  Optionally
/// tracks, for every basis vector, its expression in the inserted vectors.
template <class T>
class EchelonLattice {
public:
    explicit EchelonLattice(int rows, bool track_preimages = false)
        : rows_(rows), track_(track_preimages), slot_(static_cast<std::size_t>(rows), -1), occurs_(static_cast<std::size_t>(rows)) {}

    int rows() const noexcept { return rows_; }
    std::size_t rank() const noexcept { return basis_.size(); }

    /// Inserts v; id labels it in preimage expressions.
    void insert(SparseVec<T> v, int id = -1) {
        SparseVec<T> pre;
        if (track_) pre.emplace_back(id, T(1));
        using O = detail::Ops<T>;
        for (;;) {
            reduce(v, track_ ? &pre : nullptr, -1);
            if (v.empty()) return;
            const int p = v.front().first;
            const int s = slot_[static_cast<std::size_t>(p)];
            if (s < 0) {
                if (v.front().second < 0) {
                    v = combine(T(-1), v, T(0), v);
                    if (track_) pre = combine(T(-1), pre, T(0), pre);
                }
                store(p, std::move(v), std::move(pre));
                return;
            }
            // 0 < v[p] < pivot: replace the pivot by the gcd.
            const auto& b = basis_[static_cast<std::size_t>(s)];
            const T a = b.front().second;
            const T c = v.front().second;
            T x, y;
            const T g = detail::gcd_ext(a, c, x, y);
            const T ca = O::neg(c / g), ag = a / g;
            SparseVec<T> nb = combine(x, b, y, v);
            SparseVec<T> nv = combine(ca, b, ag, v);
            if (track_) {
                SparseVec<T> npb = combine(x, pre_[static_cast<std::size_t>(s)], y, pre);
                pre = combine(ca, pre_[static_cast<std::size_t>(s)], ag, pre);
                pre_[static_cast<std::size_t>(s)] = std::move(npb);
            }
            basis_[static_cast<std::size_t>(s)] = std::move(nb);
            reduce(basis_[static_cast<std::size_t>(s)], track_ ? &pre_[static_cast<std::size_t>(s)] : nullptr, p);
            for (std::size_t k = 1; k < basis_[static_cast<std::size_t>(s)].size(); ++k)
                occurs_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(s)][k].first)].push_back(s);
            back_reduce(p);
            v = std::move(nv);
        }
    }

    /// Expression of z in the inserted vectors, or nothing when z is not in
    /// the lattice.  Requires preimage tracking.
    std::optional<SparseVec<T>> solve(SparseVec<T> z) const {
        if (!track_) throw InvalidArgument("lattice does not track preimages");
        SparseVec<T> acc;
        reduce(z, &acc, -1);
        if (!z.empty()) return std::nullopt;
        return combine(T(-1), acc, T(0), acc);
    }

    bool contains(SparseVec<T> z) const {
        reduce(z, nullptr, -1);
        return z.empty();
    }

    /// Basis vector whose pivot is row p, if any.
    const SparseVec<T>* pivot_vector(int p) const {
        const int s = slot_[static_cast<std::size_t>(p)];
        return s < 0 ? nullptr : &basis_[static_cast<std::size_t>(s)];
    }

private:
    static T floor_div(const T& c, const T& a) {
        T q = c / a;
        if (c % a != 0 && c < 0) q = q - 1;
        return q;
    }

    /// Reduces every entry of v in a pivot row other than skip_row.
    void reduce(SparseVec<T>& v, SparseVec<T>* pre, int skip_row) const {
        std::size_t pos = 0;
        while (pos < v.size()) {
            const int r = v[pos].first;
            const int s = slot_[static_cast<std::size_t>(r)];
            if (s < 0 || r == skip_row) {
                ++pos;
                continue;
            }
            const auto& b = basis_[static_cast<std::size_t>(s)];
            const T q = floor_div(v[pos].second, b.front().second);
            if (q != 0) {
                const T nq = detail::Ops<T>::neg(q);
                v = combine(T(1), v, nq, b);
                if (pre) *pre = combine(T(1), *pre, nq, pre_[static_cast<std::size_t>(s)]);
            }
            if (pos < v.size() && v[pos].first == r) ++pos;
        }
    }

    void store(int p, SparseVec<T> v, SparseVec<T> pre) {
        const int idx = static_cast<int>(basis_.size());
        slot_[static_cast<std::size_t>(p)] = idx;
        for (std::size_t k = 1; k < v.size(); ++k) occurs_[static_cast<std::size_t>(v[k].first)].push_back(idx);
        basis_.push_back(std::move(v));
        if (track_) pre_.push_back(std::move(pre));
        back_reduce(p);
    }

    /// Restores reducedness of all vectors in row p after its pivot changed.
    void back_reduce(int p) {
        const int s = slot_[static_cast<std::size_t>(p)];
        std::vector<int> users = std::move(occurs_[static_cast<std::size_t>(p)]);
        occurs_[static_cast<std::size_t>(p)].clear();
        std::sort(users.begin(), users.end());
        users.erase(std::unique(users.begin(), users.end()), users.end());
        const auto& b = basis_[static_cast<std::size_t>(s)];
        for (int u : users) {
            if (u == s) continue;
            auto& w = basis_[static_cast<std::size_t>(u)];
            auto it = std::lower_bound(w.begin(), w.end(), p, [](const auto& e, int row) { return e.first < row; });
            if (it == w.end() || it->first != p) continue;
            const T q = floor_div(it->second, b.front().second);
            if (q != 0) {
                const SparseVec<T> before = w;
                const T nq = detail::Ops<T>::neg(q);
                w = combine(T(1), w, nq, b);
                if (track_) pre_[static_cast<std::size_t>(u)] = combine(T(1), pre_[static_cast<std::size_t>(u)], nq, pre_[static_cast<std::size_t>(s)]);
                reduce(w, track_ ? &pre_[static_cast<std::size_t>(u)] : nullptr, w.front().first);
                // Register rows that are new in w.
                std::size_t i = 0;
                for (std::size_t k = 1; k < w.size(); ++k) {
                    while (i < before.size() && before[i].first < w[k].first) ++i;
                    if (i == before.size() || before[i].first != w[k].first)
                        occurs_[static_cast<std::size_t>(w[k].first)].push_back(u);
                }
            }
            auto again = std::lower_bound(w.begin(), w.end(), p, [](const auto& e, int row) { return e.first < row; });
            if (again != w.end() && again->first == p) occurs_[static_cast<std::size_t>(p)].push_back(u);
        }
    }

    int rows_;
    bool track_;
    std::vector<int> slot_;
    std::vector<SparseVec<T>> basis_;
    std::vector<SparseVec<T>> pre_;
    std::vector<std::vector<int>> occurs_;
};

/// The finitely generated abelian group Z^rows / L with a classifier for its
/// torsion subgroup.
struct LatticeQuotient {
    int rows = 0;
    /// Orders of the torsion coordinates, each > 1, d_1 | d_2 | ...
    std::vector<Integer> torsion;
    std::size_t free_rank = 0;
    /// functional[t][row]: residue of the t-th torsion coordinate on a unit vector.
    std::vector<std::vector<Integer>> functional;
    /// Vectors mapping to the unit torsion coordinates.
    std::vector<SparseVec<Integer>> generators;

    std::vector<Integer> classify(const SparseVec<Integer>& v) const {
        std::vector<Integer> c(torsion.size(), 0);
        for (std::size_t t = 0; t < torsion.size(); ++t) {
            Integer s = 0;
            for (const auto& [k, x] : v) s += x * functional[t][static_cast<std::size_t>(k)];
            c[t] = mod_floor(s, torsion[t]);
        }
        return c;
    }
};

template <class T>
LatticeQuotient lattice_quotient(const EchelonLattice<T>& lat) {
    using O = detail::Ops<T>;
    const int n = lat.rows();
    // Rows with a unit pivot are eliminated; the rest index the reduced space.
    std::vector<int> s_index(static_cast<std::size_t>(n), -1);
    std::vector<int> s_rows;
    for (int q = 0; q < n; ++q) {
        const auto* b = lat.pivot_vector(q);
        if (!b || b->front().second != 1) {
            s_index[static_cast<std::size_t>(q)] = static_cast<int>(s_rows.size());
            s_rows.push_back(q);
        }
    }
    // phi[q]: image of e_q in the reduced space Z^S.
    std::vector<SparseVec<T>> phi(static_cast<std::size_t>(n));
    for (int q = n - 1; q >= 0; --q) {
        if (s_index[static_cast<std::size_t>(q)] >= 0) {
            phi[static_cast<std::size_t>(q)] = {{s_index[static_cast<std::size_t>(q)], T(1)}};
            continue;
        }
        const auto& b = *lat.pivot_vector(q);
        SparseVec<T> acc;
        for (std::size_t k = 1; k < b.size(); ++k)
            acc = combine(T(1), acc, O::neg(b[k].second), phi[static_cast<std::size_t>(b[k].first)]);
        phi[static_cast<std::size_t>(q)] = std::move(acc);
    }
    auto image = [&](const SparseVec<T>& v) {
        SparseVec<T> acc;
        for (const auto& [k, x] : v) acc = combine(T(1), acc, x, phi[static_cast<std::size_t>(k)]);
        return acc;
    };
    std::vector<SparseVec<T>> relations;
    for (int q : s_rows)
        if (const auto* b = lat.pivot_vector(q)) relations.push_back(image(*b));

    Matrix r(s_rows.size(), relations.size());
    for (std::size_t j = 0; j < relations.size(); ++j)
        for (const auto& [k, x] : relations[j]) r(static_cast<std::size_t>(k), j) = O::widen(x);
    const SmithForm f = smith_normal_form(r);

    LatticeQuotient out;
    out.rows = n;
    out.free_rank = s_rows.size() - f.rank;
    std::vector<std::size_t> torsion_rows;
    for (std::size_t t = 0; t < f.rank; ++t)
        if (f.D(t, t) > 1) torsion_rows.push_back(t);
    auto functional_of = [&](std::size_t t, const Integer& modulus) {
        std::vector<Integer> fn(static_cast<std::size_t>(n), 0);
        for (int q = 0; q < n; ++q) {
            Integer s = 0;
            for (const auto& [k, x] : phi[static_cast<std::size_t>(q)]) s += f.U(t, static_cast<std::size_t>(k)) * O::widen(x);
            fn[static_cast<std::size_t>(q)] = mod_floor(s, modulus);
        }
        return fn;
    };
    for (std::size_t t : torsion_rows) {
        out.torsion.push_back(f.D(t, t));
        out.functional.push_back(functional_of(t, f.D(t, t)));
        SparseVec<Integer> g;
        for (std::size_t s = 0; s < s_rows.size(); ++s)
            if (f.U_inv(s, t) != 0) g.emplace_back(s_rows[s], f.U_inv(s, t));
        out.generators.push_back(std::move(g));
    }
    return out;
}

}  // namespace periph
