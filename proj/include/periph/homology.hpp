#pragma once

// Integer homology of finite groups from the normalized bar complex.
//
// C_k has basis [g1|...|gk] over non-identity elements, and
//   d[g1|...|gk] = [g2|...|gk] + sum_{i=1}^{k-1} (-1)^i [..|g_i g_{i+1}|..]
//                  + (-1)^k [g1|...|g_{k-1}],
// with tuples containing the identity dropped.  For finite G the torsion of
// C_k / im d_{k+1} is H_k, which is what the classifiers below describe.

#include "periph/error.hpp"
#include "periph/group.hpp"
#include "periph/integer.hpp"
#include "periph/lattice.hpp"
#include "periph/smith.hpp"

#include <algorithm>
#include <climits>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace periph {

inline constexpr int kDefaultCapOrder = 16;

/// Group-order cap for homology: PERIPH_CAP_ORDER when set, else 16.
inline int default_cap_order() {
    if (const char* v = std::getenv("PERIPH_CAP_ORDER")) {
        try {
            const int c = std::stoi(v);
            if (c > 0) return c;
        } catch (const std::exception&) {
        }
    }
    return kDefaultCapOrder;
}

/// Index arithmetic for the normalized bar basis of one degree.
struct BarBasis {
    int order = 1;
    int degree = 0;

    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < degree; ++i) s *= static_cast<std::size_t>(order - 1);
        return s;
    }
    std::size_t index(const std::vector<int>& t) const {
        std::size_t ix = 0;
        for (int g : t) ix = ix * static_cast<std::size_t>(order - 1) + static_cast<std::size_t>(g - 1);
        return ix;
    }
    std::vector<int> tuple(std::size_t ix) const {
        std::vector<int> t(static_cast<std::size_t>(degree));
        for (int i = degree - 1; i >= 0; --i) {
            t[static_cast<std::size_t>(i)] = static_cast<int>(ix % static_cast<std::size_t>(order - 1)) + 1;
            ix /= static_cast<std::size_t>(order - 1);
        }
        return t;
    }
};

/// Sparse normalized chain: tuple of non-identity elements -> coefficient.
struct ChainVector {
    int degree = 0;
    std::map<std::vector<int>, Integer> terms;

    ChainVector() = default;
    explicit ChainVector(int k) : degree(k) {}

    /// Adds c*[t]; tuples containing the identity are degenerate and dropped.
    void add(const std::vector<int>& t, const Integer& c) {
        if (static_cast<int>(t.size()) != degree) throw InvalidArgument("tuple length differs from chain degree");
        if (c == 0) return;
        for (int g : t)
            if (g == FiniteGroup::identity()) return;
        auto [it, fresh] = terms.emplace(t, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    void add(const ChainVector& o, const Integer& c = 1) {
        for (const auto& [t, x] : o.terms) add(t, c * x);
    }
    bool is_zero() const { return terms.empty(); }

    SparseVec<Integer> to_sparse(int order) const {
        const BarBasis b{order, degree};
        SparseVec<Integer> v;
        for (const auto& [t, x] : terms) v.emplace_back(static_cast<int>(b.index(t)), x);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
        return v;
    }
    static ChainVector from_sparse(const SparseVec<Integer>& v, int order, int degree) {
        const BarBasis b{order, degree};
        ChainVector c(degree);
        for (const auto& [k, x] : v) c.add(b.tuple(static_cast<std::size_t>(k)), x);
        return c;
    }

    friend bool operator==(const ChainVector&, const ChainVector&) = default;
};

/// Image of a chain under a map of groups given on element indices.
inline ChainVector push_forward(const ChainVector& c, const std::vector<int>& f) {
    ChainVector out(c.degree);
    for (const auto& [t, x] : c.terms) {
        std::vector<int> u(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) u[i] = f[static_cast<std::size_t>(t[i])];
        out.add(u, x);
    }
    return out;
}

/// Boundary of one basis tuple as a sparse vector over C_{k-1}.
inline SparseVec<long long> bar_boundary_column(const FiniteGroup& g, const std::vector<int>& t) {
    const int k = static_cast<int>(t.size());
    const BarBasis lower{g.order(), k - 1};
    std::vector<std::pair<int, long long>> v;
    auto face = [&](std::vector<int> u, long long c) {
        for (int x : u)
            if (x == FiniteGroup::identity()) return;
        v.emplace_back(static_cast<int>(lower.index(u)), c);
    };
    face(std::vector<int>(t.begin() + 1, t.end()), 1);
    for (int i = 1; i < k; ++i) {
        std::vector<int> u;
        for (int j = 0; j < k; ++j) {
            if (j == i - 1) {
                u.push_back(g.mul(t[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(j + 1)]));
                ++j;
            } else {
                u.push_back(t[static_cast<std::size_t>(j)]);
            }
        }
        face(std::move(u), i % 2 ? -1 : 1);
    }
    face(std::vector<int>(t.begin(), t.end() - 1), k % 2 ? -1 : 1);
    std::sort(v.begin(), v.end());
    SparseVec<long long> out;
    for (const auto& [ix, c] : v) {
        if (!out.empty() && out.back().first == ix) out.back().second += c;
        else out.emplace_back(ix, c);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.second == 0; }), out.end());
    return out;
}

struct SparseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<SparseVec<long long>> columns;

    Matrix to_dense() const {
        Matrix m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (const auto& [i, x] : columns[j]) m(static_cast<std::size_t>(i), j) = x;
        return m;
    }
};

/// Matrix of d_k : C_k -> C_{k-1}, columns in basis index order.
inline SparseMatrix bar_boundary(const FiniteGroup& g, int k, int cap_order = default_cap_order()) {
    if (k < 1 || k > 4) throw InvalidArgument("bar boundary degree must be 1..4");
    if (g.order() > cap_order)
        throw CapExceeded("group order " + std::to_string(g.order()) + " exceeds homology cap " + std::to_string(cap_order));
    const BarBasis upper{g.order(), k}, lower{g.order(), k - 1};
    SparseMatrix m{lower.size(), upper.size(), {}};
    m.columns.reserve(upper.size());
    for (std::size_t j = 0; j < upper.size(); ++j) m.columns.push_back(bar_boundary_column(g, upper.tuple(j)));
    return m;
}

inline ChainVector boundary(const FiniteGroup& g, const ChainVector& c) {
    if (c.degree < 1) throw InvalidArgument("boundary of a degree-0 chain");
    ChainVector out(c.degree - 1);
    const BarBasis lower{g.order(), c.degree - 1};
    for (const auto& [t, x] : c.terms)
        for (const auto& [ix, y] : bar_boundary_column(g, t)) out.add(lower.tuple(static_cast<std::size_t>(ix)), x * y);
    return out;
}

struct HomologyClass {
    std::vector<Integer> coordinates;
    std::vector<Integer> factors;

    bool is_zero() const {
        return std::all_of(coordinates.begin(), coordinates.end(), [](const Integer& c) { return c == 0; });
    }
    HomologyClass operator+(const HomologyClass& o) const {
        if (factors != o.factors) throw InvalidArgument("adding classes of different groups");
        HomologyClass r = *this;
        for (std::size_t i = 0; i < factors.size(); ++i) r.coordinates[i] = mod_floor(r.coordinates[i] + o.coordinates[i], factors[i]);
        return r;
    }
    HomologyClass operator-() const {
        HomologyClass r = *this;
        for (std::size_t i = 0; i < factors.size(); ++i) r.coordinates[i] = mod_floor(-r.coordinates[i], factors[i]);
        return r;
    }
    HomologyClass operator-(const HomologyClass& o) const { return *this + (-o); }
    friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

struct HomologyGroup {
    int degree = 0;
    /// Invariant factors d_1 | d_2 | ..., each > 1; empty for the zero group.
    std::vector<Integer> invariant_factors;
    std::vector<ChainVector> generator_cycles;
    LatticeQuotient quotient;
    int group_order = 1;

    /// Class of a cycle.  The argument is not checked to be a cycle.
    HomologyClass classify(const ChainVector& z) const {
        if (z.degree != degree) throw InvalidArgument("chain degree differs from homology degree");
        return {quotient.classify(z.to_sparse(group_order)), invariant_factors};
    }
    HomologyClass zero() const { return {std::vector<Integer>(invariant_factors.size(), 0), invariant_factors}; }

    Integer order() const {
        Integer o = 1;
        for (const Integer& d : invariant_factors) o *= d;
        return o;
    }
};

/// Column order used when building the lattice that solves d_3 w = z.
/// Different orders give different, equally valid solutions.
struct SolverOrder {
    enum Kind { natural, reversed, shuffled } kind = natural;
    unsigned seed = 0;

    friend bool operator<(const SolverOrder& a, const SolverOrder& b) {
        return a.kind != b.kind ? a.kind < b.kind : a.seed < b.seed;
    }
};

/// The quotient Q(G) = H_3(G/G') / pr_* H_3(G), for G/G' cyclic of order n.
struct QGroup {
    int n = 1;
    /// Classes in H_3(Z_n) of the pushed-forward generators of H_3(G).
    std::vector<HomologyClass> image_generators;
    /// Invariant factors of the quotient, each > 1.
    std::vector<Integer> factors;
    /// Rows of U (from the Smith form of [diag(ambient) | image]) giving the quotient coordinates.
    std::vector<std::vector<Integer>> coordinate_rows;
    std::vector<Integer> ambient_factors;

    HomologyClass reduce(const HomologyClass& ambient) const {
        if (ambient.factors != ambient_factors) throw InvalidArgument("class is not in the ambient H3 of Q(G)");
        HomologyClass q{std::vector<Integer>(factors.size(), 0), factors};
        for (std::size_t t = 0; t < factors.size(); ++t) {
            Integer s = 0;
            for (std::size_t i = 0; i < ambient.coordinates.size(); ++i) s += coordinate_rows[t][i] * ambient.coordinates[i];
            q.coordinates[t] = mod_floor(s, factors[t]);
        }
        return q;
    }
    bool is_trivial() const { return factors.empty(); }
    /// True iff the ambient class lies in pr_* H_3(G).
    bool in_image(const HomologyClass& ambient) const { return reduce(ambient).is_zero(); }
};

namespace detail {

template <class T>
EchelonLattice<T> boundary_lattice(const FiniteGroup& g, int k, bool track, const std::vector<std::size_t>& order) {
    const BarBasis upper{g.order(), k + 1}, lower{g.order(), k};
    EchelonLattice<T> lat(static_cast<int>(lower.size()), track);
    for (std::size_t j : order) {
        const SparseVec<long long> col = bar_boundary_column(g, upper.tuple(j));
        if constexpr (std::is_same_v<T, long long>) {
            lat.insert(col, static_cast<int>(j));
        } else {
            lat.insert(widen(col), static_cast<int>(j));
        }
    }
    return lat;
}

using AnyLattice = std::variant<EchelonLattice<long long>, EchelonLattice<Integer>>;

inline AnyLattice make_lattice(const FiniteGroup& g, int k, bool track, const std::vector<std::size_t>& order) {
    try {
        return boundary_lattice<long long>(g, k, track, order);
    } catch (const Overflow&) {
        return boundary_lattice<Integer>(g, k, track, order);
    }
}

}  // namespace detail

/// Homology computations for one finite group (held by value), cached.  Thread-safe.
class GroupHomology {
public:
    explicit GroupHomology(const FiniteGroup& g, int cap_order = default_cap_order()) : g_(g), cap_(cap_order) {
        if (g.order() > cap_order)
            throw CapExceeded("group order " + std::to_string(g.order()) + " exceeds homology cap " + std::to_string(cap_order));
    }

    const FiniteGroup& group() const noexcept { return g_; }
    int cap_order() const noexcept { return cap_; }

    /// H_k for k = 1, 2, 3.
    const HomologyGroup& homology(int k) {
        if (k < 1 || k > 3) throw InvalidArgument("homology degree must be 1, 2 or 3");
        std::lock_guard<std::recursive_mutex> lock(mu_);
        auto& slot = h_[static_cast<std::size_t>(k)];
        if (!slot) slot = std::make_unique<HomologyGroup>(compute(k));
        return *slot;
    }

    const Abelianization& abelian() {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        if (!ab_) ab_ = std::make_unique<Abelianization>(abelianization(g_));
        return *ab_;
    }

    /// Some w with d_3 w = z, or nothing when z is not a boundary.
    std::optional<ChainVector> solve_boundary3(const ChainVector& z, SolverOrder order = {}) {
        if (z.degree != 2) throw InvalidArgument("solve_boundary3 expects a 2-chain");
        const detail::AnyLattice* lat;
        {
            std::lock_guard<std::recursive_mutex> lock(mu_);
            auto it = solvers_.find(order);
            if (it == solvers_.end()) it = solvers_.emplace(order, std::make_unique<detail::AnyLattice>(build_solver(order))).first;
            lat = it->second.get();
        }
        const SparseVec<Integer> zs = z.to_sparse(g_.order());
        std::optional<SparseVec<Integer>> w;
        if (const auto* small = std::get_if<EchelonLattice<long long>>(lat)) {
            SparseVec<long long> z64;
            bool fits = true;
            for (const auto& [k, x] : zs) {
                if (x > LLONG_MAX / 4 || x < -(LLONG_MAX / 4)) fits = false;
                else z64.emplace_back(k, static_cast<long long>(x));
            }
            if (fits) {
                try {
                    auto r = small->solve(z64);
                    if (!r) return std::nullopt;
                    w = widen(*r);
                } catch (const detail::Overflow&) {
                }
            }
            if (!w) {
                std::lock_guard<std::recursive_mutex> lock(mu_);
                auto& wide = wide_solvers_[order];
                if (!wide) wide = std::make_unique<EchelonLattice<Integer>>(detail::boundary_lattice<Integer>(g_, 2, true, column_order(order)));
                w = wide->solve(zs);
                if (!w) return std::nullopt;
            }
        } else {
            w = std::get<EchelonLattice<Integer>>(*lat).solve(zs);
            if (!w) return std::nullopt;
        }
        return ChainVector::from_sparse(*w, g_.order(), 3);
    }

    /// Q(G); requires G/G' cyclic.
    const QGroup& q_group() {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        if (q_) return *q_;
        const Abelianization& ab = abelian();
        if (!ab.is_cyclic) throw PreconditionFailed("abelianization_not_cyclic", "G/G' is not cyclic");
        const HomologyGroup& amb = cyclic_quotient().homology(3);
        const HomologyGroup& h3 = homology(3);
        auto q = std::make_unique<QGroup>();
        q->n = ab.quotient_order;
        q->ambient_factors = amb.invariant_factors;
        for (const ChainVector& c : h3.generator_cycles) q->image_generators.push_back(amb.classify(push_forward(c, ab.pr)));
        const std::size_t m = amb.invariant_factors.size();
        Matrix rel(m, m + q->image_generators.size());
        for (std::size_t i = 0; i < m; ++i) rel(i, i) = amb.invariant_factors[i];
        for (std::size_t j = 0; j < q->image_generators.size(); ++j)
            for (std::size_t i = 0; i < m; ++i) rel(i, m + j) = q->image_generators[j].coordinates[i];
        const SmithForm f = smith_normal_form(rel);
        for (std::size_t t = 0; t < f.rank; ++t)
            if (f.D(t, t) > 1) {
                q->factors.push_back(f.D(t, t));
                std::vector<Integer> row(m);
                for (std::size_t i = 0; i < m; ++i) row[i] = f.U(t, i);
                q->coordinate_rows.push_back(std::move(row));
            }
        if (f.rank < m) throw InternalError("H3 of a cyclic group has a free part");
        q_ = std::move(q);
        return *q_;
    }

    /// Homology context of the abelianization Z_n (requires it cyclic).
    GroupHomology& cyclic_quotient() {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        if (!zn_) {
            const Abelianization& ab = abelian();
            if (!ab.is_cyclic) throw PreconditionFailed("abelianization_not_cyclic", "G/G' is not cyclic");
            zn_group_ = std::make_unique<FiniteGroup>(build_group(CyclicSpec{ab.quotient_order}));
            zn_ = std::make_unique<GroupHomology>(*zn_group_, std::max(cap_, ab.quotient_order));
        }
        return *zn_;
    }

private:
    std::vector<std::size_t> column_order(SolverOrder order) const {
        std::vector<std::size_t> cols = descending_columns(3);
        if (order.kind == SolverOrder::reversed) std::reverse(cols.begin(), cols.end());
        if (order.kind == SolverOrder::shuffled) {
            std::mt19937 rng(order.seed);
            std::shuffle(cols.begin(), cols.end(), rng);
        }
        return cols;
    }

    detail::AnyLattice build_solver(SolverOrder order) const { return detail::make_lattice(g_, 2, true, column_order(order)); }

    /// Insertion from the highest tuple index down keeps coefficients small.
    std::vector<std::size_t> descending_columns(int degree) const {
        std::vector<std::size_t> cols(BarBasis{g_.order(), degree}.size());
        std::iota(cols.rbegin(), cols.rend(), std::size_t{0});
        return cols;
    }

    HomologyGroup compute(int k) const {
        const std::vector<std::size_t> cols = descending_columns(k + 1);
        const detail::AnyLattice lat = detail::make_lattice(g_, k, false, cols);
        HomologyGroup h;
        h.degree = k;
        h.group_order = g_.order();
        h.quotient = std::visit([](const auto& l) { return lattice_quotient(l); }, lat);
        h.invariant_factors = h.quotient.torsion;
        if (h.quotient.free_rank != rank_of_boundary(k))
            throw InternalError("free rank of C_k / B_k does not match the rank of d_k");
        for (const auto& gen : h.quotient.generators) {
            ChainVector c = ChainVector::from_sparse(gen, g_.order(), k);
            if (!boundary(g_, c).is_zero()) throw InternalError("homology generator is not a cycle");
            h.generator_cycles.push_back(std::move(c));
        }
        return h;
    }

    std::size_t rank_of_boundary(int k) const {
        if (k == 1) return 0;
        const std::vector<std::size_t> cols = descending_columns(k);
        const detail::AnyLattice lat = detail::make_lattice(g_, k - 1, false, cols);
        return std::visit([](const auto& l) { return l.rank(); }, lat);
    }

    FiniteGroup g_;
    int cap_;
    std::recursive_mutex mu_;
    std::unique_ptr<HomologyGroup> h_[4];
    std::unique_ptr<Abelianization> ab_;
    std::map<SolverOrder, std::unique_ptr<detail::AnyLattice>> solvers_;
    std::map<SolverOrder, std::unique_ptr<EchelonLattice<Integer>>> wide_solvers_;
    std::unique_ptr<QGroup> q_;
    std::unique_ptr<FiniteGroup> zn_group_;
    std::unique_ptr<GroupHomology> zn_;
};

inline HomologyGroup homology_group(const FiniteGroup& g, int k, int cap_order = default_cap_order()) {
    GroupHomology ctx(g, cap_order);
    return ctx.homology(k);
}

/// The 2-cycle [a|b] - [b|a] of a commuting pair.
inline ChainVector torus_cycle(const FiniteGroup& g, int a, int b) {
    g.check_element(a);
    g.check_element(b);
    if (!g.commute(a, b)) throw PreconditionFailed("not_commuting", "elements do not commute");
    ChainVector z(2);
    z.add({a, b}, 1);
    z.add({b, a}, -1);
    return z;
}

/// Pontryagin product of a commuting pair in H_2(G).
inline HomologyClass pontryagin(GroupHomology& ctx, int mu, int lambda) {
    return ctx.homology(2).classify(torus_cycle(ctx.group(), mu, lambda));
}

/// Sum of the Pontryagin products of the pairs (mu_i, lambda_i).
inline HomologyClass theta(GroupHomology& ctx, const std::vector<int>& mu, const std::vector<int>& lambda) {
    if (mu.size() != lambda.size()) throw InvalidArgument("mu and lambda lengths differ");
    ChainVector z(2);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (!ctx.group().commute(mu[i], lambda[i]))
            throw PreconditionFailed("not_commuting", "mu and lambda do not commute at index " + std::to_string(i));
        z.add(torus_cycle(ctx.group(), mu[i], lambda[i]));
    }
    return ctx.homology(2).classify(z);
}

/// Throws PreconditionFailed (with a distinct code per condition) unless the
/// extended Johnson-Livingston product of (mu, lambda) is defined.
inline void check_jl_preconditions(GroupHomology& ctx, const std::vector<int>& mu, const std::vector<int>& lambda) {
    const FiniteGroup& g = ctx.group();
    if (mu.empty() || mu.size() != lambda.size()) throw PreconditionFailed("length_mismatch", "mu and lambda must be nonempty of equal length");
    for (std::size_t i = 0; i < mu.size(); ++i) {
        g.check_element(mu[i]);
        g.check_element(lambda[i]);
    }
    if (static_cast<int>(normal_closure(g, mu).size()) != g.order())
        throw PreconditionFailed("not_meridional", "conjugates of mu do not generate G");
    for (std::size_t i = 1; i < mu.size(); ++i)
        if (!conjugator(g, mu[0], mu[i])) throw PreconditionFailed("meridians_not_conjugate", "mu_" + std::to_string(i) + " is not conjugate to mu_0");
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (!g.commute(mu[i], lambda[i]))
            throw PreconditionFailed("not_commuting", "mu and lambda do not commute at index " + std::to_string(i));
    const Abelianization& ab = ctx.abelian();
    if (!ab.is_cyclic) throw PreconditionFailed("abelianization_not_cyclic", "G/G' is not cyclic");
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (!ab.in_commutator(lambda[i]))
            throw PreconditionFailed("longitude_not_in_commutator", "lambda_" + std::to_string(i) + " is not in G'");
    if (!theta(ctx, mu, lambda).is_zero()) throw PreconditionFailed("theta_nonzero", "sum of Pontryagin products is nonzero");
}

/// Class in H_3(G/G') of pr(w) for a solution w of d_3 w = sum_i [mu_i|lambda_i] - [lambda_i|mu_i].
inline HomologyClass jl_ambient(GroupHomology& ctx, const std::vector<int>& mu, const std::vector<int>& lambda, SolverOrder order = {}) {
    check_jl_preconditions(ctx, mu, lambda);
    ChainVector z(2);
    for (std::size_t i = 0; i < mu.size(); ++i) z.add(torus_cycle(ctx.group(), mu[i], lambda[i]));
    const std::optional<ChainVector> w = ctx.solve_boundary3(z, order);
    if (!w) throw InternalError("torus chain is not a boundary although its class vanishes");
    const ChainVector pw = push_forward(*w, ctx.abelian().pr);
    GroupHomology& zn = ctx.cyclic_quotient();
    if (!boundary(zn.group(), pw).is_zero()) throw InternalError("pushed-forward 3-chain is not a cycle");
    return zn.homology(3).classify(pw);
}

/// Extended Johnson-Livingston product in Q(G).
inline HomologyClass jl_product(GroupHomology& ctx, const std::vector<int>& mu, const std::vector<int>& lambda, SolverOrder order = {}) {
    const HomologyClass amb = jl_ambient(ctx, mu, lambda, order);
    return ctx.q_group().reduce(amb);
}

}  // namespace periph
