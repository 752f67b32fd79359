#pragma once

// Finite groups as multiplication tables over element indices 0..order-1,
// identity at index 0.  Products are written left to right: for permutation
// groups a*b means "apply a, then b".

#include "periph/error.hpp"
#include "periph/word.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace periph {

class FiniteGroup {
public:
    FiniteGroup() = default;

    /// Validates the table: rows and columns are permutations, index 0 is the
    /// identity, associativity checked exhaustively up to order 64 and on a
    /// fixed pseudo-random sample above.
    FiniteGroup(std::string name, int order, std::vector<int> table)
        : name_(std::move(name)), order_(order), table_(std::move(table)) {
        validate();
    }

    const std::string& name() const noexcept { return name_; }
    int order() const noexcept { return order_; }
    static constexpr int identity() noexcept { return 0; }

    int mul(int a, int b) const {
        return table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(order_) + static_cast<std::size_t>(b)];
    }
    int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    int conj(int g, int a) const { return mul(mul(g, a), inv(g)); }  // g a g^-1
    bool commute(int a, int b) const { return mul(a, b) == mul(b, a); }

    int power(int a, long long k) const {
        long long e = k % element_order(a);
        if (e < 0) e += element_order(a);
        int r = identity();
        for (long long i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }

    int element_order(int a) const { return orders_[static_cast<std::size_t>(a)]; }

    const std::vector<int>& table() const noexcept { return table_; }

    /// Element labels, e.g. one-line permutation images; empty if none.
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }
    std::string label(int a) const {
        return labels_.empty() ? std::to_string(a) : labels_[static_cast<std::size_t>(a)];
    }

    void check_element(int a) const {
        if (a < 0 || a >= order_) throw InvalidArgument("element index " + std::to_string(a) + " out of range");
    }

private:
    void validate() {
        if (order_ <= 0) throw InvalidArgument("group order must be positive");
        const std::size_t n = static_cast<std::size_t>(order_);
        if (table_.size() != n * n) throw InvalidArgument("table must be order x order");
        for (int v : table_)
            if (v < 0 || v >= order_) throw InvalidArgument("table entry out of range");
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<char> row(n, 0), col(n, 0);
            for (std::size_t j = 0; j < n; ++j) {
                row[static_cast<std::size_t>(table_[i * n + j])] = 1;
                col[static_cast<std::size_t>(table_[j * n + i])] = 1;
            }
            if (std::count(row.begin(), row.end(), 1) != order_)
                throw InvalidArgument("table row " + std::to_string(i) + " is not a permutation");
            if (std::count(col.begin(), col.end(), 1) != order_)
                throw InvalidArgument("table column " + std::to_string(i) + " is not a permutation");
        }
        for (int a = 0; a < order_; ++a)
            if (mul(0, a) != a || mul(a, 0) != a) throw InvalidArgument("index 0 is not the identity");
        auto assoc = [&](int a, int b, int c) {
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                throw InvalidArgument("table is not associative");
        };
        if (order_ <= 64) {
            for (int a = 0; a < order_; ++a)
                for (int b = 0; b < order_; ++b)
                    for (int c = 0; c < order_; ++c) assoc(a, b, c);
        } else {
            std::mt19937 rng(12345);
            std::uniform_int_distribution<int> pick(0, order_ - 1);
            for (int s = 0; s < 200000; ++s) assoc(pick(rng), pick(rng), pick(rng));
        }
        inverse_.assign(n, -1);
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b)
                if (mul(a, b) == 0) inverse_[static_cast<std::size_t>(a)] = b;
        orders_.assign(n, 0);
        for (int a = 0; a < order_; ++a) {
            int k = 1, x = a;
            while (x != 0) {
                x = mul(x, a);
                ++k;
            }
            orders_[static_cast<std::size_t>(a)] = k;
        }
    }

    std::string name_;
    int order_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<int> orders_;
    std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// Construction

struct CyclicSpec {
    int n = 1;
};
/// One-line images of 1..degree for each generator.
struct PermutationSpec {
    int degree = 0;
    std::vector<std::vector<int>> generators;
};
struct TableSpec {
    std::vector<std::vector<int>> table;
};
using GroupSpec = std::variant<CyclicSpec, PermutationSpec, TableSpec>;

inline constexpr std::size_t kDefaultClosureCap = 100000;

inline FiniteGroup build_group(const GroupSpec& spec, std::string name = {},
                               std::size_t closure_cap = kDefaultClosureCap) {
    if (const auto* c = std::get_if<CyclicSpec>(&spec)) {
        if (c->n < 1) throw InvalidArgument("cyclic group order must be at least 1");
        const int n = c->n;
        std::vector<int> t(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a * n + b)] = (a + b) % n;
        return FiniteGroup(name.empty() ? "Z" + std::to_string(n) : name, n, std::move(t));
    }
    if (const auto* p = std::get_if<PermutationSpec>(&spec)) {
        const int d = p->degree;
        if (d < 1) throw InvalidArgument("permutation degree must be positive");
        std::vector<std::vector<int>> gens;
        for (const auto& g : p->generators) {
            if (static_cast<int>(g.size()) != d) throw InvalidArgument("generator length differs from degree");
            std::vector<int> img(static_cast<std::size_t>(d));
            std::vector<char> seen(static_cast<std::size_t>(d), 0);
            for (int i = 0; i < d; ++i) {
                const int v = g[static_cast<std::size_t>(i)] - 1;
                if (v < 0 || v >= d || seen[static_cast<std::size_t>(v)])
                    throw InvalidArgument("generator is not a permutation of 1..degree");
                seen[static_cast<std::size_t>(v)] = 1;
                img[static_cast<std::size_t>(i)] = v;
            }
            gens.push_back(std::move(img));
        }
        std::vector<int> id(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) id[static_cast<std::size_t>(i)] = i;
        std::vector<std::vector<int>> elems{id};
        std::map<std::vector<int>, int> index{{id, 0}};
        // a*b = apply a then b: (a*b)(x) = b(a(x)).
        auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
            std::vector<int> c(a.size());
            for (std::size_t x = 0; x < a.size(); ++x) c[x] = b[static_cast<std::size_t>(a[x])];
            return c;
        };
        for (std::size_t q = 0; q < elems.size(); ++q)
            for (const auto& g : gens) {
                auto h = compose(elems[q], g);
                if (!index.count(h)) {
                    if (elems.size() >= closure_cap)
                        throw CapExceeded("permutation closure exceeds " + std::to_string(closure_cap) + " elements");
                    index[h] = static_cast<int>(elems.size());
                    elems.push_back(std::move(h));
                }
            }
        const std::size_t n = elems.size();
        std::vector<int> t(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) t[a * n + b] = index.at(compose(elems[a], elems[b]));
        FiniteGroup g(name.empty() ? "perm" + std::to_string(n) : name, static_cast<int>(n), std::move(t));
        std::vector<std::string> labels;
        for (const auto& e : elems) {
            std::string s = "[";
            for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i] + 1);
            labels.push_back(s + "]");
        }
        g.set_labels(std::move(labels));
        return g;
    }
    const auto& tab = std::get<TableSpec>(spec).table;
    const std::size_t n = tab.size();
    std::vector<int> t;
    for (const auto& row : tab) {
        if (row.size() != n) throw InvalidArgument("table must be square");
        t.insert(t.end(), row.begin(), row.end());
    }
    return FiniteGroup(name.empty() ? "table" + std::to_string(n) : name, static_cast<int>(n), std::move(t));
}

/// Dicyclic group of order 4m: elements a^k x^j, x a = a^-1 x, x^2 = a^m.
inline FiniteGroup dicyclic(int m, std::string name) {
    const int n = 4 * m, half = 2 * m;
    auto idx = [&](int k, int j) { return ((k % half + half) % half) + half * j; };
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < half; ++k)
            for (int mj = 0; mj < 2; ++mj)
                for (int l = 0; l < half; ++l) {
                    int r;
                    if (j == 0) r = idx(k + l, mj);
                    else if (mj == 0) r = idx(k - l, 1);
                    else r = idx(k - l + m, 0);
                    t[static_cast<std::size_t>(idx(k, j))][static_cast<std::size_t>(idx(l, mj))] = r;
                }
    return build_group(TableSpec{t}, std::move(name));
}

inline FiniteGroup dihedral(int n, std::string name) {
    std::vector<int> rot(static_cast<std::size_t>(n)), refl(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rot[static_cast<std::size_t>(i)] = (i + 1) % n + 1;
        refl[static_cast<std::size_t>(i)] = (n - i) % n + 1;
    }
    return build_group(PermutationSpec{n, {rot, refl}}, std::move(name));
}

/// Named small groups: Zn, S3, S4, D4, D5, A4, Q8, Dic3, Z2xZ2.
inline FiniteGroup named_group(const std::string& name) {
    if (name.size() > 1 && name[0] == 'Z' && name.find('x') == std::string::npos) {
        const int n = std::stoi(name.substr(1));
        return build_group(CyclicSpec{n}, name);
    }
    if (name == "S3") return build_group(PermutationSpec{3, {{2, 1, 3}, {2, 3, 1}}}, name);
    if (name == "S4") return build_group(PermutationSpec{4, {{2, 1, 3, 4}, {2, 3, 4, 1}}}, name);
    if (name == "A4") return build_group(PermutationSpec{4, {{2, 3, 1, 4}, {2, 1, 4, 3}}}, name);
    if (name == "D4") return dihedral(4, name);
    if (name == "D5") return dihedral(5, name);
    if (name == "Q8") return dicyclic(2, name);
    if (name == "Dic3") return dicyclic(3, name);
    if (name == "Z2xZ2") return build_group(PermutationSpec{4, {{2, 1, 4, 3}, {3, 4, 1, 2}}}, name);
    throw InvalidArgument("unknown group name '" + name + "'");
}

/// The shipped catalog: Z1..Z12, S3, D4, D5, A4, Q8, Dic3, S4.
inline std::vector<FiniteGroup> catalog() {
    std::vector<FiniteGroup> out;
    for (int n = 1; n <= 12; ++n) out.push_back(named_group("Z" + std::to_string(n)));
    for (const char* nm : {"S3", "D4", "D5", "A4", "Q8", "Dic3", "S4"}) out.push_back(named_group(nm));
    return out;
}

// ---------------------------------------------------------------------------
// Structure

/// Subgroup generated by a set, as a sorted index list.
inline std::vector<int> subgroup_generated(const FiniteGroup& g, const std::vector<int>& gens) {
    std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
    std::vector<int> elems{FiniteGroup::identity()};
    in[0] = 1;
    for (std::size_t q = 0; q < elems.size(); ++q)
        for (int s : gens) {
            const int h = g.mul(elems[q], s);
            if (!in[static_cast<std::size_t>(h)]) {
                in[static_cast<std::size_t>(h)] = 1;
                elems.push_back(h);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

/// Smallest normal subgroup containing s.
inline std::vector<int> normal_closure(const FiniteGroup& g, const std::vector<int>& s) {
    std::vector<int> conjugates;
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    for (int a : s) {
        g.check_element(a);
        for (int x = 0; x < g.order(); ++x) {
            const int c = g.conj(x, a);
            if (!seen[static_cast<std::size_t>(c)]) {
                seen[static_cast<std::size_t>(c)] = 1;
                conjugates.push_back(c);
            }
        }
    }
    return subgroup_generated(g, conjugates);
}

/// Smallest g with g a g^-1 = b, if any.
inline std::optional<int> conjugator(const FiniteGroup& g, int a, int b) {
    g.check_element(a);
    g.check_element(b);
    for (int x = 0; x < g.order(); ++x)
        if (g.conj(x, a) == b) return x;
    return std::nullopt;
}

inline std::vector<int> conjugacy_class(const FiniteGroup& g, int a) {
    std::vector<int> c;
    for (int x = 0; x < g.order(); ++x) c.push_back(g.conj(x, a));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

struct Abelianization {
    /// Order of G/G'.
    int quotient_order = 1;
    bool is_cyclic = true;
    /// Residue of each element in Z_n; filled only when G/G' is cyclic.
    std::vector<int> pr;
    /// Coset index of each element in G/G'.
    std::vector<int> coset;
    std::vector<int> commutator_subgroup;
    /// Element whose coset generates G/G' (when cyclic).
    int generator = 0;

    bool in_commutator(int a) const { return coset[static_cast<std::size_t>(a)] == coset[0]; }
};

inline Abelianization abelianization(const FiniteGroup& g) {
    Abelianization ab;
    std::vector<int> comms;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) comms.push_back(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    ab.commutator_subgroup = subgroup_generated(g, comms);
    std::vector<char> in_c(static_cast<std::size_t>(g.order()), 0);
    for (int c : ab.commutator_subgroup) in_c[static_cast<std::size_t>(c)] = 1;
    ab.quotient_order = g.order() / static_cast<int>(ab.commutator_subgroup.size());

    ab.coset.assign(static_cast<std::size_t>(g.order()), -1);
    int next = 0;
    for (int a = 0; a < g.order(); ++a) {
        if (ab.coset[static_cast<std::size_t>(a)] >= 0) continue;
        for (int c : ab.commutator_subgroup) ab.coset[static_cast<std::size_t>(g.mul(a, c))] = next;
        ++next;
    }
    auto quotient_order_of = [&](int a) {
        int k = 1, x = a;
        while (!in_c[static_cast<std::size_t>(x)]) {
            x = g.mul(x, a);
            ++k;
        }
        return k;
    };
    ab.is_cyclic = false;
    for (int a = 0; a < g.order(); ++a)
        if (quotient_order_of(a) == ab.quotient_order) {
            ab.is_cyclic = true;
            ab.generator = a;
            break;
        }
    if (ab.is_cyclic) {
        std::vector<int> residue_of_coset(static_cast<std::size_t>(ab.quotient_order), -1);
        int x = FiniteGroup::identity();
        for (int k = 0; k < ab.quotient_order; ++k) {
            residue_of_coset[static_cast<std::size_t>(ab.coset[static_cast<std::size_t>(x)])] = k;
            x = g.mul(x, ab.generator);
        }
        ab.pr.resize(static_cast<std::size_t>(g.order()));
        for (int a = 0; a < g.order(); ++a)
            ab.pr[static_cast<std::size_t>(a)] = residue_of_coset[static_cast<std::size_t>(ab.coset[static_cast<std::size_t>(a)])];
    }
    return ab;
}

/// Left-to-right product of the assigned images; -1 marks an unassigned generator.
inline int evaluate_word(const FiniteGroup& g, const std::vector<int>& assignment, const Word& w) {
    int x = FiniteGroup::identity();
    for (const Letter& l : w.letters()) {
        if (l.generator < 0 || static_cast<std::size_t>(l.generator) >= assignment.size() ||
            assignment[static_cast<std::size_t>(l.generator)] < 0)
            throw InvalidArgument("word uses unassigned generator " + std::to_string(l.generator));
        const int a = assignment[static_cast<std::size_t>(l.generator)];
        x = g.mul(x, l.exponent > 0 ? a : g.inv(a));
    }
    return x;
}

/// Finitely presented group used as an enumeration source.
struct GroupPresentation {
    int generator_count = 0;
    std::vector<Word> relators;

    void validate() const {
        if (generator_count <= 0) throw InvalidArgument("presentation has no generators");
        for (const Word& w : relators)
            for (const Letter& l : w.letters())
                if (l.generator < 0 || l.generator >= generator_count || (l.exponent != 1 && l.exponent != -1))
                    throw InvalidArgument("relator letter out of range");
    }
};

}  // namespace periph
