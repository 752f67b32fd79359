#pragma once

// Homomorphisms from finitely presented groups into finite groups by
// backtracking with relator propagation, and peripheral systems of link
// diagrams under such homomorphisms.

#include "periph/diagram.hpp"
#include "periph/error.hpp"
#include "periph/group.hpp"
#include "periph/wirtinger.hpp"
#include "periph/word.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

namespace periph {

struct Homomorphism {
    /// Image of each generator.
    std::vector<int> assignment;
    const FiniteGroup* target = nullptr;
    bool surjective = false;

    friend bool operator==(const Homomorphism& a, const Homomorphism& b) { return a.assignment == b.assignment; }
};

inline constexpr std::size_t kDefaultEnumLimit = 1000000;

struct EnumOptions {
    bool surjective_only = false;
    /// Allowed images per generator; an absent entry allows every element.
    std::vector<std::optional<std::vector<int>>> allowed;
    /// Maximum number of search nodes explored.
    std::size_t limit = kDefaultEnumLimit;
    int threads = 1;
};

struct EnumResult {
    std::vector<Homomorphism> homs;
    /// False when the node limit stopped the search; homs is then partial.
    bool complete = true;
    std::size_t nodes = 0;
};

inline GroupPresentation as_group_presentation(const WirtingerPresentation& p) {
    return {p.generator_count, p.relations};
}

inline bool generates(const FiniteGroup& g, const std::vector<int>& elems) {
    return static_cast<int>(subgroup_generated(g, elems).size()) == g.order();
}

/// True iff the conjugates of mu generate G.
inline bool is_meridional(const FiniteGroup& g, const std::vector<int>& mu) {
    if (mu.empty()) throw InvalidArgument("meridian tuple is empty");
    return static_cast<int>(normal_closure(g, mu).size()) == g.order();
}

namespace detail {

class HomSearch {
public:
    HomSearch(const GroupPresentation& p, const FiniteGroup& g, const EnumOptions& o, std::atomic<std::size_t>& nodes)
        : p_(p), g_(g), o_(o), nodes_(nodes) {
        const std::size_t n = static_cast<std::size_t>(p.generator_count);
        allowed_mask_.assign(n, std::vector<char>(static_cast<std::size_t>(g.order()), 1));
        for (std::size_t x = 0; x < n && x < o.allowed.size(); ++x)
            if (o.allowed[x]) {
                std::fill(allowed_mask_[x].begin(), allowed_mask_[x].end(), 0);
                for (int a : *o.allowed[x]) {
                    g.check_element(a);
                    allowed_mask_[x][static_cast<std::size_t>(a)] = 1;
                }
            }
    }

    /// Assigns forced generators; false on contradiction.
    bool propagate(std::vector<int>& a) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Word& w : p_.relators) {
                int unknown = -1, count = 0;
                for (const Letter& l : w.letters())
                    if (a[static_cast<std::size_t>(l.generator)] < 0) {
                        if (unknown != l.generator) {
                            if (unknown >= 0) {
                                count = 2;
                                break;
                            }
                            unknown = l.generator;
                        }
                        ++count;
                    }
                if (unknown < 0) {
                    if (evaluate_word(g_, a, w) != FiniteGroup::identity()) return false;
                    continue;
                }
                if (count != 1) continue;
                // w = A x^e B = 1  =>  x^e = A^-1 B^-1
                int before = FiniteGroup::identity(), after = FiniteGroup::identity(), e = 0;
                bool seen = false;
                for (const Letter& l : w.letters()) {
                    if (l.generator == unknown) {
                        seen = true;
                        e = l.exponent;
                        continue;
                    }
                    const int v = a[static_cast<std::size_t>(l.generator)];
                    const int f = l.exponent > 0 ? v : g_.inv(v);
                    if (seen) after = g_.mul(after, f);
                    else before = g_.mul(before, f);
                }
                int x = g_.mul(g_.inv(before), g_.inv(after));
                if (e < 0) x = g_.inv(x);
                if (!allowed_mask_[static_cast<std::size_t>(unknown)][static_cast<std::size_t>(x)]) return false;
                a[static_cast<std::size_t>(unknown)] = x;
                changed = true;
            }
        }
        return true;
    }

    /// The unassigned generator that completes the most relators with one
    /// other unknown; ties go to the lowest index.
    int branch_variable(const std::vector<int>& a) const {
        std::vector<int> score(a.size(), 0);
        bool any = false;
        for (const Word& w : p_.relators) {
            int first = -1, second = -1;
            bool more = false;
            for (const Letter& l : w.letters()) {
                const int x = l.generator;
                if (a[static_cast<std::size_t>(x)] >= 0 || x == first || x == second) continue;
                if (first < 0) first = x;
                else if (second < 0) second = x;
                else more = true;
            }
            if (second >= 0 && !more) {
                ++score[static_cast<std::size_t>(first)];
                ++score[static_cast<std::size_t>(second)];
            }
        }
        int best = -1;
        for (std::size_t x = 0; x < a.size(); ++x)
            if (a[x] < 0 && (!any || score[x] > score[static_cast<std::size_t>(best)])) {
                best = static_cast<int>(x);
                any = true;
            }
        return best;
    }

    std::vector<int> candidates(int x) const {
        std::vector<int> c;
        for (int v = 0; v < g_.order(); ++v)
            if (allowed_mask_[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)]) c.push_back(v);
        return c;
    }

    /// Depth-first search below a propagated partial assignment.
    void run(std::vector<int> a, std::vector<Homomorphism>& out, bool& stopped) const {
        if (stopped) return;
        const int x = branch_variable(a);
        if (x < 0) {
            Homomorphism h{a, &g_, generates(g_, a)};
            if (!o_.surjective_only || h.surjective) out.push_back(std::move(h));
            return;
        }
        for (int v : candidates(x)) {
            if (nodes_.fetch_add(1) >= o_.limit) {
                stopped = true;
                return;
            }
            std::vector<int> b = a;
            b[static_cast<std::size_t>(x)] = v;
            if (propagate(b)) run(std::move(b), out, stopped);
            if (stopped) return;
        }
    }

private:
    const GroupPresentation& p_;
    const FiniteGroup& g_;
    const EnumOptions& o_;
    std::atomic<std::size_t>& nodes_;
    std::vector<std::vector<char>> allowed_mask_;
};

}  // namespace detail

/// All assignments satisfying every relator and the per-generator
/// constraints, sorted lexicographically.  The first branching variable is
/// split across threads; the merged output does not depend on thread count.
inline EnumResult enumerate_homs(const GroupPresentation& p, const FiniteGroup& g, const EnumOptions& o = {}) {
    p.validate();
    std::atomic<std::size_t> nodes{0};
    detail::HomSearch search(p, g, o, nodes);
    EnumResult res;
    std::vector<int> root(static_cast<std::size_t>(p.generator_count), -1);
    bool stopped = false;
    if (search.propagate(root)) {
        const int x = search.branch_variable(root);
        const int threads = std::max(1, o.threads);
        if (x < 0 || threads == 1) {
            search.run(root, res.homs, stopped);
        } else {
            const std::vector<int> values = search.candidates(x);
            std::vector<std::vector<Homomorphism>> parts(static_cast<std::size_t>(threads));
            std::vector<char> part_stopped(static_cast<std::size_t>(threads), 0);
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t)
                pool.emplace_back([&, t] {
                    bool s = false;
                    for (std::size_t k = static_cast<std::size_t>(t); k < values.size(); k += static_cast<std::size_t>(threads)) {
                        if (nodes.fetch_add(1) >= o.limit) {
                            s = true;
                            break;
                        }
                        std::vector<int> b = root;
                        b[static_cast<std::size_t>(x)] = values[k];
                        if (search.propagate(b)) search.run(std::move(b), parts[static_cast<std::size_t>(t)], s);
                        if (s) break;
                    }
                    part_stopped[static_cast<std::size_t>(t)] = s;
                });
            for (auto& th : pool) th.join();
            for (int t = 0; t < threads; ++t) {
                auto& part = parts[static_cast<std::size_t>(t)];
                res.homs.insert(res.homs.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
                stopped = stopped || part_stopped[static_cast<std::size_t>(t)];
            }
        }
    }
    std::sort(res.homs.begin(), res.homs.end(),
              [](const Homomorphism& a, const Homomorphism& b) { return a.assignment < b.assignment; });
    res.complete = !stopped;
    res.nodes = std::min(nodes.load(), o.limit);
    return res;
}

inline EnumResult enumerate_homs(const WirtingerPresentation& p, const FiniteGroup& g, const EnumOptions& o = {}) {
    return enumerate_homs(as_group_presentation(p), g, o);
}

/// Per-generator constraints from per-component meridian constraints: the
/// meridian generator gets the given set, every other arc of the component
/// the union of its conjugacy classes (all arcs of a component are conjugate).
inline std::vector<std::optional<std::vector<int>>> meridian_constraints(
    const WirtingerPresentation& p, const FiniteGroup& g, const std::vector<std::optional<std::vector<int>>>& per_component) {
    if (per_component.size() > static_cast<std::size_t>(p.component_count()))
        throw InvalidArgument("more meridian constraints than components");
    std::vector<std::optional<std::vector<int>>> out(static_cast<std::size_t>(p.generator_count));
    for (std::size_t c = 0; c < per_component.size(); ++c) {
        if (!per_component[c]) continue;
        std::vector<int> cls;
        for (int a : *per_component[c]) {
            g.check_element(a);
            for (int b : conjugacy_class(g, a)) cls.push_back(b);
        }
        std::sort(cls.begin(), cls.end());
        cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
        for (int x = 0; x < p.generator_count; ++x)
            if (p.component_of[static_cast<std::size_t>(x)] == static_cast<int>(c)) out[static_cast<std::size_t>(x)] = cls;
        std::vector<int> own = *per_component[c];
        std::sort(own.begin(), own.end());
        out[static_cast<std::size_t>(p.meridian_generator[c])] = own;
    }
    return out;
}

/// Keeps one representative (the lexicographically smallest assignment) of
/// each orbit under simultaneous conjugation.
inline std::vector<Homomorphism> conjugation_orbit_representatives(const FiniteGroup& g, const std::vector<Homomorphism>& homs) {
    std::vector<Homomorphism> out;
    for (const Homomorphism& h : homs) {
        bool smallest = true;
        for (int x = 1; x < g.order() && smallest; ++x) {
            std::vector<int> c(h.assignment.size());
            for (std::size_t k = 0; k < c.size(); ++k) c[k] = g.conj(x, h.assignment[k]);
            if (c < h.assignment) smallest = false;
        }
        if (smallest) out.push_back(h);
    }
    return out;
}

/// Images of meridians and longitudes under a homomorphism of a link group.
struct PeripheralSystem {
    std::vector<int> mu;
    /// Preferred-system longitudes.
    std::vector<int> lambda;
    /// Per-component preferred longitudes.
    std::vector<int> lambda_bar;
};

inline PeripheralSystem peripheral_system(const LinkDiagram& d, const WirtingerPresentation& p, const FiniteGroup& g,
                                          const Homomorphism& h) {
    if (static_cast<int>(h.assignment.size()) != p.generator_count)
        throw InvalidArgument("homomorphism does not match the presentation");
    PeripheralSystem s;
    const auto system = preferred_system(d, p);
    for (int i = 0; i < d.component_count(); ++i) {
        s.mu.push_back(h.assignment[static_cast<std::size_t>(p.meridian_generator[static_cast<std::size_t>(i)])]);
        s.lambda.push_back(evaluate_word(g, h.assignment, system[static_cast<std::size_t>(i)]));
        s.lambda_bar.push_back(evaluate_word(g, h.assignment, preferred_longitude(d, p, i)));
    }
    return s;
}

inline PeripheralSystem peripheral_system(const LinkDiagram& d, const FiniteGroup& g, const Homomorphism& h) {
    return peripheral_system(d, presentation(d), g, h);
}

/// True iff every relator maps to the identity.
inline bool satisfies(const GroupPresentation& p, const FiniteGroup& g, const std::vector<int>& assignment) {
    for (const Word& w : p.relators)
        if (evaluate_word(g, assignment, w) != FiniteGroup::identity()) return false;
    return true;
}

}  // namespace periph
