#pragma once

// Oriented link diagrams encoded as planar-diagram (PD) codes.
//
// A crossing X[a,b,c,d] lists its four edges counterclockwise starting at the
// incoming under-strand a; the under-strand runs a -> c.  Edges are numbered
// consecutively along each component in orientation order, so the direction
// of the over-strand is recoverable from the numbering.  Components without
// crossings cannot be written in PD form and use the token "U".

#include "periph/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace periph {

struct Crossing {
    int under_in = 0;
    int over_a = 0;
    int under_out = 0;
    int over_b = 0;
    /// +1 when the over-strand direction rotated a quarter turn counterclockwise
    /// equals the under-strand direction.
    int sign = 0;

    std::array<int, 4> slots() const { return {under_in, over_a, under_out, over_b}; }
    /// Slot index (1 or 3) of the incoming over edge.
    int over_in_slot() const { return sign > 0 ? 3 : 1; }
    int over_in() const { return sign > 0 ? over_b : over_a; }
    int over_out() const { return sign > 0 ? over_a : over_b; }

    friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// A component: a cyclic run of consecutive edge ids starting at its basepoint
/// edge, or a crossingless unknot (edge_count == 0).
struct Component {
    int first_edge = 0;
    int edge_count = 0;

    bool crossingless() const { return edge_count == 0; }
    int last_edge() const { return first_edge + edge_count - 1; }
};

/// Where an edge starts or ends: crossing index and slot (0..3).
struct EdgeEnd {
    int crossing = -1;
    int slot = -1;
};

/// A crossing with unresolved edge numbering, used while transforming diagrams.
struct OrientedCrossing {
    std::array<int, 4> slot{};
    int over_in = 1;  // slot index of the incoming over edge (1 or 3)
};

class LinkDiagram {
public:
    LinkDiagram() = default;

    /// Builds and validates a diagram from raw PD slots.  Edge ids must form
    /// one consecutive run per component; the smallest id of each run is its
    /// basepoint.  The result is renumbered canonically from 1.
    static LinkDiagram from_pd(const std::vector<std::array<int, 4>>& pd, int crossingless = 0);

    const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
    const std::vector<Component>& components() const noexcept { return components_; }
    int component_count() const noexcept { return static_cast<int>(components_.size()); }
    int crossing_count() const noexcept { return static_cast<int>(crossings_.size()); }
    int edge_count() const noexcept { return static_cast<int>(crossings_.size()) * 2; }
    int crossingless_count() const noexcept {
        return static_cast<int>(std::count_if(components_.begin(), components_.end(),
                                              [](const Component& c) { return c.crossingless(); }));
    }

    /// Component index owning edge id e (1-based edge ids).
    int component_of_edge(int e) const { return edge_component_.at(static_cast<std::size_t>(e)); }
    EdgeEnd head(int e) const { return head_.at(static_cast<std::size_t>(e)); }
    EdgeEnd tail(int e) const { return tail_.at(static_cast<std::size_t>(e)); }
    int successor(int e) const {
        const Component& c = components_.at(static_cast<std::size_t>(component_of_edge(e)));
        return e == c.last_edge() ? c.first_edge : e + 1;
    }
    int basepoint(int component) const;

    int under_component(int crossing) const {
        return component_of_edge(crossings_.at(static_cast<std::size_t>(crossing)).under_in);
    }
    int over_component(int crossing) const {
        return component_of_edge(crossings_.at(static_cast<std::size_t>(crossing)).over_a);
    }

    /// Crossings in canonical order as oriented crossings (for transformations).
    std::vector<OrientedCrossing> oriented() const;

    /// Faces of the diagram's 4-valent graph (crossingless components excluded).
    int face_count() const;
    /// Euler-characteristic check on every connected piece: faces == crossings + 2.
    bool is_planar() const;

    friend bool operator==(const LinkDiagram& a, const LinkDiagram& b) {
        return a.crossings_ == b.crossings_ && a.component_count() == b.component_count() &&
               a.crossingless_count() == b.crossingless_count();
    }

    void check_component(int i) const {
        if (i < 0 || i >= component_count())
            throw InvalidArgument("component index " + std::to_string(i) + " out of range");
    }

private:
    friend int linking_number(const LinkDiagram&, int, int);
    friend int self_writhe(const LinkDiagram&, int);

    std::vector<Crossing> crossings_;
    std::vector<Component> components_;
    std::vector<int> edge_component_;  // indexed by edge id; entry 0 unused
    std::vector<EdgeEnd> head_;
    std::vector<EdgeEnd> tail_;
};

namespace detail {

struct DisjointSets {
    std::map<int, int> parent;
    int find(int x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        if (it->second == x) return x;
        int r = find(it->second);
        parent[x] = r;
        return r;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

inline LinkDiagram LinkDiagram::from_pd(const std::vector<std::array<int, 4>>& pd, int crossingless) {
    if (crossingless < 0) throw InvalidArgument("negative crossingless component count");
    if (pd.empty() && crossingless == 0) throw ParseError("empty diagram");

    std::map<int, int> occurrences;
    for (const auto& x : pd)
        for (int e : x) {
            if (e <= 0) throw ParseError("edge ids must be positive, got " + std::to_string(e));
            ++occurrences[e];
        }
    for (const auto& [e, n] : occurrences)
        if (n != 2)
            throw ParseError("edge " + std::to_string(e) + " appears " + std::to_string(n) +
                             " times; every edge must appear exactly twice");

    detail::DisjointSets sets;
    for (const auto& x : pd) {
        sets.unite(x[0], x[2]);
        sets.unite(x[1], x[3]);
    }
    std::map<int, std::pair<int, int>> range;  // root -> (lo, hi)
    std::map<int, int> size;
    for (const auto& [e, n] : occurrences) {
        int r = sets.find(e);
        auto it = range.find(r);
        if (it == range.end())
            range[r] = {e, e};
        else
            it->second = {std::min(it->second.first, e), std::max(it->second.second, e)};
        ++size[r];
    }
    std::map<int, std::pair<int, int>> comp_of;  // edge -> range
    for (const auto& [r, lohi] : range) {
        if (lohi.second - lohi.first + 1 != size[r])
            throw ParseError("component walk does not close: edge ids " +
                             std::to_string(lohi.first) + ".." + std::to_string(lohi.second) +
                             " are not consecutive along one component");
    }
    auto lohi_of = [&](int e) { return range.at(sets.find(e)); };
    auto succ = [&](int e) {
        auto [lo, hi] = lohi_of(e);
        return e == hi ? lo : e + 1;
    };

    // Orientation of each over-strand: +1 means d -> b, -1 means b -> d, 0 unknown.
    const std::size_t n = pd.size();
    std::vector<int> dir(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& x = pd[k];
        if (succ(x[0]) != x[2])
            throw ParseError("component walk does not close: under-strand " +
                             std::to_string(x[0]) + " -> " + std::to_string(x[2]) +
                             " is not consecutive");
        const bool db = succ(x[3]) == x[1];
        const bool bd = succ(x[1]) == x[3];
        if (!db && !bd)
            throw ParseError("component walk does not close: over-strand edges " +
                             std::to_string(x[1]) + ", " + std::to_string(x[3]) +
                             " are not consecutive");
        if (db && !bd) dir[k] = 1;
        if (bd && !db) dir[k] = -1;
    }

    // Two-edge components leave both over directions consecutive.  Each edge
    // has exactly one head and one tail; propagate from the known slots.
    auto edge_role_known = [&](int e, std::size_t skip_k, int skip_slot, bool& is_head) {
        for (std::size_t k = 0; k < n; ++k)
            for (int s = 0; s < 4; ++s) {
                if (pd[k][static_cast<std::size_t>(s)] != e) continue;
                if (k == skip_k && s == skip_slot) continue;
                if (s == 0) { is_head = true; return true; }
                if (s == 2) { is_head = false; return true; }
                if (dir[k] != 0) {
                    // d -> b: b is outgoing (tail), d incoming (head).
                    const bool head = (dir[k] > 0) ? (s == 3) : (s == 1);
                    is_head = head;
                    return true;
                }
            }
        return false;
    };
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (dir[k] != 0) continue;
            const auto& x = pd[k];
            if (x[1] == x[3]) continue;
            bool other_is_head = false;
            if (edge_role_known(x[1], k, 1, other_is_head)) {
                // The other occurrence of b is a head, so here b is a tail: d -> b.
                dir[k] = other_is_head ? 1 : -1;
                progress = true;
            } else if (edge_role_known(x[3], k, 3, other_is_head)) {
                dir[k] = other_is_head ? -1 : 1;
                progress = true;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        if (dir[k] == 0)
            throw ParseError("ambiguous orientation at crossing " + std::to_string(k + 1) +
                             ": over-strand direction cannot be recovered");

    // Canonical renumbering: components by smallest edge id, then consecutively.
    std::vector<std::pair<int, int>> ranges;
    for (const auto& [r, lohi] : range) ranges.push_back(lohi);
    std::sort(ranges.begin(), ranges.end());
    std::map<int, int> renumber;
    LinkDiagram d;
    int next = 1;
    for (const auto& [lo, hi] : ranges) {
        d.components_.push_back({next, hi - lo + 1});
        for (int e = lo; e <= hi; ++e) renumber[e] = next++;
    }
    for (int i = 0; i < crossingless; ++i) d.components_.push_back({0, 0});

    for (std::size_t k = 0; k < n; ++k) {
        const auto& x = pd[k];
        Crossing c{renumber[x[0]], renumber[x[1]], renumber[x[2]], renumber[x[3]], dir[k]};
        d.crossings_.push_back(c);
    }
    std::sort(d.crossings_.begin(), d.crossings_.end(), [](const Crossing& a, const Crossing& b) {
        auto key = [](const Crossing& c) {
            auto s = c.slots();
            return std::make_pair(*std::min_element(s.begin(), s.end()), s);
        };
        return key(a) < key(b);
    });

    const std::size_t edges = static_cast<std::size_t>(next);
    d.edge_component_.assign(edges, -1);
    d.head_.assign(edges, {});
    d.tail_.assign(edges, {});
    for (std::size_t ci = 0; ci < d.components_.size(); ++ci) {
        const Component& c = d.components_[ci];
        for (int e = 0; e < c.edge_count; ++e)
            d.edge_component_[static_cast<std::size_t>(c.first_edge + e)] = static_cast<int>(ci);
    }
    for (std::size_t k = 0; k < d.crossings_.size(); ++k) {
        const Crossing& c = d.crossings_[k];
        const int ki = static_cast<int>(k);
        const int oin = c.over_in_slot();
        const int oout = 4 - oin;
        auto s = c.slots();
        auto set_end = [&](std::vector<EdgeEnd>& v, int slot) {
            EdgeEnd& end = v[static_cast<std::size_t>(s[static_cast<std::size_t>(slot)])];
            if (end.crossing >= 0)
                throw ParseError("edge " + std::to_string(s[static_cast<std::size_t>(slot)]) +
                                 " is entered or left twice; orientation is inconsistent");
            end = {ki, slot};
        };
        set_end(d.head_, 0);
        set_end(d.tail_, 2);
        set_end(d.head_, oin);
        set_end(d.tail_, oout);
    }
    return d;
}

inline int LinkDiagram::basepoint(int component) const {
    check_component(component);
    return components_[static_cast<std::size_t>(component)].first_edge;
}

inline std::vector<OrientedCrossing> LinkDiagram::oriented() const {
    std::vector<OrientedCrossing> out;
    out.reserve(crossings_.size());
    for (const Crossing& c : crossings_) out.push_back({c.slots(), c.over_in_slot()});
    return out;
}

inline int LinkDiagram::face_count() const {
    const int edges = edge_count();
    // Darts: 2*e for forward traversal of edge e, 2*e+1 for backward.
    std::vector<char> seen(static_cast<std::size_t>(2 * (edges + 1)), 0);
    int faces = 0;
    auto arrive = [&](int dart) {
        const int e = dart / 2;
        return (dart % 2 == 0) ? head_[static_cast<std::size_t>(e)] : tail_[static_cast<std::size_t>(e)];
    };
    for (int e = 1; e <= edges; ++e)
        for (int dirn = 0; dirn < 2; ++dirn) {
            int start = 2 * e + dirn;
            if (seen[static_cast<std::size_t>(start)]) continue;
            ++faces;
            int dart = start;
            while (!seen[static_cast<std::size_t>(dart)]) {
                seen[static_cast<std::size_t>(dart)] = 1;
                EdgeEnd at = arrive(dart);
                const int next_slot = (at.slot + 1) % 4;
                const int g = crossings_[static_cast<std::size_t>(at.crossing)]
                                  .slots()[static_cast<std::size_t>(next_slot)];
                const EdgeEnd t = tail_[static_cast<std::size_t>(g)];
                const bool leaves = t.crossing == at.crossing && t.slot == next_slot;
                dart = 2 * g + (leaves ? 0 : 1);
            }
        }
    return faces;
}

inline bool LinkDiagram::is_planar() const {
    if (crossings_.empty()) return true;
    // Split into connected pieces through shared edges.
    detail::DisjointSets sets;
    for (std::size_t k = 0; k < crossings_.size(); ++k)
        for (int e : crossings_[k].slots()) sets.unite(static_cast<int>(k), -e);
    std::map<int, int> piece_crossings;
    for (std::size_t k = 0; k < crossings_.size(); ++k) ++piece_crossings[sets.find(static_cast<int>(k))];
    const int pieces = static_cast<int>(piece_crossings.size());
    // Faces are counted per piece by the traversal, so the sum must be n + 2*pieces.
    return face_count() == crossing_count() + 2 * pieces;
}

// ---------------------------------------------------------------------------
// Text form

/// Parses whitespace separated tokens X[a,b,c,d] and U; '#' starts a comment.
inline LinkDiagram parse_pd(std::string_view text) {
    std::vector<std::array<int, 4>> pd;
    int unknots = 0;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size()) {
            if (text[i] == '#') {
                while (i < text.size() && text[i] != '\n') ++i;
            } else if (std::isspace(static_cast<unsigned char>(text[i]))) {
                ++i;
            } else {
                break;
            }
        }
    };
    auto fail = [&](const std::string& why) -> ParseError {
        return ParseError("malformed PD token at offset " + std::to_string(i) + ": " + why);
    };
    auto read_int = [&] {
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw fail("expected a positive integer");
        if (i - start > 9) throw fail("edge id too large");
        return std::stoi(std::string(text.substr(start, i - start)));
    };
    auto expect = [&](char ch) {
        skip_ws();
        if (i >= text.size() || text[i] != ch) throw fail(std::string("expected '") + ch + "'");
        ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] == 'U') {
            ++i;
            if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#')
                throw fail("unexpected character after U");
            ++unknots;
        } else if (text[i] == 'X') {
            ++i;
            expect('[');
            std::array<int, 4> x{};
            for (int k = 0; k < 4; ++k) {
                x[static_cast<std::size_t>(k)] = read_int();
                if (k < 3) expect(',');
            }
            expect(']');
            pd.push_back(x);
        } else {
            throw fail(std::string("unexpected character '") + text[i] + "'");
        }
        skip_ws();
    }
    return LinkDiagram::from_pd(pd, unknots);
}

/// Canonical text: crossings sorted by smallest edge id, then one U per
/// crossingless component, single spaces.
inline std::string serialize_pd(const LinkDiagram& d) {
    std::string s;
    for (const Crossing& c : d.crossings()) {
        if (!s.empty()) s += ' ';
        s += "X[" + std::to_string(c.under_in) + "," + std::to_string(c.over_a) + "," +
             std::to_string(c.under_out) + "," + std::to_string(c.over_b) + "]";
    }
    for (int k = 0; k < d.crossingless_count(); ++k) {
        if (!s.empty()) s += ' ';
        s += 'U';
    }
    return s;
}

// ---------------------------------------------------------------------------
// Invariants

/// Half the sum of the signs of crossings between components i and j.
inline int linking_number(const LinkDiagram& d, int i, int j) {
    d.check_component(i);
    d.check_component(j);
    if (i == j) throw InvalidArgument("linking number needs two distinct components");
    int sum = 0;
    for (int k = 0; k < d.crossing_count(); ++k) {
        const int u = d.under_component(k), o = d.over_component(k);
        if ((u == i && o == j) || (u == j && o == i))
            sum += d.crossings()[static_cast<std::size_t>(k)].sign;
    }
    if (sum % 2 != 0)
        throw InvalidArgument("odd crossing-sign sum between components; diagram is not planar");
    return sum / 2;
}

/// Sum of signs over crossings of component i with itself.
inline int self_writhe(const LinkDiagram& d, int i) {
    d.check_component(i);
    int sum = 0;
    for (int k = 0; k < d.crossing_count(); ++k)
        if (d.under_component(k) == i && d.over_component(k) == i)
            sum += d.crossings()[static_cast<std::size_t>(k)].sign;
    return sum;
}

namespace detail {

/// Renumbers oriented crossings by walking each component from its start edge
/// (given in desired component order) and revalidates through from_pd.
/// The optional edge_map receives old id -> new id.
inline LinkDiagram renumber_by_walk(const std::vector<OrientedCrossing>& xs,
                                    const std::vector<int>& starts, int crossingless,
                                    std::map<int, int>* edge_map = nullptr) {
    std::map<int, int> next;
    for (const OrientedCrossing& x : xs) {
        next[x.slot[0]] = x.slot[2];
        next[x.slot[static_cast<std::size_t>(x.over_in)]] = x.slot[static_cast<std::size_t>(4 - x.over_in)];
    }
    std::map<int, int> renumber;
    int id = 1;
    for (int s : starts) {
        int e = s;
        do {
            if (renumber.count(e)) throw InternalError("component walk revisits an edge");
            renumber[e] = id++;
            auto it = next.find(e);
            if (it == next.end()) throw InternalError("edge without successor during walk");
            e = it->second;
        } while (e != s);
    }
    if (renumber.size() != next.size())
        throw InternalError("component starts do not cover every edge");
    std::vector<std::array<int, 4>> pd;
    pd.reserve(xs.size());
    for (const OrientedCrossing& x : xs)
        pd.push_back({renumber[x.slot[0]], renumber[x.slot[1]], renumber[x.slot[2]], renumber[x.slot[3]]});
    if (edge_map) *edge_map = renumber;
    return LinkDiagram::from_pd(pd, crossingless);
}

inline std::vector<int> basepoints(const LinkDiagram& d) {
    std::vector<int> s;
    for (const Component& c : d.components())
        if (!c.crossingless()) s.push_back(c.first_edge);
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Operations

/// Reverses the listed components.  Crossing signs between a reversed and a
/// kept component flip; each basepoint edge stays the basepoint.  The optional
/// edge_map receives old id -> new id.
inline LinkDiagram reverse_components(const LinkDiagram& d, const std::vector<int>& which,
                                      std::map<int, int>* edge_map = nullptr) {
    std::vector<char> flip(static_cast<std::size_t>(d.component_count()), 0);
    for (int i : which) {
        d.check_component(i);
        flip[static_cast<std::size_t>(i)] = 1;
    }
    std::vector<OrientedCrossing> xs = d.oriented();
    for (std::size_t k = 0; k < xs.size(); ++k) {
        OrientedCrossing& x = xs[k];
        const int ki = static_cast<int>(k);
        if (flip[static_cast<std::size_t>(d.under_component(ki))]) {
            // New incoming under edge is the old outgoing one; keep counterclockwise order.
            x.slot = {x.slot[2], x.slot[3], x.slot[0], x.slot[1]};
            x.over_in = 4 - x.over_in;
        }
        if (flip[static_cast<std::size_t>(d.over_component(ki))]) x.over_in = 4 - x.over_in;
    }
    if (xs.empty()) return LinkDiagram::from_pd({}, d.crossingless_count());
    return detail::renumber_by_walk(xs, detail::basepoints(d), d.crossingless_count(), edge_map);
}

/// Reverses every component.  Crossing signs are unchanged; each basepoint
/// edge stays the basepoint.  The optional edge_map receives old id -> new id.
inline LinkDiagram reverse_orientations(const LinkDiagram& d, std::map<int, int>* edge_map = nullptr) {
    std::vector<int> all(static_cast<std::size_t>(d.component_count()));
    std::iota(all.begin(), all.end(), 0);
    return reverse_components(d, all, edge_map);
}

/// Mirror image in a vertical plane: the cyclic order at every crossing is
/// reversed, so edges and arcs are unchanged and every sign flips.
inline LinkDiagram reflect(const LinkDiagram& d) {
    std::vector<std::array<int, 4>> pd;
    for (const Crossing& c : d.crossings()) pd.push_back({c.under_in, c.over_b, c.under_out, c.over_a});
    return LinkDiagram::from_pd(pd, d.crossingless_count());
}

/// Mirror image: every crossing has its over- and under-strands exchanged.
inline LinkDiagram mirror(const LinkDiagram& d) {
    std::vector<OrientedCrossing> xs = d.oriented();
    for (OrientedCrossing& x : xs) {
        const auto s = x.slot;
        if (x.over_in == 1) {
            x.slot = {s[1], s[2], s[3], s[0]};
            x.over_in = 3;
        } else {
            x.slot = {s[3], s[0], s[1], s[2]};
            x.over_in = 1;
        }
    }
    if (xs.empty()) return LinkDiagram::from_pd({}, d.crossingless_count());
    return detail::renumber_by_walk(xs, detail::basepoints(d), d.crossingless_count());
}

/// Adds a split crossingless unknot as the last component.
inline LinkDiagram split_union_unknot(const LinkDiagram& d) {
    std::vector<std::array<int, 4>> pd;
    for (const Crossing& c : d.crossings()) pd.push_back(c.slots());
    return LinkDiagram::from_pd(pd, d.crossingless_count() + 1);
}

/// Disjoint union: the components of b follow those of a (crossingless ones last).
inline LinkDiagram split_union(const LinkDiagram& a, const LinkDiagram& b) {
    std::vector<std::array<int, 4>> pd;
    const int shift = a.edge_count();
    for (const Crossing& c : a.crossings()) pd.push_back(c.slots());
    for (const Crossing& c : b.crossings())
        pd.push_back({c.under_in + shift, c.over_a + shift, c.under_out + shift, c.over_b + shift});
    return LinkDiagram::from_pd(pd, a.crossingless_count() + b.crossingless_count());
}

/// Splice edges for one component of a multi-connected sum (0 for a
/// crossingless component).
struct Splice {
    int edge_k = 0;
    int edge_j = 0;
};

/// Simultaneous connected sums K_i # J_i.  For each component, edge_k of K_i
/// running P -> Q and edge_j of J_i running R -> S become P -> S and R -> Q.
/// The new R -> Q edge is the basepoint of the result, so the result's
/// longitude reads K_i's part followed by J_i's.  Default splice: basepoints.
/// The optional edge_map receives old id -> new id, with J's edges keyed by
/// their id plus k.edge_count().
inline LinkDiagram multi_connected_sum(const LinkDiagram& k, const LinkDiagram& j,
                                       std::optional<std::vector<Splice>> splice = std::nullopt,
                                       std::map<int, int>* edge_map = nullptr) {
    const int r = k.component_count();
    if (j.component_count() != r)
        throw InvalidArgument("multi-connected sum needs equal component counts (" +
                              std::to_string(r) + " vs " + std::to_string(j.component_count()) + ")");
    std::vector<Splice> sp;
    if (splice) {
        sp = *splice;
        if (static_cast<int>(sp.size()) != r)
            throw InvalidArgument("splice list must have one entry per component");
    } else {
        for (int i = 0; i < r; ++i) {
            const Component& ck = k.components()[static_cast<std::size_t>(i)];
            const Component& cj = j.components()[static_cast<std::size_t>(i)];
            sp.push_back({ck.crossingless() ? 0 : ck.first_edge, cj.crossingless() ? 0 : cj.first_edge});
        }
    }
    const int shift = k.edge_count();
    std::vector<OrientedCrossing> xs = k.oriented();
    const std::size_t k_count = xs.size();
    for (OrientedCrossing x : j.oriented()) {
        for (int& e : x.slot) e += shift;
        xs.push_back(x);
    }
    std::vector<int> starts;
    int crossingless = 0;
    for (int i = 0; i < r; ++i) {
        const Component& ck = k.components()[static_cast<std::size_t>(i)];
        const Component& cj = j.components()[static_cast<std::size_t>(i)];
        const Splice s = sp[static_cast<std::size_t>(i)];
        auto check_edge = [&](const LinkDiagram& d, const Component& c, int e, const char* which) {
            if (c.crossingless()) {
                if (e != 0)
                    throw InvalidArgument(std::string("splice edge given for crossingless component of ") + which);
                return;
            }
            if (e < c.first_edge || e > c.last_edge())
                throw InvalidArgument(std::string("splice edge ") + std::to_string(e) + " is not on component " +
                                      std::to_string(i) + " of " + which);
            (void)d;
        };
        check_edge(k, ck, s.edge_k, "K");
        check_edge(j, cj, s.edge_j, "J");
        if (ck.crossingless() && cj.crossingless()) {
            ++crossingless;
            continue;
        }
        if (ck.crossingless()) {
            starts.push_back(s.edge_j + shift);
            continue;
        }
        if (cj.crossingless()) {
            starts.push_back(s.edge_k);
            continue;
        }
        // Redirect the heads: Q receives J's edge, S receives K's edge.
        const EdgeEnd q = k.head(s.edge_k);
        const EdgeEnd sj = j.head(s.edge_j);
        OrientedCrossing& xq = xs[static_cast<std::size_t>(q.crossing)];
        OrientedCrossing& xsj = xs[k_count + static_cast<std::size_t>(sj.crossing)];
        xq.slot[static_cast<std::size_t>(q.slot)] = s.edge_j + shift;
        xsj.slot[static_cast<std::size_t>(sj.slot)] = s.edge_k;
        starts.push_back(s.edge_j + shift);
    }
    if (xs.empty()) return LinkDiagram::from_pd({}, crossingless);
    return detail::renumber_by_walk(xs, starts, crossingless, edge_map);
}

}  // namespace periph
