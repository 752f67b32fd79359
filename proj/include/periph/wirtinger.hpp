#pragma once

// Wirtinger presentations and longitude words of link diagrams.
//
// Generators are arcs (maximal over-strand runs).  At a crossing of sign e
// with over-arc o, incoming under-arc u and outgoing under-arc v the relation
// is v = o^-e u o^e.  With this orientation of the relation the longitude word,
// read in walking order as the over-arcs passed beneath, commutes with the
// meridian generator of its own basepoint arc.

#include "periph/diagram.hpp"
#include "periph/smith.hpp"
#include "periph/word.hpp"

#include <cstddef>
#include <vector>

namespace periph {

struct WirtingerPresentation {
    int generator_count = 0;
    /// One relator per crossing, in the diagram's canonical crossing order.
    std::vector<Word> relations;
    /// Generator index of the arc containing each component's basepoint edge.
    std::vector<int> meridian_generator;
    /// Component of every generator.
    std::vector<int> component_of;
    /// Generator of every edge (index 0 unused).
    std::vector<int> arc_of_edge;

    int component_count() const { return static_cast<int>(meridian_generator.size()); }

    /// Exponent sums of a word regrouped by component: the word's class in
    /// H1 of the link complement in the meridian basis.
    std::vector<long long> abelianize(const Word& w) const {
        std::vector<long long> v(meridian_generator.size(), 0);
        for (const Letter& l : w.letters())
            v[static_cast<std::size_t>(component_of.at(static_cast<std::size_t>(l.generator)))] += l.exponent;
        return v;
    }
};

inline WirtingerPresentation presentation(const LinkDiagram& d) {
    WirtingerPresentation p;
    p.arc_of_edge.assign(static_cast<std::size_t>(d.edge_count() + 1), -1);
    for (int ci = 0; ci < d.component_count(); ++ci) {
        const Component& c = d.components()[static_cast<std::size_t>(ci)];
        if (c.crossingless()) {
            p.meridian_generator.push_back(p.generator_count);
            p.component_of.push_back(ci);
            ++p.generator_count;
            continue;
        }
        // Edges that leave an under-crossing start a new arc.
        auto starts_arc = [&](int e) { return d.tail(e).slot == 2; };
        const int first_arc = p.generator_count;
        p.component_of.push_back(ci);
        ++p.generator_count;
        int current = first_arc;
        int last_arc_start = -1;
        for (int k = 0; k < c.edge_count; ++k) {
            const int e = c.first_edge + k;
            if (k > 0 && starts_arc(e)) {
                current = p.generator_count++;
                p.component_of.push_back(ci);
                last_arc_start = e;
            }
            p.arc_of_edge[static_cast<std::size_t>(e)] = current;
        }
        // The run after the last under-pass wraps into the basepoint's arc
        // unless the basepoint edge itself starts an arc.
        if (last_arc_start >= 0 && !starts_arc(c.first_edge)) {
            const int wrapped = p.arc_of_edge[static_cast<std::size_t>(last_arc_start)];
            for (int e = last_arc_start; e <= c.last_edge(); ++e) p.arc_of_edge[static_cast<std::size_t>(e)] = first_arc;
            // Close the gap in generator numbering: the wrapped arc was the last one created.
            if (wrapped != p.generator_count - 1) throw InternalError("arc numbering out of order");
            --p.generator_count;
            p.component_of.pop_back();
        }
        p.meridian_generator.push_back(first_arc);
    }
    for (const Crossing& x : d.crossings()) {
        const int o = p.arc_of_edge[static_cast<std::size_t>(x.over_a)];
        const int u = p.arc_of_edge[static_cast<std::size_t>(x.under_in)];
        const int v = p.arc_of_edge[static_cast<std::size_t>(x.under_out)];
        const int e = x.sign;
        // o^-e u o^e v^-1
        p.relations.push_back(Word({{o, -e}, {u, 1}, {o, e}, {v, -1}}));
    }
    return p;
}

/// Longitude read from the basepoint edge: one letter (over-arc, sign) per
/// under-pass in walking order.
inline Word longitude_raw(const LinkDiagram& d, const WirtingerPresentation& p, int i) {
    if (i < 0 || i >= d.component_count()) throw InvalidArgument("component index out of range");
    Word w;
    const Component& c = d.components()[static_cast<std::size_t>(i)];
    for (int k = 0; k < c.edge_count; ++k) {
        const int e = c.first_edge + k;
        const EdgeEnd h = d.head(e);
        if (h.slot != 0) continue;
        const Crossing& x = d.crossings()[static_cast<std::size_t>(h.crossing)];
        w.push_back({p.arc_of_edge[static_cast<std::size_t>(x.over_a)], x.sign});
    }
    return w;
}

inline Word longitude_raw(const LinkDiagram& d, int i) { return longitude_raw(d, presentation(d), i); }

/// m_i^-w times the raw longitude, w the self-writhe: null-homologous in the
/// complement of component i.
inline Word preferred_longitude(const LinkDiagram& d, const WirtingerPresentation& p, int i) {
    const Word raw = longitude_raw(d, p, i);
    Word w;
    w.append_power(p.meridian_generator[static_cast<std::size_t>(i)], -self_writhe(d, i));
    return w * raw;
}

inline Word preferred_longitude(const LinkDiagram& d, int i) { return preferred_longitude(d, presentation(d), i); }

/// l_i = m_i^a preferred_longitude_i with a = -sum_{j != i} lk(i, j); the
/// system of these words bounds a single surface in the link exterior.
inline std::vector<Word> preferred_system(const LinkDiagram& d, const WirtingerPresentation& p) {
    std::vector<Word> out;
    const int r = d.component_count();
    for (int i = 0; i < r; ++i) {
        int alpha = 0;
        for (int j = 0; j < r; ++j)
            if (j != i) alpha -= linking_number(d, i, j);
        Word w;
        w.append_power(p.meridian_generator[static_cast<std::size_t>(i)], alpha);
        out.push_back(w * preferred_longitude(d, p, i));
    }
    return out;
}

inline std::vector<Word> preferred_system(const LinkDiagram& d) { return preferred_system(d, presentation(d)); }

/// Linking matrix with diagonal -sum of the row: the H1 coefficients that a
/// preferred longitude system must have.
inline std::vector<std::vector<long long>> preferred_coefficients(const LinkDiagram& d) {
    const int r = d.component_count();
    std::vector<std::vector<long long>> a(static_cast<std::size_t>(r), std::vector<long long>(static_cast<std::size_t>(r), 0));
    for (int i = 0; i < r; ++i) {
        long long sum = 0;
        for (int j = 0; j < r; ++j)
            if (j != i) {
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = linking_number(d, i, j);
                sum += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = -sum;
    }
    return a;
}

/// Invariant factors and free rank of the abelianized presentation.
struct AbelianInvariants {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;
};

inline AbelianInvariants abelian_invariants(int generator_count, const std::vector<Word>& relations) {
    Matrix m(relations.size(), static_cast<std::size_t>(generator_count));
    for (std::size_t i = 0; i < relations.size(); ++i)
        for (const Letter& l : relations[i].letters()) m(i, static_cast<std::size_t>(l.generator)) += l.exponent;
    SmithForm f = smith_normal_form(m);
    return {static_cast<std::size_t>(generator_count) - f.rank, f.invariant_factors()};
}

inline AbelianInvariants abelian_invariants(const WirtingerPresentation& p) {
    return abelian_invariants(p.generator_count, p.relations);
}

}  // namespace periph
