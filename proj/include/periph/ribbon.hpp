#pragma once

// Ribbon links from meridional systems.  An unlink of rectangles labelled by
// conjugates of the meridians is joined into r components by bands; each
// band threads through the spanning disks named by its conjugator word.

#include "periph/diagram.hpp"
#include "periph/error.hpp"
#include "periph/group.hpp"
#include "periph/homenum.hpp"
#include "periph/polyline.hpp"
#include "periph/wirtinger.hpp"
#include "periph/word.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace periph {

/// Conjugates mu_{ij} = W_{ij} mu_i W_{ij}^-1 of the meridians.  Words use the
/// flattened index of (i, j), counting rows in order, as generator ids.
struct RibbonInput {
    /// elements[i][j] = mu_{ij}; elements[i][0] = mu_i.
    std::vector<std::vector<int>> elements;
    /// words[i][j] = W_{ij}; words[i][0] is empty.
    std::vector<std::vector<Word>> words;

    int component_count() const { return static_cast<int>(elements.size()); }

    int total() const {
        int t = 0;
        for (const auto& row : elements) t += static_cast<int>(row.size());
        return t;
    }

    int flat(int i, int j) const {
        int t = 0;
        for (int k = 0; k < i; ++k) t += static_cast<int>(elements[static_cast<std::size_t>(k)].size());
        return t + j;
    }

    std::vector<int> flattened() const {
        std::vector<int> out;
        for (const auto& row : elements) out.insert(out.end(), row.begin(), row.end());
        return out;
    }

    std::vector<int> mu() const {
        std::vector<int> out;
        for (const auto& row : elements) out.push_back(row.at(0));
        return out;
    }

    void validate(const FiniteGroup& g) const {
        if (elements.empty()) throw InvalidArgument("ribbon input has no components");
        if (words.size() != elements.size()) throw InvalidArgument("ribbon input needs one word list per component");
        const std::vector<int> flat_elems = flattened();
        for (int x : flat_elems) g.check_element(x);
        for (std::size_t i = 0; i < elements.size(); ++i) {
            const auto& row = elements[i];
            if (row.empty()) throw InvalidArgument("component " + std::to_string(i) + " has no elements");
            if (words[i].size() != row.size())
                throw InvalidArgument("component " + std::to_string(i) + " needs one word per element");
            if (!words[i][0].empty()) throw InvalidArgument("the first word of component " + std::to_string(i) + " must be empty");
            for (std::size_t j = 1; j < row.size(); ++j) {
                for (const Letter& l : words[i][j].letters())
                    if (l.generator < 0 || l.generator >= static_cast<int>(flat_elems.size()))
                        throw InvalidArgument("word letter " + std::to_string(l.generator) + " names no element");
                const int w = evaluate_word(g, flat_elems, words[i][j]);
                if (g.conj(w, row[0]) != row[j])
                    throw InvalidArgument("W conjugates mu_" + std::to_string(i) + " to " + g.label(g.conj(w, row[0])) +
                                          ", not to " + g.label(row[j]) + " at index " + std::to_string(j));
            }
        }
        if (!generates(g, flat_elems)) throw InvalidArgument("ribbon elements do not generate the group");
    }
};

struct RibbonLink {
    LinkDiagram diagram;
    /// Labelling of the arcs; surjective with the meridians sent to mu.
    Homomorphism hom;
    /// Diagram component of each input component.
    std::vector<int> component_index;
    int band_count = 0;
    std::vector<Polyline> polylines;
};

namespace detail {

struct BandPlan {
    int from = 0, to = 0;
    /// (rectangle, crossing sign) per threaded disk, in travel order.
    std::vector<std::pair<int, int>> passes;
    double base = 0;
};

inline constexpr double kRectWidth = 4;
inline constexpr double kRectPitch = 10;
inline constexpr double kLaneGap = 4;

inline double left_side(int q) { return kRectPitch * q; }
inline double right_side(int q) { return kRectPitch * q + kRectWidth; }

/// One band boundary strand, offset to the right (side = +1) or left (side =
/// -1) of the core path.
inline Polyline band_strand(const std::vector<std::pair<double, double>>& core, const std::vector<double>& under_x,
                            const std::vector<double>& sides, int side) {
    const std::size_t m = core.size() - 1;
    std::vector<std::pair<double, double>> normal(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double dx = core[k + 1].first - core[k].first, dy = core[k + 1].second - core[k].second;
        const double len = std::abs(dx) + std::abs(dy);
        normal[k] = {dy / len, -dx / len};
    }
    auto offset = [&](std::size_t k) {
        double nx = 0, ny = 0;
        if (k > 0) {
            nx += normal[k - 1].first;
            ny += normal[k - 1].second;
        }
        if (k < m) {
            nx += normal[k].first;
            ny += normal[k].second;
        }
        return std::pair<double, double>{core[k].first + side * nx, core[k].second + side * ny};
    };
    Polyline out;
    for (std::size_t k = 0; k < m; ++k) {
        const auto [px, py] = offset(k);
        out.push_back({px, py, k == 0 ? 0.0 : 1.0});
        if (core[k].second != core[k + 1].second) continue;
        const double x0 = core[k].first, x1 = core[k + 1].first;
        const double dir = x1 > x0 ? 1 : -1;
        std::vector<double> crossed;
        for (double s : sides)
            if (s > std::min(x0, x1) && s < std::max(x0, x1)) crossed.push_back(s);
        std::sort(crossed.begin(), crossed.end());
        if (dir < 0) std::reverse(crossed.begin(), crossed.end());
        for (double s : crossed) {
            const double z = s == under_x[k] ? -1.0 : 1.0;
            out.push_back({s - 0.5 * dir, py, z});
            out.push_back({s + 0.5 * dir, py, z});
        }
    }
    const auto [ex, ey] = offset(m);
    out.push_back({ex, ey, 0.0});
    return out;
}

/// Position of a point on an axis-parallel segment of a polyline.
inline PolylinePosition locate(const Polyline& line, int component, double x, double y) {
    for (std::size_t k = 0; k < line.size(); ++k) {
        const Point3& a = line[k];
        const Point3& b = line[(k + 1) % line.size()];
        if (a.x == b.x && a.x == x && y >= std::min(a.y, b.y) && y <= std::max(a.y, b.y) && a.y != b.y) {
            const double t = (y - a.y) / (b.y - a.y);
            if (t < 1) return {component, static_cast<int>(k), t};
        }
    }
    throw InternalError("point is not on the polyline");
}

}  // namespace detail

/// Builds the labelled ribbon link.  Throws InvalidArgument on invalid input
/// and InternalError if the construction fails its own checks.
inline RibbonLink construct_ribbon(const FiniteGroup& g, const RibbonInput& in) {
    in.validate(g);
    using namespace detail;
    const int r = in.component_count();
    const int total = in.total();
    const double xmax = kRectPitch * total, xmin = -6;

    std::vector<BandPlan> bands;
    double y = 10;
    for (int i = 0; i < r; ++i)
        for (std::size_t j = 1; j < in.elements[static_cast<std::size_t>(i)].size(); ++j) {
            BandPlan b;
            b.from = in.flat(i, 0);
            b.to = in.flat(i, static_cast<int>(j));
            const auto& letters = in.words[static_cast<std::size_t>(i)][j].letters();
            for (auto it = letters.rbegin(); it != letters.rend(); ++it)
                for (int k = 0; k < std::abs(it->exponent); ++k) b.passes.push_back({it->generator, it->exponent > 0 ? -1 : 1});
            b.base = y;
            y += kLaneGap * static_cast<double>(b.passes.size() + 1) + 10;
            bands.push_back(std::move(b));
        }
    const double ytop = y + 10;

    std::vector<double> sides;
    for (int q = 0; q < total; ++q) {
        sides.push_back(left_side(q));
        sides.push_back(right_side(q));
    }

    struct Strands {
        Polyline out, back;
        bool from_left = false;
    };
    std::vector<Strands> strands;
    for (const BandPlan& b : bands) {
        std::vector<std::pair<double, double>> core;
        std::vector<double> under_x;
        const std::size_t lanes = b.passes.size() + 2;
        double x = right_side(b.from);
        core.push_back({x, b.base});
        for (std::size_t s = 0; s + 1 < lanes; ++s) {
            const double lane = b.base + kLaneGap * static_cast<double>(s);
            const bool rightward = s % 2 == 0;
            const double target = rightward ? xmax : xmin;
            double under = -1e9;
            if (s > 0) {
                const auto [q, eps] = b.passes[s - 1];
                under = (rightward == (eps > 0)) ? left_side(q) : right_side(q);
            }
            core.push_back({target, lane});
            under_x.push_back(under);
            core.push_back({target, lane + kLaneGap});
            under_x.push_back(-1e9);
            x = target;
        }
        const bool from_left = x == xmin;
        core.push_back({from_left ? left_side(b.to) : right_side(b.to), core.back().second});
        under_x.push_back(-1e9);
        Strands st;
        st.out = band_strand(core, under_x, sides, 1);
        st.back = band_strand(core, under_x, sides, -1);
        std::reverse(st.back.begin(), st.back.end());
        st.from_left = from_left;
        strands.push_back(std::move(st));
    }

    std::vector<Polyline> lines(static_cast<std::size_t>(r));
    std::vector<int> row_of(static_cast<std::size_t>(total));
    for (int i = 0; i < r; ++i)
        for (std::size_t j = 0; j < in.elements[static_cast<std::size_t>(i)].size(); ++j) row_of[static_cast<std::size_t>(in.flat(i, static_cast<int>(j)))] = i;
    std::size_t band = 0;
    for (int i = 0; i < r; ++i) {
        Polyline& p = lines[static_cast<std::size_t>(i)];
        const int a = in.flat(i, 0);
        p.push_back({left_side(a), ytop - 5, 0});
        p.push_back({left_side(a), 0, 0});
        p.push_back({right_side(a), 0, 0});
        for (std::size_t j = 1; j < in.elements[static_cast<std::size_t>(i)].size(); ++j, ++band) {
            const Strands& st = strands[band];
            const int b = bands[band].to;
            p.insert(p.end(), st.out.begin(), st.out.end());
            auto mark = [&] { p.push_back({left_side(b), ytop - 5, 0}); };
            if (st.from_left) {
                p.push_back({left_side(b), 0, 0});
                p.push_back({right_side(b), 0, 0});
                p.push_back({right_side(b), ytop, 0});
                p.push_back({left_side(b), ytop, 0});
                mark();
            } else {
                p.push_back({right_side(b), ytop, 0});
                p.push_back({left_side(b), ytop, 0});
                mark();
                p.push_back({left_side(b), 0, 0});
                p.push_back({right_side(b), 0, 0});
            }
            p.insert(p.end(), st.back.begin(), st.back.end());
        }
        p.push_back({right_side(a), ytop, 0});
        p.push_back({left_side(a), ytop, 0});
    }

    PolylineDiagram pdg = diagram_from_polylines(lines);
    RibbonLink out;
    out.diagram = pdg.diagram;
    out.component_index = pdg.component_index;
    out.band_count = static_cast<int>(bands.size());
    out.polylines = lines;
    const LinkDiagram& d = out.diagram;
    const WirtingerPresentation pres = presentation(d);

    // Away from the band crossings every rectangle carries its own element.
    std::vector<double> heights{5, ytop - 5};
    for (const BandPlan& b : bands)
        for (std::size_t s = 0; s < b.passes.size() + 2; ++s) heights.push_back(b.base + kLaneGap * static_cast<double>(s) + 2);
    std::vector<int> labels(static_cast<std::size_t>(pres.generator_count), -1);
    const std::vector<int> flat_elems = in.flattened();
    for (int q = 0; q < total; ++q) {
        const int i = row_of[static_cast<std::size_t>(q)];
        const int comp = pdg.component_index[static_cast<std::size_t>(i)];
        const bool free = d.components()[static_cast<std::size_t>(comp)].crossingless();
        const int label = flat_elems[static_cast<std::size_t>(q)];
        for (double sx : {left_side(q), right_side(q)})
            for (double hy : heights) {
                const int arc = free ? pres.meridian_generator[static_cast<std::size_t>(comp)]
                                     : pres.arc_of_edge[static_cast<std::size_t>(pdg.edge_at(locate(lines[static_cast<std::size_t>(i)], i, sx, hy)))];
                int& slot = labels[static_cast<std::size_t>(arc)];
                if (slot >= 0 && slot != label) throw InternalError("rectangle labels collide on one arc");
                slot = label;
            }
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (const Crossing& x : d.crossings()) {
            const int o = labels[static_cast<std::size_t>(pres.arc_of_edge[static_cast<std::size_t>(x.over_a)])];
            int& u = labels[static_cast<std::size_t>(pres.arc_of_edge[static_cast<std::size_t>(x.under_in)])];
            int& v = labels[static_cast<std::size_t>(pres.arc_of_edge[static_cast<std::size_t>(x.under_out)])];
            if (o < 0 || (u < 0) == (v < 0)) continue;
            const int oe = g.power(o, x.sign);
            if (v < 0) v = g.mul(g.mul(g.inv(oe), u), oe);
            else u = g.mul(g.mul(oe, v), g.inv(oe));
            changed = true;
        }
    }
    for (int l : labels)
        if (l < 0) throw InternalError("ribbon labelling does not reach every arc");
    if (!satisfies(as_group_presentation(pres), g, labels)) throw InternalError("ribbon labelling violates a Wirtinger relation");
    out.hom = Homomorphism{labels, &g, generates(g, labels)};
    if (!out.hom.surjective) throw InternalError("ribbon labelling is not surjective");
    if (d.component_count() != r) throw InternalError("ribbon link has the wrong number of components");
    for (int i = 0; i < r; ++i) {
        const int comp = out.component_index[static_cast<std::size_t>(i)];
        if (labels[static_cast<std::size_t>(pres.meridian_generator[static_cast<std::size_t>(comp)])] != in.elements[static_cast<std::size_t>(i)][0])
            throw InternalError("ribbon meridian image differs from mu_" + std::to_string(i));
    }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            if (linking_number(d, i, j) != 0) throw InternalError("ribbon components are linked");
    return out;
}

/// Meridian images of a ribbon link in input component order.
inline std::vector<int> ribbon_meridians(const RibbonLink& link) {
    const WirtingerPresentation p = presentation(link.diagram);
    std::vector<int> out;
    for (int comp : link.component_index)
        out.push_back(link.hom.assignment[static_cast<std::size_t>(p.meridian_generator[static_cast<std::size_t>(comp)])]);
    return out;
}

/// A random valid input: r meridians whose conjugates generate G, extended
/// greedily by conjugates outside the generated subgroup, plus up to extra
/// redundant conjugates.  Conjugator words are shortest words in the elements.
inline RibbonInput random_ribbon_input(const FiniteGroup& g, int r, std::uint64_t seed, int extra = 1) {
    if (r < 1) throw InvalidArgument("ribbon input needs at least one component");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> any(0, g.order() - 1);
    std::uniform_int_distribution<int> nonzero(g.order() > 1 ? 1 : 0, g.order() - 1);
    std::vector<int> mu;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 10000) throw InvalidArgument("no meridional system of length " + std::to_string(r) + " found in " + g.name());
        mu.clear();
        for (int i = 0; i < r; ++i) mu.push_back(nonzero(rng));
        if (is_meridional(g, mu)) break;
    }
    RibbonInput in;
    for (int m : mu) in.elements.push_back({m});
    std::uniform_int_distribution<int> pick_row(0, r - 1);
    std::vector<int> current = mu;
    while (!generates(g, current)) {
        const int i = pick_row(rng);
        const int c = g.conj(any(rng), mu[static_cast<std::size_t>(i)]);
        const std::vector<int> sub = subgroup_generated(g, current);
        if (std::find(sub.begin(), sub.end(), c) != sub.end()) continue;
        in.elements[static_cast<std::size_t>(i)].push_back(c);
        current.push_back(c);
    }
    std::uniform_int_distribution<int> extras(0, std::max(0, extra));
    for (int k = extras(rng); k > 0; --k) {
        const int i = pick_row(rng);
        in.elements[static_cast<std::size_t>(i)].push_back(g.conj(any(rng), mu[static_cast<std::size_t>(i)]));
    }

    const std::vector<int> flat_elems = in.flattened();
    std::vector<Word> word_of(static_cast<std::size_t>(g.order()));
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    std::deque<int> queue{FiniteGroup::identity()};
    seen[0] = 1;
    while (!queue.empty()) {
        const int h = queue.front();
        queue.pop_front();
        for (std::size_t q = 0; q < flat_elems.size(); ++q)
            for (int e : {1, -1}) {
                const int next = g.mul(h, e > 0 ? flat_elems[q] : g.inv(flat_elems[q]));
                if (seen[static_cast<std::size_t>(next)]) continue;
                seen[static_cast<std::size_t>(next)] = 1;
                word_of[static_cast<std::size_t>(next)] = word_of[static_cast<std::size_t>(h)] * Word({{static_cast<int>(q), e}});
                queue.push_back(next);
            }
    }
    for (std::size_t i = 0; i < in.elements.size(); ++i) {
        const auto& row = in.elements[i];
        in.words.push_back({Word{}});
        for (std::size_t j = 1; j < row.size(); ++j) {
            int best = -1;
            for (int w = 0; w < g.order(); ++w)
                if (seen[static_cast<std::size_t>(w)] && g.conj(w, row[0]) == row[j] &&
                    (best < 0 || word_of[static_cast<std::size_t>(w)].size() < word_of[static_cast<std::size_t>(best)].size()))
                    best = w;
            in.words[i].push_back(word_of[static_cast<std::size_t>(best)]);
        }
    }
    return in;
}

}  // namespace periph
