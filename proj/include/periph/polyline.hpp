#pragma once

// Link diagrams from closed 3D polylines projected onto the xy-plane.  At each
// transverse crossing of the projection the strand with larger z passes over.

#include "periph/diagram.hpp"
#include "periph/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace periph {

struct Point3 {
    double x = 0, y = 0, z = 0;
};

using Polyline = std::vector<Point3>;  // closed: last vertex joins the first

/// A position along a polyline: segment index (segment k joins vertex k to
/// vertex k+1) and parameter in [0, 1).
struct PolylinePosition {
    int component = 0;
    int segment = 0;
    double t = 0;
};

struct PolylineDiagram {
    LinkDiagram diagram;
    /// Diagram component of each polyline.
    std::vector<int> component_index;

    /// Edge id of the diagram containing a point of a polyline; 0 when the
    /// polyline is crossingless.
    int edge_at(const PolylinePosition& p) const {
        const auto& ev = events_[static_cast<std::size_t>(p.component)];
        if (ev.empty()) return 0;
        const auto before = [&](const Event& e) {
            return e.segment < p.segment || (e.segment == p.segment && e.t <= p.t);
        };
        std::size_t k = 0;
        while (k < ev.size() && before(ev[k])) ++k;
        // Edge k runs from event k-1 to event k; edge 0 wraps through the start.
        const std::size_t slot = k == ev.size() ? 0 : k;
        const Component& c = diagram.components()[static_cast<std::size_t>(component_index[static_cast<std::size_t>(p.component)])];
        return c.first_edge + static_cast<int>(slot);
    }

    struct Event {
        int segment = 0;
        double t = 0;
    };
    std::vector<std::vector<Event>> events_;
};

namespace detail {

inline double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

}  // namespace detail

/// Throws InvalidArgument on a non-generic projection: overlapping segments,
/// crossings at vertices, or equal heights at a crossing.
inline PolylineDiagram diagram_from_polylines(const std::vector<Polyline>& lines, double eps = 1e-9) {
    struct Seg {
        int comp, index;
        Point3 a, b;
    };
    std::vector<Seg> segs;
    for (std::size_t c = 0; c < lines.size(); ++c) {
        const Polyline& l = lines[c];
        if (l.size() < 3) throw InvalidArgument("polyline needs at least three vertices");
        for (std::size_t k = 0; k < l.size(); ++k)
            segs.push_back({static_cast<int>(c), static_cast<int>(k), l[k], l[(k + 1) % l.size()]});
    }
    struct Pass {
        int segment;
        double t;
        int crossing;
        bool over;
    };
    struct Hit {
        double dx_over, dy_over, dx_under, dy_under;
    };
    std::vector<std::vector<Pass>> passes(lines.size());
    std::vector<Hit> hits;

    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const Seg& s = segs[i];
            const Seg& u = segs[j];
            const bool adjacent =
                s.comp == u.comp && (std::abs(s.index - u.index) == 1 ||
                                     std::abs(s.index - u.index) == static_cast<int>(lines[static_cast<std::size_t>(s.comp)].size()) - 1);
            const double rx = s.b.x - s.a.x, ry = s.b.y - s.a.y;
            const double qx = u.b.x - u.a.x, qy = u.b.y - u.a.y;
            const double den = detail::cross2(rx, ry, qx, qy);
            const double wx = u.a.x - s.a.x, wy = u.a.y - s.a.y;
            if (std::abs(den) < eps) {
                if (std::abs(detail::cross2(wx, wy, rx, ry)) > eps) continue;  // parallel, apart
                const double len2 = rx * rx + ry * ry;
                const double t0 = (wx * rx + wy * ry) / len2;
                const double t1 = ((u.b.x - s.a.x) * rx + (u.b.y - s.a.y) * ry) / len2;
                const double lo = std::min(t0, t1), hi = std::max(t0, t1);
                if (hi < -eps || lo > 1 + eps) continue;
                if (adjacent && (hi - lo) > eps && (std::min(hi, 1.0) - std::max(lo, 0.0)) <= eps) continue;
                throw InvalidArgument("projection has overlapping segments");
            }
            const double t = detail::cross2(wx, wy, qx, qy) / den;
            const double v = detail::cross2(wx, wy, rx, ry) / den;
            if (t < -eps || t > 1 + eps || v < -eps || v > 1 + eps) continue;
            const bool t_end = t < eps || t > 1 - eps;
            const bool v_end = v < eps || v > 1 - eps;
            if (adjacent && t_end && v_end) continue;  // shared vertex
            if (t_end || v_end) throw InvalidArgument("projection crosses at a vertex");
            const double zs = s.a.z + t * (s.b.z - s.a.z);
            const double zu = u.a.z + v * (u.b.z - u.a.z);
            if (std::abs(zs - zu) < eps) throw InvalidArgument("strands meet in space");
            const bool s_over = zs > zu;
            const int id = static_cast<int>(hits.size());
            hits.push_back(s_over ? Hit{rx, ry, qx, qy} : Hit{qx, qy, rx, ry});
            passes[static_cast<std::size_t>(s.comp)].push_back({s.index, t, id, s_over});
            passes[static_cast<std::size_t>(u.comp)].push_back({u.index, v, id, !s_over});
        }

    PolylineDiagram out;
    out.events_.resize(lines.size());
    // Edge ids: edge k of a component enters event k.
    std::vector<std::array<int, 4>> pd(hits.size());
    std::vector<std::array<int, 2>> under_edges(hits.size()), over_edges(hits.size());  // {in, out}
    int offset = 0;
    int crossingless = 0;
    std::vector<int> first_edge(lines.size(), 0);
    for (std::size_t c = 0; c < lines.size(); ++c) {
        auto& p = passes[c];
        std::sort(p.begin(), p.end(), [](const Pass& a, const Pass& b) {
            return a.segment != b.segment ? a.segment < b.segment : a.t < b.t;
        });
        for (const Pass& q : p) out.events_[c].push_back({q.segment, q.t});
        const int m = static_cast<int>(p.size());
        if (m == 0) {
            ++crossingless;
            continue;
        }
        first_edge[c] = offset + 1;
        for (int k = 0; k < m; ++k) {
            const int in = offset + 1 + k;
            const int outgoing = offset + 1 + (k + 1) % m;
            auto& slot = p[static_cast<std::size_t>(k)].over ? over_edges : under_edges;
            slot[static_cast<std::size_t>(p[static_cast<std::size_t>(k)].crossing)] = {in, outgoing};
        }
        offset += m;
    }
    for (std::size_t x = 0; x < hits.size(); ++x) {
        const Hit& h = hits[x];
        // Rays: incoming under points along -du; over-out ray along dov.
        const bool out_first = detail::cross2(-h.dx_under, -h.dy_under, h.dx_over, h.dy_over) > 0;
        const auto [ui, uo] = under_edges[x];
        const auto [oi, oo] = over_edges[x];
        pd[x] = out_first ? std::array<int, 4>{ui, oo, uo, oi} : std::array<int, 4>{ui, oi, uo, oo};
    }
    out.diagram = LinkDiagram::from_pd(pd, crossingless);
    // Components with crossings keep their order; crossingless ones follow.
    int next_crossed = 0, next_free = 0;
    int crossed_total = 0;
    for (std::size_t c = 0; c < lines.size(); ++c)
        if (first_edge[c]) ++crossed_total;
    for (std::size_t c = 0; c < lines.size(); ++c)
        out.component_index.push_back(first_edge[c] ? next_crossed++ : crossed_total + next_free++);
    for (std::size_t c = 0; c < lines.size(); ++c) {
        if (!first_edge[c]) continue;
        const Component& comp = out.diagram.components()[static_cast<std::size_t>(out.component_index[c])];
        if (comp.first_edge != first_edge[c] || comp.edge_count != static_cast<int>(passes[c].size()))
            throw InternalError("polyline edge numbering was not preserved");
    }
    return out;
}

}  // namespace periph
