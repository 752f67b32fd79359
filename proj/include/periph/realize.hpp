#pragma once

// Realizability tests for peripheral systems, known-realizable families, and
// verification of diagram-level realizations.

#include "periph/diagram.hpp"
#include "periph/error.hpp"
#include "periph/group.hpp"
#include "periph/homenum.hpp"
#include "periph/homology.hpp"
#include "periph/wirtinger.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace periph {

struct Verdict {
    bool meridional = false;
    bool conjugate_meridians = false;
    /// lambda_i commutes with mu_i.
    std::vector<bool> condition_i;
    /// Sum of Pontryagin products vanishes; false when some pair does not commute.
    bool condition_ii = false;
    /// H_2 class of the sum of Pontryagin products, when every pair commutes.
    std::optional<HomologyClass> theta;
    /// lambda_i lies in the commutator subgroup; filled by check_full.
    std::vector<bool> condition_iii;
    /// Johnson-Livingston product vanishes; absent when it is not defined.
    std::optional<bool> condition_iv;
    std::optional<HomologyClass> jl;
    /// Why condition_iv is absent.
    std::string condition_iv_note;
    bool weakly_realizable = false;
    std::optional<bool> realizable;
    /// When (i)-(iii) hold but (iv) fails: systems (lambda_1 mu_1^{hn},
    /// lambda_2, ...) for h = 1, 2, ... up to the order of mu_1^n, all weakly
    /// realizable, as candidates for a realizable twist.
    std::vector<std::vector<int>> twisted_candidates;
};

namespace detail {

inline bool all_true(const std::vector<bool>& v) {
    for (bool b : v)
        if (!b) return false;
    return true;
}

inline void check_system(const FiniteGroup& g, const std::vector<int>& mu, const std::vector<int>& lambda) {
    if (mu.empty()) throw InvalidArgument("system must have at least one component");
    if (mu.size() != lambda.size())
        throw InvalidArgument("mu has " + std::to_string(mu.size()) + " entries but lambda has " + std::to_string(lambda.size()));
    for (std::size_t i = 0; i < mu.size(); ++i) {
        g.check_element(mu[i]);
        g.check_element(lambda[i]);
    }
}

}  // namespace detail

/// Meridionality, commutation and the Pontryagin condition.
inline Verdict check_weak(GroupHomology& ctx, const std::vector<int>& mu, const std::vector<int>& lambda) {
    const FiniteGroup& g = ctx.group();
    detail::check_system(g, mu, lambda);
    Verdict v;
    v.meridional = is_meridional(g, mu);
    for (std::size_t i = 0; i < mu.size(); ++i) v.condition_i.push_back(g.commute(mu[i], lambda[i]));
    if (detail::all_true(v.condition_i)) {
        v.theta = theta(ctx, mu, lambda);
        v.condition_ii = v.theta->is_zero();
    }
    v.weakly_realizable = v.meridional && detail::all_true(v.condition_i) && v.condition_ii;
    return v;
}

namespace detail {

inline Verdict check_full_core(GroupHomology& ctx, const std::vector<int>& mu, const std::vector<int>& lambda) {
    const FiniteGroup& g = ctx.group();
    Verdict v = check_weak(ctx, mu, lambda);
    v.conjugate_meridians = true;
    for (std::size_t i = 1; i < mu.size(); ++i)
        if (!conjugator(g, mu[0], mu[i])) v.conjugate_meridians = false;
    const Abelianization& ab = ctx.abelian();
    for (int l : lambda) v.condition_iii.push_back(ab.in_commutator(l));
    if (!v.meridional) v.condition_iv_note = "mu is not meridional";
    else if (!v.conjugate_meridians) v.condition_iv_note = "meridians are not pairwise conjugate";
    else if (!all_true(v.condition_i)) v.condition_iv_note = "condition (i) fails";
    else if (!v.condition_ii) v.condition_iv_note = "condition (ii) fails";
    else if (!all_true(v.condition_iii)) v.condition_iv_note = "condition (iii) fails";
    else if (!ab.is_cyclic) v.condition_iv_note = "G/G' is not cyclic";
    if (v.condition_iv_note.empty()) {
        v.jl = jl_product(ctx, mu, lambda);
        v.condition_iv = v.jl->is_zero();
    }
    v.realizable = v.weakly_realizable && v.conjugate_meridians && all_true(v.condition_iii) && v.condition_iv.value_or(false);
    return v;
}

}  // namespace detail

/// All four conditions; realizable is always filled.
inline Verdict check_full(GroupHomology& ctx, const std::vector<int>& mu, const std::vector<int>& lambda) {
    Verdict v = detail::check_full_core(ctx, mu, lambda);
    if (v.condition_iv && !*v.condition_iv) {
        const FiniteGroup& g = ctx.group();
        const int n = ctx.abelian().quotient_order;
        const int step = g.power(mu[0], n);
        int twist = step;
        for (int h = 1; h < g.element_order(step); ++h) {
            std::vector<int> cand = lambda;
            cand[0] = g.mul(lambda[0], twist);
            v.twisted_candidates.push_back(std::move(cand));
            twist = g.mul(twist, step);
        }
    }
    return v;
}

inline Verdict check_weak(const FiniteGroup& g, const std::vector<int>& mu, const std::vector<int>& lambda,
                          int cap_order = default_cap_order()) {
    GroupHomology ctx(g, cap_order);
    return check_weak(ctx, mu, lambda);
}

inline Verdict check_full(const FiniteGroup& g, const std::vector<int>& mu, const std::vector<int>& lambda,
                          int cap_order = default_cap_order()) {
    GroupHomology ctx(g, cap_order);
    return check_full(ctx, mu, lambda);
}

/// (mu_1^{b^2+bc}, mu_2^{bc+c^2}); requires b + c = 0 mod |G/G'|.
inline std::vector<int> family_lemma55(const FiniteGroup& g, const std::vector<int>& mu, long long b, long long c) {
    if (mu.size() != 2) throw InvalidArgument("family needs exactly two meridians");
    for (int m : mu) g.check_element(m);
    const long long n = abelianization(g).quotient_order;
    if ((b + c) % n != 0)
        throw InvalidArgument("b + c = " + std::to_string(b + c) + " is not divisible by " + std::to_string(n));
    return {g.power(mu[0], b * b + b * c), g.power(mu[1], b * c + c * c)};
}

/// (1, mu_2^{n^2}) and (mu_1^{hn}, mu_2^{-hn}) with n = |G/G'|.
inline std::pair<std::vector<int>, std::vector<int>> family_lemma56(const FiniteGroup& g, const std::vector<int>& mu, long long h) {
    if (mu.size() != 2) throw InvalidArgument("family needs exactly two meridians");
    for (int m : mu) g.check_element(m);
    const long long n = abelianization(g).quotient_order;
    return {{FiniteGroup::identity(), g.power(mu[1], n * n)}, {g.power(mu[0], h * n), g.power(mu[1], -h * n)}};
}

/// True iff h is surjective, sends the meridians to expected_mu and the
/// preferred system of longitudes to expected_lambda (when given).
inline bool verify_realization(const LinkDiagram& d, const FiniteGroup& g, const Homomorphism& h, const std::vector<int>& expected_mu,
                               const std::optional<std::vector<int>>& expected_lambda = std::nullopt) {
    const WirtingerPresentation p = presentation(d);
    if (static_cast<int>(h.assignment.size()) != p.generator_count)
        throw InvalidArgument("homomorphism has " + std::to_string(h.assignment.size()) + " images but the diagram has " +
                              std::to_string(p.generator_count) + " arcs");
    for (int a : h.assignment) g.check_element(a);
    if (!satisfies(as_group_presentation(p), g, h.assignment))
        throw InvalidArgument("assignment does not satisfy the Wirtinger relations of the diagram");
    if (static_cast<int>(expected_mu.size()) != d.component_count() ||
        (expected_lambda && static_cast<int>(expected_lambda->size()) != d.component_count()))
        throw InvalidArgument("expected system length differs from the component count");
    if (!generates(g, h.assignment)) return false;
    const PeripheralSystem s = peripheral_system(d, p, g, h);
    if (s.mu != expected_mu) return false;
    return !expected_lambda || s.lambda == *expected_lambda;
}

/// A diagram with a homomorphism of its link group.
struct LabelledDiagram {
    LinkDiagram diagram;
    Homomorphism hom;
};

namespace detail {

/// Labels of a target diagram whose edges are images of source edges;
/// crossingless components take crossingless_labels in order.
inline std::vector<int> transport_labels(const LinkDiagram& to, const std::map<int, int>& edge_label,
                                         const std::vector<int>& crossingless_labels) {
    const WirtingerPresentation p = presentation(to);
    std::vector<int> out(static_cast<std::size_t>(p.generator_count), -1);
    for (const auto& [e, label] : edge_label) {
        int& slot = out[static_cast<std::size_t>(p.arc_of_edge.at(static_cast<std::size_t>(e)))];
        if (slot >= 0 && slot != label) throw InternalError("edges of one arc carry different labels");
        slot = label;
    }
    std::size_t next = 0;
    for (int c = 0; c < to.component_count(); ++c)
        if (to.components()[static_cast<std::size_t>(c)].crossingless()) {
            if (next >= crossingless_labels.size()) throw InternalError("missing label for a crossingless component");
            out[static_cast<std::size_t>(p.meridian_generator[static_cast<std::size_t>(c)])] = crossingless_labels[next++];
        }
    for (int x : out)
        if (x < 0) throw InternalError("arc left without a label");
    return out;
}

inline int edge_label(const WirtingerPresentation& p, const Homomorphism& h, int e) {
    return h.assignment.at(static_cast<std::size_t>(p.arc_of_edge.at(static_cast<std::size_t>(e))));
}

inline Homomorphism checked_hom(const LinkDiagram& d, const FiniteGroup& g, std::vector<int> labels) {
    if (!satisfies(as_group_presentation(presentation(d)), g, labels))
        throw InternalError("transported labelling violates a Wirtinger relation");
    Homomorphism h{std::move(labels), &g, false};
    h.surjective = generates(g, h.assignment);
    return h;
}

}  // namespace detail

/// Multi-connected sum of two labelled diagrams whose meridian images agree
/// componentwise, with the induced labelling.  Realizes the componentwise
/// product of the two preferred systems.
inline LabelledDiagram labelled_sum(const LabelledDiagram& a, const LabelledDiagram& b, const FiniteGroup& g) {
    const LinkDiagram& k = a.diagram;
    const LinkDiagram& j = b.diagram;
    if (k.component_count() != j.component_count()) throw InvalidArgument("labelled sum needs equal component counts");
    const WirtingerPresentation pk = presentation(k), pj = presentation(j);
    for (int i = 0; i < k.component_count(); ++i)
        if (a.hom.assignment.at(static_cast<std::size_t>(pk.meridian_generator[static_cast<std::size_t>(i)])) !=
            b.hom.assignment.at(static_cast<std::size_t>(pj.meridian_generator[static_cast<std::size_t>(i)])))
            throw InvalidArgument("meridian images differ at component " + std::to_string(i));
    std::map<int, int> edge_map;
    LinkDiagram s = multi_connected_sum(k, j, std::nullopt, &edge_map);
    std::map<int, int> labels;
    for (const auto& [old_id, new_id] : edge_map) {
        const bool from_k = old_id <= k.edge_count();
        labels[new_id] = from_k ? detail::edge_label(pk, a.hom, old_id) : detail::edge_label(pj, b.hom, old_id - k.edge_count());
    }
    std::vector<int> free_labels;
    for (int i = 0; i < k.component_count(); ++i)
        if (k.components()[static_cast<std::size_t>(i)].crossingless() && j.components()[static_cast<std::size_t>(i)].crossingless())
            free_labels.push_back(a.hom.assignment.at(static_cast<std::size_t>(pk.meridian_generator[static_cast<std::size_t>(i)])));
    std::vector<int> out = detail::transport_labels(s, labels, free_labels);
    return {s, detail::checked_hom(s, g, std::move(out))};
}

/// Reversed orientations with every label inverted: realizes the inverse of
/// both the meridian and the longitude images.
inline LabelledDiagram labelled_reverse(const LabelledDiagram& a, const FiniteGroup& g) {
    const WirtingerPresentation p = presentation(a.diagram);
    std::map<int, int> edge_map;
    LinkDiagram r = reverse_orientations(a.diagram, &edge_map);
    std::map<int, int> labels;
    for (const auto& [old_id, new_id] : edge_map) labels[new_id] = g.inv(detail::edge_label(p, a.hom, old_id));
    std::vector<int> free_labels;
    for (int c = 0; c < a.diagram.component_count(); ++c)
        if (a.diagram.components()[static_cast<std::size_t>(c)].crossingless())
            free_labels.push_back(g.inv(a.hom.assignment.at(static_cast<std::size_t>(p.meridian_generator[static_cast<std::size_t>(c)]))));
    std::vector<int> out = detail::transport_labels(r, labels, free_labels);
    return {r, detail::checked_hom(r, g, std::move(out))};
}

/// Plane reflection with every label inverted: inverts the meridian images
/// and keeps the longitude images.
inline LabelledDiagram labelled_reflect(const LabelledDiagram& a, const FiniteGroup& g) {
    LinkDiagram r = reflect(a.diagram);
    std::vector<int> out;
    for (int x : a.hom.assignment) out.push_back(g.inv(x));
    return {r, detail::checked_hom(r, g, std::move(out))};
}

/// Reflection followed by reversal: same meridian images, inverse longitude
/// images, i.e. the inverse in the group of realizable systems.
inline LabelledDiagram labelled_inverse(const LabelledDiagram& a, const FiniteGroup& g) {
    return labelled_reverse(labelled_reflect(a, g), g);
}

}  // namespace periph
