#include "periph/realize.hpp"

#include <gtest/gtest.h>

using namespace periph;

namespace {

const char* kTrefoil = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";
const char* kFigureEight = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
const char* kHopf = "X[2,4,1,3] X[4,2,3,1]";
const char* kWhitehead = "X[6,1,7,2] X[10,7,5,8] X[4,5,1,6] X[2,10,3,9] X[8,4,9,3]";

int find_label(const FiniteGroup& g, const std::string& label) {
    for (int a = 0; a < g.order(); ++a)
        if (g.label(a) == label) return a;
    throw InvalidArgument("no element " + label);
}

void expect_consistent(const Verdict& v, bool full = true) {
    bool all_i = true;
    for (bool b : v.condition_i) all_i = all_i && b;
    EXPECT_EQ(v.weakly_realizable, v.meridional && all_i && v.condition_ii);
    EXPECT_EQ(v.theta.has_value(), all_i);
    if (v.theta) {
        EXPECT_EQ(v.condition_ii, v.theta->is_zero());
    }
    EXPECT_EQ(v.condition_iv.has_value(), v.jl.has_value());
    EXPECT_EQ(v.realizable.has_value(), full);
    if (full) {
        EXPECT_EQ(v.condition_iv.has_value(), v.condition_iv_note.empty());
        EXPECT_EQ(v.condition_iii.size(), v.condition_i.size());
    } else {
        EXPECT_FALSE(v.condition_iv.has_value());
    }
    if (v.realizable && *v.realizable) {
        EXPECT_TRUE(v.weakly_realizable);
        EXPECT_TRUE(v.conjugate_meridians);
        for (bool b : v.condition_iii) EXPECT_TRUE(b);
        EXPECT_TRUE(v.condition_iv.value_or(false));
    }
    if (!v.condition_iv || *v.condition_iv) {
        EXPECT_TRUE(v.twisted_candidates.empty());
    }
}

/// Meridional elements of g paired with every conjugate.
std::vector<std::vector<int>> conjugate_meridian_pairs(const FiniteGroup& g) {
    std::vector<std::vector<int>> out;
    for (int m = 0; m < g.order(); ++m) {
        if (!is_meridional(g, {m})) continue;
        for (int x = 0; x < g.order(); ++x) {
            const std::vector<int> pair{m, g.conj(x, m)};
            if (std::find(out.begin(), out.end(), pair) == out.end()) out.push_back(pair);
        }
    }
    return out;
}

LabelledDiagram labelled(const char* pd, const Homomorphism& h) {
    return {parse_pd(pd), h};
}

}  // namespace

TEST(Verdict, RealLinksAreRealizable) {
    for (const char* gname : {"S3", "A4", "D5", "Dic3", "Z6", "Q8"}) {
        const FiniteGroup g = named_group(gname);
        GroupHomology ctx(g);
        for (const char* pd : {kTrefoil, kFigureEight, kHopf, kWhitehead}) {
            const LinkDiagram d = parse_pd(pd);
            EnumOptions o;
            o.surjective_only = true;
            for (const Homomorphism& h : enumerate_homs(presentation(d), g, o).homs) {
                const PeripheralSystem s = peripheral_system(d, g, h);
                const Verdict weak = check_weak(ctx, s.mu, s.lambda);
                expect_consistent(weak, false);
                EXPECT_TRUE(weak.weakly_realizable) << pd << " in " << gname;
                const Verdict full = check_full(ctx, s.mu, s.lambda);
                expect_consistent(full);
                ASSERT_TRUE(full.realizable.has_value());
                if (full.conjugate_meridians && abelianization(g).is_cyclic) {
                    EXPECT_TRUE(*full.realizable) << pd << " in " << gname;
                }
            }
        }
    }
}

TEST(Verdict, FailingConditionsAreReported) {
    const FiniteGroup s3 = named_group("S3");
    const int t = find_label(s3, "[2,1,3]"), u = find_label(s3, "[1,3,2]"), c = find_label(s3, "[2,3,1]");

    const Verdict not_meridional = check_full(s3, {c}, {0});
    expect_consistent(not_meridional);
    EXPECT_FALSE(not_meridional.meridional);
    EXPECT_FALSE(*not_meridional.realizable);
    EXPECT_EQ(not_meridional.condition_iv_note, "mu is not meridional");

    const Verdict noncommuting = check_full(s3, {t}, {c});
    expect_consistent(noncommuting);
    EXPECT_EQ(noncommuting.condition_i, std::vector<bool>{false});
    EXPECT_FALSE(noncommuting.condition_ii);
    EXPECT_FALSE(noncommuting.theta.has_value());
    EXPECT_EQ(noncommuting.condition_iv_note, "condition (i) fails");

    const Verdict outside = check_full(s3, {t, u}, {t, 0});
    expect_consistent(outside);
    EXPECT_TRUE(outside.weakly_realizable);
    EXPECT_EQ(outside.condition_iii, (std::vector<bool>{false, true}));
    EXPECT_EQ(outside.condition_iv_note, "condition (iii) fails");
    EXPECT_FALSE(*outside.realizable);

    const Verdict unknot_like = check_full(s3, {t}, {0});
    expect_consistent(unknot_like);
    EXPECT_TRUE(*unknot_like.realizable);
}

TEST(Verdict, NonconjugateMeridians) {
    const FiniteGroup k4 = named_group("Z2xZ2");
    const Verdict v = check_full(k4, {1, 2}, {2, 1});
    expect_consistent(v);
    EXPECT_TRUE(v.meridional);
    EXPECT_TRUE(v.weakly_realizable);
    EXPECT_FALSE(v.conjugate_meridians);
    EXPECT_EQ(v.condition_iv_note, "meridians are not pairwise conjugate");
    EXPECT_FALSE(*v.realizable);
    const Verdict bad = check_weak(k4, {1, 2}, {2, 0});
    expect_consistent(bad, false);
    EXPECT_FALSE(bad.condition_ii);
    EXPECT_FALSE(bad.weakly_realizable);
}

TEST(Verdict, WideCapSymmetricGroup) {
    const FiniteGroup s4 = named_group("S4");
    const int t = find_label(s4, "[2,1,3,4]"), v = find_label(s4, "[2,1,4,3]");
    EXPECT_THROW(check_full(s4, {t}, {0}, 16), CapExceeded);
    GroupHomology ctx(s4, 24);
    const Verdict pair = check_full(ctx, {t, t}, {v, v});
    expect_consistent(pair);
    EXPECT_TRUE(pair.condition_ii);
    EXPECT_TRUE(pair.condition_iv.has_value());
    EXPECT_TRUE(*pair.realizable);
    const Verdict single = check_full(ctx, {t}, {v});
    expect_consistent(single);
    EXPECT_FALSE(single.condition_ii);
    EXPECT_FALSE(*single.realizable);
}

TEST(Verdict, RejectsMalformedSystems) {
    const FiniteGroup s3 = named_group("S3");
    EXPECT_THROW(check_weak(s3, {}, {}), InvalidArgument);
    EXPECT_THROW(check_weak(s3, {1}, {0, 0}), InvalidArgument);
    EXPECT_THROW(check_full(s3, {1}, {17}), InvalidArgument);
}

TEST(Families, ProductOfConjugateMeridianPowers) {
    for (const char* gname : {"S3", "A4", "D5", "Dic3", "Z6", "Z4"}) {
        const FiniteGroup g = named_group(gname);
        GroupHomology ctx(g);
        const long long n = abelianization(g).quotient_order;
        int checked = 0;
        for (const auto& mu : conjugate_meridian_pairs(g))
            for (long long b = -3; b <= 3; ++b)
                for (long long c = -3; c <= 3; ++c) {
                    if ((b + c) % n != 0) {
                        EXPECT_THROW(family_lemma55(g, mu, b, c), InvalidArgument);
                        continue;
                    }
                    const std::vector<int> lambda = family_lemma55(g, mu, b, c);
                    const Verdict v = check_full(ctx, mu, lambda);
                    expect_consistent(v);
                    EXPECT_TRUE(*v.realizable) << gname << " b=" << b << " c=" << c;
                    ++checked;
                }
        EXPECT_GT(checked, 0) << gname;
    }
}

TEST(Families, PowersOfTheAbelianizationOrder) {
    for (const char* gname : {"S3", "A4", "D5", "Dic3", "Z6", "Z5"}) {
        const FiniteGroup g = named_group(gname);
        GroupHomology ctx(g);
        for (const auto& mu : conjugate_meridian_pairs(g))
            for (long long h = -3; h <= 3; ++h) {
                const auto [first, second] = family_lemma56(g, mu, h);
                EXPECT_EQ(first[0], FiniteGroup::identity());
                EXPECT_TRUE(*check_full(ctx, mu, first).realizable) << gname;
                EXPECT_TRUE(*check_full(ctx, mu, second).realizable) << gname << " h=" << h;
            }
    }
}

TEST(Families, RejectWrongLength) {
    const FiniteGroup g = named_group("S3");
    EXPECT_THROW(family_lemma55(g, {1}, 1, 1), InvalidArgument);
    EXPECT_THROW(family_lemma56(g, {1, 1, 1}, 1), InvalidArgument);
    EXPECT_THROW(family_lemma56(g, {1, 42}, 1), InvalidArgument);
}

TEST(Verify, TrefoilSurjections) {
    const FiniteGroup g = named_group("S3");
    const LinkDiagram d = parse_pd(kTrefoil);
    const WirtingerPresentation p = presentation(d);
    const EnumResult r = enumerate_homs(p, g);
    int onto = 0;
    for (const Homomorphism& h : r.homs) {
        const PeripheralSystem s = peripheral_system(d, p, g, h);
        EXPECT_EQ(verify_realization(d, g, h, s.mu, s.lambda), h.surjective);
        EXPECT_EQ(verify_realization(d, g, h, s.mu), h.surjective);
        if (!h.surjective) continue;
        ++onto;
        EXPECT_FALSE(verify_realization(d, g, h, {(s.mu[0] + 1) % g.order()}));
        EXPECT_FALSE(verify_realization(d, g, h, s.mu, std::vector<int>{g.mul(s.lambda[0], s.mu[0])}));
    }
    EXPECT_EQ(onto, 6);
}

TEST(Verify, RejectsInvalidInput) {
    const FiniteGroup g = named_group("S3");
    const LinkDiagram d = parse_pd(kTrefoil);
    const int t = find_label(g, "[2,1,3]"), c = find_label(g, "[2,3,1]");
    EXPECT_THROW(verify_realization(d, g, Homomorphism{{t, t}, &g, false}, {t}), InvalidArgument);
    EXPECT_THROW(verify_realization(d, g, Homomorphism{{t, t, c}, &g, false}, {t}), InvalidArgument);
    EXPECT_THROW(verify_realization(d, g, Homomorphism{{t, t, t}, &g, false}, {t, t}), InvalidArgument);
    EXPECT_FALSE(verify_realization(d, g, Homomorphism{{t, t, t}, &g, false}, {t}));
}

TEST(LabelledSum, RealizesComponentwiseProduct) {
    int sums = 0;
    for (const char* gname : {"S3", "A4", "Dic3", "Q8", "D5"}) {
        const FiniteGroup g = named_group(gname);
        for (const char* pd_a : {kTrefoil, kFigureEight})
            for (const char* pd_b : {kTrefoil, kFigureEight}) {
                const LinkDiagram da = parse_pd(pd_a), db = parse_pd(pd_b);
                const WirtingerPresentation pa = presentation(da), pb = presentation(db);
                const auto ha = enumerate_homs(pa, g).homs, hb = enumerate_homs(pb, g).homs;
                for (std::size_t i = 0; i < ha.size(); i += 3)
                    for (std::size_t j = 0; j < hb.size(); ++j) {
                        const PeripheralSystem sa = peripheral_system(da, pa, g, ha[i]);
                        const PeripheralSystem sb = peripheral_system(db, pb, g, hb[j]);
                        if (sa.mu != sb.mu) continue;
                        const LabelledDiagram s = labelled_sum(labelled(pd_a, ha[i]), labelled(pd_b, hb[j]), g);
                        EXPECT_EQ(s.diagram.crossing_count(), da.crossing_count() + db.crossing_count());
                        const PeripheralSystem ss = peripheral_system(s.diagram, g, s.hom);
                        EXPECT_EQ(ss.mu, sa.mu);
                        EXPECT_EQ(ss.lambda, std::vector<int>{g.mul(sa.lambda[0], sb.lambda[0])}) << gname;
                        ++sums;
                    }
            }
    }
    EXPECT_GT(sums, 100);
}

TEST(LabelledSum, TwoComponentLinks) {
    const FiniteGroup g = named_group("Q8");
    const LinkDiagram d = parse_pd(kHopf), w = parse_pd(kWhitehead);
    const WirtingerPresentation pd = presentation(d), pw = presentation(w);
    int sums = 0;
    for (const Homomorphism& a : enumerate_homs(pd, g).homs)
        for (const Homomorphism& b : enumerate_homs(pw, g).homs) {
            const PeripheralSystem sa = peripheral_system(d, pd, g, a), sb = peripheral_system(w, pw, g, b);
            if (sa.mu != sb.mu) continue;
            const LabelledDiagram s = labelled_sum(labelled(kHopf, a), labelled(kWhitehead, b), g);
            const PeripheralSystem ss = peripheral_system(s.diagram, g, s.hom);
            EXPECT_EQ(ss.mu, sa.mu);
            EXPECT_EQ(ss.lambda, (std::vector<int>{g.mul(sa.lambda[0], sb.lambda[0]), g.mul(sa.lambda[1], sb.lambda[1])}));
            ++sums;
        }
    EXPECT_GT(sums, 10);
}

TEST(LabelledSum, WithUnknottedComponents) {
    const FiniteGroup g = named_group("S3");
    const int t = find_label(g, "[2,1,3]");
    const LabelledDiagram u{parse_pd("U"), Homomorphism{{t}, &g, false}};
    const LabelledDiagram s = labelled_sum(u, u, g);
    EXPECT_EQ(s.diagram.crossing_count(), 0);
    EXPECT_EQ(peripheral_system(s.diagram, g, s.hom).mu, std::vector<int>{t});
}

TEST(LabelledSum, RejectsMismatchedMeridians) {
    const FiniteGroup g = named_group("S3");
    const int t = find_label(g, "[2,1,3]"), u = find_label(g, "[1,3,2]");
    const LabelledDiagram a{parse_pd("U"), Homomorphism{{t}, &g, false}};
    const LabelledDiagram b{parse_pd("U"), Homomorphism{{u}, &g, false}};
    EXPECT_THROW(labelled_sum(a, b, g), InvalidArgument);
    const LabelledDiagram h{parse_pd(kHopf), Homomorphism{{t, t}, &g, false}};
    EXPECT_THROW(labelled_sum(a, h, g), InvalidArgument);
}

TEST(LabelledSymmetry, ReverseReflectInverse) {
    for (const char* gname : {"S3", "Dic3", "Q8"}) {
        const FiniteGroup g = named_group(gname);
        for (const char* pd : {kTrefoil, kHopf, kWhitehead}) {
            const LinkDiagram d = parse_pd(pd);
            const WirtingerPresentation p = presentation(d);
            for (const Homomorphism& h : enumerate_homs(p, g).homs) {
                const PeripheralSystem s = peripheral_system(d, p, g, h);
                const LabelledDiagram a = labelled(pd, h);
                std::vector<int> mu_inv, lambda_inv;
                for (int x : s.mu) mu_inv.push_back(g.inv(x));
                for (int x : s.lambda) lambda_inv.push_back(g.inv(x));

                const LabelledDiagram rev = labelled_reverse(a, g);
                const PeripheralSystem sr = peripheral_system(rev.diagram, g, rev.hom);
                EXPECT_EQ(sr.mu, mu_inv);
                EXPECT_EQ(sr.lambda, lambda_inv);

                const LabelledDiagram refl = labelled_reflect(a, g);
                const PeripheralSystem sf = peripheral_system(refl.diagram, g, refl.hom);
                EXPECT_EQ(sf.mu, mu_inv);
                EXPECT_EQ(sf.lambda, s.lambda);

                const LabelledDiagram inv = labelled_inverse(a, g);
                const PeripheralSystem si = peripheral_system(inv.diagram, g, inv.hom);
                EXPECT_EQ(si.mu, s.mu);
                EXPECT_EQ(si.lambda, lambda_inv);
                EXPECT_EQ(inv.hom.surjective, h.surjective);
            }
        }
    }
}

TEST(LabelledSymmetry, SumWithInverseIsTrivial) {
    const FiniteGroup g = named_group("A4");
    const LinkDiagram d = parse_pd(kTrefoil);
    const WirtingerPresentation p = presentation(d);
    EnumOptions o;
    o.surjective_only = true;
    for (const Homomorphism& h : enumerate_homs(p, g, o).homs) {
        const LabelledDiagram a = labelled(kTrefoil, h);
        const LabelledDiagram s = labelled_sum(a, labelled_inverse(a, g), g);
        const PeripheralSystem ss = peripheral_system(s.diagram, g, s.hom);
        EXPECT_EQ(ss.lambda, std::vector<int>{FiniteGroup::identity()});
        EXPECT_TRUE(verify_realization(s.diagram, g, s.hom, peripheral_system(d, p, g, h).mu, std::vector<int>{0}));
    }
}
