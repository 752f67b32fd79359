#include "periph/homenum.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace periph;

namespace {

const char* kTrefoil = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";
const char* kFigureEight = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
const char* kHopf = "X[2,4,1,3] X[4,2,3,1]";
const char* kWhitehead = "X[6,1,7,2] X[10,7,5,8] X[4,5,1,6] X[2,10,3,9] X[8,4,9,3]";

/// Every assignment checked directly; independent of the search.
std::vector<std::vector<int>> brute_force(const GroupPresentation& p, const FiniteGroup& g) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(p.generator_count), 0);
    while (true) {
        if (satisfies(p, g, a)) out.push_back(a);
        std::size_t k = 0;
        while (k < a.size() && ++a[k] == g.order()) a[k++] = 0;
        if (k == a.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> assignments(const EnumResult& r) {
    std::vector<std::vector<int>> out;
    for (const Homomorphism& h : r.homs) out.push_back(h.assignment);
    return out;
}

int find_label(const FiniteGroup& g, const std::string& label) {
    for (int a = 0; a < g.order(); ++a)
        if (g.label(a) == label) return a;
    return -1;
}

}  // namespace

TEST(Enumerate, UnknotGivesOnePerElement) {
    const WirtingerPresentation p = presentation(parse_pd("U"));
    for (const FiniteGroup& g : catalog()) {
        const EnumResult r = enumerate_homs(p, g);
        EXPECT_TRUE(r.complete);
        EXPECT_EQ(static_cast<int>(r.homs.size()), g.order()) << g.name();
    }
}

TEST(Enumerate, TrefoilIntoS3) {
    const FiniteGroup g = named_group("S3");
    const WirtingerPresentation p = presentation(parse_pd(kTrefoil));
    const EnumResult all = enumerate_homs(p, g);
    EXPECT_EQ(all.homs.size(), 12u);
    EXPECT_EQ(std::count_if(all.homs.begin(), all.homs.end(), [](const Homomorphism& h) { return h.surjective; }), 6);
    EnumOptions o;
    o.surjective_only = true;
    EXPECT_EQ(enumerate_homs(p, g, o).homs.size(), 6u);
}

TEST(Enumerate, TrefoilTwoGeneratorOracle) {
    // x y x = y x y over all 36 pairs of S3.
    const FiniteGroup g = named_group("S3");
    int homs = 0, onto = 0;
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            if (g.mul(g.mul(x, y), x) == g.mul(g.mul(y, x), y)) {
                ++homs;
                onto += generates(g, {x, y});
            }
    EXPECT_EQ(homs, 12);
    EXPECT_EQ(onto, 6);
}

TEST(Enumerate, TrefoilOntoZ3) {
    EnumOptions o;
    o.surjective_only = true;
    EXPECT_EQ(enumerate_homs(presentation(parse_pd(kTrefoil)), named_group("Z3"), o).homs.size(), 2u);
}

TEST(Enumerate, MatchesBruteForce) {
    for (const char* gname : {"S3", "Z4", "Q8", "D4"})
        for (const char* pd : {kTrefoil, kFigureEight, kHopf, kWhitehead}) {
            const FiniteGroup g = named_group(gname);
            const GroupPresentation p = as_group_presentation(presentation(parse_pd(pd)));
            if (p.generator_count > 5) continue;
            EXPECT_EQ(assignments(enumerate_homs(p, g)), brute_force(p, g)) << pd << " into " << gname;
        }
}

TEST(Enumerate, ResultsSatisfyRelatorsAndFlags) {
    for (const char* gname : {"A4", "Dic3", "S4"}) {
        const FiniteGroup g = named_group(gname);
        for (const char* pd : {kTrefoil, kFigureEight, kWhitehead}) {
            const GroupPresentation p = as_group_presentation(presentation(parse_pd(pd)));
            const EnumResult r = enumerate_homs(p, g);
            EXPECT_TRUE(r.complete);
            for (std::size_t k = 0; k < r.homs.size(); ++k) {
                EXPECT_TRUE(satisfies(p, g, r.homs[k].assignment));
                EXPECT_EQ(r.homs[k].surjective, generates(g, r.homs[k].assignment));
                if (k) {
                    EXPECT_LT(r.homs[k - 1].assignment, r.homs[k].assignment);
                }
            }
        }
    }
}

TEST(Enumerate, IndependentOfThreadCount) {
    const FiniteGroup g = named_group("S4");
    const GroupPresentation p = as_group_presentation(presentation(parse_pd(kWhitehead)));
    EnumOptions one, three;
    three.threads = 3;
    EXPECT_EQ(assignments(enumerate_homs(p, g, one)), assignments(enumerate_homs(p, g, three)));
}

TEST(Enumerate, IndependentOfGeneratorOrder) {
    const FiniteGroup g = named_group("A4");
    const GroupPresentation p = as_group_presentation(presentation(parse_pd(kFigureEight)));
    std::vector<int> perm(static_cast<std::size_t>(p.generator_count));
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937 rng(3);
    const auto base = assignments(enumerate_homs(p, g));
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        GroupPresentation q{p.generator_count, {}};
        for (const Word& w : p.relators) {
            std::vector<Letter> letters;
            for (const Letter& l : w.letters()) letters.push_back({perm[static_cast<std::size_t>(l.generator)], l.exponent});
            q.relators.emplace_back(letters);
        }
        std::vector<std::vector<int>> back;
        for (const Homomorphism& h : enumerate_homs(q, g).homs) {
            std::vector<int> a(h.assignment.size());
            for (std::size_t x = 0; x < a.size(); ++x) a[x] = h.assignment[static_cast<std::size_t>(perm[x])];
            back.push_back(a);
        }
        std::sort(back.begin(), back.end());
        EXPECT_EQ(back, base);
    }
}

TEST(Enumerate, LimitFlagsPartialResults) {
    EnumOptions o;
    o.limit = 5;
    const EnumResult r = enumerate_homs(presentation(parse_pd(kWhitehead)), named_group("S4"), o);
    EXPECT_FALSE(r.complete);
}

TEST(Enumerate, RejectsEmptyPresentation) {
    EXPECT_THROW(enumerate_homs(GroupPresentation{0, {}}, named_group("Z2")), InvalidArgument);
}

TEST(Enumerate, MeridianConstraints) {
    const FiniteGroup g = named_group("S3");
    const WirtingerPresentation p = presentation(parse_pd(kTrefoil));
    const int t = find_label(g, "[2,1,3]");
    EnumOptions o;
    o.allowed = meridian_constraints(p, g, {std::vector<int>{t}});
    const EnumResult r = enumerate_homs(p, g, o);
    for (const Homomorphism& h : r.homs) EXPECT_EQ(h.assignment[static_cast<std::size_t>(p.meridian_generator[0])], t);
    // Identity-free: meridian image fixed to a transposition gives 1 + 2 homomorphisms.
    EXPECT_EQ(r.homs.size(), 3u);
}

TEST(Enumerate, ConjugationOrbits) {
    const FiniteGroup g = named_group("S3");
    const WirtingerPresentation p = presentation(parse_pd(kTrefoil));
    EnumOptions o;
    o.surjective_only = true;
    const EnumResult r = enumerate_homs(p, g, o);
    // S3 acts freely on its 6 surjections from the trefoil group.
    EXPECT_EQ(conjugation_orbit_representatives(g, r.homs).size(), 1u);
}

TEST(Meridional, Examples) {
    const FiniteGroup z5 = named_group("Z5");
    EXPECT_TRUE(is_meridional(z5, {1}));
    const FiniteGroup s3 = named_group("S3");
    EXPECT_FALSE(is_meridional(s3, {find_label(s3, "[2,3,1]")}));
    EXPECT_TRUE(is_meridional(s3, {find_label(s3, "[2,1,3]")}));
    EXPECT_THROW(is_meridional(s3, {}), InvalidArgument);
}

TEST(Peripheral, UnknotLongitudeIsTrivial) {
    const LinkDiagram d = parse_pd("U");
    const FiniteGroup g = named_group("S3");
    for (const Homomorphism& h : enumerate_homs(presentation(d), g).homs) {
        const PeripheralSystem s = peripheral_system(d, g, h);
        EXPECT_EQ(s.mu, h.assignment);
        EXPECT_EQ(s.lambda, std::vector<int>{0});
    }
}

TEST(Peripheral, TrefoilLongitudeInCommutator) {
    const LinkDiagram d = parse_pd(kTrefoil);
    const FiniteGroup g = named_group("S3");
    const Abelianization ab = abelianization(g);
    EnumOptions o;
    o.surjective_only = true;
    for (const Homomorphism& h : enumerate_homs(presentation(d), g, o).homs) {
        const PeripheralSystem s = peripheral_system(d, g, h);
        EXPECT_TRUE(ab.in_commutator(s.lambda[0]));
        EXPECT_TRUE(g.commute(s.mu[0], s.lambda[0]));
    }
}

TEST(Peripheral, HopfImagesCommute) {
    const LinkDiagram d = parse_pd(kHopf);
    const WirtingerPresentation p = presentation(d);
    for (const char* gname : {"S3", "Q8", "A4"}) {
        const FiniteGroup g = named_group(gname);
        const EnumResult r = enumerate_homs(p, g);
        int pairs = 0;
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b) pairs += g.commute(a, b);
        EXPECT_EQ(static_cast<int>(r.homs.size()), pairs) << gname;
        for (const Homomorphism& h : r.homs) {
            const PeripheralSystem s = peripheral_system(d, p, g, h);
            EXPECT_TRUE(g.commute(s.mu[0], s.mu[1]));
            const auto sys = preferred_system(d, p);
            EXPECT_EQ(s.lambda[0], evaluate_word(g, h.assignment, sys[0]));
            // lk = 1: lambda_0 = mu_0^-1 mu_1 in the abelian image.
            EXPECT_EQ(s.lambda[0], g.mul(g.inv(s.mu[0]), s.mu[1]));
        }
    }
}

TEST(Peripheral, RejectsMismatchedHomomorphism) {
    const LinkDiagram d = parse_pd(kTrefoil);
    const FiniteGroup g = named_group("S3");
    Homomorphism h{{0, 0}, &g, false};
    EXPECT_THROW(peripheral_system(d, g, h), InvalidArgument);
}
