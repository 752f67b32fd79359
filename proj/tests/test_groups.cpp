#include "periph/group.hpp"
#include "periph/json.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <map>
#include <set>

using namespace periph;

namespace {

int find_label(const FiniteGroup& g, const std::string& label) {
    for (int a = 0; a < g.order(); ++a)
        if (g.label(a) == label) return a;
    return -1;
}

std::set<int> as_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Build, TrivialGroup) {
    const FiniteGroup g = build_group(CyclicSpec{1});
    EXPECT_EQ(g.order(), 1);
    EXPECT_EQ(g.mul(0, 0), 0);
}

TEST(Build, PermutationClosureGivesS3) {
    const FiniteGroup g = build_group(PermutationSpec{3, {{2, 1, 3}, {2, 3, 1}}});
    EXPECT_EQ(g.order(), 6);
    EXPECT_EQ(g.label(FiniteGroup::identity()), "[1,2,3]");
}

TEST(Build, RejectsBadTables) {
    EXPECT_THROW(build_group(TableSpec{{{0, 1}, {1, 1}}}), InvalidArgument);
    EXPECT_THROW(build_group(TableSpec{{{0, 1}, {1}}}), InvalidArgument);
    // Rows are permutations but the law is not associative.
    EXPECT_THROW(build_group(TableSpec{{{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}}), InvalidArgument);
    EXPECT_THROW(build_group(TableSpec{{{0, 1, 2}, {1, 2, 0}, {2, 1, 0}}}), InvalidArgument);
}

TEST(Build, ClosureCap) {
    EXPECT_THROW(build_group(PermutationSpec{5, {{2, 1, 3, 4, 5}, {2, 3, 4, 5, 1}}}, "S5", 50), CapExceeded);
}

TEST(Build, CatalogAxioms) {
    for (const FiniteGroup& g : catalog()) {
        const int n = g.order();
        for (int a = 0; a < n; ++a) {
            EXPECT_EQ(g.mul(a, 0), a);
            EXPECT_EQ(g.mul(0, a), a);
            EXPECT_EQ(g.mul(a, g.inv(a)), 0);
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c))) << g.name();
        }
    }
}

TEST(Build, CatalogOrders) {
    std::map<std::string, int> want = {{"S3", 6}, {"D4", 8}, {"D5", 10}, {"A4", 12}, {"Q8", 8}, {"Dic3", 12}, {"S4", 24}};
    for (int n = 1; n <= 12; ++n) want["Z" + std::to_string(n)] = n;
    const auto cat = catalog();
    EXPECT_EQ(cat.size(), want.size());
    for (const FiniteGroup& g : cat) EXPECT_EQ(g.order(), want.at(g.name())) << g.name();
    EXPECT_EQ(named_group("Z2xZ2").order(), 4);
    EXPECT_THROW(named_group("Nope"), InvalidArgument);
}

TEST(Product, LeftToRightComposition) {
    const FiniteGroup g = named_group("S3");
    const int x = find_label(g, "[2,1,3]");
    const int y = find_label(g, "[3,2,1]");
    ASSERT_GE(x, 0);
    ASSERT_GE(y, 0);
    // Apply (1 2) then (1 3): 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1.
    EXPECT_EQ(g.label(g.mul(x, y)), "[2,3,1]");
    EXPECT_EQ(evaluate_word(g, {x, y}, Word({{0, 1}, {1, 1}})), g.mul(x, y));
}

TEST(Abelian, CyclicSix) {
    const FiniteGroup g = named_group("Z6");
    const Abelianization ab = abelianization(g);
    EXPECT_EQ(ab.quotient_order, 6);
    EXPECT_TRUE(ab.is_cyclic);
    EXPECT_EQ(ab.commutator_subgroup, std::vector<int>{0});
}

TEST(Abelian, S3) {
    const FiniteGroup g = named_group("S3");
    const Abelianization ab = abelianization(g);
    EXPECT_EQ(ab.quotient_order, 2);
    EXPECT_TRUE(ab.is_cyclic);
    EXPECT_EQ(as_set(ab.commutator_subgroup), as_set({0, find_label(g, "[2,3,1]"), find_label(g, "[3,1,2]")}));
}

TEST(Abelian, Q8IsNotCyclic) {
    const Abelianization ab = abelianization(named_group("Q8"));
    EXPECT_FALSE(ab.is_cyclic);
    EXPECT_EQ(ab.quotient_order, 4);
    EXPECT_EQ(ab.commutator_subgroup.size(), 2u);
}

TEST(Abelian, CatalogQuotients) {
    std::map<std::string, std::pair<int, bool>> want = {{"S3", {2, true}},  {"D4", {4, false}},  {"D5", {2, true}}, {"A4", {3, true}},
                                                        {"Q8", {4, false}}, {"Dic3", {4, true}}, {"S4", {2, true}}};
    for (const FiniteGroup& g : catalog()) {
        const Abelianization ab = abelianization(g);
        if (g.name()[0] == 'Z') {
            EXPECT_EQ(ab.quotient_order, g.order());
            EXPECT_TRUE(ab.is_cyclic);
        } else {
            EXPECT_EQ(ab.quotient_order, want.at(g.name()).first) << g.name();
            EXPECT_EQ(ab.is_cyclic, want.at(g.name()).second) << g.name();
        }
    }
}

TEST(Abelian, ProjectionIsAHomomorphismWithKernelCommutator) {
    for (const FiniteGroup& g : catalog()) {
        const Abelianization ab = abelianization(g);
        if (!ab.is_cyclic) continue;
        const int n = ab.quotient_order;
        std::set<int> kernel, image;
        for (int a = 0; a < g.order(); ++a) {
            image.insert(ab.pr[static_cast<std::size_t>(a)]);
            if (ab.pr[static_cast<std::size_t>(a)] == 0) kernel.insert(a);
            EXPECT_EQ(ab.in_commutator(a), ab.pr[static_cast<std::size_t>(a)] == 0);
            for (int b = 0; b < g.order(); ++b)
                EXPECT_EQ(ab.pr[static_cast<std::size_t>(g.mul(a, b))], (ab.pr[static_cast<std::size_t>(a)] + ab.pr[static_cast<std::size_t>(b)]) % n);
        }
        EXPECT_EQ(static_cast<int>(image.size()), n) << g.name();
        EXPECT_EQ(kernel, as_set(ab.commutator_subgroup)) << g.name();
        EXPECT_EQ(ab.pr[static_cast<std::size_t>(ab.generator)], 1 % n) << g.name();
    }
}

TEST(Abelian, ProjectionOfRandomWords) {
    std::mt19937 rng(7);
    for (const FiniteGroup& g : catalog()) {
        const Abelianization ab = abelianization(g);
        if (!ab.is_cyclic) continue;
        const FiniteGroup zn = build_group(CyclicSpec{ab.quotient_order});
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<int> assignment(3), projected(3);
            for (int k = 0; k < 3; ++k) {
                assignment[static_cast<std::size_t>(k)] = static_cast<int>(rng() % static_cast<unsigned>(g.order()));
                projected[static_cast<std::size_t>(k)] = ab.pr[static_cast<std::size_t>(assignment[static_cast<std::size_t>(k)])];
            }
            std::vector<Letter> letters;
            for (int k = 0; k < 8; ++k) letters.push_back({static_cast<int>(rng() % 3), rng() % 2 ? 1 : -1});
            const Word w(letters);
            EXPECT_EQ(ab.pr[static_cast<std::size_t>(evaluate_word(g, assignment, w))], evaluate_word(zn, projected, w));
        }
    }
}

TEST(Closure, Examples) {
    const FiniteGroup s3 = named_group("S3");
    EXPECT_EQ(normal_closure(s3, {0}), std::vector<int>{0});
    EXPECT_EQ(normal_closure(s3, {find_label(s3, "[2,1,3]")}).size(), 6u);
    const FiniteGroup z4 = named_group("Z4");
    EXPECT_EQ(as_set(normal_closure(z4, {2})), as_set({0, 2}));
}

TEST(Closure, IdempotentAndMonotone) {
    std::mt19937 rng(11);
    for (const FiniteGroup& g : catalog()) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<int> s = {static_cast<int>(rng() % static_cast<unsigned>(g.order()))};
            const std::vector<int> c = normal_closure(g, s);
            EXPECT_EQ(as_set(normal_closure(g, c)), as_set(c));
            s.push_back(static_cast<int>(rng() % static_cast<unsigned>(g.order())));
            const std::set<int> bigger = as_set(normal_closure(g, s));
            for (int a : c) EXPECT_TRUE(bigger.count(a));
            for (int a : c)
                for (int x = 0; x < g.order(); ++x) EXPECT_TRUE(as_set(c).count(g.conj(x, a)));
        }
    }
}

TEST(Conjugacy, Examples) {
    const FiniteGroup g = named_group("S3");
    const int t12 = find_label(g, "[2,1,3]"), t13 = find_label(g, "[3,2,1]"), c = find_label(g, "[2,3,1]");
    EXPECT_EQ(conjugator(g, t12, t12), std::optional<int>(0));
    const auto x = conjugator(g, t12, t13);
    ASSERT_TRUE(x);
    EXPECT_EQ(g.conj(*x, t12), t13);
    EXPECT_FALSE(conjugator(g, t12, c));
}

TEST(Conjugacy, SymmetricAndSmallest) {
    for (const FiniteGroup& g : catalog())
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b) {
                const auto x = conjugator(g, a, b);
                EXPECT_EQ(x.has_value(), conjugator(g, b, a).has_value());
                if (!x) continue;
                EXPECT_EQ(g.conj(*x, a), b);
                for (int y = 0; y < *x; ++y) EXPECT_NE(g.conj(y, a), b);
            }
}

TEST(Words, EvaluateEdgeCases) {
    const FiniteGroup g = named_group("S3");
    EXPECT_EQ(evaluate_word(g, {3}, Word()), 0);
    EXPECT_EQ(evaluate_word(g, {3}, Word({{0, 1}, {0, -1}})), 0);
    EXPECT_THROW(evaluate_word(g, {3}, Word({{1, 1}})), InvalidArgument);
}

TEST(Json, GroupSpecsMatchNamedGroups) {
    const FiniteGroup c = group_from_json(Json::parse(R"({"type":"cyclic","n":6})"));
    EXPECT_EQ(c.order(), 6);
    const FiniteGroup p = group_from_json(Json::parse(R"({"type":"permutation","degree":3,"generators":[[2,1,3],[2,3,1]]})"));
    EXPECT_EQ(p.order(), 6);
    EXPECT_EQ(abelianization(p).quotient_order, 2);
    const FiniteGroup t = group_from_json(Json::parse(R"({"type":"table","table":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]})"));
    EXPECT_FALSE(abelianization(t).is_cyclic);
    EXPECT_EQ(group_from_json(Json("A4")).order(), 12);
    EXPECT_THROW(group_from_json(Json::parse(R"({"type":"cyclic"})")), ParseError);
    EXPECT_THROW(group_from_json(Json::parse(R"({"type":"lie"})")), ParseError);
}

TEST(Json, PresentationParsing) {
    const GroupPresentation p = group_presentation_from_json(Json::parse(R"({"generators":2,"relators":[[[1,2],[2,-1]]]})"));
    EXPECT_EQ(p.generator_count, 2);
    ASSERT_EQ(p.relators.size(), 1u);
    EXPECT_EQ(p.relators[0].size(), 3u);
    EXPECT_THROW(group_presentation_from_json(Json::parse(R"({"generators":2,"relators":[[[3,1]]]})")), ParseError);
    EXPECT_THROW(group_presentation_from_json(Json::parse(R"({"generators":2})")), ParseError);
}
