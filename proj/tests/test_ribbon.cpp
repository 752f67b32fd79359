#include "periph/realize.hpp"
#include "periph/ribbon.hpp"

#include <gtest/gtest.h>

using namespace periph;

namespace {

int find_label(const FiniteGroup& g, const std::string& label) {
    for (int a = 0; a < g.order(); ++a)
        if (g.label(a) == label) return a;
    throw InvalidArgument("no element " + label);
}

struct Case {
    const char* group;
    int components;
    std::uint64_t seed;
};

const std::vector<Case> kCases = {
    {"Z4", 1, 1}, {"Z4", 2, 2}, {"S3", 1, 3}, {"S3", 2, 4}, {"S3", 3, 5}, {"D4", 2, 6},
    {"D4", 3, 7}, {"A4", 1, 8}, {"A4", 2, 9}, {"Z4", 1, 10}, {"S3", 1, 11}, {"D4", 2, 12},
};

void expect_valid_ribbon(const FiniteGroup& g, const RibbonInput& in, const RibbonLink& link) {
    const LinkDiagram& d = link.diagram;
    const WirtingerPresentation p = presentation(d);
    ASSERT_EQ(static_cast<int>(link.hom.assignment.size()), p.generator_count);
    EXPECT_TRUE(satisfies(as_group_presentation(p), g, link.hom.assignment));
    EXPECT_TRUE(generates(g, link.hom.assignment));
    EXPECT_EQ(d.component_count(), in.component_count());
    EXPECT_EQ(ribbon_meridians(link), in.mu());
    for (int i = 0; i < d.component_count(); ++i)
        for (int j = i + 1; j < d.component_count(); ++j) EXPECT_EQ(linking_number(d, i, j), 0);
    int bands = 0;
    for (const auto& row : in.elements) bands += static_cast<int>(row.size()) - 1;
    EXPECT_EQ(link.band_count, bands);
    std::vector<int> by_component(static_cast<std::size_t>(d.component_count()));
    for (int i = 0; i < in.component_count(); ++i)
        by_component[static_cast<std::size_t>(link.component_index[static_cast<std::size_t>(i)])] = in.mu()[static_cast<std::size_t>(i)];
    EXPECT_TRUE(verify_realization(d, g, link.hom, by_component));
}

}  // namespace

TEST(Ribbon, SymmetricGroupExample) {
    const FiniteGroup g = named_group("S3");
    const int a = find_label(g, "[2,1,3]"), b = find_label(g, "[3,2,1]");
    RibbonInput in;
    in.elements = {{a, b}};
    in.words = {{Word{}, Word(std::vector<Letter>{{0, 1}, {1, 1}})}};
    ASSERT_NO_THROW(in.validate(g));
    const RibbonLink link = construct_ribbon(g, in);
    expect_valid_ribbon(g, in, link);
    EXPECT_EQ(link.band_count, 1);
    EXPECT_EQ(ribbon_meridians(link), std::vector<int>{a});
}

TEST(Ribbon, GeneratedInputsRoundTrip) {
    int built = 0;
    for (const Case& c : kCases) {
        const FiniteGroup g = named_group(c.group);
        const RibbonInput in = random_ribbon_input(g, c.components, c.seed);
        ASSERT_NO_THROW(in.validate(g)) << c.group;
        const RibbonLink link = construct_ribbon(g, in);
        SCOPED_TRACE(std::string(c.group) + " r=" + std::to_string(c.components));
        expect_valid_ribbon(g, in, link);
        ++built;
    }
    EXPECT_GE(built, 10);
}

TEST(Ribbon, EnumerationRediscoversLabelling) {
    for (const Case& c : kCases) {
        const FiniteGroup g = named_group(c.group);
        const RibbonInput in = random_ribbon_input(g, c.components, c.seed);
        const RibbonLink link = construct_ribbon(g, in);
        const WirtingerPresentation p = presentation(link.diagram);
        std::vector<std::optional<std::vector<int>>> allowed(static_cast<std::size_t>(link.diagram.component_count()));
        for (int i = 0; i < in.component_count(); ++i)
            allowed[static_cast<std::size_t>(link.component_index[static_cast<std::size_t>(i)])] = std::vector<int>{in.mu()[static_cast<std::size_t>(i)]};
        EnumOptions o;
        o.allowed = meridian_constraints(p, g, allowed);
        o.surjective_only = true;
        const EnumResult r = enumerate_homs(p, g, o);
        ASSERT_TRUE(r.complete) << c.group;
        EXPECT_NE(std::find(r.homs.begin(), r.homs.end(), link.hom), r.homs.end()) << c.group;
    }
}

TEST(Ribbon, DeterministicForFixedSeed) {
    const FiniteGroup g = named_group("A4");
    const RibbonInput a = random_ribbon_input(g, 2, 42), b = random_ribbon_input(g, 2, 42);
    EXPECT_EQ(a.elements, b.elements);
    EXPECT_EQ(construct_ribbon(g, a).diagram, construct_ribbon(g, b).diagram);
}

TEST(Ribbon, ProductAndInverseStayInTheRealizableGroup) {
    const FiniteGroup g = named_group("S3");
    const RibbonInput in = random_ribbon_input(g, 2, 4);
    const RibbonLink link = construct_ribbon(g, in);
    const LabelledDiagram a{link.diagram, link.hom};
    const PeripheralSystem s = peripheral_system(a.diagram, g, a.hom);
    const LabelledDiagram inv = labelled_inverse(a, g);
    const LabelledDiagram unit = labelled_sum(a, inv, g);
    EXPECT_TRUE(verify_realization(unit.diagram, g, unit.hom, s.mu, std::vector<int>(s.mu.size(), FiniteGroup::identity())));
    const LabelledDiagram twice = labelled_sum(a, a, g);
    std::vector<int> squared;
    for (int l : s.lambda) squared.push_back(g.mul(l, l));
    EXPECT_TRUE(verify_realization(twice.diagram, g, twice.hom, s.mu, squared));
}

TEST(Ribbon, RejectsInvalidInputs) {
    const FiniteGroup g = named_group("S3");
    const int a = find_label(g, "[2,1,3]"), b = find_label(g, "[3,2,1]"), c = find_label(g, "[2,3,1]");
    RibbonInput wrong_word;
    wrong_word.elements = {{a, b}};
    wrong_word.words = {{Word{}, Word(std::vector<Letter>{{0, 1}})}};
    EXPECT_THROW(construct_ribbon(g, wrong_word), InvalidArgument);

    RibbonInput not_generating;
    not_generating.elements = {{a}};
    not_generating.words = {{Word{}}};
    EXPECT_THROW(construct_ribbon(g, not_generating), InvalidArgument);

    RibbonInput nonempty_first;
    nonempty_first.elements = {{a, b}};
    nonempty_first.words = {{Word(std::vector<Letter>{{0, 1}}), Word(std::vector<Letter>{{0, 1}, {1, 1}})}};
    EXPECT_THROW(construct_ribbon(g, nonempty_first), InvalidArgument);

    RibbonInput bad_letter;
    bad_letter.elements = {{a, b}};
    bad_letter.words = {{Word{}, Word(std::vector<Letter>{{5, 1}})}};
    EXPECT_THROW(construct_ribbon(g, bad_letter), InvalidArgument);

    RibbonInput ragged;
    ragged.elements = {{a, c}};
    ragged.words = {{Word{}}};
    EXPECT_THROW(construct_ribbon(g, ragged), InvalidArgument);

    EXPECT_THROW(construct_ribbon(g, RibbonInput{}), InvalidArgument);
    EXPECT_THROW(random_ribbon_input(g, 0, 1), InvalidArgument);
}
