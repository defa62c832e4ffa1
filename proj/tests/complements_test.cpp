#include <gtest/gtest.h>

#include <ekr/catalog.hpp>
#include <ekr/complements.hpp>
#include <ekr/ekr_module.hpp>

using namespace ekr;

TEST(Asl24Example, NonstandardCoclique)
{
  auto ex = asl2_nonstandard_example();
  auto const &G = ex.group;
  EXPECT_EQ(G.element_order(ex.t), 2u);
  EXPECT_EQ(G.element_order(ex.u), 2u);
  EXPECT_EQ(G.element_order(ex.s), 5u);
  EXPECT_EQ(ex.standard, point_stabilizer(G, 0));
  EXPECT_EQ(ex.nonstandard.size(), 60u);
  auto N = regular_normal_subgroups(G)->front();
  auto r = complement_coclique_test(G, N, ex.nonstandard);
  EXPECT_TRUE(r.is_complement);
  EXPECT_FALSE(r.is_standard);
  EXPECT_TRUE(r.is_coclique);
  EXPECT_TRUE(is_coclique(G, ex.nonstandard));
  EXPECT_FALSE(canonical_match(G, ex.nonstandard));
  EXPECT_TRUE(module_check(G, ex.nonstandard).holds);
  EXPECT_TRUE(p_element_shortcut_test(G, N, ex.nonstandard, 2));
}

TEST(Agl32Example, RanksAndDerangement)
{
  auto ex = agl32_nonstandard_example();
  auto const &G = ex.group;
  EXPECT_EQ(G.element_order(ex.a), 2u);
  EXPECT_EQ(G.element_order(ex.u), 2u);
  EXPECT_EQ(G.element_order(ex.s), 7u);
  EXPECT_EQ(ex.rank_a_minus_1, 1u);
  EXPECT_EQ(ex.rank_au_minus_1, 2u);
  EXPECT_TRUE(G.is_derangement(ex.au));
  EXPECT_EQ(ex.standard, point_stabilizer(G, 0));
  auto N = regular_normal_subgroups(G)->front();
  auto r = complement_coclique_test(G, N, ex.nonstandard);
  EXPECT_TRUE(r.is_complement);
  EXPECT_FALSE(r.is_standard);
  EXPECT_FALSE(r.is_coclique);
  EXPECT_FALSE(p_element_shortcut_test(G, N, ex.nonstandard, 2));
}

TEST(FindComplements, ClassCounts)
{
  struct Case {
    char const *family;
    std::size_t classes, cocliques;
  };
  for (auto [f, classes, cocliques] : {Case{"agl1:5", 1, 1}, Case{"asl2:4", 4, 4}, Case{"agl3_2", 2, 1}}) {
    auto G = family(f);
    auto N = regular_normal_subgroups(G)->front();
    auto R = find_complements(G, N);
    EXPECT_TRUE(R.complete);
    ASSERT_EQ(R.classes.size(), classes) << f;
    EXPECT_TRUE(R.classes.front().representative.is_standard);
    std::size_t cc = 0;
    for (auto const &c : R.classes)
      cc += c.representative.is_coclique;
    EXPECT_EQ(cc, cocliques) << f;
  }
}

TEST(FindComplements, ShortcutAgreesWithFullTest)
{
  for (auto [f, p] : {std::pair{"asl2:4", 2u}, std::pair{"agl3_2", 2u}, std::pair{"agammal1:3,2", 3u}}) {
    auto G = family(f);
    auto N = regular_normal_subgroups(G)->front();
    for (auto const &c : find_complements(G, N).classes)
      EXPECT_EQ(p_element_shortcut_test(G, N, c.representative.subgroup, p), c.representative.is_coclique) << f;
  }
}

TEST(FindComplements, BudgetAndValidation)
{
  auto G = family("asl2:4");
  auto N = regular_normal_subgroups(G)->front();
  EXPECT_FALSE(find_complements(G, N, 10).complete);
  EXPECT_THROW(find_complements(G, point_stabilizer(G, 0)), ekr_error);
  EXPECT_THROW(p_element_shortcut_test(G, N, N, 2), ekr_error);
  index_t g = 1;
  while (G.element_order(g) < 3)
    ++g;
  EXPECT_THROW(complement_coclique_test(G, N, ElementSet{0, g}), ekr_error);
}

TEST(Standardness, ConjugatesOfStabilizer)
{
  auto G = family("agl1:7");
  auto H = point_stabilizer(G, 0);
  for (index_t g = 0; g < G.order(); g += 5)
    EXPECT_TRUE(is_conjugate_to_stabilizer(G, conjugate_set(G, H, g)));
}
