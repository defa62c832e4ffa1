#include <gtest/gtest.h>

#include <ekr/catalog.hpp>
#include <ekr/group.hpp>

using namespace ekr;

class FieldAxioms : public ::testing::TestWithParam<std::pair<unsigned, unsigned>> {};

TEST_P(FieldAxioms, Hold)
{
  auto [p, e] = GetParam();
  auto F = gf(p, e);
  unsigned q = F.q();
  for (unsigned a = 0; a < q; ++a) {
    EXPECT_EQ(F.add(a, 0), a);
    EXPECT_EQ(F.mul(a, 1), a);
    EXPECT_EQ(F.add(a, F.neg(a)), 0u);
    if (a)
      EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
    for (unsigned b = 0; b < q; ++b) {
      EXPECT_EQ(F.add(a, b), F.add(b, a));
      EXPECT_EQ(F.mul(a, b), F.mul(b, a));
      for (unsigned c = 0; c < q; c += 3)
        EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
    }
  }
  // the primitive element has multiplicative order q - 1
  unsigned w = F.primitive(), x = w, ord = 1;
  while (x != 1) {
    x = F.mul(x, w);
    ++ord;
  }
  EXPECT_EQ(ord, q - 1);
  // Frobenius is additive
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b)
      EXPECT_EQ(F.pow(F.add(a, b), p), F.add(F.pow(a, p), F.pow(b, p)));
}

INSTANTIATE_TEST_SUITE_P(Small, FieldAxioms,
                         ::testing::Values(std::pair{2u, 1u}, std::pair{5u, 1u}, std::pair{2u, 2u},
                                           std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{2u, 4u}));

TEST(Field, Errors)
{
  EXPECT_THROW(gf(4, 1), ekr_error);
  EXPECT_THROW(gf(2, 0), ekr_error);
  EXPECT_THROW(gf(2, 3).inv(0), ekr_error);
}

TEST(Field, MatrixRank)
{
  auto F = gf(2, 1);
  FieldMatrix m{3, {1, 1, 0, 1, 1, 0, 0, 0, 1}};
  EXPECT_EQ(rank(F, m), 2u);
  EXPECT_EQ(rank(F, FieldMatrix::identity(4)), 4u);
}

TEST(Catalog, Orders)
{
  std::pair<char const *, std::size_t> cases[] = {
      {"sym:3", 6},    {"sym:4", 24},   {"sym:5", 120},         {"alt:4", 12},          {"alt:5", 60},
      {"alt:6", 360},  {"agl1:5", 20},  {"agl1:7", 42},         {"agl1:8", 56},         {"agammal1:2,3", 168},
      {"agammal1:3,2", 144}, {"psl2:5", 60}, {"psl2:7", 168},   {"psl2:8", 504},        {"psl2:11", 660},
      {"pgl2:5", 120}, {"asl2:4", 960}, {"agl3_2", 1344},       {"m11", 7920}};
  for (auto [f, order] : cases) {
    auto G = family(f);
    EXPECT_EQ(G.order(), order) << f;
  }
}

TEST(Catalog, Degrees)
{
  EXPECT_EQ(family("psl2:11").degree(), 12u);
  EXPECT_EQ(family("asl2:4").degree(), 16u);
  EXPECT_EQ(family("agl3_2").degree(), 8u);
  EXPECT_EQ(family("agammal1:3,2").degree(), 9u);
  EXPECT_EQ(family("m11").degree(), 11u);
}

TEST(Catalog, ParseAndRender)
{
  auto f = parse_family("agammal1:3,2");
  EXPECT_EQ(f.tag, "agammal1");
  EXPECT_EQ(f.params, (std::vector<unsigned>{3, 2}));
  EXPECT_EQ(family_string(f), "agammal1:3,2");
  EXPECT_EQ(family_string(parse_family("m11")), "m11");
  EXPECT_THROW(parse_family("sym:x"), ekr_error);
  EXPECT_THROW(parse_family("sym:"), ekr_error);
  EXPECT_THROW(parse_family("agl1:5,"), ekr_error);
  EXPECT_THROW(family("nosuch:3"), ekr_error);
  EXPECT_THROW(family("asl2:3"), ekr_error);
  EXPECT_THROW(family("sym:1"), ekr_error);
}

TEST(Catalog, AffineAction)
{
  auto F = gf(3, 1);
  // x -> 2x + 1 on GF(3)
  FieldMatrix m{2, {2, 1, 0, 1}};
  auto p = affine_permutation(F, m);
  EXPECT_EQ(p[0], 1);
  EXPECT_EQ(p[1], 0);
  EXPECT_EQ(p[2], 2);
}

TEST(GroupSpec, RoundTrip)
{
  GroupSpecFile spec{std::string("c5"), 5, {{1, 2, 3, 4, 0}}};
  auto text = emit_group_spec(spec);
  EXPECT_EQ(parse_group_spec(text), spec);
  EXPECT_EQ(generate(spec).order(), 5u);
}

TEST(GroupSpec, OneBasedAndErrors)
{
  auto spec = parse_group_spec(R"({"degree": 3, "one_based": true, "generators": [[2, 3, 1]]})");
  EXPECT_EQ(spec.generators[0], (std::vector<point_t>{1, 2, 0}));
  EXPECT_THROW(parse_group_spec("{"), ekr_error);
  EXPECT_THROW(parse_group_spec(R"({"degree": 3, "generators": [[0, 0, 1]]})"), ekr_error);
  EXPECT_THROW(parse_group_spec(R"({"degree": 3, "generators": [[0, 1]]})"), ekr_error);
  EXPECT_THROW(parse_group_spec(R"({"generators": []})"), ekr_error);
  EXPECT_THROW(parse_group_spec(R"({"degree": 2, "generators": [[0, 5]]})"), ekr_error);
}
