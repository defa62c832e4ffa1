// Invariant suite over the whole corpus; runs standalone in well under a minute.

#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <random>

#include <ekr/corpus.hpp>

#include "oracles.hpp"

using namespace ekr;

namespace {

CorpusEntry const &corpus(std::string const &f)
{
  static std::map<std::string, std::unique_ptr<CorpusEntry>> cache;
  auto &slot = cache[f];
  if (!slot)
    slot = load_corpus_entry(f);
  return *slot;
}

class Corpus : public ::testing::TestWithParam<std::string> {};

std::string label(::testing::TestParamInfo<std::string> const &info)
{
  std::string s;
  for (char c : info.param)
    s += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return s;
}

} // namespace

TEST_P(Corpus, ElementsAreBijectionsAndClosedUnderProducts)
{
  auto const &G = corpus(GetParam()).G;
  for (index_t g = 0; g < G.order(); ++g) {
    ASSERT_TRUE(Permutation::is_bijection(G.images(g)));
    ASSERT_EQ(G.multiply(g, G.inverse(g)), GroupTable::identity());
  }
  std::mt19937 rng(17);
  std::uniform_int_distribution<index_t> pick(0, static_cast<index_t>(G.order() - 1));
  for (int trial = 0; trial < 500; ++trial) {
    index_t a = pick(rng), b = pick(rng), c = pick(rng);
    ASSERT_EQ(G.element(G.multiply(a, b)), G.element(a) * G.element(b));
    ASSERT_EQ(G.multiply(G.multiply(a, b), c), G.multiply(a, G.multiply(b, c)));
  }
}

TEST_P(Corpus, ClassEquation)
{
  auto const &e = corpus(GetParam());
  std::size_t total = 0;
  for (std::size_t c = 0; c < e.C.count(); ++c) {
    ASSERT_EQ(e.G.order() % e.C.sizes[c], 0u);
    total += e.C.sizes[c];
    EXPECT_EQ(e.C.class_of[e.G.inverse(e.C.representatives[c])], e.C.inverse_class[c]);
  }
  EXPECT_EQ(total, e.G.order());
}

TEST_P(Corpus, PsiOrthogonality)
{
  auto const &e = corpus(GetParam());
  auto psi = psi_values(e.G, e.C);
  long long sum = 0, squares = 0, der = 0;
  for (std::size_t c = 0; c < e.C.count(); ++c) {
    auto s = static_cast<long long>(e.C.sizes[c]);
    sum += psi.by_class[c] * s;
    squares += psi.by_class[c] * psi.by_class[c] * s;
  }
  for (index_t d : e.D.indices)
    der += static_cast<long long>(e.G.fixed_point_count(d));
  EXPECT_EQ(sum, 0);
  EXPECT_EQ(squares, static_cast<long long>(e.G.order()));
  EXPECT_EQ(der, 0);
}

TEST_P(Corpus, CocliquePairwiseTest)
{
  auto const &e = corpus(GetParam());
  auto const &G = e.G;
  std::mt19937 rng(5);
  std::uniform_int_distribution<index_t> pick(0, static_cast<index_t>(G.order() - 1));
  for (int trial = 0; trial < 200; ++trial) {
    std::set<index_t> s;
    while (s.size() < 2 + static_cast<std::size_t>(trial % 4))
      s.insert(pick(rng));
    ElementSet S(s.begin(), s.end());
    bool expect = true;
    for (auto a : S)
      for (auto b : S)
        if (a < b) {
          auto ia = G.images(a), ib = G.images(b);
          expect = expect && oracle::intersecting({ia.begin(), ia.end()}, {ib.begin(), ib.end()});
        }
    ASSERT_EQ(is_coclique(G, S), expect);
  }
  for (std::size_t k = 0; k < e.canonical.size(); k += 7)
    EXPECT_TRUE(is_coclique(G, e.canonical[k]));
}

TEST_P(Corpus, ClassSumColumnIdentity)
{
  auto const &e = corpus(GetParam());
  auto M = class_sum_matrix(e.G, e.C, e.D);
  for (std::size_t j = 0; j < M.k; ++j) {
    BigInt col = 0;
    for (std::size_t i = 0; i < M.k; ++i)
      col += M.entries(i, j) * e.C.sizes[i];
    EXPECT_EQ(col, BigInt(e.D.d()) * e.C.sizes[j]);
    long long identity_row = e.D.contains(e.C.representatives[e.C.inverse_class[j]]) ? e.C.sizes[j] : 0;
    EXPECT_EQ(M.at(0, j), identity_row);
  }
}

TEST_P(Corpus, DerangementSetIsNormalAndInverseClosed)
{
  auto const &e = corpus(GetParam());
  for (index_t d : e.D.indices) {
    ASSERT_TRUE(e.D.contains(e.G.inverse(d)));
    for (index_t g : e.G.generators())
      ASSERT_TRUE(e.D.contains(e.G.conjugate(d, g)));
  }
  EXPECT_FALSE(e.D.contains(GroupTable::identity()));
}

TEST_P(Corpus, LibraryInvariantSweep) { EXPECT_FALSE(CorpusRunner::invariant_failure(corpus(GetParam()))); }

INSTANTIATE_TEST_SUITE_P(All, Corpus, ::testing::ValuesIn(corpus_families()), label);
