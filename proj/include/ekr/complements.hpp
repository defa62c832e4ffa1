#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "catalog.hpp"
#include "dergraph.hpp"
#include "group.hpp"

namespace ekr {

struct ComplementReport {
  ElementSet subgroup;
  bool is_complement = false;  // K meets N trivially and |K||N| = |G|
  bool is_standard = false;    // G-conjugate to the stabilizer of point 0
  bool is_coclique = false;
  std::optional<index_t> derangement_witness;
};

/// g^-1 K g, sorted.
inline ElementSet conjugate_set(GroupTable const &G, ElementSet const &K, index_t g)
{
  ElementSet out;
  out.reserve(K.size());
  for (index_t k : K)
    out.push_back(G.conjugate(k, g));
  std::sort(out.begin(), out.end());
  return out;
}

/// Searches all g for g^-1 K g inside the stabilizer of point 0.
inline bool is_conjugate_to_stabilizer(GroupTable const &G, ElementSet const &K)
{
  if (K.size() * G.degree() != G.order())
    return false;
  for (index_t g = 0; g < G.order(); ++g) {
    bool inside = std::all_of(K.begin(), K.end(), [&](index_t k) { return G.images(G.conjugate(k, g))[0] == 0; });
    if (inside)
      return true;
  }
  return false;
}

/// For a transitive group an element is conjugate into a point stabilizer iff it
/// has a fixed point, so K is a coclique iff it contains no derangement.
inline ComplementReport complement_coclique_test(GroupTable const &G, ElementSet const &N, ElementSet const &K)
{
  if (!is_subgroup(G, K))
    throw ekr_error("complement_coclique_test: K is not a subgroup");
  ComplementReport R;
  R.subgroup = K;
  R.is_complement = set_intersection(K, N).size() == 1 && K.size() * N.size() == G.order();
  for (index_t k : K)
    if (G.is_derangement(k)) {
      R.derangement_witness = k;
      break;
    }
  R.is_coclique = !R.derangement_witness;
  R.is_standard = is_conjugate_to_stabilizer(G, K);
  return R;
}

inline bool is_power_of(std::size_t x, unsigned p)
{
  while (x > 1 && x % p == 0)
    x /= p;
  return x == 1;
}

/// True iff every element of K whose order is a power of p has a fixed point.
inline bool p_element_shortcut_test(GroupTable const &G, ElementSet const &N, ElementSet const &K, unsigned p)
{
  if (!is_regular_normal(G, N))
    throw ekr_error("p_element_shortcut_test: N is not a regular normal subgroup");
  for (index_t u : N)
    if (u != GroupTable::identity() && G.element_order(u) != p)
      throw ekr_error("p_element_shortcut_test: N is not an elementary abelian p-group");
  if (!is_subgroup(G, K) || set_intersection(K, N).size() != 1 || K.size() * N.size() != G.order())
    throw ekr_error("p_element_shortcut_test: K is not a complement to N");
  for (index_t k : K)
    if (is_power_of(G.element_order(k), p) && G.is_derangement(k))
      return false;
  return true;
}

/// A generating set of the subgroup H with as few elements as a search over
/// singletons, then pairs, then triples finds.
inline std::vector<index_t> small_generating_set(GroupTable const &G, ElementSet const &H)
{
  std::vector<index_t> by_order(H.begin(), H.end());
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](index_t a, index_t b) { return G.element_order(a) > G.element_order(b); });
  auto generates = [&](std::vector<index_t> const &gens) {
    auto cl = closure_bounded(G, gens, H.size());
    return cl && cl->size() == H.size();
  };
  if (H.size() == 1)
    return {};
  for (index_t a : by_order)
    if (generates({a}))
      return {a};
  for (index_t a : by_order)
    for (index_t b : H)
      if (generates({a, b}))
        return {a, b};
  for (index_t a : by_order)
    for (index_t b : H)
      for (index_t c : H)
        if (generates({a, b, c}))
          return {a, b, c};
  return std::vector<index_t>(H.begin(), H.end());
}

struct ComplementClass {
  ComplementReport representative;
  std::size_t members = 0;  // complements found in this G-conjugacy class
};

struct ComplementSearch {
  std::vector<index_t> stabilizer_generators;
  std::vector<ComplementClass> classes;  // the standard class first
  std::size_t complements_found = 0;
  bool complete = false;
  std::uint64_t steps = 0;
};

inline constexpr std::uint64_t default_complement_budget = 10'000'000;

/// Complements to N found by lifting generators h_i of G_0 to u_i h_i (u_i in N)
/// and closing, then grouped into G-conjugacy classes.
inline ComplementSearch find_complements(GroupTable const &G, ElementSet const &N,
                                         std::uint64_t budget = default_complement_budget)
{
  if (!is_regular_normal(G, N))
    throw ekr_error("find_complements: N is not a regular normal subgroup");
  ComplementSearch out;
  auto H = point_stabilizer(G, 0);
  out.stabilizer_generators = small_generating_set(G, H);
  auto const &hs = out.stabilizer_generators;

  std::vector<std::vector<index_t>> lifts;
  for (index_t h : hs) {
    std::vector<index_t> options;
    for (index_t u : N) {
      index_t k = G.multiply(u, h);
      if (G.element_order(k) == G.element_order(h))
        options.push_back(k);
    }
    lifts.push_back(std::move(options));
  }

  std::set<ElementSet> distinct;
  std::vector<std::size_t> pick(hs.size(), 0);
  bool done = hs.empty() || std::any_of(lifts.begin(), lifts.end(), [](auto const &l) { return l.empty(); });
  if (hs.empty())
    distinct.insert(H);
  out.complete = true;
  while (!done) {
    std::vector<index_t> gens;
    for (std::size_t i = 0; i < hs.size(); ++i)
      gens.push_back(lifts[i][pick[i]]);
    out.steps += H.size() * gens.size();
    if (out.steps > budget) {
      out.complete = false;
      break;
    }
    auto K = closure_bounded(G, gens, H.size());
    if (K && K->size() == H.size() && set_intersection(*K, N).size() == 1)
      distinct.insert(std::move(*K));

    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < lifts[i].size())
        break;
      pick[i] = 0;
    }
    done = i == pick.size();
  }
  out.complements_found = distinct.size();

  std::set<ElementSet> assigned;
  for (auto const &K : distinct) {
    if (assigned.contains(K))
      continue;
    ComplementClass cls{complement_coclique_test(G, N, K), 0};
    for (index_t g = 0; g < G.order(); ++g) {
      auto conj = conjugate_set(G, K, g);
      if (distinct.contains(conj) && assigned.insert(conj).second)
        ++cls.members;
    }
    out.classes.push_back(std::move(cls));
  }
  std::stable_partition(out.classes.begin(), out.classes.end(),
                        [](ComplementClass const &c) { return c.representative.is_standard; });
  return out;
}

/// ASL_2(4) with the affine 3x3 matrices t, u, s over GF(4) (s uses a primitive
/// element), the standard complement <t, s> and the complement <tu, s>.
struct Asl2Example {
  GroupTable group;
  FiniteField field;
  index_t t = 0, u = 0, s = 0, tu = 0;
  ElementSet standard;
  ElementSet nonstandard;
};

inline Asl2Example asl2_nonstandard_example()
{
  auto F = gf(2, 2);
  unsigned alpha = F.primitive();
  FieldMatrix t{3, {1, 0, 0, 1, 1, 0, 0, 0, 1}};
  FieldMatrix u{3, {1, 0, 0, 0, 1, 1, 0, 0, 1}};
  FieldMatrix s{3, {0, 1, 0, 1, alpha, 0, 0, 0, 1}};
  Asl2Example ex{family("asl2:4"), F};
  auto const &G = ex.group;
  ex.t = G.index_of(affine_permutation(F, t));
  ex.u = G.index_of(affine_permutation(F, u));
  ex.s = G.index_of(affine_permutation(F, s));
  ex.tu = G.index_of(affine_permutation(F, multiply(F, t, u)));
  index_t std_gens[] = {ex.t, ex.s};
  index_t non_gens[] = {ex.tu, ex.s};
  ex.standard = subgroup_generated(G, std_gens);
  ex.nonstandard = subgroup_generated(G, non_gens);
  return ex;
}

/// AGL_3(2) with the affine 4x4 matrices a, u, s over GF(2), the complement
/// <au, s>, and the GF(2) ranks of a - 1 and au - 1.
struct Agl32Example {
  GroupTable group;
  index_t a = 0, u = 0, s = 0, au = 0;
  ElementSet standard;
  ElementSet nonstandard;
  std::size_t rank_a_minus_1 = 0;
  std::size_t rank_au_minus_1 = 0;
};

inline Agl32Example agl32_nonstandard_example()
{
  auto F = gf(2, 1);
  FieldMatrix a{4, {1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}};
  FieldMatrix u{4, {1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1}};
  FieldMatrix s{4, {0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1}};
  FieldMatrix au = multiply(F, a, u);
  auto minus_identity = [&](FieldMatrix m) {
    for (std::size_t i = 0; i < m.dim; ++i)
      m(i, i) = F.sub(m(i, i), 1);
    return m;
  };

  Agl32Example ex{family("agl3_2")};
  auto const &G = ex.group;
  ex.a = G.index_of(affine_permutation(F, a));
  ex.u = G.index_of(affine_permutation(F, u));
  ex.s = G.index_of(affine_permutation(F, s));
  ex.au = G.index_of(affine_permutation(F, au));
  index_t std_gens[] = {ex.a, ex.s};
  index_t non_gens[] = {ex.au, ex.s};
  ex.standard = subgroup_generated(G, std_gens);
  ex.nonstandard = subgroup_generated(G, non_gens);
  ex.rank_a_minus_1 = rank(F, minus_identity(a));
  ex.rank_au_minus_1 = rank(F, minus_identity(au));
  return ex;
}

} // namespace ekr
