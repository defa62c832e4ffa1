#pragma once

#include <vector>

#include "group.hpp"
#include "spectra.hpp"

namespace ekr {

/// g ~ h in the derangement graph iff g h^-1 is fixed-point-free, i.e. no point
/// has the same image under g and h.
inline bool adjacent(GroupTable const &G, index_t g, index_t h)
{
  return agreement(G.images(g), G.images(h)) == 0;
}

struct ComponentStructure {
  ElementSet generated;
  std::size_t component_count = 0;
  bool is_connected = false;
};

/// Components of the Cayley graph are the cosets of the subgroup generated by Der.
inline ComponentStructure connectivity(GroupTable const &G, DerangementSet const &D)
{
  ComponentStructure S;
  S.generated = subgroup_generated(G, D.indices);
  S.component_count = G.order() / S.generated.size();
  S.is_connected = S.component_count == 1;
  return S;
}

inline ComponentStructure connectivity(GroupTable const &G) { return connectivity(G, derangements(G)); }

inline bool is_normal(GroupTable const &G, ElementSet const &N)
{
  std::vector<bool> in(G.order(), false);
  for (index_t u : N)
    in[u] = true;
  for (index_t g : G.generators())
    for (index_t u : N)
      if (!in[G.conjugate(u, g)])
        return false;
  return true;
}

inline bool is_regular_normal(GroupTable const &G, ElementSet const &N)
{
  if (N.size() != G.degree() || !is_subgroup(G, N) || !is_normal(G, N))
    return false;
  for (index_t u : N)
    if (u != GroupTable::identity() && !G.is_derangement(u))
      return false;
  return true;
}

struct CosetFlag {
  index_t h = 0;             // coset representative in the stabilizer of point 0
  bool direct = false;       // Nh contains a fixed-point-free element
  bool centralizer = false;  // h commutes with some nonidentity u in N
};

/// Per-coset derangement flags for the cosets Nh, h in G_0, computed both by
/// scanning the coset and by the centralizer criterion.
inline std::vector<CosetFlag> coset_derangement_profile(GroupTable const &G, ElementSet const &N)
{
  if (!is_regular_normal(G, N))
    throw ekr_error("coset_derangement_profile: N is not a regular normal subgroup");
  std::vector<CosetFlag> out;
  for (index_t h : point_stabilizer(G, 0)) {
    CosetFlag f{h, false, false};
    for (index_t u : N) {
      if (G.is_derangement(G.multiply(u, h)))
        f.direct = true;
      if (u != GroupTable::identity() && G.multiply(h, u) == G.multiply(u, h))
        f.centralizer = true;
    }
    out.push_back(f);
  }
  return out;
}

struct TwoPointGeneration {
  ElementSet derangement_span;  // <Der>
  ElementSet stabilizer_span;   // <N and all H_y, y != 0>
  bool equal = false;
};

inline TwoPointGeneration two_point_stabilizer_generation(GroupTable const &G, DerangementSet const &D,
                                                          ElementSet const &N)
{
  if (!is_regular_normal(G, N))
    throw ekr_error("two_point_stabilizer_generation: N is not a regular normal subgroup");
  if (!is_2transitive(G))
    throw ekr_error("two_point_stabilizer_generation: group is not 2-transitive");
  TwoPointGeneration T;
  T.derangement_span = subgroup_generated(G, D.indices);
  ElementSet seed = N;
  for (index_t g = 0; g < G.order(); ++g) {
    auto im = G.images(g);
    if (im[0] != 0)
      continue;
    for (std::size_t y = 1; y < G.degree(); ++y)
      if (im[y] == y) {
        seed.push_back(g);
        break;
      }
  }
  T.stabilizer_span = subgroup_generated(G, seed);
  T.equal = T.derangement_span == T.stabilizer_span;
  return T;
}

/// True iff Der together with the identity is a subgroup; the graph is then a
/// disjoint union of complete graphs on its cosets.
inline bool is_disjoint_clique_union(GroupTable const &G, DerangementSet const &D)
{
  ElementSet set{GroupTable::identity()};
  set.insert(set.end(), D.indices.begin(), D.indices.end());
  return is_subgroup(G, set);
}

/// True iff no nonidentity element fixes two points (two-point stabilizers are trivial).
inline bool has_trivial_two_point_stabilizers(GroupTable const &G)
{
  for (index_t g = 1; g < G.order(); ++g)
    if (G.fixed_point_count(g) >= 2)
      return false;
  return true;
}

class integrality_error : public ekr_error {
public:
  using ekr_error::ekr_error;
};

struct EquitableResult {
  bool holds = false;
  std::size_t expected = 0;          // d / (n - 1)
  std::optional<index_t> violator;   // first outside vertex with a different count
};

/// Tests whether {S, G \ S} is an equitable partition for a coclique of size |G|/n.
inline EquitableResult equitable_check(GroupTable const &G, DerangementSet const &D, ElementSet const &S)
{
  std::size_t n = G.degree();
  if (S.size() * n != G.order())
    throw ekr_error("equitable_check: S must have exactly |G|/n elements");
  for (std::size_t a = 0; a < S.size(); ++a)
    for (std::size_t b = a + 1; b < S.size(); ++b)
      if (adjacent(G, S[a], S[b]))
        throw ekr_error("equitable_check: S is not a coclique");
  if (D.d() % (n - 1) != 0)
    throw integrality_error("equitable_check: n - 1 does not divide the number of derangements");

  EquitableResult R;
  R.expected = D.d() / (n - 1);
  std::vector<bool> in(G.order(), false);
  for (index_t s : S)
    in[s] = true;
  for (index_t v = 0; v < G.order(); ++v) {
    if (in[v])
      continue;
    std::size_t count = 0;
    for (index_t s : S)
      count += adjacent(G, v, s);
    if (count != R.expected) {
      R.violator = v;
      return R;
    }
  }
  R.holds = true;
  return R;
}

} // namespace ekr
