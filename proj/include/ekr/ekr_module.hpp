#pragma once

#include <optional>
#include <vector>

#include "cocliques.hpp"
#include "group.hpp"
#include "rational.hpp"

namespace ekr {

/// psi = chi - 1 evaluated on each conjugacy class, where chi counts fixed points.
struct PsiValues {
  std::vector<long long> by_class;
  long long degree = 0;
};

inline PsiValues psi_values(GroupTable const &G, ConjugacyClasses const &C)
{
  PsiValues P;
  for (index_t r : C.representatives)
    P.by_class.push_back(static_cast<long long>(G.fixed_point_count(r)) - 1);
  P.degree = static_cast<long long>(G.degree()) - 1;
  return P;
}

/// Sum over s in S of psi(s y^-1). The fixed points of s y^-1 are the points
/// where s and y agree, so no group multiplication is needed.
inline long long coefficient_sum(GroupTable const &G, ElementSet const &S, index_t y)
{
  auto yim = G.images(y);
  long long total = 0;
  for (index_t s : S)
    total += static_cast<long long>(agreement(G.images(s), yim)) - 1;
  return total;
}

/// Same sum, evaluated through the class of s y^-1 and the class table of psi.
inline long long coefficient_sum_classwise(GroupTable const &G, ConjugacyClasses const &C, PsiValues const &psi,
                                           ElementSet const &S, index_t y)
{
  index_t y_inv = G.inverse(y);
  long long total = 0;
  for (index_t s : S)
    total += psi.by_class[C.class_of[G.multiply(s, y_inv)]];
  return total;
}

namespace detail {

inline void require_maximum_coclique(GroupTable const &G, ElementSet const &S, char const *who)
{
  if (S.size() * G.degree() != G.order())
    throw ekr_error(std::string(who) + ": S must have exactly |G|/n elements");
  if (!is_coclique(G, S))
    throw ekr_error(std::string(who) + ": S is not a coclique");
}

inline std::vector<bool> membership(GroupTable const &G, ElementSet const &S)
{
  std::vector<bool> in(G.order(), false);
  for (index_t s : S)
    in[s] = true;
  return in;
}

} // namespace detail

/// E_psi v_S in the group basis: entry y is ((n-1)/|G|) * coefficient_sum(S, y).
inline RationalVector psi_projection(GroupTable const &G, ElementSet const &S)
{
  Rational scale(static_cast<long long>(G.degree() - 1), static_cast<long long>(G.order()));
  RationalVector out(G.order());
  for (index_t y = 0; y < G.order(); ++y)
    out[y] = scale * coefficient_sum(G, S, y);
  return out;
}

struct ModuleCheck {
  bool holds = false;
  bool precheck = false;            // v_S^T E_chi v_S == |S|
  std::optional<index_t> witness;   // first y whose projection entry is wrong
};

/// Decides whether E_psi v_S = v_S - (1/n) 1 exactly, for a coclique of size |G|/n.
inline ModuleCheck module_check(GroupTable const &G, ElementSet const &S)
{
  detail::require_maximum_coclique(G, S, "module_check");
  auto n = static_cast<long long>(G.degree());
  Rational scale(n - 1, static_cast<long long>(G.order()));
  Rational size(static_cast<long long>(S.size()));

  ModuleCheck R;
  Rational quadratic = size / n;
  for (index_t y : S)
    quadratic += scale * coefficient_sum(G, S, y);
  R.precheck = quadratic == size;
  if (!R.precheck)
    return R;

  auto in = detail::membership(G, S);
  Rational inv_n(1, n);
  for (index_t y = 0; y < G.order(); ++y) {
    Rational expected = (in[y] ? Rational(1) : Rational(0)) - inv_n;
    if (scale * coefficient_sum(G, S, y) != expected) {
      R.witness = y;
      return R;
    }
  }
  R.holds = true;
  return R;
}

/// True iff coefficient_sum(S, y) is |G_x| for y in S and -|G_x|/(n-1) otherwise.
inline bool coefficient_pattern_holds(GroupTable const &G, ElementSet const &S)
{
  auto n = static_cast<long long>(G.degree());
  auto stab = static_cast<long long>(G.order()) / n;
  if (stab % (n - 1) != 0)
    return false;
  auto in = detail::membership(G, S);
  for (index_t y = 0; y < G.order(); ++y)
    if (coefficient_sum(G, S, y) != (in[y] ? stab : -stab / (n - 1)))
      return false;
  return true;
}

/// (v_S^T E_1 v_S / |S|, v_S^T E_psi v_S / |S|).
inline std::pair<Rational, Rational> dual_distribution(GroupTable const &G, ElementSet const &S)
{
  Rational size(static_cast<long long>(S.size()));
  Rational order(static_cast<long long>(G.order()));
  Rational scale(static_cast<long long>(G.degree() - 1), static_cast<long long>(G.order()));
  Rational psi_part = 0;
  for (index_t y : S)
    psi_part += scale * coefficient_sum(G, S, y);
  return {size / order, psi_part / size};
}

/// a_c = #{(g, h) in S x S : h g^-1 in class c} / |S|, over ordered pairs.
inline std::vector<Rational> inner_distribution(GroupTable const &G, ConjugacyClasses const &C,
                                                ElementSet const &S)
{
  if (S.empty())
    throw ekr_error("inner_distribution: S is empty");
  std::vector<long long> counts(C.count(), 0);
  for (index_t g : S) {
    index_t g_inv = G.inverse(g);
    for (index_t h : S)
      ++counts[C.class_of[G.multiply(h, g_inv)]];
  }
  std::vector<Rational> out;
  for (long long c : counts)
    out.emplace_back(c, static_cast<long long>(S.size()));
  return out;
}

inline bool inner_matches_stabilizer(GroupTable const &G, ConjugacyClasses const &C, ElementSet const &S)
{
  if (!is_2transitive(G))
    throw ekr_error("inner_matches_stabilizer: group is not 2-transitive");
  detail::require_maximum_coclique(G, S, "inner_matches_stabilizer");
  return inner_distribution(G, C, S) == inner_distribution(G, C, point_stabilizer(G, 0));
}

} // namespace ekr
