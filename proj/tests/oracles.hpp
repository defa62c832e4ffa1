#pragma once

// Independent reference computations. Nothing here uses the library's group
// tables; elements are plain image vectors.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Perm = std::vector<int>;

inline Perm compose(Perm const &p, Perm const &q)
{
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[i] = q[p[i]];
  return r;
}

inline bool fixed_point_free(Perm const &p)
{
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] == static_cast<int>(i))
      return false;
  return true;
}

inline bool intersecting(Perm const &a, Perm const &b)
{
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] == b[i])
      return true;
  return false;
}

inline bool even(Perm const &p)
{
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      inversions += p[i] > p[j];
  return inversions % 2 == 0;
}

/// Every permutation of n points, optionally only the even ones.
inline std::vector<Perm> symmetric(int n, bool even_only = false)
{
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    if (!even_only || even(p))
      out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// x -> a x + b over Z/p, as permutations of 0..p-1.
inline std::vector<Perm> affine_line(int p)
{
  std::vector<Perm> out;
  for (int a = 1; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      Perm m(p);
      for (int x = 0; x < p; ++x)
        m[x] = (a * x + b) % p;
      out.push_back(m);
    }
  return out;
}

inline long long derangement_count(std::vector<Perm> const &G)
{
  return std::count_if(G.begin(), G.end(), fixed_point_free);
}

/// Number of pairwise-intersecting k-subsets, by plain enumeration.
inline long long count_cocliques(std::vector<Perm> const &G, std::size_t k)
{
  long long count = 0;
  std::vector<std::size_t> pick;
  auto rec = [&](auto &&self, std::size_t from) -> void {
    if (pick.size() == k) {
      ++count;
      return;
    }
    for (std::size_t v = from; v < G.size(); ++v) {
      bool ok = std::all_of(pick.begin(), pick.end(), [&](std::size_t u) { return intersecting(G[u], G[v]); });
      if (!ok)
        continue;
      pick.push_back(v);
      self(self, v + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return count;
}

/// Connected components of the graph on G joining g, h when g h^-1 is fixed-point-free.
inline std::size_t derangement_graph_components(std::vector<Perm> const &G)
{
  std::vector<int> comp(G.size(), -1);
  std::size_t count = 0;
  for (std::size_t s = 0; s < G.size(); ++s) {
    if (comp[s] >= 0)
      continue;
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(count);
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < G.size(); ++v)
        if (comp[v] < 0 && !intersecting(G[u], G[v])) {
          comp[v] = static_cast<int>(count);
          stack.push_back(v);
        }
    }
    ++count;
  }
  return count;
}

} // namespace oracle
