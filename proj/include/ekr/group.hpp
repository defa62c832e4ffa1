#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "perm.hpp"

namespace ekr {

using index_t = std::uint32_t;

/// Sorted list of element indices into a GroupTable.
using ElementSet = std::vector<index_t>;

class cap_exceeded : public ekr_error {
public:
  using ekr_error::ekr_error;
};

inline constexpr std::size_t default_generate_cap = 20000;
inline constexpr std::size_t multiplication_table_limit = 4096;

/// A fully enumerated permutation group.
///
/// Elements are listed breadth-first from the identity (element 0), extending
/// each element by the generators in the order given, so indices are
/// reproducible across runs. The object is immutable after construction; the
/// optional Cayley table is built lazily and is safe to request concurrently.
class GroupTable {
public:
  static GroupTable generate(std::size_t degree, std::vector<Permutation> const &gens,
                             std::size_t cap = default_generate_cap)
  {
    if (cap < 1)
      throw ekr_error("generate: cap must be at least 1");
    for (auto const &g : gens)
      if (g.degree() != degree)
        throw ekr_error("generate: generator degree differs from group degree");

    GroupTable G;
    G.degree_ = degree;
    G.add(Permutation::identity(degree));
    for (std::size_t head = 0; head < G.elements_.size(); ++head) {
      for (auto const &g : gens) {
        Permutation next = compose(G.elements_[head], g);
        if (G.index_.contains(next.images()))
          continue;
        if (G.elements_.size() >= cap)
          throw cap_exceeded("generate: group order exceeds cap of " + std::to_string(cap));
        G.add(std::move(next));
      }
    }
    for (auto const &g : gens)
      G.generators_.push_back(G.index_.at(g.images()));

    G.inverses_.resize(G.elements_.size());
    for (index_t i = 0; i < G.elements_.size(); ++i)
      G.inverses_[i] = G.index_.at(G.elements_[i].inverse().images());
    G.cache_ = std::make_shared<Cache>();
    return G;
  }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  static constexpr index_t identity() { return 0; }

  Permutation const &element(index_t i) const { return elements_[i]; }
  std::vector<Permutation> const &elements() const { return elements_; }
  std::span<point_t const> images(index_t i) const { return elements_[i].images(); }
  std::vector<index_t> const &generators() const { return generators_; }
  std::vector<index_t> const &inverses() const { return inverses_; }
  index_t inverse(index_t i) const { return inverses_[i]; }

  std::optional<index_t> find(std::vector<point_t> const &images) const
  {
    auto it = index_.find(images);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  std::optional<index_t> find(Permutation const &p) const { return find(p.images()); }

  index_t index_of(Permutation const &p) const
  {
    auto i = find(p);
    if (!i)
      throw ekr_error("permutation " + p.cycle_string() + " is not in the group");
    return *i;
  }

  /// Index of a * b (apply a, then b).
  index_t multiply(index_t a, index_t b) const
  {
    if (elements_.size() <= multiplication_table_limit) {
      auto const &table = cayley_table();
      return table[static_cast<std::size_t>(a) * elements_.size() + b];
    }
    return multiply_direct(a, b);
  }

  /// Index of b^-1 a b.
  index_t conjugate(index_t a, index_t b) const
  {
    return multiply(multiply(inverses_[b], a), b);
  }

  std::size_t fixed_point_count(index_t i) const { return elements_[i].fixed_point_count(); }
  bool is_derangement(index_t i) const { return elements_[i].is_derangement(); }

  std::size_t element_order(index_t i) const { return elements_[i].order(); }

private:
  struct Cache {
    std::once_flag once;
    std::vector<index_t> table;
  };

  GroupTable() = default;

  void add(Permutation p)
  {
    index_.emplace(p.images(), static_cast<index_t>(elements_.size()));
    elements_.push_back(std::move(p));
  }

  index_t multiply_direct(index_t a, index_t b) const
  {
    auto const &x = elements_[a].images();
    auto const &y = elements_[b].images();
    std::vector<point_t> im(degree_);
    for (std::size_t i = 0; i < degree_; ++i)
      im[i] = y[x[i]];
    return index_.at(im);
  }

  std::vector<index_t> const &cayley_table() const
  {
    std::call_once(cache_->once, [this] {
      std::size_t m = elements_.size();
      cache_->table.resize(m * m);
      for (index_t a = 0; a < m; ++a)
        for (index_t b = 0; b < m; ++b)
          cache_->table[static_cast<std::size_t>(a) * m + b] = multiply_direct(a, b);
    });
    return cache_->table;
  }

  std::size_t degree_ = 0;
  std::vector<Permutation> elements_;
  std::unordered_map<std::vector<point_t>, index_t, ImageHash> index_;
  std::vector<index_t> generators_;
  std::vector<index_t> inverses_;
  std::shared_ptr<Cache> cache_;
};

struct ConjugacyClasses {
  std::vector<std::size_t> class_of;
  std::vector<index_t> representatives;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> inverse_class;

  std::size_t count() const { return representatives.size(); }

  ElementSet members(GroupTable const &G, std::size_t c) const
  {
    ElementSet out;
    for (index_t i = 0; i < G.order(); ++i)
      if (class_of[i] == c)
        out.push_back(i);
    return out;
  }
};

/// Partitions G into conjugation orbits. Classes are numbered by their least
/// element index, so class 0 is {identity}.
inline ConjugacyClasses conjugacy_classes(GroupTable const &G)
{
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  ConjugacyClasses C;
  C.class_of.assign(G.order(), unset);
  for (index_t start = 0; start < G.order(); ++start) {
    if (C.class_of[start] != unset)
      continue;
    std::size_t c = C.representatives.size();
    C.representatives.push_back(start);
    C.class_of[start] = c;
    std::size_t size = 1;
    std::vector<index_t> queue{start};
    while (!queue.empty()) {
      index_t x = queue.back();
      queue.pop_back();
      for (index_t g : G.generators()) {
        index_t y = G.conjugate(x, g);
        if (C.class_of[y] == unset) {
          C.class_of[y] = c;
          ++size;
          queue.push_back(y);
        }
      }
    }
    C.sizes.push_back(size);
  }
  for (index_t r : C.representatives)
    C.inverse_class.push_back(C.class_of[G.inverse(r)]);
  return C;
}

/// The set S_{i,j} = {g : i^g = j}; with i == j this is the stabilizer G_i.
inline ElementSet mapping_set(GroupTable const &G, point_t i, point_t j)
{
  ElementSet out;
  for (index_t g = 0; g < G.order(); ++g)
    if (G.images(g)[i] == j)
      out.push_back(g);
  return out;
}

inline ElementSet point_stabilizer(GroupTable const &G, point_t x)
{
  if (x >= G.degree())
    throw ekr_error("point_stabilizer: point out of range");
  return mapping_set(G, x, x);
}

inline std::vector<point_t> orbit(GroupTable const &G, point_t x)
{
  std::vector<bool> seen(G.degree(), false);
  std::vector<point_t> out{x};
  seen[x] = true;
  for (std::size_t h = 0; h < out.size(); ++h)
    for (index_t g : G.generators()) {
      point_t y = G.images(g)[out[h]];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  return out;
}

inline bool is_transitive(GroupTable const &G)
{
  return G.degree() == 0 || orbit(G, 0).size() == G.degree();
}

/// True iff G acts transitively on ordered pairs of distinct points.
inline bool is_2transitive(GroupTable const &G)
{
  std::size_t n = G.degree();
  if (n < 2)
    throw ekr_error("is_2transitive: degree must be at least 2");
  std::vector<bool> seen(n * n, false);
  std::vector<std::size_t> queue{1};
  seen[1] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    std::size_t a = queue[h] / n, b = queue[h] % n;
    for (index_t g : G.generators()) {
      auto im = G.images(g);
      std::size_t key = std::size_t{im[a]} * n + im[b];
      if (!seen[key]) {
        seen[key] = true;
        queue.push_back(key);
      }
    }
  }
  return queue.size() == n * (n - 1);
}

/// Closure of seed together with the identity. Returns nullopt if the closure
/// grows beyond `limit` elements.
inline std::optional<ElementSet> closure_bounded(GroupTable const &G, std::span<index_t const> seed,
                                                 std::size_t limit)
{
  // A seed element already inside the current closure adds nothing, so at most
  // log2 |G| extension passes run.
  std::vector<bool> in(G.order(), false);
  std::vector<index_t> found{GroupTable::identity()};
  in[GroupTable::identity()] = true;
  std::vector<index_t> gens;
  for (index_t s : seed) {
    if (in[s])
      continue;
    gens.push_back(s);
    for (std::size_t h = 0; h < found.size(); ++h)
      for (index_t g : gens) {
        index_t y = G.multiply(found[h], g);
        if (!in[y]) {
          if (found.size() >= limit)
            return std::nullopt;
          in[y] = true;
          found.push_back(y);
        }
      }
  }
  std::sort(found.begin(), found.end());
  return found;
}

inline ElementSet subgroup_generated(GroupTable const &G, std::span<index_t const> seed)
{
  return *closure_bounded(G, seed, G.order());
}

/// True iff the (nonempty) set is closed under multiplication, hence a subgroup.
inline bool is_subgroup(GroupTable const &G, std::span<index_t const> set)
{
  if (set.empty())
    return false;
  auto closed = closure_bounded(G, set, set.size());
  if (!closed)
    return false;
  return std::equal(closed->begin(), closed->end(), set.begin(), set.end());
}

inline ElementSet set_intersection(ElementSet const &a, ElementSet const &b)
{
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline constexpr std::size_t normal_search_class_limit = 24;

/// Regular normal subgroups of a transitive group, found as unions of
/// fixed-point-free classes (plus the identity) of total size n that are closed
/// under multiplication. Returns nullopt when G has more classes than the
/// enumeration limit.
inline std::optional<std::vector<ElementSet>>
regular_normal_subgroups(GroupTable const &G, ConjugacyClasses const &C)
{
  if (C.count() > normal_search_class_limit)
    return std::nullopt;
  std::vector<std::size_t> cand;
  for (std::size_t c = 1; c < C.count(); ++c)
    if (G.is_derangement(C.representatives[c]))
      cand.push_back(c);

  std::size_t want = G.degree() - 1;
  std::vector<ElementSet> found;
  std::vector<std::size_t> chosen;
  auto visit = [&](auto &&self, std::size_t pos, std::size_t total) -> void {
    if (total == want) {
      ElementSet N{GroupTable::identity()};
      for (index_t g = 1; g < G.order(); ++g)
        if (std::find(chosen.begin(), chosen.end(), C.class_of[g]) != chosen.end())
          N.push_back(g);
      if (is_subgroup(G, N))
        found.push_back(std::move(N));
      return;
    }
    for (std::size_t k = pos; k < cand.size(); ++k) {
      if (total + C.sizes[cand[k]] > want)
        continue;
      chosen.push_back(cand[k]);
      self(self, k + 1, total + C.sizes[cand[k]]);
      chosen.pop_back();
    }
  };
  if (G.degree() >= 1)
    visit(visit, 0, 0);
  return found;
}

inline std::optional<std::vector<ElementSet>> regular_normal_subgroups(GroupTable const &G)
{
  return regular_normal_subgroups(G, conjugacy_classes(G));
}

} // namespace ekr
