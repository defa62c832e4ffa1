#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dergraph.hpp"
#include "group.hpp"
#include "spectra.hpp"

namespace ekr {

/// Sorted element indices forming a pairwise-intersecting set.
using Coclique = ElementSet;

inline bool is_coclique(GroupTable const &G, ElementSet const &S)
{
  for (std::size_t a = 0; a < S.size(); ++a)
    for (std::size_t b = a + 1; b < S.size(); ++b)
      if (adjacent(G, S[a], S[b]))
        return false;
  return true;
}

/// The n^2 canonical cocliques S_{i,j}, ordered by (i, j).
inline std::vector<Coclique> canonical_cocliques(GroupTable const &G)
{
  if (!is_transitive(G))
    throw ekr_error("canonical_cocliques: group is not transitive");
  std::vector<Coclique> out;
  for (point_t i = 0; i < G.degree(); ++i)
    for (point_t j = 0; j < G.degree(); ++j)
      out.push_back(mapping_set(G, i, j));
  return out;
}

/// (i, j) with S = S_{i,j}, if any.
inline std::optional<std::pair<point_t, point_t>> canonical_match(GroupTable const &G, ElementSet const &S)
{
  if (S.empty() || S.size() * G.degree() != G.order())
    return std::nullopt;
  auto first = G.images(S.front());
  for (point_t i = 0; i < G.degree(); ++i) {
    point_t j = first[i];
    bool all = std::all_of(S.begin(), S.end(), [&](index_t s) { return G.images(s)[i] == j; });
    if (all)
      return std::pair{i, j};
  }
  return std::nullopt;
}

struct Classification {
  bool canonical = false;
  std::optional<std::pair<point_t, point_t>> match;
  bool is_subgroup = false;
  bool is_coset_of_subgroup = false;
};

inline Classification classify(GroupTable const &G, ElementSet const &S)
{
  Classification c;
  c.match = canonical_match(G, S);
  c.canonical = c.match.has_value();
  c.is_subgroup = ekr::is_subgroup(G, S);
  if (!S.empty()) {
    index_t m_inv = G.inverse(S.front());
    ElementSet shifted;
    for (index_t s : S)
      shifted.push_back(G.multiply(s, m_inv));
    std::sort(shifted.begin(), shifted.end());
    c.is_coset_of_subgroup = ekr::is_subgroup(G, shifted);
  }
  return c;
}

enum class CoverKind { regular_normal_cosets, regular_subgroup_cosets, greedy };

inline std::string to_string(CoverKind k)
{
  switch (k) {
  case CoverKind::regular_normal_cosets: return "regular_normal_cosets";
  case CoverKind::regular_subgroup_cosets: return "regular_subgroup_cosets";
  case CoverKind::greedy: return "greedy";
  }
  return "greedy";
}

/// A partition of G into cliques of the derangement graph, plus the largest
/// clique through the identity that was found (used for the clique-coclique bound).
struct CliqueCover {
  CoverKind kind = CoverKind::greedy;
  std::vector<ElementSet> cells;
  ElementSet clique;  // contains the identity
};

namespace detail {

inline std::vector<ElementSet> right_cosets(GroupTable const &G, ElementSet const &R)
{
  std::vector<bool> covered(G.order(), false);
  std::vector<ElementSet> cells;
  for (index_t g = 0; g < G.order(); ++g) {
    if (covered[g])
      continue;
    ElementSet cell;
    for (index_t r : R) {
      index_t x = G.multiply(r, g);
      covered[x] = true;
      cell.push_back(x);
    }
    std::sort(cell.begin(), cell.end());
    cells.push_back(std::move(cell));
  }
  return cells;
}

inline bool is_regular_set(GroupTable const &G, ElementSet const &R)
{
  if (R.size() != G.degree())
    return false;
  for (index_t r : R)
    if (r != GroupTable::identity() && !G.is_derangement(r))
      return false;
  return true;
}

/// A regular subgroup generated by at most two derangements, if one exists.
inline std::optional<ElementSet> find_regular_subgroup(GroupTable const &G, ConjugacyClasses const &C,
                                                       DerangementSet const &D)
{
  std::vector<index_t> reps;
  for (index_t r : C.representatives)
    if (D.contains(r))
      reps.push_back(r);
  for (index_t s : reps) {
    index_t one[] = {s};
    auto R = closure_bounded(G, one, G.degree());
    if (R && is_regular_set(G, *R))
      return R;
  }
  for (index_t s : reps)
    for (index_t t : D.indices) {
      index_t two[] = {s, t};
      auto R = closure_bounded(G, two, G.degree());
      if (R && is_regular_set(G, *R))
        return R;
    }
  return std::nullopt;
}

/// Largest clique through the identity found by depth-first search over Der,
/// stopping at size n or when the node budget runs out.
inline ElementSet large_clique(GroupTable const &G, DerangementSet const &D, std::uint64_t budget)
{
  ElementSet best{GroupTable::identity()};
  ElementSet cur{GroupTable::identity()};
  std::uint64_t nodes = 0;
  auto dfs = [&](auto &&self, std::vector<index_t> const &cand) -> bool {
    if (cur.size() > best.size())
      best = cur;
    if (best.size() >= G.degree() || ++nodes > budget)
      return true;
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (cur.size() + cand.size() - k <= best.size())
        return false;
      std::vector<index_t> next;
      for (std::size_t j = k + 1; j < cand.size(); ++j)
        if (adjacent(G, cand[k], cand[j]))
          next.push_back(cand[j]);
      cur.push_back(cand[k]);
      bool stop = self(self, next);
      cur.pop_back();
      if (stop)
        return true;
    }
    return false;
  };
  dfs(dfs, D.indices);
  std::sort(best.begin(), best.end());
  return best;
}

inline std::vector<ElementSet> greedy_cells(GroupTable const &G)
{
  std::vector<bool> covered(G.order(), false);
  std::vector<ElementSet> cells;
  for (index_t v = 0; v < G.order(); ++v) {
    if (covered[v])
      continue;
    ElementSet cell{v};
    covered[v] = true;
    for (index_t u = v + 1; u < G.order(); ++u) {
      if (covered[u])
        continue;
      if (std::all_of(cell.begin(), cell.end(), [&](index_t w) { return adjacent(G, u, w); })) {
        cell.push_back(u);
        covered[u] = true;
      }
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

} // namespace detail

inline constexpr std::uint64_t clique_search_budget = 200000;

/// Clique cover used by the coclique search: cosets of a regular normal
/// subgroup when one exists, else cosets of a regular subgroup generated by one
/// or two derangements, else a greedy partition.
inline CliqueCover clique_cover(GroupTable const &G, ConjugacyClasses const &C, DerangementSet const &D)
{
  CliqueCover cover;
  auto normals = regular_normal_subgroups(G, C);
  if (normals && !normals->empty()) {
    cover.kind = CoverKind::regular_normal_cosets;
    cover.clique = normals->front();
    cover.cells = detail::right_cosets(G, cover.clique);
    return cover;
  }
  if (auto R = detail::find_regular_subgroup(G, C, D)) {
    cover.kind = CoverKind::regular_subgroup_cosets;
    cover.clique = *R;
    cover.cells = detail::right_cosets(G, cover.clique);
    return cover;
  }
  cover.kind = CoverKind::greedy;
  cover.clique = detail::large_clique(G, D, clique_search_budget);
  cover.cells = detail::greedy_cells(G);
  return cover;
}

struct CensusOptions {
  std::size_t target = 0;           // 0 selects |G|/n
  std::size_t limit = 100;          // cocliques kept in the result
  bool exhaustive = false;
  std::uint64_t budget = 100'000'000; // search nodes
  unsigned workers = 1;
  std::uint64_t seed = 0;           // candidate shuffling in sampling mode; 0 keeps index order
};

struct CocliqueCensus {
  std::size_t target = 0;
  std::vector<Coclique> found;        // sorted; at most `limit`
  bool complete = false;              // every coclique of size `target` was visited
  bool exhaustive_permitted = false;
  bool pruned_at_root = false;        // clique-coclique bound excludes the target size
  std::uint64_t total_found = 0;
  std::uint64_t canonical_count = 0;
  std::uint64_t noncanonical_count = 0;
  std::optional<std::size_t> truncated_at;
  std::uint64_t nodes = 0;
  CoverKind cover = CoverKind::greedy;
  std::size_t cover_cells = 0;
  std::size_t clique_size = 0;
};

inline bool exhaustive_permitted(GroupTable const &G, std::size_t cells)
{
  return (cells <= 48 && G.degree() <= 16) || G.order() <= 400;
}

namespace detail {

/// Depth-first branch and bound selecting at most one vertex per cover cell.
class CocliqueSearch {
public:
  CocliqueSearch(GroupTable const &G, CliqueCover const &cover, std::size_t target, std::size_t keep,
                 bool stop_at_keep, std::uint64_t budget, std::uint64_t seed)
  : G_(G), cover_(cover), target_(target), keep_(keep), stop_at_keep_(stop_at_keep), budget_(budget),
    rng_(seed), shuffle_(seed != 0)
  {
    cell_of_.assign(G.order(), 0);
    for (std::size_t c = 0; c < cover.cells.size(); ++c)
      for (index_t v : cover.cells[c])
        cell_of_[v] = c;
    open_.assign(cover.cells.size(), true);
    if (cover.kind == CoverKind::greedy && cover.clique.size() > 1) {
      clique_inverses_.reserve(cover.clique.size());
      for (index_t c : cover.clique)
        clique_inverses_.push_back(G.inverse(c));
      stamp_.assign(G.order(), 0);
    }
  }

  void run(std::vector<index_t> candidates) { search(candidates); }

  /// Applies the first-level choice `v` (or skipping `cell` when v is empty) and searches below it.
  void run_branch(std::vector<index_t> const &candidates, std::size_t cell, std::optional<index_t> v)
  {
    open_[cell] = false;
    if (v) {
      chosen_.push_back(*v);
      search(restrict_to(candidates, *v));
      chosen_.pop_back();
    } else {
      std::vector<index_t> rest;
      for (index_t u : candidates)
        if (cell_of_[u] != cell)
          rest.push_back(u);
      search(rest);
    }
    open_[cell] = true;
  }

  /// Cell to branch on at the root and whether skipping it can still reach the target.
  std::optional<std::pair<std::size_t, bool>> root_choice(std::vector<index_t> const &candidates)
  {
    return pick_cell(candidates);
  }

  std::set<Coclique> const &kept() const { return kept_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t canonical() const { return canonical_; }
  std::uint64_t nodes() const { return nodes_; }
  bool exhausted_budget() const { return out_of_budget_; }
  bool stopped() const { return stopped_; }

private:
  std::vector<index_t> restrict_to(std::vector<index_t> const &candidates, index_t v) const
  {
    std::vector<index_t> next;
    next.reserve(candidates.size());
    auto vim = G_.images(v);
    for (index_t u : candidates)
      if (open_[cell_of_[u]] && agreement(vim, G_.images(u)) > 0)
        next.push_back(u);
    return next;
  }

  std::size_t translate_bound(std::vector<index_t> const &candidates)
  {
    ++stamp_value_;
    std::size_t hit = 0;
    for (index_t u : candidates)
      for (index_t ci : clique_inverses_) {
        index_t g = G_.multiply(ci, u);
        if (stamp_[g] != stamp_value_) {
          stamp_[g] = stamp_value_;
          ++hit;
        }
      }
    return hit / clique_inverses_.size();
  }

  // Returns the open cell with the fewest candidates, and whether the bound
  // allows leaving it empty. nullopt means prune.
  std::optional<std::pair<std::size_t, bool>> pick_cell(std::vector<index_t> const &candidates)
  {
    counts_.assign(cover_.cells.size(), 0);
    for (index_t u : candidates)
      ++counts_[cell_of_[u]];
    std::size_t live = 0, best = cover_.cells.size();
    for (std::size_t c = 0; c < counts_.size(); ++c) {
      if (!open_[c] || counts_[c] == 0)
        continue;
      ++live;
      if (best == cover_.cells.size() || counts_[c] < counts_[best])
        best = c;
    }
    std::size_t need = target_ - chosen_.size();
    if (live < need)
      return std::nullopt;
    if (!clique_inverses_.empty() && translate_bound(candidates) < need)
      return std::nullopt;
    return std::pair{best, live > need};
  }

  void record()
  {
    ++total_;
    Coclique s = chosen_;
    std::sort(s.begin(), s.end());
    if (canonical_match(G_, s))
      ++canonical_;
    if (kept_.size() < keep_ || (!stop_at_keep_ && s < *kept_.rbegin())) {
      kept_.insert(std::move(s));
      if (kept_.size() > keep_)
        kept_.erase(std::prev(kept_.end()));
    }
    if (stop_at_keep_ && kept_.size() >= keep_)
      stopped_ = true;
  }

  void search(std::vector<index_t> const &candidates)
  {
    if (stopped_ || out_of_budget_)
      return;
    if (++nodes_ > budget_) {
      out_of_budget_ = true;
      return;
    }
    if (chosen_.size() == target_) {
      record();
      return;
    }
    auto choice = pick_cell(candidates);
    if (!choice)
      return;
    auto [cell, can_skip] = *choice;
    std::vector<index_t> options;
    for (index_t u : candidates)
      if (cell_of_[u] == cell)
        options.push_back(u);
    if (shuffle_)
      std::shuffle(options.begin(), options.end(), rng_);

    open_[cell] = false;
    for (index_t v : options) {
      chosen_.push_back(v);
      search(restrict_to(candidates, v));
      chosen_.pop_back();
      if (stopped_ || out_of_budget_)
        break;
    }
    if (can_skip && !stopped_ && !out_of_budget_) {
      std::vector<index_t> rest;
      for (index_t u : candidates)
        if (cell_of_[u] != cell)
          rest.push_back(u);
      search(rest);
    }
    open_[cell] = true;
  }

  GroupTable const &G_;
  CliqueCover const &cover_;
  std::size_t target_;
  std::size_t keep_;
  bool stop_at_keep_;
  std::uint64_t budget_;
  std::mt19937_64 rng_;
  bool shuffle_;

  std::vector<std::size_t> cell_of_;
  std::vector<bool> open_;
  std::vector<std::size_t> counts_;
  std::vector<index_t> clique_inverses_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t stamp_value_ = 0;

  Coclique chosen_;
  std::set<Coclique> kept_;
  std::uint64_t total_ = 0, canonical_ = 0, nodes_ = 0;
  bool out_of_budget_ = false, stopped_ = false;
};

} // namespace detail

/// Exact search for cocliques of the target size (default |G|/n).
///
/// Exhaustive mode visits every coclique of the target size when the search
/// volume gate allows it and the node budget suffices; the first-level
/// branches are searched independently (in parallel when workers > 1) with an
/// equal share of the budget each, and the kept list is the lexicographically
/// smallest `limit` cocliques, so the result does not depend on the worker
/// count. Sampling mode runs one depth-first search and stops after `limit`
/// cocliques.
inline CocliqueCensus max_cocliques(GroupTable const &G, ConjugacyClasses const &C, DerangementSet const &D,
                                    CliqueCover const &cover, CensusOptions const &opt)
{
  if (opt.limit == 0)
    throw ekr_error("max_cocliques: limit must be positive");
  if (G.degree() == 0 || G.order() % G.degree() != 0)
    throw ekr_error("max_cocliques: degree must divide the group order");
  (void)C;
  (void)D;

  CocliqueCensus R;
  R.target = opt.target ? opt.target : G.order() / G.degree();
  R.cover = cover.kind;
  R.cover_cells = cover.cells.size();
  R.clique_size = cover.clique.size();
  R.exhaustive_permitted = exhaustive_permitted(G, cover.cells.size());

  if (clique_coclique_bound(G, cover.clique.size()) < R.target || cover.cells.size() < R.target) {
    R.pruned_at_root = true;
    R.complete = true;
    return R;
  }

  std::vector<index_t> all(G.order());
  for (index_t g = 0; g < G.order(); ++g)
    all[g] = g;

  bool exhaustive = opt.exhaustive && R.exhaustive_permitted;
  if (!exhaustive) {
    detail::CocliqueSearch s(G, cover, R.target, opt.limit, true, opt.budget, opt.seed);
    s.run(all);
    R.found.assign(s.kept().begin(), s.kept().end());
    R.total_found = s.total();
    R.canonical_count = s.canonical();
    R.nodes = s.nodes();
    R.complete = !s.stopped() && !s.exhausted_budget();
  } else {
    detail::CocliqueSearch probe(G, cover, R.target, opt.limit, false, opt.budget, 0);
    auto choice = probe.root_choice(all);
    if (!choice) {
      R.complete = true;
      return R;
    }
    auto [cell, can_skip] = *choice;
    std::vector<std::optional<index_t>> branches;
    for (index_t v : cover.cells[cell])
      branches.emplace_back(v);
    if (can_skip)
      branches.emplace_back(std::nullopt);
    std::uint64_t share = std::max<std::uint64_t>(1, opt.budget / branches.size());

    struct Outcome {
      std::set<Coclique> kept;
      std::uint64_t total = 0, canonical = 0, nodes = 0;
      bool out_of_budget = false;
    };
    auto work = [&](std::size_t b) {
      detail::CocliqueSearch s(G, cover, R.target, opt.limit, false, share, 0);
      s.run_branch(all, cell, branches[b]);
      return Outcome{s.kept(), s.total(), s.canonical(), s.nodes(), s.exhausted_budget()};
    };
    std::vector<Outcome> outcomes(branches.size());
    unsigned workers = std::max(1u, opt.workers);
    for (std::size_t start = 0; start < branches.size(); start += workers) {
      std::vector<std::future<Outcome>> batch;
      for (std::size_t b = start; b < std::min(branches.size(), start + workers); ++b)
        batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, work, b));
      for (std::size_t i = 0; i < batch.size(); ++i)
        outcomes[start + i] = batch[i].get();
    }
    std::set<Coclique> merged;
    bool out_of_budget = false;
    for (auto &o : outcomes) {
      merged.insert(o.kept.begin(), o.kept.end());
      R.total_found += o.total;
      R.canonical_count += o.canonical;
      R.nodes += o.nodes;
      out_of_budget = out_of_budget || o.out_of_budget;
    }
    while (merged.size() > opt.limit)
      merged.erase(std::prev(merged.end()));
    R.found.assign(merged.begin(), merged.end());
    R.complete = !out_of_budget;
  }
  R.noncanonical_count = R.total_found - R.canonical_count;
  if (R.total_found > R.found.size())
    R.truncated_at = opt.limit;
  return R;
}

inline CocliqueCensus max_cocliques(GroupTable const &G, CensusOptions const &opt)
{
  auto C = conjugacy_classes(G);
  auto D = derangements(G);
  auto cover = clique_cover(G, C, D);
  return max_cocliques(G, C, D, cover, opt);
}

/// True iff S meets every coset of N in exactly one element.
inline bool is_transversal(GroupTable const &G, ElementSet const &N, ElementSet const &S)
{
  auto cells = detail::right_cosets(G, N);
  std::vector<std::size_t> cell_of(G.order());
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (index_t v : cells[c])
      cell_of[v] = c;
  std::vector<std::size_t> hits(cells.size(), 0);
  for (index_t s : S)
    ++hits[cell_of[s]];
  return std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h == 1; });
}

} // namespace ekr
