#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "cocliques.hpp"
#include "complements.hpp"
#include "dergraph.hpp"
#include "ekr_module.hpp"
#include "spectra.hpp"

namespace ekr {

inline std::vector<std::string> const &corpus_families()
{
  static const std::vector<std::string> list{
      "sym:3",  "sym:4",  "sym:5",  "alt:4",       "alt:5",        "alt:6",  "agl1:5",
      "agl1:7", "agl1:8", "agammal1:2,3", "agammal1:3,2", "psl2:5", "psl2:7", "psl2:8",
      "psl2:11", "pgl2:5", "asl2:4", "agl3_2", "m11"};
  return list;
}

/// Everything computed once per corpus group.
struct CorpusEntry {
  std::string family;
  GroupTable G;
  ConjugacyClasses C;
  DerangementSet D;
  std::optional<ElementSet> N;  // a regular normal subgroup, if G is affine
  CliqueCover cover;
  std::vector<Coclique> canonical;
  std::set<Coclique> pool;      // every maximum coclique met during the run

  CorpusEntry(std::string f, GroupTable g) : family(std::move(f)), G(std::move(g)) {}
};

inline std::unique_ptr<CorpusEntry> load_corpus_entry(std::string const &family_text)
{
  auto e = std::make_unique<CorpusEntry>(family_text, family(family_text));
  e->C = conjugacy_classes(e->G);
  e->D = derangements(e->G);
  if (auto normals = regular_normal_subgroups(e->G, e->C); normals && !normals->empty())
    e->N = normals->front();
  e->cover = clique_cover(e->G, e->C, e->D);
  e->canonical = canonical_cocliques(e->G);
  e->pool.insert(e->canonical.begin(), e->canonical.end());
  return e;
}

struct CorpusOptions {
  unsigned workers = 1;
  std::uint64_t budget = 100'000'000;
  std::size_t sample_limit = 16;  // cocliques kept when a census runs in sampling mode
  std::uint64_t seed = 0;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Acceptance checks over the corpus. Criteria are run in order; later ones
/// reuse the coclique pool filled by the census, the canonical sets and the
/// complement searches.
class CorpusRunner {
public:
  explicit CorpusRunner(CorpusOptions opt = {}) : opt_(opt)
  {
    for (auto const &f : corpus_families())
      entries_.push_back(load_corpus_entry(f));
  }

  CorpusEntry &entry(std::string const &family)
  {
    for (auto &e : entries_)
      if (e->family == family)
        return *e;
    throw ekr_error("corpus: unknown family " + family);
  }

  std::vector<std::unique_ptr<CorpusEntry>> const &entries() const { return entries_; }

  std::vector<CriterionResult> run_all(std::function<void(CriterionResult const &)> on_result = {})
  {
    std::vector<CriterionResult> out;
    using Fn = CriterionResult (CorpusRunner::*)();
    Fn fns[] = {&CorpusRunner::ekr_bound,          &CorpusRunner::module_property,
                &CorpusRunner::exhaustive_verdicts, &CorpusRunner::spectral,
                &CorpusRunner::connectivity_check, &CorpusRunner::coset_flags,
                &CorpusRunner::two_point_generation, &CorpusRunner::complement_examples,
                &CorpusRunner::coefficient_pattern, &CorpusRunner::inner_distributions,
                &CorpusRunner::alt_bound,          &CorpusRunner::invariants};
    // the module and inner-distribution criteria must see the complements too
    collect_complements();
    for (Fn f : fns) {
      auto start = std::chrono::steady_clock::now();
      auto r = (this->*f)();
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (on_result)
        on_result(r);
      out.push_back(std::move(r));
    }
    return out;
  }

  CriterionResult ekr_bound()
  {
    CriterionResult R{1, "EKR bound", true, {}};
    std::ostringstream bad;
    std::size_t exhaustive = 0, sampled = 0;
    for (auto &e : entries_) {
      auto const &G = e->G;
      std::size_t t = G.order() / G.degree();
      CensusOptions plus{t + 1, 1, true, opt_.budget, opt_.workers, 0};
      auto over = max_cocliques(G, e->C, e->D, e->cover, plus);
      if (!over.complete || over.total_found != 0) {
        R.pass = false;
        bad << ' ' << e->family << "(+1 not excluded)";
      }
      CensusOptions at{t, opt_.sample_limit, true, opt_.budget, opt_.workers, opt_.seed};
      auto census = max_cocliques(G, e->C, e->D, e->cover, at);
      e->pool.insert(census.found.begin(), census.found.end());
      bool ok = std::all_of(census.found.begin(), census.found.end(),
                            [&](Coclique const &S) { return S.size() == t && is_coclique(G, S); });
      std::size_t n2 = G.degree() * G.degree();
      if (census.exhaustive_permitted) {
        ++exhaustive;
        ok = ok && census.complete && census.canonical_count == n2;
      } else {
        ++sampled;
        std::set<Coclique> distinct(e->canonical.begin(), e->canonical.end());
        ok = ok && census.total_found >= 1 && distinct.size() == n2 &&
             std::all_of(e->canonical.begin(), e->canonical.end(),
                         [&](Coclique const &S) { return S.size() == t && is_coclique(G, S); });
      }
      if (!ok) {
        R.pass = false;
        bad << ' ' << e->family;
      }
    }
    std::ostringstream d;
    d << entries_.size() << " groups, +1 excluded everywhere; " << exhaustive << " exhaustive censuses, "
      << sampled << " sampled with canonical sets checked directly";
    R.detail = R.pass ? d.str() : "failed:" + bad.str();
    return R;
  }

  CriterionResult module_property()
  {
    CriterionResult R{2, "EKR-module property", true, {}};
    std::size_t checked = 0;
    std::ostringstream bad;
    for (auto &e : entries_)
      for (auto const &S : e->pool) {
        ++checked;
        if (!module_check(e->G, S).holds) {
          R.pass = false;
          bad << ' ' << e->family;
          break;
        }
      }
    R.detail = R.pass ? std::to_string(checked) + " maximum cocliques, all exact" : "failed:" + bad.str();
    return R;
  }

  CriterionResult exhaustive_verdicts()
  {
    CriterionResult R{3, "exhaustive strict-EKR verdicts", true, {}};
    std::ostringstream d;
    auto census_all = [&](CorpusEntry &e) {
      CensusOptions opt{0, 100000, true, opt_.budget, opt_.workers, 0};
      auto c = max_cocliques(e.G, e.C, e.D, e.cover, opt);
      e.pool.insert(c.found.begin(), c.found.end());
      return c;
    };
    auto &agl = entry("agl1:5");
    auto a = census_all(agl);
    bool a_ok = a.complete && a.total_found == 625 && a.canonical_count == 25 && a.found.size() == 625;
    for (auto const &S : a.found)
      a_ok = a_ok && is_transversal(agl.G, *agl.N, S) && module_check(agl.G, S).holds &&
             inner_matches_stabilizer(agl.G, agl.C, S);
    auto &sym = entry("sym:3");
    auto s = census_all(sym);
    bool s_ok = s.complete && s.total_found == 9 && s.canonical_count == 9;
    for (auto const &S : s.found)
      s_ok = s_ok && module_check(sym.G, S).holds && inner_matches_stabilizer(sym.G, sym.C, S);
    R.pass = a_ok && s_ok;
    d << "agl1:5 " << a.total_found << " (" << a.canonical_count << " canonical), sym:3 " << s.total_found << " ("
      << s.canonical_count << " canonical)";
    R.detail = d.str();
    return R;
  }

  CriterionResult spectral()
  {
    CriterionResult R{4, "spectral certification", true, {}};
    std::ostringstream d, bad;
    for (auto f : {"alt:5", "alt:6", "psl2:5", "psl2:7", "psl2:8", "psl2:11", "m11", "asl2:4", "agl3_2"}) {
      auto &e = entry(f);
      auto rep = least_eigenvalue_report(e.G, e.C, e.D);
      if (rep.verdict != Verdict::certified_unique) {
        R.pass = false;
        bad << ' ' << f << ": " << to_string(rep.verdict) << ", least eigenvalue " << rep.spectrum.front()
            << " vs lambda* " << to_string(rep.lambda_star) << ';';
      }
      if (std::string(f) == "alt:5" && (rep.d != 24 || rep.lambda_star != Rational(-6))) {
        R.pass = false;
        bad << " alt:5 d/lambda* mismatch;";
      }
    }
    R.detail = R.pass ? "9 groups CERTIFIED_UNIQUE, alt:5 d = 24, lambda* = -6" : "failed:" + bad.str();
    return R;
  }

  CriterionResult connectivity_check()
  {
    CriterionResult R{5, "connectivity", true, {}};
    std::ostringstream bad;
    auto expect = [&](std::string const &f, bool connected) {
      auto &e = entry(f);
      auto c = connectivity(e.G, e.D);
      if (c.is_connected != connected) {
        R.pass = false;
        bad << ' ' << f << " is " << (c.is_connected ? "connected" : "disconnected") << " ("
            << c.component_count << " components);";
      }
    };
    expect("agammal1:3,2", false);
    expect("agammal1:2,3", false);
    for (auto f : {"alt:5", "alt:6", "psl2:5", "psl2:7", "psl2:8", "psl2:11", "m11", "asl2:4", "agl3_2"})
      expect(f, true);
    for (auto &e : entries_) {
      if (!e->N)
        continue;
      bool frob = has_trivial_two_point_stabilizers(e->G);
      bool cliques = is_disjoint_clique_union(e->G, e->D);
      ElementSet punctured(e->N->begin() + 1, e->N->end());
      bool der_is_n = e->D.indices == punctured;
      bool agl1 = e->family.rfind("agl1:", 0) == 0;
      auto comps = connectivity(e->G, e->D).component_count;
      bool ok = frob == cliques && frob == der_is_n && (!agl1 || (frob && comps == e->G.order() / e->G.degree()));
      if (!ok) {
        R.pass = false;
        bad << ' ' << e->family << " Frobenius/clique-union mismatch;";
      }
    }
    R.detail = R.pass ? "all expected booleans hold" : "failed:" + bad.str();
    return R;
  }

  CriterionResult coset_flags()
  {
    CriterionResult R{6, "coset derangement flags", true, {}};
    std::size_t cosets = 0;
    for (auto &e : entries_) {
      if (!e->N)
        continue;
      for (auto const &f : coset_derangement_profile(e->G, *e->N)) {
        ++cosets;
        if (f.direct != f.centralizer) {
          R.pass = false;
          R.detail = "failed: " + e->family;
        }
      }
    }
    if (R.pass)
      R.detail = std::to_string(cosets) + " cosets agree";
    return R;
  }

  CriterionResult two_point_generation()
  {
    CriterionResult R{7, "<Der> = <N, two-point stabilizers>", true, {}};
    std::size_t groups = 0;
    for (auto &e : entries_) {
      if (!e->N)
        continue;
      ++groups;
      if (!two_point_stabilizer_generation(e->G, e->D, *e->N).equal) {
        R.pass = false;
        R.detail = "failed: " + e->family;
      }
    }
    if (R.pass)
      R.detail = std::to_string(groups) + " affine groups";
    return R;
  }

  CriterionResult complement_examples()
  {
    CriterionResult R{8, "nonstandard complement examples", true, {}};
    auto ex = asl2_nonstandard_example();
    auto const &G = ex.group;
    auto N = regular_normal_subgroups(G)->front();
    auto rep = complement_coclique_test(G, N, ex.nonstandard);
    bool asl_ok = G.element_order(ex.t) == 2 && G.element_order(ex.u) == 2 && G.element_order(ex.s) == 5 &&
                  ex.standard == point_stabilizer(G, 0) && ex.nonstandard.size() == 60 && rep.is_complement &&
                  !rep.is_standard && rep.is_coclique && is_coclique(G, ex.nonstandard) &&
                  !canonical_match(G, ex.nonstandard) && module_check(G, ex.nonstandard).holds;
    auto ag = agl32_nonstandard_example();
    bool agl_ok = ag.rank_a_minus_1 == 1 && ag.rank_au_minus_1 == 2 && ag.group.is_derangement(ag.au);
    R.pass = asl_ok && agl_ok;
    R.detail = std::string("asl2:4 ") + (asl_ok ? "ok" : "FAILED") + ", agl3_2 ranks " +
               std::to_string(ag.rank_a_minus_1) + "/" + std::to_string(ag.rank_au_minus_1) +
               (agl_ok ? " ok" : " FAILED");
    return R;
  }

  CriterionResult coefficient_pattern()
  {
    CriterionResult R{9, "coefficient pattern on affine groups", true, {}};
    std::size_t checked = 0;
    for (auto &e : entries_) {
      if (!e->N)
        continue;
      for (auto const &S : e->pool) {
        ++checked;
        if (!coefficient_pattern_holds(e->G, S)) {
          R.pass = false;
          R.detail = "failed: " + e->family;
        }
      }
    }
    if (R.pass)
      R.detail = std::to_string(checked) + " maximum cocliques";
    return R;
  }

  CriterionResult inner_distributions()
  {
    CriterionResult R{10, "inner distribution equals the stabilizer's", true, {}};
    std::size_t checked = 0;
    for (auto &e : entries_) {
      auto reference = inner_distribution(e->G, e->C, point_stabilizer(e->G, 0));
      for (auto const &S : e->pool) {
        ++checked;
        if (inner_distribution(e->G, e->C, S) != reference) {
          R.pass = false;
          R.detail = "failed: " + e->family;
        }
      }
    }
    if (R.pass)
      R.detail = std::to_string(checked) + " maximum cocliques";
    return R;
  }

  CriterionResult alt_bound()
  {
    CriterionResult R{11, "Alt(n) derangement bound", true, {}};
    std::ostringstream d;
    for (unsigned n : {5u, 6u, 7u}) {
      auto b = alt_degree_bound(n);
      R.pass = R.pass && b.holds && b.threshold == n - 1;
      d << "n=" << n << ": " << b.d << " >= " << b.d_lower << "; ";
    }
    R.detail = d.str();
    R.detail.resize(R.detail.size() - 2);
    return R;
  }

  CriterionResult invariants()
  {
    CriterionResult R{12, "type invariants", true, {}};
    for (auto &e : entries_)
      if (auto why = invariant_failure(*e)) {
        R.pass = false;
        R.detail += e->family + ": " + *why + "; ";
      }
    if (R.pass)
      R.detail = std::to_string(entries_.size()) + " groups";
    return R;
  }

  /// Bijection, class equation, psi orthogonality, pairwise coclique test and
  /// the class-sum column identity. Returns the first broken invariant.
  static std::optional<std::string> invariant_failure(CorpusEntry const &e)
  {
    auto const &G = e.G;
    for (index_t g = 0; g < G.order(); ++g)
      if (!Permutation::is_bijection(G.images(g)))
        return "non-bijective element";
    std::size_t total = 0;
    for (std::size_t s : e.C.sizes) {
      if (G.order() % s != 0)
        return "class size does not divide |G|";
      total += s;
    }
    if (total != G.order())
      return "class equation";
    long long sum = 0, squares = 0;
    for (index_t g = 0; g < G.order(); ++g) {
      long long psi = static_cast<long long>(G.fixed_point_count(g)) - 1;
      sum += psi;
      squares += psi * psi;
    }
    if (sum != 0 || squares != static_cast<long long>(G.order()))
      return "psi orthogonality";
    for (auto const &S : e.canonical)
      if (!is_coclique(G, S))
        return "canonical set not a coclique";
    if (!e.D.indices.empty() && is_coclique(G, ElementSet{GroupTable::identity(), e.D.indices.front()}))
      return "derangement pair accepted as coclique";
    auto M = class_sum_matrix(G, e.C, e.D);
    for (std::size_t j = 0; j < M.k; ++j) {
      BigInt col = 0;
      for (std::size_t i = 0; i < M.k; ++i)
        col += M.entries(i, j) * e.C.sizes[i];
      if (col != BigInt(e.D.d()) * e.C.sizes[j])
        return "class-sum column identity";
    }
    return std::nullopt;
  }

private:
  void collect_complements()
  {
    for (auto &e : entries_) {
      if (!e->N)
        continue;
      auto found = find_complements(e->G, *e->N);
      for (auto const &cls : found.classes)
        if (cls.representative.is_coclique)
          e->pool.insert(cls.representative.subgroup);
    }
    auto ex = asl2_nonstandard_example();
    entry("asl2:4").pool.insert(ex.nonstandard);
  }

  CorpusOptions opt_;
  std::vector<std::unique_ptr<CorpusEntry>> entries_;
};

} // namespace ekr
