// Acceptance run over the corpus: one PASS/FAIL line per criterion, followed by
// the independent oracle checks. Exits non-zero only if the outcome differs
// from the expected table below.

#include <cstdio>
#include <iostream>
#include <map>
#include <set>

#include <Eigen/Dense>

#include <ekr/corpus.hpp>

#include "oracles.hpp"

using namespace ekr;

namespace {

// Criteria whose stated expectation does not hold mathematically; each is
// paired with an oracle that pins the actual value (see below).
std::set<int> const expected_failures{4, 5};

std::vector<oracle::Perm> as_oracle(GroupTable const &G)
{
  std::vector<oracle::Perm> out;
  for (index_t g = 0; g < G.order(); ++g) {
    auto im = G.images(g);
    out.emplace_back(im.begin(), im.end());
  }
  return out;
}

std::vector<double> adjacency_spectrum(std::vector<oracle::Perm> const &G)
{
  auto n = static_cast<Eigen::Index>(G.size());
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      A(i, j) = oracle::intersecting(G[i], G[j]) ? 0.0 : 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(A, Eigen::EigenvaluesOnly);
  return {s.eigenvalues().data(), s.eigenvalues().data() + n};
}

struct OracleLine {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<OracleLine> oracle_checks(CorpusRunner &runner)
{
  constexpr double tol = 1e-6;
  std::vector<OracleLine> out;

  // criterion 3: agl1:5 maximum cocliques by plain subset enumeration of x -> ax + b
  auto line = oracle::affine_line(5);
  long long four = oracle::count_cocliques(line, 4), five = oracle::count_cocliques(line, 5);
  out.push_back({"agl1:5 cocliques by enumeration", four == 625 && five == 0,
                 std::to_string(four) + " of size 4, " + std::to_string(five) + " of size 5"});
  long long s3 = oracle::count_cocliques(oracle::symmetric(3), 2);
  out.push_back({"sym:3 cocliques by enumeration", s3 == 9, std::to_string(s3) + " of size 2"});

  // criterion 4: alt:5 adjacency spectrum against the class-sum spectrum, as sets
  {
    auto &e = runner.entry("alt:5");
    auto full = adjacency_spectrum(oracle::symmetric(5, true));
    auto central = numeric_spectrum(class_sum_matrix(e.G, e.C, e.D), e.C);
    std::vector<double> a, b;
    for (double x : full)
      if (a.empty() || std::abs(x - a.back()) > tol)
        a.push_back(x);
    std::sort(central.begin(), central.end());
    for (double x : central)
      if (b.empty() || std::abs(x - b.back()) > tol)
        b.push_back(x);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
      same = std::abs(a[i] - b[i]) <= tol;
    out.push_back({"alt:5 eigenvalue set (60x60 adjacency)", same && std::abs(a.front() + 6) <= tol,
                   std::to_string(a.size()) + " distinct eigenvalues, least " + std::to_string(a.front())});
  }

  // criterion 4 exception: asl2:4 has eigenvalue -45 below -d/(n-1) = -13
  {
    auto &e = runner.entry("asl2:4");
    auto full = adjacency_spectrum(as_oracle(e.G));
    std::size_t at45 = std::count_if(full.begin(), full.end(), [&](double x) { return std::abs(x + 45) <= tol; });
    std::size_t at13 = std::count_if(full.begin(), full.end(), [&](double x) { return std::abs(x + 13) <= tol; });
    bool pinned = std::abs(full.front() + 45) <= tol && at45 == 18 && at13 == 225;
    out.push_back({"asl2:4 least eigenvalue (960x960 adjacency)", pinned,
                   "least " + std::to_string(full.front()) + " with multiplicity " + std::to_string(at45) +
                       "; -13 has multiplicity " + std::to_string(at13)});
  }

  // criterion 5: component counts by graph search, including the exception agammal1:2,3
  for (auto f : {"agammal1:2,3", "agammal1:3,2", "agl1:7", "alt:5"}) {
    auto &e = runner.entry(f);
    auto comps = oracle::derangement_graph_components(as_oracle(e.G));
    std::size_t expect = std::string(f) == "agammal1:3,2" ? 2 : std::string(f) == "agl1:7" ? 6 : 1;
    out.push_back({std::string(f) + " components by graph search", comps == expect,
                   std::to_string(comps) + " component(s)"});
  }
  return out;
}

} // namespace

int main()
{
  CorpusRunner runner;
  bool as_expected = true;
  std::cout << "acceptance over " << corpus_families().size() << " groups\n";
  runner.run_all([&](CriterionResult const &r) {
    std::printf("criterion %2d %s  %s: %s (%.1f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
    as_expected = as_expected && r.pass != expected_failures.contains(r.id);
  });
  std::cout << "oracles\n";
  for (auto const &o : oracle_checks(runner)) {
    std::printf("  %s %s: %s\n", o.pass ? "PASS" : "FAIL", o.name.c_str(), o.detail.c_str());
    as_expected = as_expected && o.pass;
  }
  if (!expected_failures.empty()) {
    std::cout << "known failures:";
    for (int id : expected_failures)
      std::cout << ' ' << id;
    std::cout << " (the stated expectation is false for asl2:4 and agammal1:2,3; see oracle lines)\n";
  }
  std::cout << (as_expected ? "outcome matches the expected table\n" : "UNEXPECTED OUTCOME\n");
  return as_expected ? 0 : 1;
}
