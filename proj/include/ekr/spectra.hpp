#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "catalog.hpp"
#include "group.hpp"
#include "rational.hpp"

namespace ekr {

/// Fixed-point-free elements of G; the connection set of the derangement graph.
struct DerangementSet {
  ElementSet indices;
  std::vector<bool> member;

  std::size_t d() const { return indices.size(); }
  bool contains(index_t g) const { return member[g]; }
};

inline DerangementSet derangements(GroupTable const &G)
{
  DerangementSet D;
  D.member.assign(G.order(), false);
  for (index_t g = 0; g < G.order(); ++g)
    if (G.is_derangement(g)) {
      D.indices.push_back(g);
      D.member[g] = true;
    }
  return D;
}

/// Action of the derangement class sum on the centre of the group algebra, in
/// the basis of class sums: entry (i, j) counts d in Der with d^-1 rep(i) in class j.
struct ClassSumMatrix {
  std::size_t k = 0;
  IntMatrix entries;

  long long at(std::size_t i, std::size_t j) const { return entries(i, j).convert_to<long long>(); }
};

inline ClassSumMatrix class_sum_matrix(GroupTable const &G, ConjugacyClasses const &C,
                                       DerangementSet const &D)
{
  ClassSumMatrix M{C.count(), IntMatrix(C.count(), C.count())};
  for (std::size_t i = 0; i < C.count(); ++i) {
    std::vector<long long> row(C.count(), 0);
    for (index_t d : D.indices)
      ++row[C.class_of[G.multiply(G.inverse(d), C.representatives[i])]];
    for (std::size_t j = 0; j < C.count(); ++j)
      M.entries(i, j) = row[j];
  }
  return M;
}

/// Number of irreducible characters whose eigenvalue equals lambda, as the
/// exact kernel dimension of (M - lambda I).
inline std::size_t certify_rational_eigenvalue(ClassSumMatrix const &M, Rational const &lambda)
{
  return kernel_dimension(M.entries, lambda);
}

/// Numeric eigenvalues of M in ascending order. M is similar to a symmetric
/// matrix via the diagonal scaling by square roots of the class sizes.
inline std::vector<double> numeric_spectrum(ClassSumMatrix const &M, ConjugacyClasses const &C)
{
  Eigen::Index k = static_cast<Eigen::Index>(M.k);
  Eigen::MatrixXd B(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      B(i, j) = static_cast<double>(M.at(i, j)) *
                std::sqrt(static_cast<double>(C.sizes[i]) / static_cast<double>(C.sizes[j]));
  Eigen::MatrixXd S = (B + B.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + k);
  std::sort(out.begin(), out.end());
  return out;
}

enum class Verdict { certified_unique, certified_nonunique, not_least, inconclusive };

inline std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::certified_unique: return "CERTIFIED_UNIQUE";
  case Verdict::certified_nonunique: return "CERTIFIED_NONUNIQUE";
  case Verdict::not_least: return "NOT_LEAST";
  case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

inline constexpr std::size_t numeric_scan_class_limit = 200;

struct LeastEigenvalueReport {
  std::size_t d = 0;
  Rational lambda_star;
  std::vector<double> spectrum;
  std::size_t multiplicity = 0;  // exact, among irreducibles
  std::size_t numeric_near = 0;  // eigenvalues within tolerance of lambda_star
  double tolerance = 0;
  Verdict verdict = Verdict::inconclusive;
};

inline LeastEigenvalueReport least_eigenvalue_report(GroupTable const &G, ConjugacyClasses const &C,
                                                     DerangementSet const &D)
{
  if (G.degree() < 2 || !is_2transitive(G))
    throw ekr_error("least_eigenvalue_report: group is not 2-transitive");
  LeastEigenvalueReport R;
  R.d = D.d();
  R.lambda_star = -Rational(static_cast<long long>(R.d)) / Rational(static_cast<long long>(G.degree() - 1));
  double star = to_double(R.lambda_star);
  R.tolerance = 1e-6 * (1.0 + std::abs(star));

  auto M = class_sum_matrix(G, C, D);
  R.multiplicity = certify_rational_eigenvalue(M, R.lambda_star);
  if (M.k > numeric_scan_class_limit)
    return R;
  R.spectrum = numeric_spectrum(M, C);
  for (double x : R.spectrum)
    R.numeric_near += std::abs(x - star) <= R.tolerance;

  if (R.spectrum.front() < star - R.tolerance)
    R.verdict = Verdict::not_least;
  else if (R.multiplicity == 0 || R.numeric_near != R.multiplicity)
    R.verdict = Verdict::inconclusive;
  else
    R.verdict = R.multiplicity == 1 ? Verdict::certified_unique : Verdict::certified_nonunique;
  return R;
}

inline LeastEigenvalueReport least_eigenvalue_report(GroupTable const &G)
{
  return least_eigenvalue_report(G, conjugacy_classes(G), derangements(G));
}

struct AltDegreeBound {
  unsigned n = 0;
  std::size_t d = 0;       // exact derangement count in Alt(n)
  std::size_t d_lower = 0; // n!/6
  bool holds = false;      // d >= n!/6
  unsigned threshold = 0;  // n - 1
};

/// Floor of |G| / omega: the clique-coclique bound on coclique size.
inline std::size_t clique_coclique_bound(GroupTable const &G, std::size_t omega)
{
  if (omega < 1)
    throw ekr_error("clique_coclique_bound: clique size must be positive");
  return G.order() / omega;
}

/// Checks d_Alt(n) >= n!/6 against the exact count from enumerating Alt(n).
inline AltDegreeBound alt_degree_bound(unsigned n)
{
  if (n < 5 || n > 8)
    throw ekr_error("alt_degree_bound: n must be in 5..8");
  std::size_t fact = 1;
  for (unsigned i = 2; i <= n; ++i)
    fact *= i;
  auto G = family(FamilySpec{"alt", {n}}, fact / 2);
  AltDegreeBound B;
  B.n = n;
  B.d = derangements(G).d();
  B.d_lower = fact / 6;
  B.holds = B.d >= B.d_lower;
  B.threshold = n - 1;
  return B;
}

} // namespace ekr
