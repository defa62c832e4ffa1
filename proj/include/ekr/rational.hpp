#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ekr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact length-|G| vector, e.g. a characteristic vector or its projection.
using RationalVector = std::vector<Rational>;

/// Renders p/q in lowest terms, or just p when q = 1.
inline std::string to_string(Rational const &r)
{
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1)
    return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(Rational const &r) { return r.convert_to<double>(); }

/// Dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<BigInt> entries;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

  BigInt &operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  BigInt const &operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// Rank by fraction-free (Bareiss) elimination; all intermediate values stay integral.
inline std::size_t rank(IntMatrix m)
{
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && m(piv, c) == 0)
      ++piv;
    if (piv == m.rows)
      continue;
    if (piv != r)
      for (std::size_t k = 0; k < m.cols; ++k)
        std::swap(m(r, k), m(piv, k));
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      for (std::size_t k = c + 1; k < m.cols; ++k)
        m(i, k) = (m(r, c) * m(i, k) - m(i, c) * m(r, k)) / prev;
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

/// Dimension over Q of the kernel of (M - lambda I) for a square integer M.
inline std::size_t kernel_dimension(IntMatrix const &M, Rational const &lambda)
{
  BigInt num = boost::multiprecision::numerator(lambda);
  BigInt den = boost::multiprecision::denominator(lambda);
  IntMatrix shifted(M.rows, M.cols);
  for (std::size_t i = 0; i < M.rows; ++i)
    for (std::size_t j = 0; j < M.cols; ++j)
      shifted(i, j) = den * M(i, j) - (i == j ? num : BigInt(0));
  return M.cols - rank(std::move(shifted));
}

} // namespace ekr
