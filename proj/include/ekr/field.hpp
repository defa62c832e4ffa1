#pragma once

#include <cstdint>
#include <vector>

#include "perm.hpp"

namespace ekr {

inline bool is_prime(unsigned p)
{
  if (p < 2)
    return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

/// Writes q = p^e with p prime; returns false if q is not a prime power.
inline bool prime_power(unsigned q, unsigned &p, unsigned &e)
{
  if (q < 2)
    return false;
  for (p = 2; q % p != 0; ++p) {}
  e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  return q == 1;
}

namespace detail {

// Polynomials over GF(p) as little-endian coefficient vectors.
using poly = std::vector<unsigned>;

inline poly poly_from_code(unsigned code, unsigned p, unsigned len)
{
  poly c(len);
  for (unsigned i = 0; i < len; ++i, code /= p)
    c[i] = code % p;
  return c;
}

inline void poly_trim(poly &a)
{
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

inline unsigned mod_inverse(unsigned a, unsigned p)
{
  for (unsigned x = 1; x < p; ++x)
    if (a * x % p == 1)
      return x;
  throw ekr_error("mod_inverse: zero divisor");
}

/// Remainder of a modulo the nonzero polynomial m.
inline poly poly_mod(poly a, poly m, unsigned p)
{
  poly_trim(a);
  poly_trim(m);
  unsigned lead_inv = mod_inverse(m.back(), p);
  while (a.size() >= m.size()) {
    unsigned f = a.back() * lead_inv % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = (a[shift + i] + p * p - f * m[i] % p) % p;
    poly_trim(a);
  }
  return a;
}

/// Exhaustive trial division by all monic polynomials of degree 1..deg/2.
inline bool is_irreducible(poly const &m, unsigned p)
{
  unsigned deg = static_cast<unsigned>(m.size() - 1);
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    unsigned count = 1;
    for (unsigned k = 0; k < d; ++k)
      count *= p;
    for (unsigned code = 0; code < count; ++code) {
      poly f = poly_from_code(code, p, d);
      f.push_back(1);
      if (poly_mod(m, f, p).empty())
        return false;
    }
  }
  return true;
}

} // namespace detail

/// GF(p^e) with elements coded as base-p digit strings of polynomial residues:
/// code = sum c_i p^i represents sum c_i x^i modulo the field modulus.
class FiniteField {
public:
  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned q() const { return q_; }

  /// Monic modulus as coefficients c_0..c_e.
  std::vector<unsigned> const &modulus() const { return modulus_; }

  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned neg(unsigned a) const { return neg_[a]; }
  unsigned sub(unsigned a, unsigned b) const { return add(a, neg(b)); }
  unsigned inv(unsigned a) const
  {
    if (a == 0)
      throw ekr_error("FiniteField: inverse of zero");
    return inv_[a];
  }
  unsigned pow(unsigned a, unsigned k) const
  {
    unsigned r = 1;
    for (; k; k >>= 1, a = mul(a, a))
      if (k & 1)
        r = mul(r, a);
    return r;
  }

  /// Generator of the multiplicative group; the least such code.
  unsigned primitive() const { return primitive_; }

  /// Additive basis 1, w, ..., w^(e-1) for the primitive element w.
  std::vector<unsigned> basis() const
  {
    std::vector<unsigned> out;
    unsigned x = 1;
    for (unsigned i = 0; i < e_; ++i, x = mul(x, primitive_))
      out.push_back(x);
    return out;
  }

  friend FiniteField gf(unsigned p, unsigned e);

private:
  unsigned p_ = 0, e_ = 0, q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<std::uint16_t> add_, mul_;
  std::vector<unsigned> neg_, inv_;
  unsigned primitive_ = 0;
};

inline constexpr unsigned max_field_order = 1024;

/// Builds GF(p^e) using the least monic irreducible modulus of degree e, where
/// "least" compares the code sum c_i p^i of the non-leading coefficients.
inline FiniteField gf(unsigned p, unsigned e)
{
  if (!is_prime(p))
    throw ekr_error("gf: characteristic " + std::to_string(p) + " is not prime");
  if (e < 1 || e > 8)
    throw ekr_error("gf: extension degree out of range");
  unsigned q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > max_field_order)
      throw ekr_error("gf: field order exceeds " + std::to_string(max_field_order));
  }

  FiniteField F;
  F.p_ = p;
  F.e_ = e;
  F.q_ = q;
  for (unsigned code = 0; code < q; ++code) {
    auto m = detail::poly_from_code(code, p, e);
    m.push_back(1);
    if (detail::is_irreducible(m, p)) {
      F.modulus_ = m;
      break;
    }
  }
  if (F.modulus_.empty())
    throw ekr_error("gf: no irreducible polynomial found");

  auto code_of = [&](detail::poly const &c) {
    unsigned code = 0;
    for (std::size_t i = c.size(); i-- > 0;)
      code = code * p + c[i];
    return code;
  };

  F.add_.resize(q * q);
  F.mul_.resize(q * q);
  for (unsigned a = 0; a < q; ++a) {
    auto pa = detail::poly_from_code(a, p, e);
    for (unsigned b = 0; b < q; ++b) {
      auto pb = detail::poly_from_code(b, p, e);
      detail::poly s(e);
      for (unsigned i = 0; i < e; ++i)
        s[i] = (pa[i] + pb[i]) % p;
      F.add_[a * q + b] = static_cast<std::uint16_t>(code_of(s));
      detail::poly prod(2 * e, 0);
      for (unsigned i = 0; i < e; ++i)
        for (unsigned j = 0; j < e; ++j)
          prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
      F.mul_[a * q + b] = static_cast<std::uint16_t>(code_of(detail::poly_mod(prod, F.modulus_, p)));
    }
  }
  F.neg_.resize(q);
  F.inv_.assign(q, 0);
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b) {
      if (F.add(a, b) == 0)
        F.neg_[a] = b;
      if (F.mul(a, b) == 1)
        F.inv_[a] = b;
    }

  for (unsigned g = 1; g < q; ++g) {
    unsigned x = g, ord = 1;
    while (x != 1) {
      x = F.mul(x, g);
      ++ord;
    }
    if (ord == q - 1) {
      F.primitive_ = g;
      break;
    }
  }
  if (F.primitive_ == 0)
    throw ekr_error("gf: multiplicative group is not cyclic");
  return F;
}

} // namespace ekr
