#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "field.hpp"
#include "group.hpp"

namespace ekr {

/// Square matrix over a FiniteField, row-major, entries are element codes.
struct FieldMatrix {
  std::size_t dim = 0;
  std::vector<unsigned> entries;

  unsigned operator()(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
  unsigned &operator()(std::size_t r, std::size_t c) { return entries[r * dim + c]; }

  static FieldMatrix identity(std::size_t dim)
  {
    FieldMatrix m{dim, std::vector<unsigned>(dim * dim, 0)};
    for (std::size_t i = 0; i < dim; ++i)
      m(i, i) = 1;
    return m;
  }
};

inline FieldMatrix multiply(FiniteField const &F, FieldMatrix const &a, FieldMatrix const &b)
{
  FieldMatrix out{a.dim, std::vector<unsigned>(a.dim * a.dim, 0)};
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) {
      unsigned s = 0;
      for (std::size_t k = 0; k < a.dim; ++k)
        s = F.add(s, F.mul(a(i, k), b(k, j)));
      out(i, j) = s;
    }
  return out;
}

/// Rank by row reduction over the field.
inline std::size_t rank(FiniteField const &F, FieldMatrix m)
{
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.dim && r < m.dim; ++c) {
    std::size_t piv = r;
    while (piv < m.dim && m(piv, c) == 0)
      ++piv;
    if (piv == m.dim)
      continue;
    for (std::size_t k = 0; k < m.dim; ++k)
      std::swap(m(r, k), m(piv, k));
    unsigned inv = F.inv(m(r, c));
    for (std::size_t i = 0; i < m.dim; ++i) {
      if (i == r || m(i, c) == 0)
        continue;
      unsigned f = F.mul(m(i, c), inv);
      for (std::size_t k = 0; k < m.dim; ++k)
        m(i, k) = F.sub(m(i, k), F.mul(f, m(r, k)));
    }
    ++r;
  }
  return r;
}

/// Index of a vector of F^dim: the code string read with x[0] most significant.
inline std::size_t vector_index(FiniteField const &F, std::span<unsigned const> x)
{
  std::size_t idx = 0;
  for (unsigned v : x)
    idx = idx * F.q() + v;
  return idx;
}

inline std::vector<unsigned> vector_at(FiniteField const &F, std::size_t dim, std::size_t idx)
{
  std::vector<unsigned> x(dim);
  for (std::size_t i = dim; i-- > 0; idx /= F.q())
    x[i] = static_cast<unsigned>(idx % F.q());
  return x;
}

/// Permutation of F^d induced by an affine matrix in block form [[A, v], [0, 1]]
/// of size d+1, acting on column vectors by x -> A x + v.
inline Permutation affine_permutation(FiniteField const &F, FieldMatrix const &m)
{
  std::size_t d = m.dim - 1;
  std::size_t points = 1;
  for (std::size_t i = 0; i < d; ++i)
    points *= F.q();
  std::vector<point_t> im(points);
  for (std::size_t idx = 0; idx < points; ++idx) {
    auto x = vector_at(F, d, idx);
    std::vector<unsigned> y(d);
    for (std::size_t r = 0; r < d; ++r) {
      unsigned s = m(r, d);
      for (std::size_t c = 0; c < d; ++c)
        s = F.add(s, F.mul(m(r, c), x[c]));
      y[r] = s;
    }
    im[idx] = static_cast<point_t>(vector_index(F, y));
  }
  return Permutation(std::move(im));
}

namespace detail {

inline FieldMatrix elementary(std::size_t dim, std::size_t r, std::size_t c, unsigned value)
{
  auto m = FieldMatrix::identity(dim);
  m(r, c) = value;
  return m;
}

/// Affine group generators on F^d: translations along basis directions scaled by
/// the additive basis of F, and the given linear generators.
inline std::vector<Permutation> affine_generators(FiniteField const &F, std::size_t d,
                                                  std::vector<FieldMatrix> const &linear)
{
  std::vector<Permutation> gens;
  for (std::size_t r = 0; r < d; ++r)
    for (unsigned b : F.basis())
      gens.push_back(affine_permutation(F, elementary(d + 1, r, d, b)));
  for (auto const &a : linear) {
    FieldMatrix m = FieldMatrix::identity(d + 1);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        m(i, j) = a(i, j);
    gens.push_back(affine_permutation(F, m));
  }
  return gens;
}

/// Transvections I + b E_{rc} (r != c, b in the additive basis); they generate SL_d.
inline std::vector<FieldMatrix> sl_generators(FiniteField const &F, std::size_t d)
{
  std::vector<FieldMatrix> out;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      if (r != c)
        for (unsigned b : F.basis())
          out.push_back(elementary(d, r, c, b));
  return out;
}

inline FiniteField field_of_order(unsigned q)
{
  unsigned p, e;
  if (!prime_power(q, p, e))
    throw ekr_error("q = " + std::to_string(q) + " is not a prime power");
  return gf(p, e);
}

/// Point numbering on the projective line: [1:0] is 0, [x:1] is 1 + code(x).
inline Permutation mobius(FiniteField const &F, unsigned a, unsigned b, unsigned c, unsigned d)
{
  unsigned q = F.q();
  std::vector<point_t> im(q + 1);
  im[0] = c == 0 ? 0 : static_cast<point_t>(1 + F.mul(a, F.inv(c)));
  for (unsigned x = 0; x < q; ++x) {
    unsigned den = F.add(F.mul(c, x), d);
    unsigned num = F.add(F.mul(a, x), b);
    im[1 + x] = den == 0 ? 0 : static_cast<point_t>(1 + F.mul(num, F.inv(den)));
  }
  return Permutation(std::move(im));
}

inline std::vector<Permutation> projective_generators(FiniteField const &F, bool full_pgl)
{
  std::vector<Permutation> gens;
  unsigned w = F.primitive();
  unsigned one = 1, zero = 0;
  for (unsigned b : F.basis())
    gens.push_back(mobius(F, one, b, zero, one));
  gens.push_back(mobius(F, F.mul(w, w), zero, zero, one));
  gens.push_back(mobius(F, zero, F.neg(one), one, zero));
  if (full_pgl)
    gens.push_back(mobius(F, w, zero, zero, one));
  return gens;
}

} // namespace detail

/// Hard-coded generators of M11 on 11 points (0-based): an 11-cycle and
/// (2 6 10 7)(3 9 4 5).
inline std::vector<Permutation> m11_generators()
{
  std::vector<point_t> cyc(11);
  for (point_t i = 0; i < 11; ++i)
    cyc[i] = i;
  return {Permutation::from_cycles(11, {cyc}),
          Permutation::from_cycles(11, {{2, 6, 10, 7}, {3, 9, 4, 5}})};
}

struct FamilySpec {
  std::string tag;
  std::vector<unsigned> params;
};

/// Parses CLI family strings such as "sym:5", "agammal1:3,2" or "m11".
inline FamilySpec parse_family(std::string_view text)
{
  FamilySpec f;
  auto colon = text.find(':');
  f.tag = std::string(text.substr(0, colon));
  if (colon == std::string_view::npos)
    return f;
  std::string_view rest = text.substr(colon + 1);
  for (;;) {
    auto comma = rest.find(',');
    auto tok = rest.substr(0, comma);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
      throw ekr_error("malformed family parameter '" + std::string(tok) + "'");
    f.params.push_back(v);
    if (comma == std::string_view::npos)
      break;
    rest = rest.substr(comma + 1);
  }
  return f;
}

inline std::string family_string(FamilySpec const &f)
{
  std::string s = f.tag;
  for (std::size_t i = 0; i < f.params.size(); ++i)
    s += (i == 0 ? ":" : ",") + std::to_string(f.params[i]);
  return s;
}

/// Degree and generators of a catalog family; see family().
inline std::pair<std::size_t, std::vector<Permutation>> family_generators(FamilySpec const &f)
{
  auto need = [&](std::size_t count) {
    if (f.params.size() != count)
      throw ekr_error("family " + f.tag + " expects " + std::to_string(count) + " parameter(s)");
  };
  auto const &t = f.tag;
  if (t == "sym" || t == "alt") {
    need(1);
    unsigned n = f.params[0];
    if (n < (t == "sym" ? 2u : 3u) || n > 12)
      throw ekr_error(t + ": degree out of range");
    std::vector<point_t> all(n), tail(n - 1);
    for (point_t i = 0; i < n; ++i)
      all[i] = i;
    for (point_t i = 1; i < n; ++i)
      tail[i - 1] = i;
    if (t == "sym")
      return {n, {Permutation::from_cycles(n, {{0, 1}}), Permutation::from_cycles(n, {all})}};
    std::vector<Permutation> gens{Permutation::from_cycles(n, {{0, 1, 2}})};
    if (n > 3)
      gens.push_back(Permutation::from_cycles(n, {n % 2 ? all : tail}));
    return {n, gens};
  }
  if (t == "psl2" || t == "pgl2") {
    need(1);
    auto F = detail::field_of_order(f.params[0]);
    return {F.q() + 1, detail::projective_generators(F, t == "pgl2")};
  }
  if (t == "agl1") {
    need(1);
    auto F = detail::field_of_order(f.params[0]);
    FieldMatrix w{1, {F.primitive()}};
    return {F.q(), detail::affine_generators(F, 1, {w})};
  }
  if (t == "agammal1") {
    need(2);
    auto F = gf(f.params[0], f.params[1]);
    FieldMatrix w{1, {F.primitive()}};
    auto gens = detail::affine_generators(F, 1, {w});
    std::vector<point_t> frob(F.q());
    for (unsigned x = 0; x < F.q(); ++x)
      frob[x] = static_cast<point_t>(F.pow(x, F.p()));
    gens.emplace_back(std::move(frob));
    return {F.q(), gens};
  }
  if (t == "asl2") {
    need(1);
    auto F = detail::field_of_order(f.params[0]);
    if (F.p() != 2)
      throw ekr_error("asl2: q must be even");
    return {F.q() * F.q(), detail::affine_generators(F, 2, detail::sl_generators(F, 2))};
  }
  if (t == "agl3_2") {
    need(0);
    auto F = gf(2, 1);
    return {8, detail::affine_generators(F, 3, detail::sl_generators(F, 3))};
  }
  if (t == "m11") {
    need(0);
    return {11, m11_generators()};
  }
  throw ekr_error("unknown group family '" + t + "'");
}

/// Builds a catalog group. Affine families number points by vector code; the
/// projective families number [1:0] as 0 and [x:1] as 1 + code(x).
inline GroupTable family(FamilySpec const &f, std::size_t cap = default_generate_cap)
{
  auto [degree, gens] = family_generators(f);
  return GroupTable::generate(degree, gens, cap);
}

inline GroupTable family(std::string_view text, std::size_t cap = default_generate_cap)
{
  return family(parse_family(text), cap);
}

struct GroupSpecFile {
  std::optional<std::string> name;
  std::size_t degree = 0;
  std::vector<std::vector<point_t>> generators;

  friend bool operator==(GroupSpecFile const &, GroupSpecFile const &) = default;
};

inline GroupSpecFile parse_group_spec(std::string_view text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (nlohmann::json::exception const &e) {
    throw ekr_error(std::string("group spec: malformed JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw ekr_error("group spec: top level must be an object");
  if (!doc.contains("degree") || !doc["degree"].is_number_integer() || doc["degree"].get<long long>() < 1)
    throw ekr_error("group spec: 'degree' must be an integer >= 1");
  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw ekr_error("group spec: 'generators' must be an array");

  GroupSpecFile spec;
  spec.degree = doc["degree"].get<std::size_t>();
  if (spec.degree > 65535)
    throw ekr_error("group spec: degree too large");
  if (doc.contains("name")) {
    if (!doc["name"].is_string())
      throw ekr_error("group spec: 'name' must be a string");
    spec.name = doc["name"].get<std::string>();
  }
  bool one_based = false;
  if (doc.contains("one_based")) {
    if (!doc["one_based"].is_boolean())
      throw ekr_error("group spec: 'one_based' must be a boolean");
    one_based = doc["one_based"].get<bool>();
  }
  for (auto const &g : doc["generators"]) {
    if (!g.is_array())
      throw ekr_error("group spec: each generator must be an array");
    if (g.size() != spec.degree)
      throw ekr_error("group spec: generator length differs from degree");
    std::vector<point_t> im;
    for (auto const &v : g) {
      if (!v.is_number_integer())
        throw ekr_error("group spec: generator entries must be integers");
      long long x = v.get<long long>() - (one_based ? 1 : 0);
      if (x < 0 || x >= static_cast<long long>(spec.degree))
        throw ekr_error("group spec: generator entry out of range");
      im.push_back(static_cast<point_t>(x));
    }
    if (!Permutation::is_bijection(im))
      throw ekr_error("group spec: generator is not a bijection");
    spec.generators.push_back(std::move(im));
  }
  return spec;
}

inline std::string emit_group_spec(GroupSpecFile const &spec)
{
  nlohmann::json doc;
  doc["degree"] = spec.degree;
  doc["generators"] = spec.generators;
  if (spec.name)
    doc["name"] = *spec.name;
  return doc.dump();
}

inline GroupTable generate(GroupSpecFile const &spec, std::size_t cap = default_generate_cap)
{
  std::vector<Permutation> gens;
  for (auto const &g : spec.generators)
    gens.emplace_back(g);
  return GroupTable::generate(spec.degree, gens, cap);
}

} // namespace ekr
