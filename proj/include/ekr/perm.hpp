#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ekr {

using point_t = std::uint16_t;

/// Thrown for malformed input to any ekr operation (bad degree, non-bijection, ...).
class ekr_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A permutation of {0, ..., n-1} stored by its image array: images()[i] is i^g.
///
/// Products follow the right-action convention: i^(pq) = (i^p)^q, i.e. `p * q`
/// applies p first and then q.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<point_t> images) : images_(std::move(images))
  {
    if (!is_bijection(images_))
      throw ekr_error("permutation images are not a bijection");
  }

  Permutation(std::initializer_list<point_t> images)
  : Permutation(std::vector<point_t>(images))
  {}

  static Permutation identity(std::size_t degree)
  {
    std::vector<point_t> im(degree);
    std::iota(im.begin(), im.end(), point_t{0});
    return Permutation(unchecked, std::move(im));
  }

  /// Builds a permutation from disjoint cycles, e.g. {{0, 1}, {2, 3, 4}}.
  static Permutation from_cycles(std::size_t degree,
                                 std::vector<std::vector<point_t>> const &cycles)
  {
    std::vector<point_t> im(degree);
    std::iota(im.begin(), im.end(), point_t{0});
    std::vector<bool> seen(degree, false);
    for (auto const &cyc : cycles) {
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        point_t a = cyc[k];
        if (a >= degree || seen[a])
          throw ekr_error("cycle notation repeats or exceeds degree");
        seen[a] = true;
        im[a] = cyc[(k + 1) % cyc.size()];
      }
    }
    return Permutation(unchecked, std::move(im));
  }

  static bool is_bijection(std::span<point_t const> images)
  {
    std::vector<bool> hit(images.size(), false);
    for (point_t v : images) {
      if (v >= images.size() || hit[v])
        return false;
      hit[v] = true;
    }
    return true;
  }

  std::size_t degree() const { return images_.size(); }
  std::vector<point_t> const &images() const { return images_; }
  point_t operator[](std::size_t i) const { return images_[i]; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Permutation inverse() const
  {
    std::vector<point_t> im(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      im[images_[i]] = static_cast<point_t>(i);
    return Permutation(unchecked, std::move(im));
  }

  std::size_t order() const
  {
    std::size_t result = 1;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i])
        continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  std::size_t fixed_point_count() const
  {
    std::size_t c = 0;
    for (std::size_t i = 0; i < images_.size(); ++i)
      c += images_[i] == i;
    return c;
  }

  bool is_derangement() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] == i)
        return false;
    return true;
  }

  /// Cycle notation with 0-based points, e.g. "(0 1)(2 3 4)"; "()" for identity.
  std::string cycle_string() const
  {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i)
        continue;
      out += '(';
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        if (j != i)
          out += ' ';
        out += std::to_string(j);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend auto operator<=>(Permutation const &, Permutation const &) = default;

private:
  struct unchecked_t {};
  static constexpr unchecked_t unchecked{};

  Permutation(unchecked_t, std::vector<point_t> images) : images_(std::move(images)) {}

  friend Permutation compose(Permutation const &p, Permutation const &q);

  std::vector<point_t> images_;
};

/// Right-action product: the result maps i to (i^p)^q.
inline Permutation compose(Permutation const &p, Permutation const &q)
{
  if (p.degree() != q.degree())
    throw ekr_error("compose: degree mismatch");
  std::vector<point_t> im(p.degree());
  for (std::size_t i = 0; i < im.size(); ++i)
    im[i] = q.images_[p.images_[i]];
  return Permutation(Permutation::unchecked, std::move(im));
}

inline Permutation operator*(Permutation const &p, Permutation const &q)
{
  return compose(p, q);
}

inline std::vector<point_t> fixed_points(Permutation const &p)
{
  std::vector<point_t> out;
  for (std::size_t i = 0; i < p.degree(); ++i)
    if (p[i] == i)
      out.push_back(static_cast<point_t>(i));
  return out;
}

/// Number of points i with i^g = i^h, which is the fixed-point count of g h^-1.
inline std::size_t agreement(std::span<point_t const> g, std::span<point_t const> h)
{
  std::size_t c = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    c += g[i] == h[i];
  return c;
}

struct ImageHash {
  std::size_t operator()(std::vector<point_t> const &v) const noexcept
  {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (point_t x : v) {
      h ^= x;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

} // namespace ekr
