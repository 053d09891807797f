#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace knotfert {

// Exact Laurent polynomial in v and z with integer coefficients. Terms are
// kept sorted by (v, z) with no zero coefficients, so equality is structural.
class Laurent2 {
 public:
  struct Term {
    int v = 0;
    int z = 0;
    std::int64_t coeff = 0;

    friend bool operator==(const Term&, const Term&) = default;
  };

  Laurent2() = default;
  static Laurent2 constant(std::int64_t c);
  static Laurent2 monomial(std::int64_t c, int v, int z);
  // Builds from arbitrary terms, merging duplicates and dropping zeros.
  static Laurent2 from_terms(std::vector<Term> terms);

  bool is_zero() const noexcept { return terms_.empty(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::int64_t coefficient(int v, int z) const;

  Laurent2& operator+=(const Laurent2& rhs);
  Laurent2& operator-=(const Laurent2& rhs);
  friend Laurent2 operator+(Laurent2 lhs, const Laurent2& rhs) { return lhs += rhs; }
  friend Laurent2 operator-(Laurent2 lhs, const Laurent2& rhs) { return lhs -= rhs; }
  friend Laurent2 operator*(const Laurent2& lhs, const Laurent2& rhs);
  Laurent2 operator-() const;

  // c * v^dv * z^dz * (*this)
  Laurent2 scaled(std::int64_t c, int dv, int dz) const;
  Laurent2 pow(int exponent) const;

  // P(v^-1, -z): the HOMFLY polynomial of the mirror image.
  Laurent2 mirrored() const;

  // Canonical text: "[(v,z,c),...]" sorted by (v, z). "[]" is zero.
  std::string serialize() const;
  // Inverse of serialize(). Throws Error(ParseError).
  static Laurent2 deserialize(std::string_view text);

  // Human-readable, e.g. "2*v^2 - v^4 + v^2*z^2".
  std::string to_string() const;

  friend bool operator==(const Laurent2&, const Laurent2&) = default;

 private:
  std::vector<Term> terms_;
};

struct DegreeBounds {
  int max_deg_z = 0;
  int min_deg_z = 0;
  int min_deg_v = 0;
  int max_deg_v = 0;
  int breadth_v = 0;
};

// Throws Error(ZeroPolynomial).
DegreeBounds bounds(const Laurent2& p);

// Lower bound for the canonical genus (Morton), upper bound for the maximal
// self-linking number and lower bound for the braid index (Morton-Franks-
// Williams), all read off the HOMFLY polynomial of a knot.
struct InvariantBounds {
  int gc_lower = 0;
  int sl_upper = -1;
  int braid_lower = 1;
};

// Throws Error(ZeroPolynomial).
InvariantBounds invariant_bounds(const Laurent2& p);

}  // namespace knotfert
