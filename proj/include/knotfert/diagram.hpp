#pragma once

// Oriented link diagrams as signed Gauss codes with over/under data.
//
// Crossing sign convention: +1 when the under-strand passes from right to
// left as seen travelling along the over-strand (the right-hand rule). For a
// crossing realized on a shadow, the sign equals the shadow mark at the
// visit that passes over.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "knotfert/codes.hpp"

namespace knotfert {

struct Pass {
  int crossing = 0;
  bool over = false;

  friend bool operator==(const Pass&, const Pass&) = default;
};

class Diagram {
 public:
  // The 0-crossing unknot.
  Diagram() : components_(1) {}

  // Each crossing index must appear in exactly one over pass and one under
  // pass; an empty component is a crossingless circle. Crossings are
  // relabeled in order of first appearance. Throws Error(MalformedCode).
  Diagram(std::vector<std::vector<Pass>> components, std::vector<int> signs);

  static Diagram unlink(int components);

  int crossings() const noexcept { return static_cast<int>(signs_.size()); }
  int component_count() const noexcept { return static_cast<int>(components_.size()); }
  bool is_knot() const noexcept { return components_.size() == 1; }
  const std::vector<std::vector<Pass>>& components() const noexcept { return components_; }
  const std::vector<int>& signs() const noexcept { return signs_; }
  int sign(int crossing) const { return signs_.at(static_cast<std::size_t>(crossing)); }

  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  std::vector<std::vector<Pass>> components_;
  std::vector<int> signs_;
};

struct DiagramStats {
  int c = 0;
  int c_plus = 0;
  int c_minus = 0;
  int w = 0;
  int s = 1;
  int sl = -1;
  int g = 0;
  int components = 1;
};

// Bit i set: the first visit (in word order) of crossing i passes over.
// Throws Error(LengthMismatch).
Diagram assign(const Shadow& shadow, const std::vector<bool>& choices);
Diagram assign(const Shadow& shadow, std::uint64_t choice_bits);

// Throws Error(NotAKnot) for multi-component diagrams.
Shadow shadow_of(const Diagram& d);
std::vector<bool> choices_of(const Diagram& d);

DiagramStats stats(const Diagram& d);
int seifert_circles(const Diagram& d);

Diagram mirror(const Diagram& d);

// Exhaustive crossing-removing Reidemeister I and II moves.
Diagram simplify(const Diagram& d);

// Changes over/under at one crossing (the sign flips with it).
Diagram switch_crossing(const Diagram& d, int crossing);

// Oriented smoothing of one crossing; may split or merge components.
Diagram smooth_crossing(const Diagram& d, int crossing);

// Key invariant under relabeling and rotation of each component; for knots
// also under orientation reversal and exactly canonical. For links it is a
// faithful normal form (equal keys imply equal diagrams).
std::string diagram_key(const Diagram& d);

// PD code: crossings X[i,j,k,l] listed counterclockwise from the incoming
// under-edge. Accepts "[[1,5,2,4],...]", "PD[X[1,5,2,4],...]" and "X[...]..."
// forms. Throws Error(ParseError).
Diagram parse_pd(std::string_view text);
std::string to_pd(const Diagram& d);

// Either a PD code or "<shadow code> | <bits>" where bit i is the choice for
// crossing i. Throws Error(ParseError), Error(MalformedCode),
// Error(NotRealizable) or Error(LengthMismatch).
Diagram parse_diagram(std::string_view text);

// "<shadow code> | <bits>" for knots.
std::string to_code_string(const Diagram& d);

}  // namespace knotfert
