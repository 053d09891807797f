#include "knotfert/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>

#include "knotfert/error.hpp"

namespace knotfert {

namespace {

bool term_less(const Laurent2::Term& a, const Laurent2::Term& b) {
  return a.v != b.v ? a.v < b.v : a.z < b.z;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorKind::ResourceLimit, "HOMFLY coefficient overflow");
  }
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::ResourceLimit, "HOMFLY coefficient overflow");
  }
  return out;
}

// Merge of two sorted term lists; sign is applied to rhs.
std::vector<Laurent2::Term> merge(std::span<const Laurent2::Term> lhs,
                                  std::span<const Laurent2::Term> rhs, int sign) {
  std::vector<Laurent2::Term> out;
  out.reserve(lhs.size() + rhs.size());
  std::size_t i = 0, j = 0;
  while (i < lhs.size() || j < rhs.size()) {
    if (j == rhs.size() || (i < lhs.size() && term_less(lhs[i], rhs[j]))) {
      out.push_back(lhs[i++]);
    } else if (i == lhs.size() || term_less(rhs[j], lhs[i])) {
      out.push_back({rhs[j].v, rhs[j].z, sign * rhs[j].coeff});
      ++j;
    } else {
      const std::int64_t c = checked_add(lhs[i].coeff, sign * rhs[j].coeff);
      if (c != 0) out.push_back({lhs[i].v, lhs[i].z, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Laurent2 Laurent2::constant(std::int64_t c) { return monomial(c, 0, 0); }

Laurent2 Laurent2::monomial(std::int64_t c, int v, int z) {
  Laurent2 p;
  if (c != 0) p.terms_.push_back({v, z, c});
  return p;
}

Laurent2 Laurent2::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_less);
  Laurent2 p;
  for (const auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().v == t.v && p.terms_.back().z == t.z) {
      p.terms_.back().coeff = checked_add(p.terms_.back().coeff, t.coeff);
    } else {
      p.terms_.push_back(t);
    }
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.coeff == 0; });
  return p;
}

std::int64_t Laurent2::coefficient(int v, int z) const {
  const Term key{v, z, 0};
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), key, term_less);
  return (it != terms_.end() && it->v == v && it->z == z) ? it->coeff : 0;
}

Laurent2& Laurent2::operator+=(const Laurent2& rhs) {
  terms_ = merge(terms_, rhs.terms_, 1);
  return *this;
}

Laurent2& Laurent2::operator-=(const Laurent2& rhs) {
  terms_ = merge(terms_, rhs.terms_, -1);
  return *this;
}

Laurent2 operator*(const Laurent2& lhs, const Laurent2& rhs) {
  std::vector<Laurent2::Term> prod;
  prod.reserve(lhs.terms_.size() * rhs.terms_.size());
  for (const auto& a : lhs.terms_) {
    for (const auto& b : rhs.terms_) {
      prod.push_back({a.v + b.v, a.z + b.z, checked_mul(a.coeff, b.coeff)});
    }
  }
  return Laurent2::from_terms(std::move(prod));
}

Laurent2 Laurent2::operator-() const { return scaled(-1, 0, 0); }

Laurent2 Laurent2::scaled(std::int64_t c, int dv, int dz) const {
  if (c == 0) return {};
  Laurent2 out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.v + dv, t.z + dz, checked_mul(c, t.coeff)});
  return out;
}

Laurent2 Laurent2::pow(int exponent) const {
  Laurent2 out = constant(1);
  for (int i = 0; i < exponent; ++i) out = out * *this;
  return out;
}

Laurent2 Laurent2::mirrored() const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) terms.push_back({-t.v, t.z, (t.z % 2 != 0) ? -t.coeff : t.coeff});
  return from_terms(std::move(terms));
}

std::string Laurent2::serialize() const {
  std::string out = "[";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += ',';
    out += '(' + std::to_string(terms_[i].v) + ',' + std::to_string(terms_[i].z) + ',' +
           std::to_string(terms_[i].coeff) + ')';
  }
  return out + "]";
}

Laurent2 Laurent2::deserialize(std::string_view text) {
  std::vector<std::int64_t> nums;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
      const bool neg = ch == '-';
      if (neg) ++i;
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw Error(ErrorKind::ParseError, "bad number in polynomial");
      }
      std::int64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i++] - '0');
      }
      nums.push_back(neg ? -v : v);
    } else if (ch == '[' || ch == ']' || ch == '(' || ch == ')' || ch == ',' ||
               std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else {
      throw Error(ErrorKind::ParseError, "unexpected character in polynomial");
    }
  }
  if (nums.size() % 3 != 0) throw Error(ErrorKind::ParseError, "polynomial terms are triples");
  std::vector<Term> terms;
  for (std::size_t k = 0; k < nums.size(); k += 3) {
    terms.push_back({static_cast<int>(nums[k]), static_cast<int>(nums[k + 1]), nums[k + 2]});
  }
  return from_terms(std::move(terms));
}

std::string Laurent2::to_string() const {
  if (terms_.empty()) return "0";
  auto power = [](char var, int e) -> std::string {
    if (e == 0) return "";
    if (e == 1) return std::string(1, var);
    return std::string(1, var) + "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  };
  // z-major order reads like the usual tables.
  std::vector<Term> order(terms_.begin(), terms_.end());
  std::stable_sort(order.begin(), order.end(),
                   [](const Term& a, const Term& b) { return a.z != b.z ? a.z < b.z : a.v < b.v; });
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& t = order[i];
    const std::int64_t mag = t.coeff < 0 ? -t.coeff : t.coeff;
    if (i == 0) {
      if (t.coeff < 0) out += "-";
    } else {
      out += t.coeff < 0 ? " - " : " + ";
    }
    const std::string vz = [&] {
      std::string a = power('v', t.v), b = power('z', t.z);
      if (!a.empty() && !b.empty()) return a + "*" + b;
      return a + b;
    }();
    if (vz.empty()) {
      out += std::to_string(mag);
    } else {
      if (mag != 1) out += std::to_string(mag) + "*";
      out += vz;
    }
  }
  return out;
}

DegreeBounds bounds(const Laurent2& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "degrees of the zero polynomial");
  DegreeBounds b;
  const auto terms = p.terms();
  b.min_deg_v = terms.front().v;
  b.max_deg_v = terms.back().v;
  b.min_deg_z = b.max_deg_z = terms.front().z;
  for (const auto& t : terms) {
    b.min_deg_z = std::min(b.min_deg_z, t.z);
    b.max_deg_z = std::max(b.max_deg_z, t.z);
  }
  b.breadth_v = b.max_deg_v - b.min_deg_v;
  return b;
}

InvariantBounds invariant_bounds(const Laurent2& p) {
  const DegreeBounds b = bounds(p);
  InvariantBounds out;
  out.gc_lower = (b.max_deg_z + 1) / 2;
  out.sl_upper = b.min_deg_v - 1;
  out.braid_lower = b.breadth_v / 2 + 1;
  return out;
}

}  // namespace knotfert
