#pragma once

// Reference realizability test: tries every crossing orientation of a Gauss
// word, builds the rotation system of the resulting 4-regular map and counts
// faces. The curve is planar iff V - E + F = 2, i.e. F = n + 2.

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Word = std::vector<int>;

// Every orientation vector (entry x is +1/-1 for crossing x) whose rotation
// system is spherical. Orientation +1 at x means the second strand crosses the
// first from right to left, i.e. the counterclockwise order of half-edges at
// x is out1, out2, in1, in2.
inline std::vector<std::vector<int>> planar_orientations(const Word& w) {
  const int len = static_cast<int>(w.size());
  const int n = len / 2;
  if (n == 0) return {{}};
  std::vector<std::pair<int, int>> pos(static_cast<std::size_t>(n), {-1, -1});
  for (int p = 0; p < len; ++p) {
    auto& slot = pos[static_cast<std::size_t>(w[static_cast<std::size_t>(p)])];
    (slot.first < 0 ? slot.first : slot.second) = p;
  }
  // Dart 2k runs forward along edge k (from visit k to visit k+1), dart 2k+1
  // backward.
  auto out = [](int p) { return 2 * p; };
  auto in = [len](int p) { return 2 * ((p - 1 + len) % len) + 1; };

  std::vector<std::vector<int>> result;
  std::vector<int> succ(static_cast<std::size_t>(2 * len));
  std::vector<char> seen(static_cast<std::size_t>(2 * len));
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> eps(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      eps[static_cast<std::size_t>(a)] = (mask >> a) & 1 ? -1 : 1;
      const auto [p1, p2] = pos[static_cast<std::size_t>(a)];
      int rot[4];
      if (eps[static_cast<std::size_t>(a)] == 1) {
        rot[0] = out(p1), rot[1] = out(p2), rot[2] = in(p1), rot[3] = in(p2);
      } else {
        rot[0] = out(p1), rot[1] = in(p2), rot[2] = in(p1), rot[3] = out(p2);
      }
      for (int i = 0; i < 4; ++i) succ[static_cast<std::size_t>(rot[i])] = rot[(i + 1) % 4];
    }
    std::fill(seen.begin(), seen.end(), 0);
    int faces = 0;
    for (int d = 0; d < 2 * len; ++d) {
      if (seen[static_cast<std::size_t>(d)]) continue;
      ++faces;
      int x = d;
      while (!seen[static_cast<std::size_t>(x)]) {
        seen[static_cast<std::size_t>(x)] = 1;
        x = succ[static_cast<std::size_t>(x ^ 1)];
      }
    }
    if (faces == n + 2) result.push_back(std::move(eps));
  }
  return result;
}

inline bool realizable(const Word& w) { return !planar_orientations(w).empty(); }

// Every word on n letters with labels in order of first appearance.
inline void all_words(int n, const std::function<void(const Word&)>& visit) {
  Word w;
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(w.size()) == 2 * n) {
      visit(w);
      return;
    }
    for (int x = 0; x < next; ++x) {
      if (count[static_cast<std::size_t>(x)] != 1) continue;
      count[static_cast<std::size_t>(x)] = 2;
      w.push_back(x);
      rec(next);
      w.pop_back();
      count[static_cast<std::size_t>(x)] = 1;
    }
    if (next < n) {
      count[static_cast<std::size_t>(next)] = 1;
      w.push_back(next);
      rec(next + 1);
      w.pop_back();
      count[static_cast<std::size_t>(next)] = 0;
    }
  };
  rec(0);
}

// Per-visit marks of a planar orientation: +eps at the first visit of a
// crossing, -eps at the second.
inline std::vector<int> marks_of(const Word& w, const std::vector<int>& eps) {
  std::vector<int> marks(w.size());
  std::vector<char> met(eps.size(), 0);
  for (std::size_t p = 0; p < w.size(); ++p) {
    const auto x = static_cast<std::size_t>(w[p]);
    marks[p] = met[x] ? -eps[x] : eps[x];
    met[x] = 1;
  }
  return marks;
}

// Least code over rotations and reversal (and reflection when asked) of the
// marked word, as a vector of 2*label + (mark < 0) after relabeling.
inline std::vector<int> canonical(const Word& w, const std::vector<int>& marks, bool reflection) {
  const int len = static_cast<int>(w.size());
  std::vector<int> best;
  for (int flip = 0; flip < (reflection ? 2 : 1); ++flip) {
    for (int dir = 0; dir < 2; ++dir) {
      for (int r = 0; r < len; ++r) {
        std::vector<int> code;
        std::vector<int> relabel(w.size() / 2 + 1, -1);
        int next = 0;
        for (int i = 0; i < len; ++i) {
          const int p = dir == 0 ? (r + i) % len : ((r - i) % len + len) % len;
          int& lab = relabel[static_cast<std::size_t>(w[static_cast<std::size_t>(p)])];
          if (lab < 0) lab = next++;
          const int mark = marks[static_cast<std::size_t>(p)] * (flip ? -1 : 1);
          code.push_back(2 * lab + (mark < 0 ? 1 : 0));
        }
        if (best.empty() || code < best) best = code;
      }
    }
  }
  return best;
}

}  // namespace oracle
