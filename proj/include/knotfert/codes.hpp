#pragma once

// Knot shadows as Gauss words: parsing, realizability on the sphere,
// canonical keys and exhaustive enumeration.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace knotfert {

// A sequence of 2n crossing labels in which every label occurs exactly twice.
// Labels are normalized to 0..n-1 in order of first occurrence.
class DoubleOccurrenceWord {
 public:
  DoubleOccurrenceWord() = default;

  // Validates and relabels. Throws Error(MalformedCode).
  static DoubleOccurrenceWord from_letters(std::span<const int> letters);

  int crossings() const noexcept { return static_cast<int>(letters_.size() / 2); }
  int length() const noexcept { return static_cast<int>(letters_.size()); }
  int operator[](int pos) const { return letters_[static_cast<std::size_t>(pos)]; }
  const std::vector<int>& letters() const noexcept { return letters_; }

  // Positions of the two occurrences of each label, first < second.
  std::vector<std::pair<int, int>> occurrences() const;

  // "a b c a b c" for n <= 26, "1 2 3 1 2 3" otherwise.
  std::string to_string() const;

  friend bool operator==(const DoubleOccurrenceWord&, const DoubleOccurrenceWord&) = default;

 private:
  std::vector<int> letters_;
};

// A realized shadow: a Gauss word together with the local orientation at every
// visit. marks[p] is the sign of (t_p x t_other), where t_p is the tangent of
// the curve at visit p and t_other the tangent of the other strand through the
// same crossing. The marks pin down the immersion on the oriented sphere.
class Shadow {
 public:
  Shadow() = default;  // the embedded circle

  // Throws Error(NotRealizable) if the marks do not describe a planar curve.
  Shadow(DoubleOccurrenceWord word, std::vector<std::int8_t> marks);

  const DoubleOccurrenceWord& word() const noexcept { return word_; }
  const std::vector<std::int8_t>& marks() const noexcept { return marks_; }
  int crossings() const noexcept { return word_.crossings(); }

  // Orientation of the second strand relative to the first at crossing x.
  int crossing_orientation(int x) const;

  // Reflection of the curve in the sphere: same word, all marks negated.
  Shadow reflected() const;

  std::string to_string() const { return word_.to_string(); }

  friend bool operator==(const Shadow&, const Shadow&) = default;

 private:
  DoubleOccurrenceWord word_;
  std::vector<std::int8_t> marks_;
};

struct ShadowStats {
  int c = 0;
  int s = 1;
  int g = 0;
};

// Interlacement graph as adjacency bitmasks (n <= 64).
std::vector<std::uint64_t> interlacement(const DoubleOccurrenceWord& word);

// Exact test: the word is the Gauss word of some closed curve on the sphere.
bool is_realizable(const DoubleOccurrenceWord& word);

// Per-crossing orientations of one realization (each interlacement component
// rooted at +1 on its smallest label), or nullopt when not realizable.
std::optional<std::vector<int>> crossing_orientations(const DoubleOccurrenceWord& word);

// All realizations of the word, one per independent flip of an interlacement
// component. Empty when not realizable.
std::vector<Shadow> realizations(const DoubleOccurrenceWord& word);

// The default realization of a realizable word. Throws Error(NotRealizable).
Shadow realize(const DoubleOccurrenceWord& word);

// Parses "a b c a b c", "1,2,3,1,2,3"; '#' starts a comment.
// Throws Error(MalformedCode) or Error(NotRealizable).
Shadow parse_shadow(std::string_view text);

// Parses a shadow file: one code per line, blank and '#' lines skipped.
std::vector<Shadow> parse_shadow_lines(std::string_view text);

// Lexicographically least code over rotations, reversal and relabeling, with
// marks. With quotient_reflection the reflected curve is folded in as well.
std::string canonical_form(const Shadow& shadow, bool quotient_reflection = false);

// A crossing is nugatory when no other crossing is interlaced with it.
bool has_nugatory_crossing(const DoubleOccurrenceWord& word);

// A letter whose two occurrences are cyclically adjacent (a kink).
bool has_kink(const DoubleOccurrenceWord& word);

ShadowStats stats_shadow(const Shadow& shadow);

// Number of Seifert circles of the smoothing; only the word matters.
int seifert_circles(const DoubleOccurrenceWord& word);

struct EnumerateOptions {
  bool allow_reducible = true;
  bool quotient_reflection = false;
  int threads = 1;
};

// One representative per canonical class of n-crossing shadows, sorted by key.
std::vector<Shadow> enumerate_shadows(int n, const EnumerateOptions& options = {});

// Calls visit for every normalized double-occurrence word with n letters, in
// lexicographic order. With parts > 1 only the subtrees (at a fixed depth)
// whose index is congruent to part modulo parts are visited.
void for_each_word(int n, const std::function<void(const DoubleOccurrenceWord&)>& visit,
                   int part = 0, int parts = 1);

}  // namespace knotfert
