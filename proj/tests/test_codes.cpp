#include <doctest.h>

#include <algorithm>
#include <random>
#include <map>
#include <optional>
#include <set>

#include "knotfert/codes.hpp"
#include "knotfert/error.hpp"
#include "oracles/embedding_oracle.hpp"

using namespace knotfert;

namespace {

DoubleOccurrenceWord word(std::vector<int> letters) { return DoubleOccurrenceWord::from_letters(letters); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ParseError;
}

// Applies rotation, optional reversal and a random relabeling to a shadow's
// marked word and re-parses it.
Shadow scramble(const Shadow& s, int rotation, bool reverse, std::mt19937& rng) {
  const auto& w = s.word().letters();
  const int len = static_cast<int>(w.size());
  std::vector<int> perm(static_cast<std::size_t>(s.crossings()));
  for (int i = 0; i < s.crossings(); ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::string text;
  for (int i = 0; i < len; ++i) {
    const int p = reverse ? ((rotation - i) % len + len) % len : (rotation + i) % len;
    text += "x" + std::to_string(perm[static_cast<std::size_t>(w[static_cast<std::size_t>(p)])]);
    text += s.marks()[static_cast<std::size_t>(p)] > 0 ? "+ " : "- ";
  }
  return parse_shadow(text);
}

}  // namespace

TEST_SUITE("codes") {

TEST_CASE("parse_shadow basics") {
  CHECK(parse_shadow("a a").crossings() == 1);
  CHECK(parse_shadow("a b c a b c").crossings() == 3);
  CHECK(parse_shadow("1,2,3,1,2,3").word() == parse_shadow("a b c a b c").word());
  CHECK(parse_shadow("").crossings() == 0);
  CHECK(parse_shadow("   # only a comment").crossings() == 0);
  CHECK(kind_of([] { parse_shadow("a b c a c b"); }) == ErrorKind::NotRealizable);
  CHECK(kind_of([] { parse_shadow("a b a"); }) == ErrorKind::MalformedCode);
  CHECK(kind_of([] { parse_shadow("a a a a"); }) == ErrorKind::MalformedCode);
  CHECK(kind_of([] { parse_shadow("a+ b c a b c"); }) == ErrorKind::MalformedCode);
}

TEST_CASE("marks must describe a planar curve") {
  // The trefoil word has one interlacement component: two of the eight
  // orientation vectors are planar.
  int accepted = 0;
  for (int bits = 0; bits < 8; ++bits) {
    std::string text;
    for (int p = 0; p < 6; ++p) {
      const int x = p % 3;
      const bool plus = ((bits >> x) & 1) != (p >= 3);
      text += std::string(1, static_cast<char>('a' + x)) + (plus ? "+ " : "- ");
    }
    try {
      parse_shadow(text);
      ++accepted;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotRealizable);
    }
  }
  CHECK(accepted == 2);
  CHECK_THROWS_AS(parse_shadow("a+ a+"), Error);
}

TEST_CASE("is_realizable examples") {
  CHECK(is_realizable(word({})));
  CHECK(is_realizable(word({0, 0})));
  CHECK(is_realizable(word({0, 1, 2, 0, 1, 2})));
  CHECK_FALSE(is_realizable(word({0, 1, 2, 0, 2, 1})));
  // The clasp word fails Gauss parity: between the two a's, b occurs once.
  CHECK_FALSE(is_realizable(word({0, 1, 0, 1})));
  CHECK_FALSE(oracle::realizable({0, 1, 0, 1}));
}

TEST_CASE("realizability and orientations agree with the embedding oracle for n <= 6") {
  for (int n = 0; n <= 6; ++n) {
    int words = 0, mismatches = 0;
    oracle::all_words(n, [&](const oracle::Word& w) {
      ++words;
      auto expected = oracle::planar_orientations(w);
      std::sort(expected.begin(), expected.end());
      const auto dw = word(w);
      std::vector<std::vector<int>> got;
      for (const auto& s : realizations(dw)) {
        std::vector<int> eps;
        for (int x = 0; x < n; ++x) eps.push_back(s.crossing_orientation(x));
        got.push_back(eps);
      }
      std::sort(got.begin(), got.end());
      if (is_realizable(dw) != !expected.empty() || got != expected) ++mismatches;
    });
    INFO("n = " << n << ", words = " << words);
    CHECK(mismatches == 0);
  }
}

TEST_CASE("canonical_form examples") {
  const Shadow t = parse_shadow("a b c a b c");
  CHECK(canonical_form(parse_shadow("b c a b c a")) == canonical_form(t));
  CHECK(canonical_form(parse_shadow("c b a c b a")) == canonical_form(t));
  // Idempotent on its own output.
  CHECK(canonical_form(parse_shadow(canonical_form(t))) == canonical_form(t));
  // Reflection is only folded in on request.
  const Shadow two_kinks = parse_shadow("a+ a- b+ b-");
  const Shadow kinks_other_side = parse_shadow("a+ a- b- b+");
  CHECK(canonical_form(two_kinks) != canonical_form(kinks_other_side));
  CHECK(canonical_form(two_kinks.reflected(), true) == canonical_form(two_kinks, true));
}

TEST_CASE("canonical_form is constant on random orbits") {
  std::mt19937 rng(12345);
  for (int n = 1; n <= 6; ++n) {
    for (const auto& s : enumerate_shadows(n)) {
      const std::string key = canonical_form(s);
      for (int trial = 0; trial < 4; ++trial) {
        const int rot = static_cast<int>(rng() % static_cast<unsigned>(2 * n));
        const bool rev = rng() & 1;
        CHECK(canonical_form(scramble(s, rot, rev, rng)) == key);
      }
    }
  }
}

TEST_CASE("different Seifert counts give different keys") {
  std::map<std::string, int> s_of_key;
  for (int n = 0; n <= 6; ++n) {
    for (const auto& s : enumerate_shadows(n)) {
      const auto [it, fresh] = s_of_key.try_emplace(canonical_form(s), stats_shadow(s).s);
      CHECK(fresh);
    }
  }
  // Equal keys never occur, so check the converse directly on pairs.
  for (int n = 3; n <= 5; ++n) {
    const auto shadows = enumerate_shadows(n);
    for (std::size_t i = 0; i < shadows.size(); ++i) {
      for (std::size_t j = i + 1; j < shadows.size(); ++j) {
        if (stats_shadow(shadows[i]).s != stats_shadow(shadows[j]).s) {
          CHECK(canonical_form(shadows[i]) != canonical_form(shadows[j]));
        }
      }
    }
  }
}

TEST_CASE("enumeration counts equal the brute-force oracle for n <= 5") {
  for (const bool reflection : {false, true}) {
    for (int n = 0; n <= 5; ++n) {
      std::set<std::vector<int>> all, reduced;
      oracle::all_words(n, [&](const oracle::Word& w) {
        for (const auto& eps : oracle::planar_orientations(w)) {
          const auto key = oracle::canonical(w, oracle::marks_of(w, eps), reflection);
          all.insert(key);
          // Nugatory: no other chord interlaces this one.
          bool nugatory = false;
          for (int x = 0; x < n && !nugatory; ++x) {
            const auto first = std::find(w.begin(), w.end(), x) - w.begin();
            const auto second = std::find(w.begin() + first + 1, w.end(), x) - w.begin();
            bool crossed = false;
            for (int y = 0; y < n; ++y) {
              if (y == x) continue;
              const auto inside = std::count(w.begin() + first + 1, w.begin() + second, y);
              crossed = crossed || inside == 1;
            }
            nugatory = !crossed;
          }
          if (!nugatory) reduced.insert(key);
        }
      });
      EnumerateOptions eo;
      eo.quotient_reflection = reflection;
      INFO("n = " << n << " reflection = " << reflection);
      CHECK(enumerate_shadows(n, eo).size() == all.size());
      eo.allow_reducible = false;
      CHECK(enumerate_shadows(n, eo).size() == reduced.size());
    }
  }
}

TEST_CASE("enumerate_shadows examples and properties") {
  CHECK(enumerate_shadows(0).size() == 1);
  CHECK(enumerate_shadows(1).size() == 1);
  CHECK(enumerate_shadows(1).front().word() == word({0, 0}));
  EnumerateOptions irreducible;
  irreducible.allow_reducible = false;
  const auto three = enumerate_shadows(3, irreducible);
  CHECK(std::any_of(three.begin(), three.end(),
                    [](const Shadow& s) { return s.word() == word({0, 1, 2, 0, 1, 2}); }));
  for (int n = 0; n <= 6; ++n) {
    std::optional<std::string> previous;
    for (const auto& s : enumerate_shadows(n)) {
      CHECK(is_realizable(s.word()));
      const std::string key = canonical_form(s);
      CHECK(canonical_form(parse_shadow(key)) == key);
      if (previous) CHECK(key > *previous);
      previous = key;
      const auto st = stats_shadow(s);
      CHECK((1 - st.s + st.c) % 2 == 0);
      CHECK(st.g == (1 - st.s + st.c) / 2);
    }
  }
}

TEST_CASE("spherical curve counts up to reflection") {
  EnumerateOptions eo;
  eo.quotient_reflection = true;
  const std::vector<std::size_t> expected{1, 1, 2, 6, 19, 76, 376};
  for (int n = 0; n < static_cast<int>(expected.size()); ++n) {
    CHECK(enumerate_shadows(n, eo).size() == expected[static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("parallel enumeration matches single-threaded output") {
  for (int n = 4; n <= 6; ++n) {
    EnumerateOptions one, many;
    many.threads = 3;
    CHECK(enumerate_shadows(n, one) == enumerate_shadows(n, many));
  }
}

TEST_CASE("shadow stats") {
  CHECK(stats_shadow(Shadow{}).s == 1);
  const auto t = stats_shadow(parse_shadow("a b c a b c"));
  CHECK(t.c == 3);
  CHECK(t.s == 2);
  CHECK(t.g == 1);
  const auto k = stats_shadow(parse_shadow("a a"));
  CHECK(k.s == 2);
  CHECK(k.g == 0);
}

TEST_CASE("nugatory crossings") {
  CHECK(has_nugatory_crossing(word({0, 0})));
  CHECK_FALSE(has_nugatory_crossing(word({0, 1, 2, 0, 1, 2})));
  // Connected sum of two trefoil shadows joined by a separating crossing.
  const auto sum = word({0, 1, 2, 3, 1, 2, 3, 0, 4, 5, 6, 4, 5, 6});
  REQUIRE(is_realizable(sum));
  CHECK(has_nugatory_crossing(sum));
  CHECK_FALSE(has_kink(sum));
}

TEST_CASE("shadow file parsing") {
  const auto shadows = parse_shadow_lines("# trefoil\na b c a b c\n\n  # kink\na a\n");
  REQUIRE(shadows.size() == 2);
  CHECK(shadows[1].crossings() == 1);
}

}
