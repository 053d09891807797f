#include "knotfert/codes.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <thread>
#include <unordered_map>

#include "knotfert/error.hpp"

namespace knotfert {

namespace {

constexpr int kMaxCrossings = 64;

std::string label_name(int label, int n) {
  if (n <= 26) return std::string(1, static_cast<char>('a' + label));
  return std::to_string(label + 1);
}

int popcount(std::uint64_t x) { return std::popcount(x); }

// Connected components of the interlacement graph; comp[x] is the component
// index, components numbered by smallest member.
std::vector<int> components_of(const std::vector<std::uint64_t>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> comp(adj.size(), -1);
  int next = 0;
  for (int root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    std::vector<int> stack{root};
    comp[root] = next;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (std::uint64_t rest = adj[a]; rest; rest &= rest - 1) {
        const int b = std::countr_zero(rest);
        if (comp[b] < 0) {
          comp[b] = next;
          stack.push_back(b);
        }
      }
    }
    ++next;
  }
  return comp;
}

// Relative orientation of two interlaced crossings a, b (a visited first):
// with a1 < b1 < a2 < b2 the product eps_a * eps_b is
// (-1)^(common neighbours + letters strictly between a1 and b1).
int relative_orientation(const std::vector<std::uint64_t>& adj,
                         const std::vector<std::pair<int, int>>& occ, int a, int b) {
  if (occ[b].first < occ[a].first) std::swap(a, b);
  const int common = popcount(adj[a] & adj[b]);
  const int gap = occ[b].first - occ[a].first - 1;
  return ((common + gap) % 2 == 0) ? 1 : -1;
}

std::vector<std::int8_t> marks_from_orientations(const DoubleOccurrenceWord& word,
                                                 const std::vector<int>& eps) {
  std::vector<std::int8_t> marks(static_cast<std::size_t>(word.length()));
  const auto occ = word.occurrences();
  for (int x = 0; x < word.crossings(); ++x) {
    marks[occ[x].first] = static_cast<std::int8_t>(eps[x]);
    marks[occ[x].second] = static_cast<std::int8_t>(-eps[x]);
  }
  return marks;
}

// Code of the curve read from `start` in direction `dir`, relabeled by first
// appearance; each entry is 2 * label + (mark < 0).
void encode(const DoubleOccurrenceWord& word, const std::vector<std::int8_t>& marks, int start,
            int dir, int flip, std::vector<int>& out, std::vector<int>& relabel) {
  const int len = word.length();
  std::fill(relabel.begin(), relabel.end(), -1);
  int next = 0;
  for (int k = 0; k < len; ++k) {
    const int p = ((start + dir * k) % len + len) % len;
    int& label = relabel[word[p]];
    if (label < 0) label = next++;
    out[k] = 2 * label + ((marks[p] * flip) < 0 ? 1 : 0);
  }
}

Shadow decode(const std::vector<int>& code) {
  std::vector<int> letters(code.size());
  std::vector<std::int8_t> marks(code.size());
  for (std::size_t i = 0; i < code.size(); ++i) {
    letters[i] = code[i] / 2;
    marks[i] = (code[i] % 2) ? -1 : 1;
  }
  return Shadow(DoubleOccurrenceWord::from_letters(letters), std::move(marks));
}

std::vector<int> least_code(const Shadow& shadow, bool quotient_reflection) {
  const auto& word = shadow.word();
  const int len = word.length();
  std::vector<int> best(len), cur(len), relabel(word.crossings());
  bool have = false;
  for (int flip : {1, -1}) {
    if (flip < 0 && !quotient_reflection) break;
    for (int dir : {1, -1}) {
      for (int start = 0; start < len; ++start) {
        encode(word, shadow.marks(), start, dir, flip, cur, relabel);
        if (!have || cur < best) {
          best = cur;
          have = true;
        }
      }
    }
  }
  return best;
}

std::string render_code(const std::vector<int>& code) {
  const int n = static_cast<int>(code.size() / 2);
  std::string out;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (n > 26 && i > 0) out += ' ';
    out += label_name(code[i] / 2, n);
    out += (code[i] % 2) ? '-' : '+';
  }
  return out;
}

// Scans labels with an optional trailing sign. Separators are whitespace and
// commas; a sign also ends a label.
struct Token {
  std::string label;
  int sign = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto is_label_char = [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  };
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '#') break;
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      ++i;
      continue;
    }
    if (!is_label_char(ch)) {
      throw Error(ErrorKind::MalformedCode,
                  "unexpected character '" + std::string(1, ch) + "' in shadow code");
    }
    Token tok;
    while (i < text.size() && is_label_char(text[i])) tok.label += text[i++];
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) tok.sign = text[i++] == '+' ? 1 : -1;
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

void words_rec(int n, std::vector<int>& w, std::vector<int>& count, int next,
               const std::function<void(const DoubleOccurrenceWord&)>& visit, int depth_cut,
               long& subtree, int part, int parts) {
  const int len = static_cast<int>(w.size());
  if (parts > 1 && len == depth_cut) {
    const long idx = subtree++;
    if (idx % parts != part) return;
  }
  if (len == 2 * n) {
    visit(DoubleOccurrenceWord::from_letters(w));
    return;
  }
  // Closing an open letter is lexicographically smaller than opening a new one.
  for (int x = 0; x < next; ++x) {
    if (count[x] != 1) continue;
    count[x] = 2;
    w.push_back(x);
    words_rec(n, w, count, next, visit, depth_cut, subtree, part, parts);
    w.pop_back();
    count[x] = 1;
  }
  if (next < n) {
    count[next] = 1;
    w.push_back(next);
    words_rec(n, w, count, next + 1, visit, depth_cut, subtree, part, parts);
    w.pop_back();
    count[next] = 0;
  }
}

}  // namespace

DoubleOccurrenceWord DoubleOccurrenceWord::from_letters(std::span<const int> letters) {
  if (letters.size() % 2 != 0) {
    throw Error(ErrorKind::MalformedCode, "a double-occurrence word has even length");
  }
  std::unordered_map<int, int> relabel;
  std::vector<int> count;
  DoubleOccurrenceWord word;
  word.letters_.reserve(letters.size());
  for (int raw : letters) {
    auto [it, fresh] = relabel.try_emplace(raw, static_cast<int>(relabel.size()));
    if (fresh) count.push_back(0);
    if (++count[it->second] > 2) {
      throw Error(ErrorKind::MalformedCode, "label occurs more than twice");
    }
    word.letters_.push_back(it->second);
  }
  for (int c : count) {
    if (c != 2) throw Error(ErrorKind::MalformedCode, "label occurs only once");
  }
  if (word.crossings() > kMaxCrossings) {
    throw Error(ErrorKind::ResourceLimit, "shadows are limited to 64 crossings");
  }
  return word;
}

std::vector<std::pair<int, int>> DoubleOccurrenceWord::occurrences() const {
  std::vector<std::pair<int, int>> occ(static_cast<std::size_t>(crossings()), {-1, -1});
  for (int p = 0; p < length(); ++p) {
    auto& o = occ[letters_[p]];
    (o.first < 0 ? o.first : o.second) = p;
  }
  return occ;
}

std::string DoubleOccurrenceWord::to_string() const {
  std::string out;
  for (int p = 0; p < length(); ++p) {
    if (p) out += ' ';
    out += label_name(letters_[p], crossings());
  }
  return out;
}

Shadow::Shadow(DoubleOccurrenceWord word, std::vector<std::int8_t> marks)
    : word_(std::move(word)), marks_(std::move(marks)) {
  if (static_cast<int>(marks_.size()) != word_.length()) {
    throw Error(ErrorKind::MalformedCode, "one mark per visit is required");
  }
  const auto occ = word_.occurrences();
  const auto adj = interlacement(word_);
  if (!is_realizable(word_)) throw Error(ErrorKind::NotRealizable, "word is not realizable");
  for (int a = 0; a < word_.crossings(); ++a) {
    if (marks_[occ[a].first] + marks_[occ[a].second] != 0 || marks_[occ[a].first] == 0) {
      throw Error(ErrorKind::NotRealizable, "marks at a crossing must be opposite signs");
    }
    for (std::uint64_t rest = adj[a]; rest; rest &= rest - 1) {
      const int b = std::countr_zero(rest);
      if (marks_[occ[a].first] * marks_[occ[b].first] != relative_orientation(adj, occ, a, b)) {
        throw Error(ErrorKind::NotRealizable, "marks do not describe a planar curve");
      }
    }
  }
}

int Shadow::crossing_orientation(int x) const {
  const auto occ = word_.occurrences();
  return marks_[occ.at(static_cast<std::size_t>(x)).first];
}

Shadow Shadow::reflected() const {
  Shadow out = *this;
  for (auto& m : out.marks_) m = static_cast<std::int8_t>(-m);
  return out;
}

std::vector<std::uint64_t> interlacement(const DoubleOccurrenceWord& word) {
  const int n = word.crossings();
  const auto occ = word.occurrences();
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a) {
    // Letters seen an odd number of times strictly inside a's loop.
    std::uint64_t odd = 0;
    for (int p = occ[a].first + 1; p < occ[a].second; ++p) odd ^= std::uint64_t{1} << word[p];
    adj[a] = odd;
  }
  return adj;
}

bool is_realizable(const DoubleOccurrenceWord& word) {
  const int n = word.crossings();
  const auto adj = interlacement(word);
  for (int a = 0; a < n; ++a) {
    if (popcount(adj[a]) % 2 != 0) return false;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const bool linked = (adj[a] >> b) & 1;
      if (!linked && popcount(adj[a] & adj[b]) % 2 != 0) return false;
    }
  }
  // Edges whose endpoints share an even number of neighbours form a cocycle.
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  for (int root = 0; root < n; ++root) {
    if (side[root] >= 0) continue;
    side[root] = 0;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (std::uint64_t rest = adj[a]; rest; rest &= rest - 1) {
        const int b = std::countr_zero(rest);
        const int cut = popcount(adj[a] & adj[b]) % 2 == 0 ? 1 : 0;
        const int want = side[a] ^ cut;
        if (side[b] < 0) {
          side[b] = want;
          stack.push_back(b);
        } else if (side[b] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

std::optional<std::vector<int>> crossing_orientations(const DoubleOccurrenceWord& word) {
  if (!is_realizable(word)) return std::nullopt;
  const int n = word.crossings();
  const auto adj = interlacement(word);
  const auto occ = word.occurrences();
  std::vector<int> eps(static_cast<std::size_t>(n), 0);
  for (int root = 0; root < n; ++root) {
    if (eps[root] != 0) continue;
    eps[root] = 1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (std::uint64_t rest = adj[a]; rest; rest &= rest - 1) {
        const int b = std::countr_zero(rest);
        const int want = eps[a] * relative_orientation(adj, occ, a, b);
        if (eps[b] == 0) {
          eps[b] = want;
          stack.push_back(b);
        } else if (eps[b] != want) {
          return std::nullopt;
        }
      }
    }
  }
  return eps;
}

std::vector<Shadow> realizations(const DoubleOccurrenceWord& word) {
  const auto eps = crossing_orientations(word);
  if (!eps) return {};
  const auto comp = components_of(interlacement(word));
  const int k = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  if (k > 20) throw Error(ErrorKind::ResourceLimit, "too many interlacement components");
  std::vector<Shadow> out;
  out.reserve(std::size_t{1} << k);
  for (std::uint32_t flips = 0; flips < (std::uint32_t{1} << k); ++flips) {
    std::vector<int> e = *eps;
    for (std::size_t x = 0; x < e.size(); ++x) {
      if ((flips >> comp[x]) & 1) e[x] = -e[x];
    }
    out.emplace_back(word, marks_from_orientations(word, e));
  }
  return out;
}

Shadow realize(const DoubleOccurrenceWord& word) {
  const auto eps = crossing_orientations(word);
  if (!eps) throw Error(ErrorKind::NotRealizable, "not realizable: " + word.to_string());
  return Shadow(word, marks_from_orientations(word, *eps));
}

Shadow parse_shadow(std::string_view text) {
  const auto tokens = tokenize(text);
  std::map<std::string, int> ids;
  std::vector<int> letters;
  int signed_count = 0;
  for (const auto& tok : tokens) {
    auto [it, fresh] = ids.try_emplace(tok.label, static_cast<int>(ids.size()));
    letters.push_back(it->second);
    if (tok.sign != 0) ++signed_count;
  }
  auto word = DoubleOccurrenceWord::from_letters(letters);
  if (signed_count == 0) return realize(word);
  if (signed_count != static_cast<int>(tokens.size())) {
    throw Error(ErrorKind::MalformedCode, "either every visit carries a mark or none does");
  }
  std::vector<std::int8_t> marks;
  for (const auto& tok : tokens) marks.push_back(static_cast<std::int8_t>(tok.sign));
  return Shadow(std::move(word), std::move(marks));
}

std::vector<Shadow> parse_shadow_lines(std::string_view text) {
  std::vector<Shadow> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') out.push_back(parse_shadow(line));
    start = end + 1;
  }
  return out;
}

std::string canonical_form(const Shadow& shadow, bool quotient_reflection) {
  return render_code(least_code(shadow, quotient_reflection));
}

bool has_nugatory_crossing(const DoubleOccurrenceWord& word) {
  const auto adj = interlacement(word);
  return std::any_of(adj.begin(), adj.end(), [](std::uint64_t row) { return row == 0; });
}

bool has_kink(const DoubleOccurrenceWord& word) {
  const int len = word.length();
  for (int p = 0; p < len; ++p) {
    if (word[p] == word[(p + 1) % len]) return true;
  }
  return false;
}

int seifert_circles(const DoubleOccurrenceWord& word) {
  const int len = word.length();
  if (len == 0) return 1;
  const auto occ = word.occurrences();
  auto partner = [&](int p) {
    const auto& o = occ[word[p]];
    return o.first == p ? o.second : o.first;
  };
  // Edge k runs from visit k to visit k+1; the smoothing sends it on along
  // the edge leaving the partner visit.
  std::vector<char> seen(static_cast<std::size_t>(len), 0);
  int circles = 0;
  for (int e = 0; e < len; ++e) {
    if (seen[e]) continue;
    ++circles;
    for (int k = e; !seen[k]; k = partner((k + 1) % len)) seen[k] = 1;
  }
  return circles;
}

ShadowStats stats_shadow(const Shadow& shadow) {
  ShadowStats st;
  st.c = shadow.crossings();
  st.s = seifert_circles(shadow.word());
  st.g = (1 - st.s + st.c) / 2;
  return st;
}

void for_each_word(int n, const std::function<void(const DoubleOccurrenceWord&)>& visit, int part,
                   int parts) {
  if (n < 0) return;
  std::vector<int> w;
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  long subtree = 0;
  const int depth_cut = std::min(2 * n, 5);
  words_rec(n, w, count, 0, visit, depth_cut, subtree, part, parts);
}

std::vector<Shadow> enumerate_shadows(int n, const EnumerateOptions& options) {
  if (n < 0) return {};
  const int parts = std::max(1, options.threads);
  std::vector<std::map<std::vector<int>, char>> found(static_cast<std::size_t>(parts));
  auto work = [&](int part) {
    auto& mine = found[static_cast<std::size_t>(part)];
    for_each_word(
        n,
        [&](const DoubleOccurrenceWord& word) {
          if (!options.allow_reducible && has_nugatory_crossing(word)) return;
          for (const auto& shadow : realizations(word)) {
            mine.emplace(least_code(shadow, options.quotient_reflection), 0);
          }
        },
        part, parts);
  };
  if (parts == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < parts; ++t) pool.emplace_back(work, t);
  }
  std::map<std::vector<int>, char> merged;
  for (auto& m : found) merged.merge(m);
  std::vector<Shadow> out;
  out.reserve(merged.size());
  for (const auto& [code, _] : merged) out.push_back(decode(code));
  return out;
}

}  // namespace knotfert
