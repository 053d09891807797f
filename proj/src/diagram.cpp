#include "knotfert/diagram.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <utility>

#include "knotfert/error.hpp"

namespace knotfert {

namespace {

// Global pass index p for (component, position), with successor and partner
// tables. Used by every traversal below.
struct PassIndex {
  std::vector<int> comp_start;
  std::vector<int> comp_of;
  std::vector<Pass> pass;
  std::vector<int> succ;
  std::vector<int> partner;
  std::vector<std::array<int, 2>> of_crossing;  // [under pass, over pass]

  explicit PassIndex(const Diagram& d) {
    of_crossing.assign(static_cast<std::size_t>(d.crossings()), {-1, -1});
    int p = 0;
    for (std::size_t c = 0; c < d.components().size(); ++c) {
      const auto& comp = d.components()[c];
      comp_start.push_back(p);
      for (std::size_t k = 0; k < comp.size(); ++k, ++p) {
        pass.push_back(comp[k]);
        comp_of.push_back(static_cast<int>(c));
        succ.push_back(k + 1 == comp.size() ? comp_start.back() : p + 1);
        of_crossing[comp[k].crossing][comp[k].over ? 1 : 0] = p;
      }
    }
    partner.resize(pass.size());
    for (const auto& uo : of_crossing) {
      partner[uo[0]] = uo[1];
      partner[uo[1]] = uo[0];
    }
  }
};

// Drops crossings not present in the components and compacts the indices.
Diagram rebuild(std::vector<std::vector<Pass>> comps, const std::vector<int>& old_signs) {
  std::vector<int> remap(old_signs.size(), -1);
  std::vector<int> signs;
  for (auto& comp : comps) {
    for (auto& p : comp) {
      int& r = remap[p.crossing];
      if (r < 0) {
        r = static_cast<int>(signs.size());
        signs.push_back(old_signs[p.crossing]);
      }
      p.crossing = r;
    }
  }
  return Diagram(std::move(comps), std::move(signs));
}

Diagram remove_crossings(const Diagram& d, std::initializer_list<int> gone) {
  std::vector<std::vector<Pass>> comps;
  comps.reserve(d.components().size());
  for (const auto& comp : d.components()) {
    std::vector<Pass> kept;
    kept.reserve(comp.size());
    for (const auto& p : comp) {
      if (std::find(gone.begin(), gone.end(), p.crossing) == gone.end()) kept.push_back(p);
    }
    comps.push_back(std::move(kept));
  }
  return rebuild(std::move(comps), d.signs());
}

std::optional<Diagram> reidemeister_one(const Diagram& d) {
  for (const auto& comp : d.components()) {
    const std::size_t m = comp.size();
    for (std::size_t k = 0; k < m; ++k) {
      if (comp[k].crossing == comp[(k + 1) % m].crossing) {
        return remove_crossings(d, {comp[k].crossing});
      }
    }
  }
  return std::nullopt;
}

std::optional<Diagram> reidemeister_two(const Diagram& d) {
  const PassIndex idx(d);
  for (std::size_t p = 0; p < idx.pass.size(); ++p) {
    const int q = idx.succ[p];
    const Pass a = idx.pass[p];
    const Pass b = idx.pass[q];
    if (a.crossing == b.crossing || a.over != b.over) continue;
    if (d.sign(a.crossing) != -d.sign(b.crossing)) continue;
    const int pa = idx.partner[p];
    const int pb = idx.partner[q];
    if (idx.succ[pa] == pb || idx.succ[pb] == pa) {
      return remove_crossings(d, {a.crossing, b.crossing});
    }
  }
  return std::nullopt;
}

// Encoding of one pass for keys: 4 * label + 2 * over + (sign < 0).
int pass_code(int label, const Pass& p, int sign) {
  return 4 * label + (p.over ? 2 : 0) + (sign < 0 ? 1 : 0);
}

std::vector<int> component_code(const std::vector<Pass>& comp, const std::vector<int>& signs,
                                std::size_t start, int dir, std::vector<int>& relabel,
                                int& next) {
  const std::size_t m = comp.size();
  std::vector<int> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t pos =
        dir > 0 ? (start + k) % m : (start + m - (k % m)) % m;
    const Pass& p = comp[pos];
    int& label = relabel[p.crossing];
    if (label < 0) label = next++;
    out[k] = pass_code(label, p, signs[p.crossing]);
  }
  return out;
}

void append_code(std::string& key, const std::vector<int>& code) {
  for (int v : code) {
    key += static_cast<char>(v & 0xff);
    key += static_cast<char>((v >> 8) & 0xff);
  }
}

std::vector<int> parse_ints(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 1'000'000) throw Error(ErrorKind::ParseError, "PD label too large");
        ++i;
      }
      out.push_back(v);
      continue;
    }
    if (ch == '-') throw Error(ErrorKind::ParseError, "PD labels are non-negative");
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '[' || ch == ']' ||
        ch == '(' || ch == ')' || ch == 'X' || ch == 'P' || ch == 'D') {
      ++i;
      continue;
    }
    throw Error(ErrorKind::ParseError,
                "unexpected character '" + std::string(1, ch) + "' in PD code");
  }
  return out;
}

}  // namespace

Diagram::Diagram(std::vector<std::vector<Pass>> components, std::vector<int> signs) {
  if (components.empty()) throw Error(ErrorKind::MalformedCode, "a diagram needs a component");
  const std::size_t n = signs.size();
  std::vector<std::array<int, 2>> seen(n, {0, 0});
  for (const auto& comp : components) {
    for (const auto& p : comp) {
      if (p.crossing < 0 || static_cast<std::size_t>(p.crossing) >= n) {
        throw Error(ErrorKind::MalformedCode, "pass refers to an unknown crossing");
      }
      ++seen[p.crossing][p.over ? 1 : 0];
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (seen[x][0] != 1 || seen[x][1] != 1) {
      throw Error(ErrorKind::MalformedCode,
                  "crossing " + std::to_string(x) + " needs exactly one over and one under pass");
    }
    if (signs[x] != 1 && signs[x] != -1) {
      throw Error(ErrorKind::MalformedCode, "crossing signs are +1 or -1");
    }
  }
  std::vector<int> remap(n, -1);
  int next = 0;
  for (auto& comp : components) {
    for (auto& p : comp) {
      int& r = remap[p.crossing];
      if (r < 0) r = next++;
      p.crossing = r;
    }
  }
  signs_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) signs_[remap[x]] = signs[x];
  components_ = std::move(components);
}

Diagram Diagram::unlink(int components) {
  return Diagram(std::vector<std::vector<Pass>>(static_cast<std::size_t>(std::max(1, components))),
                 {});
}

Diagram assign(const Shadow& shadow, const std::vector<bool>& choices) {
  const int n = shadow.crossings();
  if (static_cast<int>(choices.size()) != n) {
    throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(n) + " choices, got " +
                                               std::to_string(choices.size()));
  }
  const auto& word = shadow.word();
  std::vector<Pass> comp;
  comp.reserve(static_cast<std::size_t>(word.length()));
  std::vector<int> signs(static_cast<std::size_t>(n), 0);
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  for (int p = 0; p < word.length(); ++p) {
    const int x = word[p];
    const bool first = !visited[x];
    visited[x] = 1;
    const bool over = first ? choices[x] : !choices[x];
    comp.push_back({x, over});
    if (over) signs[x] = shadow.marks()[p];
  }
  return Diagram({std::move(comp)}, std::move(signs));
}

Diagram assign(const Shadow& shadow, std::uint64_t choice_bits) {
  std::vector<bool> choices(static_cast<std::size_t>(shadow.crossings()));
  for (std::size_t i = 0; i < choices.size(); ++i) choices[i] = (choice_bits >> i) & 1;
  return assign(shadow, choices);
}

Shadow shadow_of(const Diagram& d) {
  if (!d.is_knot()) throw Error(ErrorKind::NotAKnot, "shadow_of needs a one-component diagram");
  const auto& comp = d.components().front();
  std::vector<int> letters;
  std::vector<std::int8_t> marks;
  for (const auto& p : comp) {
    letters.push_back(p.crossing);
    marks.push_back(static_cast<std::int8_t>(p.over ? d.sign(p.crossing) : -d.sign(p.crossing)));
  }
  return Shadow(DoubleOccurrenceWord::from_letters(letters), std::move(marks));
}

std::vector<bool> choices_of(const Diagram& d) {
  if (!d.is_knot()) throw Error(ErrorKind::NotAKnot, "choices_of needs a one-component diagram");
  std::vector<bool> choices(static_cast<std::size_t>(d.crossings()));
  std::vector<char> visited(choices.size(), 0);
  for (const auto& p : d.components().front()) {
    if (!visited[p.crossing]) {
      choices[p.crossing] = p.over;
      visited[p.crossing] = 1;
    }
  }
  return choices;
}

int seifert_circles(const Diagram& d) {
  const PassIndex idx(d);
  int circles = 0;
  for (const auto& comp : d.components()) {
    if (comp.empty()) ++circles;
  }
  std::vector<char> seen(idx.pass.size(), 0);
  for (std::size_t p = 0; p < idx.pass.size(); ++p) {
    if (seen[p]) continue;
    ++circles;
    // Leave pass q, arrive at succ(q), switch to the partner strand.
    for (int q = static_cast<int>(p); !seen[q]; q = idx.partner[idx.succ[q]]) seen[q] = 1;
  }
  return circles;
}

DiagramStats stats(const Diagram& d) {
  DiagramStats st;
  st.c = d.crossings();
  for (int s : d.signs()) (s > 0 ? st.c_plus : st.c_minus)++;
  st.w = st.c_plus - st.c_minus;
  st.s = seifert_circles(d);
  st.sl = -st.s + st.w;
  st.components = d.component_count();
  st.g = (2 - st.components - st.s + st.c) / 2;
  return st;
}

Diagram mirror(const Diagram& d) {
  auto comps = d.components();
  for (auto& comp : comps) {
    for (auto& p : comp) p.over = !p.over;
  }
  auto signs = d.signs();
  for (auto& s : signs) s = -s;
  return Diagram(std::move(comps), std::move(signs));
}

Diagram simplify(const Diagram& d) {
  Diagram cur = d;
  for (;;) {
    if (auto next = reidemeister_one(cur)) {
      cur = std::move(*next);
      continue;
    }
    if (auto next = reidemeister_two(cur)) {
      cur = std::move(*next);
      continue;
    }
    return cur;
  }
}

Diagram switch_crossing(const Diagram& d, int crossing) {
  auto comps = d.components();
  for (auto& comp : comps) {
    for (auto& p : comp) {
      if (p.crossing == crossing) p.over = !p.over;
    }
  }
  auto signs = d.signs();
  signs.at(static_cast<std::size_t>(crossing)) *= -1;
  return Diagram(std::move(comps), std::move(signs));
}

Diagram smooth_crossing(const Diagram& d, int crossing) {
  const auto& comps = d.components();
  std::array<std::pair<std::size_t, std::size_t>, 2> at{};
  int found = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t k = 0; k < comps[c].size(); ++k) {
      if (comps[c][k].crossing == crossing) at[found++] = {c, k};
    }
  }
  if (found != 2) throw Error(ErrorKind::MalformedCode, "no such crossing");
  auto arc = [&](std::size_t c, std::size_t from, std::size_t count) {
    std::vector<Pass> out;
    const auto& comp = comps[c];
    for (std::size_t k = 0; k < count; ++k) out.push_back(comp[(from + k) % comp.size()]);
    return out;
  };
  std::vector<std::vector<Pass>> next;
  const auto [ca, i] = at[0];
  const auto [cb, j] = at[1];
  if (ca == cb) {
    const std::size_t m = comps[ca].size();
    // Arriving at i continues after j and vice versa: the loop splits in two.
    next.push_back(arc(ca, i + 1, j - i - 1));
    next.push_back(arc(ca, j + 1, m - (j - i) - 1));
  } else {
    auto merged = arc(ca, i + 1, comps[ca].size() - 1);
    auto tail = arc(cb, j + 1, comps[cb].size() - 1);
    merged.insert(merged.end(), tail.begin(), tail.end());
    next.push_back(std::move(merged));
  }
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (c != ca && c != cb) next.push_back(comps[c]);
  }
  return rebuild(std::move(next), d.signs());
}

std::string diagram_key(const Diagram& d) {
  std::string key;
  int circles = 0;
  std::vector<const std::vector<Pass>*> comps;
  for (const auto& comp : d.components()) {
    if (comp.empty()) {
      ++circles;
    } else {
      comps.push_back(&comp);
    }
  }
  key += static_cast<char>(circles);
  key += static_cast<char>(comps.size());
  std::vector<int> relabel(static_cast<std::size_t>(d.crossings()));

  if (comps.size() == 1) {
    const auto& comp = *comps.front();
    std::vector<int> best;
    for (int dir : {1, -1}) {
      for (std::size_t start = 0; start < comp.size(); ++start) {
        std::fill(relabel.begin(), relabel.end(), -1);
        int next = 0;
        auto code = component_code(comp, d.signs(), start, dir, relabel, next);
        if (best.empty() || code < best) best = std::move(code);
      }
    }
    append_code(key, best);
    return key;
  }

  // Links: each component starts at its locally least rotation; components
  // are ordered by (length, local code); labels are then assigned globally.
  struct Choice {
    std::size_t comp;
    std::size_t start;
    std::vector<int> local;
  };
  std::vector<Choice> order;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    Choice best{c, 0, {}};
    for (std::size_t start = 0; start < comps[c]->size(); ++start) {
      std::fill(relabel.begin(), relabel.end(), -1);
      int next = 0;
      auto code = component_code(*comps[c], d.signs(), start, 1, relabel, next);
      if (best.local.empty() || code < best.local) {
        best.local = std::move(code);
        best.start = start;
      }
    }
    order.push_back(std::move(best));
  }
  std::stable_sort(order.begin(), order.end(), [&](const Choice& a, const Choice& b) {
    if (a.local.size() != b.local.size()) return a.local.size() < b.local.size();
    return a.local < b.local;
  });
  std::fill(relabel.begin(), relabel.end(), -1);
  int next = 0;
  for (const auto& ch : order) {
    key += '|';
    append_code(key, component_code(*comps[ch.comp], d.signs(), ch.start, 1, relabel, next));
  }
  return key;
}

Diagram parse_pd(std::string_view text) {
  const auto ints = parse_ints(text);
  if (ints.size() % 4 != 0) {
    throw Error(ErrorKind::ParseError, "PD code needs four labels per crossing");
  }
  const std::size_t n = ints.size() / 4;
  if (n == 0) return Diagram();

  std::map<int, std::vector<std::pair<std::size_t, int>>> slots;
  for (std::size_t x = 0; x < n; ++x) {
    for (int s = 0; s < 4; ++s) slots[ints[4 * x + s]].push_back({x, s});
  }
  for (const auto& [label, where] : slots) {
    if (where.size() != 2) {
      throw Error(ErrorKind::ParseError,
                  "PD label " + std::to_string(label) + " must occur exactly twice");
    }
  }
  auto label_at = [&](std::size_t x, int s) { return ints[4 * x + s]; };

  // +1 incoming, -1 outgoing.
  std::vector<std::array<int, 4>> dir(n, {1, 0, -1, 0});
  std::deque<std::pair<std::size_t, int>> queue;
  for (std::size_t x = 0; x < n; ++x) {
    queue.push_back({x, 0});
    queue.push_back({x, 2});
  }
  auto settle = [&](std::size_t x, int s, int value) {
    if (dir[x][s] == 0) {
      dir[x][s] = value;
      queue.push_back({x, s});
    } else if (dir[x][s] != value) {
      throw Error(ErrorKind::ParseError, "PD code has inconsistent orientations");
    }
  };
  auto propagate = [&] {
    while (!queue.empty()) {
      const auto [x, s] = queue.front();
      queue.pop_front();
      const int v = dir[x][s];
      for (const auto& [y, t] : slots[label_at(x, s)]) {
        if (y != x || t != s) settle(y, t, -v);
      }
      settle(x, s ^ 2, -v);
    }
  };
  propagate();
  for (std::size_t x = 0; x < n; ++x) {
    if (dir[x][1] != 0) continue;
    // Over-only strand: orient by label succession.
    const int j = label_at(x, 1);
    const int l = label_at(x, 3);
    settle(x, 1, (l == j + 1) ? 1 : (j == l + 1 ? -1 : 1));
    propagate();
  }

  std::vector<int> signs(n);
  for (std::size_t x = 0; x < n; ++x) signs[x] = dir[x][3] == 1 ? 1 : -1;

  std::vector<std::array<char, 4>> used(n, {0, 0, 0, 0});
  std::vector<std::vector<Pass>> comps;
  for (std::size_t x0 = 0; x0 < n; ++x0) {
    for (int s0 = 0; s0 < 4; ++s0) {
      if (dir[x0][s0] != 1 || used[x0][s0]) continue;
      std::vector<Pass> comp;
      std::size_t x = x0;
      int s = s0;
      while (!used[x][s]) {
        used[x][s] = 1;
        comp.push_back({static_cast<int>(x), (s % 2) == 1});
        const int out = label_at(x, s ^ 2);
        std::pair<std::size_t, int> nxt{n, -1};
        for (const auto& [y, t] : slots[out]) {
          if (!(y == x && t == (s ^ 2))) nxt = {y, t};
        }
        x = nxt.first;
        s = nxt.second;
      }
      comps.push_back(std::move(comp));
    }
  }
  return Diagram(std::move(comps), std::move(signs));
}

std::string to_pd(const Diagram& d) {
  const PassIndex idx(d);
  // Edge k leaves pass k; labels are 1-based.
  std::vector<int> edge_in(idx.pass.size());
  for (std::size_t p = 0; p < idx.pass.size(); ++p) edge_in[idx.succ[p]] = static_cast<int>(p) + 1;
  std::string out = "[";
  for (int x = 0; x < d.crossings(); ++x) {
    const int u = idx.of_crossing[x][0];
    const int o = idx.of_crossing[x][1];
    const int i = edge_in[u], k = u + 1;
    const int oin = edge_in[o], oout = o + 1;
    const int j = d.sign(x) > 0 ? oout : oin;
    const int l = d.sign(x) > 0 ? oin : oout;
    if (x) out += ',';
    out += "[" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "," +
           std::to_string(l) + "]";
  }
  return out + "]";
}

Diagram parse_diagram(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) return parse_pd(text);
  const Shadow shadow = parse_shadow(text.substr(0, bar));
  std::vector<bool> choices;
  for (char ch : text.substr(bar + 1)) {
    if (ch == '0' || ch == '1') {
      choices.push_back(ch == '1');
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      throw Error(ErrorKind::ParseError, "choice bits are 0 or 1");
    }
  }
  return assign(shadow, choices);
}

std::string to_code_string(const Diagram& d) {
  const Shadow shadow = shadow_of(d);
  const auto& word = shadow.word();
  std::string out;
  for (int p = 0; p < word.length(); ++p) {
    if (p) out += ' ';
    out += word.crossings() <= 26 ? std::string(1, static_cast<char>('a' + word[p]))
                                  : std::to_string(word[p] + 1);
    out += shadow.marks()[p] > 0 ? '+' : '-';
  }
  out += " | ";
  for (bool b : choices_of(d)) out += b ? '1' : '0';
  return out;
}

}  // namespace knotfert
