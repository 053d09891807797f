#include "knotfert/knotbase.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "knotfert/error.hpp"

namespace knotfert {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

Fingerprint Fingerprint::of(const Laurent2& p) {
  Fingerprint fp;
  fp.p = p;
  fp.p_mirror = p.mirrored();
  std::string a = p.serialize(), b = fp.p_mirror.serialize();
  if (b < a) std::swap(a, b);
  fp.key = a + "|" + b;
  fp.hash = fnv1a(fp.key);
  return fp;
}

std::string Fingerprint::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string_view to_string(Chirality c) noexcept {
  switch (c) {
    case Chirality::Reference: return "reference";
    case Chirality::Mirror: return "mirror";
    case Chirality::Ambiguous: return "ambiguous";
  }
  return "?";
}

Chirality flipped(Chirality c) noexcept {
  switch (c) {
    case Chirality::Reference: return Chirality::Mirror;
    case Chirality::Mirror: return Chirality::Reference;
    default: return c;
  }
}

KnotBase KnotBase::parse(std::string_view text, const std::string& source, HomflyEngine* engine) {
  KnotBase base;
  base.source_ = source;
  HomflyEngine local;
  HomflyEngine& eng = engine ? *engine : local;

  auto fail = [&](int line_no, const std::string& what) -> Error {
    return Error(ErrorKind::ParseError, source + ":" + std::to_string(line_no) + ": " + what);
  };

  bool header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = split_ws(line);

    if (!header) {
      if (tokens.size() < 4 || tokens[0] != "#" || tokens[1] != "knotfert-table" ||
          tokens[2].size() < 2 || tokens[2][0] != 'v' ||
          tokens[3].substr(0, 17) != "complete_through=") {
        throw fail(line_no, "missing header '# knotfert-table v1 complete_through=<c>'");
      }
      const auto version = to_int(tokens[2].substr(1));
      const auto through = to_int(tokens[3].substr(17));
      if (!version || *version != 1) throw fail(line_no, "unsupported table version");
      if (!through) throw fail(line_no, "bad complete_through value");
      base.version_ = *version;
      base.complete_through_ = *through;
      header = true;
      continue;
    }
    if (tokens.empty() || tokens[0][0] == '#') continue;
    if (tokens.size() < 3) throw fail(line_no, "expected 'name crossings code'");

    KnotRecord rec;
    rec.name = std::string(tokens[0]);
    const auto c = to_int(tokens[1]);
    if (!c || *c < 0) throw fail(line_no, "bad crossing number");
    rec.crossings = *c;

    // A shadow-code record spans tokens up to and including the bit string.
    std::size_t next = 3;
    std::string code(tokens[2]);
    if (code.front() != '[' && code.front() != 'P' && code.front() != 'X') {
      while (next < tokens.size() && code.find('|') == std::string::npos) {
        code += ' ';
        code += tokens[next++];
      }
      if (next < tokens.size() && code.back() == '|') code += ' ' + std::string(tokens[next++]);
    }
    rec.code = code;
    try {
      rec.diagram = parse_diagram(code);
    } catch (const Error& e) {
      throw fail(line_no, std::string("bad diagram for ") + rec.name + ": " + e.what());
    }
    if (!rec.diagram.is_knot()) throw fail(line_no, rec.name + " is not a knot diagram");
    if (rec.diagram.crossings() != rec.crossings) {
      throw fail(line_no, rec.name + " diagram has " + std::to_string(rec.diagram.crossings()) +
                              " crossings, record says " + std::to_string(rec.crossings));
    }

    for (; next < tokens.size(); ++next) {
      const std::string_view kv = tokens[next];
      const auto eq = kv.find('=');
      if (eq == std::string_view::npos) throw fail(line_no, "expected key=value");
      const std::string_view key = kv.substr(0, eq);
      const auto value = to_int(kv.substr(eq + 1));
      if (!value) throw fail(line_no, "non-integer value for " + std::string(key));
      if (key == "b") rec.braid_index = *value;
      else if (key == "g") rec.genus = *value;
      else if (key == "gc") rec.canonical_genus = *value;
      else if (key == "twist") rec.twist = *value;
      else if (key == "alt") rec.alternating = *value != 0;
      else throw fail(line_no, "unknown annotation " + std::string(key));
    }

    rec.homfly = eng.compute(rec.diagram);
    rec.fingerprint = Fingerprint::of(rec.homfly);

    const InvariantBounds ib = invariant_bounds(rec.homfly);
    if (rec.genus && rec.canonical_genus && *rec.genus > *rec.canonical_genus) {
      throw fail(line_no, rec.name + ": annotation g exceeds gc");
    }
    if (rec.canonical_genus && *rec.canonical_genus < ib.gc_lower) {
      throw fail(line_no, rec.name + ": annotation gc below the HOMFLY bound");
    }
    if (rec.braid_index && *rec.braid_index < ib.braid_lower) {
      throw fail(line_no, rec.name + ": annotation b below the HOMFLY bound");
    }

    if (base.by_name_.contains(rec.name)) {
      throw Error(ErrorKind::DuplicateName,
                  source + ":" + std::to_string(line_no) + ": duplicate name " + rec.name);
    }
    const int index = static_cast<int>(base.records_.size());
    base.by_name_.emplace(rec.name, index);
    base.by_fingerprint_[rec.fingerprint.key].push_back(index);
    base.records_.push_back(std::move(rec));
  }
  if (!header) throw fail(1, "empty table");

  for (const auto& [key, ids] : base.by_fingerprint_) {
    if (ids.size() > 1) base.collisions_.push_back(ids);
  }
  std::sort(base.collisions_.begin(), base.collisions_.end());
  return base;
}

KnotBase KnotBase::load(const std::string& path, HomflyEngine* engine) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open table " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path, engine);
}

int KnotBase::index_of(std::string_view name) const {
  const auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

const KnotRecord& KnotBase::at(std::string_view name) const {
  const int i = index_of(name);
  if (i < 0) throw Error(ErrorKind::UnknownKnot, "knot " + std::string(name) + " is not in the table");
  return records_[static_cast<std::size_t>(i)];
}

std::vector<int> KnotBase::lookup(const Fingerprint& fp) const {
  const auto it = by_fingerprint_.find(fp.key);
  return it == by_fingerprint_.end() ? std::vector<int>{} : it->second;
}

Identification KnotBase::identify_polynomial(const Laurent2& p) const {
  Identification id;
  id.fingerprint = Fingerprint::of(p);
  id.matches = lookup(id.fingerprint);
  if (id.fingerprint.amphichiral()) {
    id.chirality = Chirality::Ambiguous;
  } else if (id.matches.size() == 1) {
    id.chirality = records_[static_cast<std::size_t>(id.matches[0])].homfly == p ? Chirality::Reference
                                                                                : Chirality::Mirror;
  }
  return id;
}

Identification KnotBase::identify(const Diagram& d, HomflyEngine& engine) const {
  if (!d.is_knot()) throw Error(ErrorKind::NotAKnot, "identification needs a one-component diagram");
  return identify_polynomial(engine.compute(d));
}

Identification KnotBase::identify(const Diagram& d) const {
  if (!d.is_knot()) throw Error(ErrorKind::NotAKnot, "identification needs a one-component diagram");
  return identify_polynomial(homfly(d));
}

std::vector<std::string> KnotBase::names(const std::vector<int>& indices) const {
  std::vector<std::string> out;
  out.reserve(indices.size());
  for (const int i : indices) out.push_back(records_[static_cast<std::size_t>(i)].name);
  return out;
}

}  // namespace knotfert
