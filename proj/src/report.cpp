#include "knotfert/report.hpp"

#include <cstdio>

namespace knotfert {

using nlohmann::ordered_json;

RunMeta make_meta(const std::string& command, const KnotBase& base, const HomflyOptions& homfly,
                  const FertilityOptions& fertility) {
  RunMeta m;
  m.command = command;
  m.table = base.source();
  m.table_version = base.version();
  m.complete_through = base.complete_through();
  m.homfly_ceiling = homfly.crossing_ceiling;
  m.fertility_ceiling = fertility.crossing_ceiling;
  m.threads = fertility.threads;
  m.allow_reducible = fertility.allow_reducible;
  m.quotient_reflection = fertility.quotient_reflection;
  m.include_unknot_target = fertility.include_unknot_target;
  return m;
}

ordered_json to_json(const RunMeta& m) {
  // A negative value means the command did not load the table.
  ordered_json table = {{"source", m.table}, {"loaded", m.complete_through >= 0}};
  table["version"] = m.complete_through >= 0 ? ordered_json(m.table_version) : ordered_json(nullptr);
  table["complete_through"] = m.complete_through >= 0 ? ordered_json(m.complete_through) : ordered_json(nullptr);
  return {{"schema", kReportSchema},
          {"command", m.command},
          {"table", table},
          {"ceilings", {{"homfly", m.homfly_ceiling}, {"fertility", m.fertility_ceiling}}},
          {"threads", m.threads},
          {"allow_reducible", m.allow_reducible},
          {"quotient_reflection", m.quotient_reflection},
          {"include_unknot_target", m.include_unknot_target}};
}

std::string shadow_code(const Shadow& shadow) {
  const auto& word = shadow.word();
  std::string out;
  for (int p = 0; p < word.length(); ++p) {
    if (p) out += ' ';
    out += word.crossings() <= 26 ? std::string(1, static_cast<char>('a' + word[p]))
                                  : std::to_string(word[p] + 1);
    out += shadow.marks()[static_cast<std::size_t>(p)] > 0 ? '+' : '-';
  }
  return out;
}

namespace {

std::string bit_string(std::uint64_t bits, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += (bits >> i) & 1 ? '1' : '0';
  return out;
}

std::string diagram_code(const Shadow& shadow, std::uint64_t bits) {
  return shadow_code(shadow) + " | " + bit_string(bits, shadow.crossings());
}

}  // namespace

ordered_json to_json(const ShadowStats& s) { return {{"c", s.c}, {"s", s.s}, {"g", s.g}}; }

ordered_json to_json(const DiagramStats& s) {
  return {{"c", s.c},   {"c_plus", s.c_plus}, {"c_minus", s.c_minus}, {"w", s.w},
          {"s", s.s},   {"sl", s.sl},         {"g", s.g},             {"components", s.components}};
}

ordered_json to_json(const DegreeBounds& b) {
  return {{"max_deg_z", b.max_deg_z}, {"min_deg_z", b.min_deg_z}, {"min_deg_v", b.min_deg_v},
          {"max_deg_v", b.max_deg_v}, {"breadth_v", b.breadth_v}};
}

ordered_json to_json(const InvariantBounds& b) {
  return {{"gc_lower", b.gc_lower}, {"sl_upper", b.sl_upper}, {"braid_lower", b.braid_lower}};
}

ordered_json identify_json(const std::string& input, const Identification& id, const KnotBase& base) {
  ordered_json collisions = ordered_json::array();
  if (id.matches.size() > 1) collisions.push_back(base.names(id.matches));
  ordered_json out = {{"input", input},
                      {"fingerprint_hash", id.fingerprint.hash_hex()},
                      {"homfly", id.fingerprint.p.to_string()},
                      {"matches", base.names(id.matches)},
                      {"collisions", collisions}};
  if (id.matches.size() == 1) out["chirality"] = std::string(to_string(id.chirality));
  // A match is a claim about the fingerprint, not a certificate.
  out["certified"] = false;
  return out;
}

ordered_json to_json(const SupportCensus& census, const KnotBase& base) {
  ordered_json knots = ordered_json::array();
  for (const auto& [record, bits] : census.witnesses) {
    knots.push_back({{"knot", base.record(record).name},
                     {"witness", diagram_code(census.shadow, bits)}});
  }
  ordered_json unidentified = ordered_json::array();
  for (const auto h : census.unidentified) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    unidentified.push_back(buf);
  }
  return {{"shadow", shadow_code(census.shadow)},
          {"key", census.key},
          {"stats", to_json(stats_shadow(census.shadow))},
          {"supported", knots},
          {"unidentified", unidentified}};
}

ordered_json to_json(const Witness& w) {
  return {{"target", w.target},
          {"shadow", shadow_code(w.shadow)},
          {"knot_diagram", diagram_code(w.shadow, w.knot_bits)},
          {"target_diagram", diagram_code(w.shadow, w.target_bits)}};
}

ordered_json to_json(const FertilityReport& r) {
  ordered_json out = {{"knot", r.knot}, {"predicate", std::string(to_string(r.predicate))}};
  if (r.predicate == Predicate::FertilityNumber) {
    out["n"] = r.n;
    out["value"] = r.value.value_or(-1);
  } else {
    out["m"] = r.m;
    out["n"] = r.n;
  }
  out["verdict"] = r.verdict;
  ordered_json ws = ordered_json::array();
  for (const auto& w : r.witnesses) ws.push_back(to_json(w));
  out["witnesses"] = ws;
  out["obstruction"] = r.obstruction ? ordered_json(*r.obstruction) : ordered_json(nullptr);
  out["unsupported"] = r.unsupported;
  return out;
}

ordered_json to_json(const MinimalDiagram& d) {
  return {{"diagram", diagram_code(d.shadow, d.bits)},
          {"chirality", std::string(to_string(d.chirality))},
          {"stats", to_json(d.stats)}};
}

ordered_json to_json(const VariationStats& v) {
  return {{"diagrams", v.diagrams},
          {"scv", v.scv},
          {"wv", v.wv},
          {"min_s", v.min_s},
          {"max_s", v.max_s},
          {"min_g", v.min_g},
          {"cgd", {v.cgd.lower, v.cgd.upper}},
          {"complete", v.complete},
          {"chirality_resolved", v.chirality_resolved}};
}

ordered_json to_json(const BoundsReport& r) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"name", e.name},
                       {"left", e.left},
                       {"right", e.right},
                       {"holds", e.holds},
                       {"tight", e.tight},
                       {"relation", e.relation}});
  }
  return {{"knot", r.knot}, {"all_hold", r.all_hold()}, {"entries", entries}};
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string bounds_csv_header() { return "knot,name,left,right,holds,tight,relation\n"; }

std::string to_csv_rows(const BoundsReport& r) {
  std::string out;
  for (const auto& e : r.entries) {
    out += csv_escape(r.knot) + ',' + csv_escape(e.name) + ',' + std::to_string(e.left) + ',' +
           std::to_string(e.right) + ',' + (e.holds ? "1" : "0") + ',' + (e.tight ? "1" : "0") + ',' +
           csv_escape(e.relation) + '\n';
  }
  return out;
}

}  // namespace knotfert
