// knotfert: command-line front end.
//
// Exit status: 0 success, 1 domain error (error JSON on stdout), 2 usage.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "knotfert/codes.hpp"
#include "knotfert/diagram.hpp"
#include "knotfert/error.hpp"
#include "knotfert/fertility.hpp"
#include "knotfert/homfly.hpp"
#include "knotfert/knotbase.hpp"
#include "knotfert/report.hpp"

#ifndef KNOTFERT_DEFAULT_TABLE
#define KNOTFERT_DEFAULT_TABLE "data/knots9.tbl"
#endif

using namespace knotfert;
using nlohmann::ordered_json;

namespace {

constexpr int kHomflyCeiling = 12;
constexpr int kFertilityCeiling = 7;

struct RunConfig {
  std::string table;
  int homfly_ceiling = kHomflyCeiling;
  int fertility_ceiling = kFertilityCeiling;
  int threads = 1;
  std::string format = "text";
  bool irreducible = false;
  // Unset: off for enumerate, on for the fertility sweeps.
  std::optional<bool> mirror_quotient;
  bool exclude_unknot = false;

  // Inputs shared by several subcommands.
  std::vector<std::string> codes;
  std::vector<std::string> inputs;
  std::string knot;
  bool all = false;
  int max_c = 7;
  int n = -1;
  int m = -1;
  int n_max = -1;
};

// Lines of every --in file followed by every --code value.
std::vector<std::string> gather_inputs(const RunConfig& cfg) {
  std::vector<std::string> out;
  for (const auto& path : cfg.inputs) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      out.push_back(line);
    }
  }
  for (const auto& c : cfg.codes) out.push_back(c);
  return out;
}

bool looks_like_diagram(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return false;
  return text.find('|') != std::string::npos || text[first] == '[' || text[first] == 'P' ||
         text[first] == 'X';
}

// A shadow code without choice bits reads as the all-zero assignment, which
// always gives an unknot diagram.
Diagram read_diagram(const std::string& text) {
  if (looks_like_diagram(text)) return parse_diagram(text);
  return assign(parse_shadow(text), std::uint64_t{0});
}

class Runner {
 public:
  Runner(const RunConfig& cfg, std::string command) : cfg_(cfg), command_(std::move(command)) {
    homfly_opts_.crossing_ceiling = cfg.homfly_ceiling;
    fert_opts_.allow_reducible = !cfg.irreducible;
    fert_opts_.quotient_reflection = cfg.mirror_quotient.value_or(command_ != "enumerate");
    fert_opts_.include_unknot_target = !cfg.exclude_unknot;
    fert_opts_.threads = cfg.threads;
    fert_opts_.crossing_ceiling = cfg.fertility_ceiling;
  }

  int run();

 private:
  HomflyEngine& homfly() {
    if (!homfly_) homfly_ = std::make_unique<HomflyEngine>(homfly_opts_);
    return *homfly_;
  }
  // The table is parsed with a ceiling high enough for its own diagrams.
  const KnotBase& base() {
    if (!base_) {
      HomflyEngine loader(HomflyOptions{.crossing_ceiling = 64});
      base_ = std::make_unique<KnotBase>(KnotBase::load(cfg_.table, &loader));
    }
    return *base_;
  }
  FertilityEngine& fertility() {
    if (!fert_) fert_ = std::make_unique<FertilityEngine>(base(), homfly(), fert_opts_);
    return *fert_;
  }

  ordered_json meta() const {
    RunMeta m;
    m.command = command_;
    m.table = cfg_.table;
    if (base_) {
      m.table_version = base_->version();
      m.complete_through = base_->complete_through();
    }
    m.homfly_ceiling = homfly_opts_.crossing_ceiling;
    m.fertility_ceiling = fert_opts_.crossing_ceiling;
    m.threads = fert_opts_.threads;
    m.allow_reducible = fert_opts_.allow_reducible;
    m.quotient_reflection = fert_opts_.quotient_reflection;
    m.include_unknot_target = fert_opts_.include_unknot_target;
    return to_json(m);
  }

  std::string text_header() const {
    std::ostringstream os;
    os << "# knotfert " << command_ << " table=" << cfg_.table
       << " homfly-ceiling=" << homfly_opts_.crossing_ceiling
       << " fertility-ceiling=" << fert_opts_.crossing_ceiling << " threads=" << fert_opts_.threads
       << " reducible=" << fert_opts_.allow_reducible
       << " mirror-quotient=" << fert_opts_.quotient_reflection
       << " unknot-target=" << fert_opts_.include_unknot_target << "\n";
    return os.str();
  }

  void emit_json(ordered_json body) {
    ordered_json out;
    out["meta"] = meta();
    for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
    std::cout << out.dump(2) << "\n";
  }

  std::vector<std::string> knots_to_run();

  int enumerate();
  int stats_cmd();
  int homfly_cmd();
  int identify();
  int census();
  int fertile();
  int mnfertile();
  int fnumber();
  int variation();
  int verify();
  int table_check();

  const RunConfig& cfg_;
  std::string command_;
  HomflyOptions homfly_opts_;
  FertilityOptions fert_opts_;
  std::unique_ptr<HomflyEngine> homfly_;
  std::unique_ptr<KnotBase> base_;
  std::unique_ptr<FertilityEngine> fert_;
};

int Runner::run() {
  if (command_ == "enumerate") return enumerate();
  if (command_ == "stats") return stats_cmd();
  if (command_ == "homfly") return homfly_cmd();
  if (command_ == "identify") return identify();
  if (command_ == "census") return census();
  if (command_ == "fertile") return fertile();
  if (command_ == "mnfertile") return mnfertile();
  if (command_ == "fnumber") return fnumber();
  if (command_ == "variation") return variation();
  if (command_ == "verify") return verify();
  if (command_ == "table-check") return table_check();
  return 2;
}

std::vector<std::string> Runner::knots_to_run() {
  if (!cfg_.all) {
    base().at(cfg_.knot);
    return {cfg_.knot};
  }
  std::vector<std::string> out;
  for (const auto& r : base().records()) {
    if (r.crossings <= cfg_.max_c) out.push_back(r.name);
  }
  return out;
}

int Runner::enumerate() {
  EnumerateOptions eo;
  eo.allow_reducible = !cfg_.irreducible;
  eo.quotient_reflection = fert_opts_.quotient_reflection;
  eo.threads = cfg_.threads;
  const auto shadows = enumerate_shadows(cfg_.n, eo);
  if (cfg_.format == "json") {
    ordered_json list = ordered_json::array();
    for (const auto& s : shadows) {
      const ShadowStats st = stats_shadow(s);
      list.push_back({{"word", s.to_string()},
                      {"code", shadow_code(s)},
                      {"key", canonical_form(s, eo.quotient_reflection)},
                      {"s", st.s},
                      {"g", st.g}});
    }
    emit_json({{"n", cfg_.n}, {"count", shadows.size()}, {"shadows", list}});
  } else if (cfg_.format == "csv") {
    std::cout << text_header() << "word,code,key,c,s,g\n";
    for (const auto& s : shadows) {
      const ShadowStats st = stats_shadow(s);
      std::cout << s.to_string() << ',' << shadow_code(s) << ','
                << canonical_form(s, eo.quotient_reflection) << ',' << st.c << ',' << st.s << ','
                << st.g << "\n";
    }
  } else {
    std::cout << text_header() << "# count " << shadows.size() << "\n";
    for (const auto& s : shadows) std::cout << s.to_string() << "  # " << shadow_code(s) << "\n";
  }
  return 0;
}

int Runner::stats_cmd() {
  ordered_json list = ordered_json::array();
  std::ostringstream text;
  for (const auto& line : gather_inputs(cfg_)) {
    if (looks_like_diagram(line)) {
      const DiagramStats st = stats(parse_diagram(line));
      list.push_back({{"input", line}, {"kind", "diagram"}, {"stats", to_json(st)}});
      text << line << ": c=" << st.c << " c+=" << st.c_plus << " c-=" << st.c_minus << " w=" << st.w
           << " s=" << st.s << " sl=" << st.sl << " g=" << st.g << "\n";
    } else {
      const ShadowStats st = stats_shadow(parse_shadow(line));
      list.push_back({{"input", line}, {"kind", "shadow"}, {"stats", to_json(st)}});
      text << line << ": c=" << st.c << " s=" << st.s << " g=" << st.g << "\n";
    }
  }
  if (cfg_.format == "json") {
    emit_json({{"results", list}});
  } else {
    std::cout << text.str();
  }
  return 0;
}

int Runner::homfly_cmd() {
  ordered_json list = ordered_json::array();
  std::ostringstream text;
  for (const auto& line : gather_inputs(cfg_)) {
    const Diagram d = read_diagram(line);
    const Laurent2 p = homfly().compute(d);
    ordered_json item = {{"input", line}, {"homfly", p.to_string()}, {"serialized", p.serialize()}};
    if (d.is_knot()) {
      item["bounds"] = to_json(bounds(p));
      item["invariant_bounds"] = to_json(invariant_bounds(p));
    }
    list.push_back(item);
    text << p.to_string() << "\n";
  }
  if (cfg_.format == "json") {
    emit_json({{"results", list}});
  } else {
    std::cout << text.str();
  }
  return 0;
}

int Runner::identify() {
  ordered_json list = ordered_json::array();
  std::ostringstream text;
  for (const auto& line : gather_inputs(cfg_)) {
    const Identification id = base().identify(read_diagram(line), homfly());
    list.push_back(identify_json(line, id, base()));
    const auto names = base().names(id.matches);
    text << line << ": ";
    if (names.empty()) text << "(not in table)";
    for (std::size_t i = 0; i < names.size(); ++i) text << (i ? " " : "") << names[i];
    text << "\n";
  }
  if (cfg_.format == "json") {
    emit_json({{"results", list}});
  } else {
    std::cout << text.str();
  }
  return 0;
}

int Runner::census() {
  std::vector<SupportCensus> result;
  if (cfg_.n >= 0) {
    result = fertility().census(cfg_.n);
  } else {
    for (const auto& line : gather_inputs(cfg_)) result.push_back(fertility().support_census(parse_shadow(line)));
  }
  if (cfg_.format == "json") {
    ordered_json list = ordered_json::array();
    for (const auto& c : result) list.push_back(to_json(c, base()));
    emit_json({{"censuses", list}});
  } else {
    std::cout << text_header();
    for (const auto& c : result) {
      std::cout << shadow_code(c.shadow) << ":";
      for (const auto& [record, bits] : c.witnesses) std::cout << " " << base().record(record).name;
      if (!c.unidentified.empty()) std::cout << " +" << c.unidentified.size() << " unidentified";
      std::cout << "\n";
    }
  }
  return 0;
}

int Runner::fertile() {
  std::vector<FertilityReport> reports;
  for (const auto& k : knots_to_run()) reports.push_back(fertility().is_fertile(k));
  if (cfg_.format == "json") {
    ordered_json list = ordered_json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    emit_json({{"reports", list}});
  } else if (cfg_.format == "csv") {
    std::cout << text_header() << "knot,fertile,obstruction\n";
    for (const auto& r : reports) {
      std::cout << r.knot << ',' << (r.verdict ? 1 : 0) << ',' << r.obstruction.value_or("") << "\n";
    }
  } else {
    std::cout << text_header();
    for (const auto& r : reports) {
      std::cout << r.knot << ": " << (r.verdict ? "fertile" : "not fertile");
      if (r.obstruction) std::cout << " (no minimal shadow supports " << *r.obstruction << ")";
      std::cout << "\n";
    }
  }
  return 0;
}

int Runner::mnfertile() {
  const FertilityReport r = fertility().is_mn_fertile(cfg_.knot, cfg_.m, cfg_.n);
  if (cfg_.format == "json") {
    emit_json({{"report", to_json(r)}});
  } else {
    std::cout << text_header() << r.knot << " (" << r.m << "," << r.n << ")-fertile: "
              << (r.verdict ? "true" : "false");
    if (r.obstruction) std::cout << " (unsupported " << *r.obstruction << ")";
    std::cout << "\n";
  }
  return 0;
}

int Runner::fnumber() {
  std::vector<FertilityReport> reports;
  for (const auto& k : knots_to_run()) reports.push_back(fertility().fertility_number(k));
  if (cfg_.format == "json") {
    ordered_json list = ordered_json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    emit_json({{"reports", list}});
  } else if (cfg_.format == "csv") {
    std::cout << text_header() << "knot,F,obstruction\n";
    for (const auto& r : reports) std::cout << r.knot << ',' << *r.value << ',' << r.obstruction.value_or("") << "\n";
  } else {
    std::cout << text_header();
    for (const auto& r : reports) std::cout << r.knot << ": F=" << *r.value << "\n";
  }
  return 0;
}

int Runner::variation() {
  ordered_json list = ordered_json::array();
  std::ostringstream text, csv;
  for (const auto& k : knots_to_run()) {
    const auto diagrams = fertility().minimal_diagrams(k);
    const Interval gc = fertility().gc_interval(k);
    const VariationStats v = variation_stats(diagrams, gc, true);
    ordered_json item = {{"knot", k}, {"gc_interval", {gc.lower, gc.upper}}, {"variation", to_json(v)}};
    ordered_json ds = ordered_json::array();
    for (const auto& d : diagrams) ds.push_back(to_json(d));
    item["minimal_diagrams"] = ds;
    list.push_back(item);
    text << k << ": diagrams=" << v.diagrams << " scv=" << v.scv << " wv=" << v.wv << " cgd=["
         << v.cgd.lower << "," << v.cgd.upper << "] gc=[" << gc.lower << "," << gc.upper << "]\n";
    csv << k << ',' << v.diagrams << ',' << v.scv << ',' << v.wv << ',' << v.cgd.lower << ','
        << v.cgd.upper << ',' << gc.lower << ',' << gc.upper << "\n";
  }
  if (cfg_.format == "json") {
    emit_json({{"results", list}});
  } else if (cfg_.format == "csv") {
    std::cout << text_header() << "knot,diagrams,scv,wv,cgd_lower,cgd_upper,gc_lower,gc_upper\n" << csv.str();
  } else {
    std::cout << text_header() << text.str();
  }
  return 0;
}

int Runner::verify() {
  const int n_max = cfg_.n_max >= 0 ? cfg_.n_max : fert_opts_.crossing_ceiling;
  std::vector<BoundsReport> reports;
  for (const auto& k : knots_to_run()) {
    const KnotResults results = fertility().collect(k, n_max);
    reports.push_back(verify_bounds(base().at(k), base(), results));
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.all_hold();
  if (cfg_.format == "json") {
    ordered_json list = ordered_json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    emit_json({{"all_hold", ok}, {"reports", list}});
  } else if (cfg_.format == "csv") {
    std::cout << text_header() << bounds_csv_header();
    for (const auto& r : reports) std::cout << to_csv_rows(r);
  } else {
    std::cout << text_header();
    for (const auto& r : reports) {
      for (const auto& e : r.entries) {
        std::cout << r.knot << "  " << (e.holds ? (e.tight ? "tight" : "ok   ") : "FAIL ") << "  "
                  << e.name << "  " << e.relation << "\n";
      }
    }
    std::cout << (ok ? "all inequalities hold\n" : "some inequalities fail\n");
  }
  return ok ? 0 : 1;
}

int Runner::table_check() {
  const KnotBase& kb = base();
  ordered_json collisions = ordered_json::array();
  for (const auto& c : kb.collisions()) collisions.push_back(kb.names(c));
  int annotated = 0;
  for (const auto& r : kb.records()) {
    if (r.braid_index && r.genus && r.canonical_genus) ++annotated;
  }
  if (cfg_.format == "json") {
    emit_json({{"records", kb.size()},
               {"version", kb.version()},
               {"complete_through", kb.complete_through()},
               {"fully_annotated", annotated},
               {"collisions", collisions}});
  } else {
    std::cout << text_header() << kb.size() << " records, complete through " << kb.complete_through()
              << ", " << annotated << " with b, g and gc, " << kb.collisions().size()
              << " fingerprint collisions\n";
    for (const auto& c : kb.collisions()) {
      for (const auto& n : kb.names(c)) std::cout << n << " ";
      std::cout << "\n";
    }
  }
  return 0;
}

void cost_warning(const RunConfig& cfg) {
  if (cfg.fertility_ceiling > kFertilityCeiling) {
    // Shadow counts grow roughly sixfold per crossing, assignments twofold.
    double shadows = 2194;
    for (int n = 7; n < cfg.fertility_ceiling; ++n) shadows *= 6.5;
    const double work = shadows * std::ldexp(1.0, cfg.fertility_ceiling - 1);
    std::cerr << "warning: fertility ceiling " << cfg.fertility_ceiling << " above the default "
              << kFertilityCeiling << "; a full sweep identifies about " << std::scientific << work
              << std::defaultfloat << " diagrams\n";
  }
  if (cfg.homfly_ceiling > kHomflyCeiling) {
    std::cerr << "warning: HOMFLY ceiling " << cfg.homfly_ceiling << " above the default " << kHomflyCeiling
              << "; worst-case skein trees grow like 2^c (about " << std::scientific
              << std::ldexp(1.0, cfg.homfly_ceiling) << std::defaultfloat << " leaves)\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("KNOTFERT_TABLE")) {
    cfg.table = env;
  } else {
    cfg.table = KNOTFERT_DEFAULT_TABLE;
  }

  CLI::App app{"Knot shadows, HOMFLY fingerprints and fertility of knot diagrams"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--table", cfg.table, "Knot table (default: $KNOTFERT_TABLE or the bundled table)");
  app.add_option("--ceiling", cfg.homfly_ceiling, "Crossing ceiling for HOMFLY computations")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--fertility-ceiling", cfg.fertility_ceiling, "Crossing ceiling for assignment sweeps")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  auto* irr = app.add_flag("--irreducible", cfg.irreducible, "Skip shadows with nugatory crossings");
  app.add_flag("--reducible{false}", cfg.irreducible, "Keep shadows with nugatory crossings (default)")
      ->excludes(irr);
  app.add_flag("--mirror-quotient,!--no-mirror-quotient", cfg.mirror_quotient,
               "Identify a shadow with its reflection (default: on except for enumerate)");
  app.add_flag("--exclude-unknot-target", cfg.exclude_unknot, "Do not count 0_1 as a target knot");

  auto add_inputs = [&](CLI::App* sub) {
    // One value per flag, so PD codes keep their brackets and commas.
    sub->add_option("--code", cfg.codes, "Shadow or diagram code (repeatable)")->allow_extra_args(false);
    sub->add_option("--in", cfg.inputs, "File with one code per line (repeatable)")->check(CLI::ExistingFile);
  };
  auto add_knot = [&](CLI::App* sub, bool allow_all) {
    auto* k = sub->add_option("--knot", cfg.knot, "Knot name, e.g. 5_2");
    if (allow_all) {
      auto* a = sub->add_flag("--all", cfg.all, "Every table knot up to --max-c crossings");
      sub->add_option("--max-c", cfg.max_c, "Crossing bound for --all")->check(CLI::NonNegativeNumber);
      k->excludes(a);
      sub->callback([sub, k, a] {
        if (k->count() == 0 && a->count() == 0) throw CLI::RequiredError("--knot or --all");
      });
    } else {
      k->required();
    }
  };

  auto* en = app.add_subcommand("enumerate", "List the n-crossing shadows");
  en->add_option("--n", cfg.n, "Crossing count")->required()->check(CLI::NonNegativeNumber);
  add_inputs(app.add_subcommand("stats", "Seifert circles, writhe, self-linking and genus"));
  add_inputs(app.add_subcommand("homfly", "HOMFLY polynomial of diagrams"));
  add_inputs(app.add_subcommand("identify", "Identify diagrams against the table"));
  auto* ce = app.add_subcommand("census", "Knots supported by shadows");
  add_inputs(ce);
  ce->add_option("--n", cfg.n, "Census of every n-crossing shadow")->check(CLI::NonNegativeNumber);
  add_knot(app.add_subcommand("fertile", "Fertility verdicts"), true);
  auto* mn = app.add_subcommand("mnfertile", "(m,n)-fertility verdict");
  add_knot(mn, false);
  mn->add_option("--m", cfg.m, "Target crossing bound")->required()->check(CLI::NonNegativeNumber);
  mn->add_option("--n", cfg.n, "Shadow crossing count")->required()->check(CLI::NonNegativeNumber);
  add_knot(app.add_subcommand("fnumber", "Fertility number F(K)"), true);
  add_knot(app.add_subcommand("variation", "scv, wv and cgd over minimal diagrams"), true);
  auto* ve = app.add_subcommand("verify", "Check the fertility inequalities on computed data");
  add_knot(ve, true);
  ve->add_option("--n-max", cfg.n_max, "Largest shadow size for (m,n) verdicts (default: ceiling)")
      ->check(CLI::NonNegativeNumber);
  app.add_subcommand("table-check", "Load the table and report fingerprint collisions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  cost_warning(cfg);
  try {
    Runner runner(cfg, command);
    return runner.run();
  } catch (const Error& e) {
    ordered_json err = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}, {"command", command}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
}
