#include "knotfert/fertility.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <thread>

#include "knotfert/error.hpp"

namespace knotfert {

namespace {

std::string str(std::int64_t v) { return std::to_string(v); }

// floor(a / b) for b > 0.
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

BoundEntry entry(std::string name, std::int64_t left, std::int64_t right, std::string relation) {
  BoundEntry e;
  e.name = std::move(name);
  e.left = left;
  e.right = right;
  e.holds = left <= right;
  e.tight = left == right;
  e.relation = std::move(relation) + ": " + str(left) + " <= " + str(right);
  return e;
}

// Largest c allowed by the quantitative Birman-Menasco bound for braid index
// b and genus g. b = 1 is the unknot.
std::int64_t qbm_bound(std::int64_t b, std::int64_t g) {
  if (b <= 1) return 0;
  if (b == 2) return 2 * g + 1;
  if (b == 3) return floor_div(5 * (2 * g + 2), 3);
  return (2 * b - 5) * (2 * g + b - 1);
}

int require(const std::optional<int>& value, const KnotRecord& rec, const char* what) {
  if (!value) {
    throw Error(ErrorKind::MissingAnnotation,
                std::string(what) + " of " + rec.name + " is needed exactly but the table has no value");
  }
  return *value;
}

}  // namespace

bool SupportCensus::supports(int record) const { return witness(record).has_value(); }

std::optional<std::uint64_t> SupportCensus::witness(int record) const {
  for (const auto& [r, bits] : witnesses) {
    if (r == record) return bits;
  }
  return std::nullopt;
}

std::string_view to_string(Predicate p) noexcept {
  switch (p) {
    case Predicate::Fertile: return "fertile";
    case Predicate::MnFertile: return "mn-fertile";
    case Predicate::FertilityNumber: return "fertility-number";
  }
  return "?";
}

bool BoundsReport::all_hold() const {
  return std::all_of(entries.begin(), entries.end(), [](const BoundEntry& e) { return e.holds; });
}

FertilityEngine::FertilityEngine(const KnotBase& base, HomflyEngine& homfly, FertilityOptions options)
    : base_(base), homfly_(homfly), options_(options) {
  if (options_.threads < 1) options_.threads = 1;
}

void FertilityEngine::check_ceiling(int n) const {
  if (n > options_.crossing_ceiling) {
    throw Error(ErrorKind::ResourceLimit, std::to_string(n) +
                                              "-crossing sweep is above the fertility ceiling of " +
                                              std::to_string(options_.crossing_ceiling));
  }
  if (n > 62) throw Error(ErrorKind::ResourceLimit, "too many crossings for an assignment sweep");
}

SupportCensus FertilityEngine::support_census(const Shadow& shadow) const {
  const int c = shadow.crossings();
  check_ceiling(c);
  SupportCensus out;
  out.shadow = shadow;
  out.key = canonical_form(shadow, options_.quotient_reflection);
  const std::uint64_t total = std::uint64_t{1} << c;
  const std::uint64_t all = total - 1;
  out.assignments.resize(total);
  // assign(S, ~b) is the mirror image of assign(S, b), so half the
  // assignments suffice.
  const std::uint64_t half = c == 0 ? 1 : total / 2;
  for (std::uint64_t bits = 0; bits < half; ++bits) {
    const Identification id = base_.identify(assign(shadow, bits), homfly_);
    AssignmentResult r;
    r.fingerprint_hash = id.fingerprint.hash;
    r.chirality = id.chirality;
    if (id.matches.size() == 1) {
      r.record = id.matches.front();
    } else if (id.matches.size() > 1) {
      r.record = AssignmentResult::kAmbiguous;
    }
    out.assignments[bits] = r;
    if (c > 0) {
      r.chirality = flipped(r.chirality);
      out.assignments[bits ^ all] = r;
    }
  }
  std::set<std::uint64_t> unidentified;
  std::map<int, std::uint64_t> first;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    const auto& r = out.assignments[bits];
    if (r.record >= 0) {
      first.try_emplace(r.record, bits);
    } else {
      unidentified.insert(r.fingerprint_hash);
    }
  }
  out.witnesses.assign(first.begin(), first.end());
  out.unidentified.assign(unidentified.begin(), unidentified.end());
  return out;
}

const std::vector<SupportCensus>& FertilityEngine::census(int n) const {
  return census_impl(n, !options_.allow_reducible);
}

const std::vector<SupportCensus>& FertilityEngine::reduced_census(int n) const {
  return census_impl(n, true);
}

const std::vector<SupportCensus>& FertilityEngine::census_impl(int n, bool reduced) const {
  check_ceiling(n);
  std::lock_guard lock(mutex_);
  auto& slot = cache_[{n, reduced}];
  if (slot) return *slot;

  EnumerateOptions eo;
  eo.allow_reducible = !reduced;
  eo.quotient_reflection = options_.quotient_reflection;
  eo.threads = options_.threads;
  const std::vector<Shadow> shadows = enumerate_shadows(n, eo);

  auto result = std::make_unique<std::vector<SupportCensus>>(shadows.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= shadows.size()) return;
      try {
        (*result)[i] = support_census(shadows[i]);
      } catch (...) {
        std::lock_guard g(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < options_.threads; ++t) pool.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);
  std::sort(result->begin(), result->end(),
            [](const SupportCensus& a, const SupportCensus& b) { return a.key < b.key; });
  slot = std::move(result);
  return *slot;
}

std::optional<std::uint64_t> FertilityEngine::supports(const Shadow& shadow, std::string_view knot) const {
  const int record = base_.index_of(knot);
  if (record < 0) throw Error(ErrorKind::UnknownKnot, "knot " + std::string(knot) + " is not in the table");
  const int c = shadow.crossings();
  check_ceiling(c);
  const std::uint64_t total = std::uint64_t{1} << c;
  const std::uint64_t half = c == 0 ? 1 : total / 2;
  for (std::uint64_t bits = 0; bits < half; ++bits) {
    const Identification id = base_.identify(assign(shadow, bits), homfly_);
    if (id.matches.size() == 1 && id.matches.front() == record) return bits;
  }
  return std::nullopt;
}

std::vector<int> FertilityEngine::targets(int m) const {
  if (m > base_.complete_through()) {
    throw Error(ErrorKind::TableInsufficient,
                "targets up to " + std::to_string(m) + " crossings need a table complete through " +
                    std::to_string(m) + ", " + base_.source() + " is complete through " +
                    std::to_string(base_.complete_through()));
  }
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(base_.size()); ++i) {
    const auto& rec = base_.record(i);
    if (rec.crossings > m) continue;
    if (rec.crossings == 0 && !options_.include_unknot_target) continue;
    out.push_back(i);
  }
  return out;
}

std::vector<MinimalDiagram> FertilityEngine::minimal_diagrams(std::string_view knot) const {
  const int record = base_.index_of(knot);
  if (record < 0) throw Error(ErrorKind::UnknownKnot, "knot " + std::string(knot) + " is not in the table");
  const int n = base_.record(record).crossings;
  std::vector<MinimalDiagram> out;
  std::set<std::string> seen;
  for (const auto& cs : reduced_census(n)) {
    for (std::uint64_t bits = 0; bits < cs.assignments.size(); ++bits) {
      const auto& r = cs.assignments[bits];
      if (r.record != record) continue;
      const Diagram d = assign(cs.shadow, bits);
      if (!seen.insert(diagram_key(d)).second) continue;
      out.push_back({cs.shadow, bits, r.chirality, stats(d)});
    }
  }
  return out;
}

MnResult FertilityEngine::search(int record, const std::vector<int>& goal,
                                 const std::vector<SupportCensus>& shadows) const {
  MnResult out;
  out.fertile = true;
  for (const int t : goal) {
    const auto it = std::find_if(shadows.begin(), shadows.end(), [&](const SupportCensus& cs) {
      return cs.supports(record) && cs.supports(t);
    });
    if (it == shadows.end()) {
      out.fertile = false;
      out.unsupported.push_back(base_.record(t).name);
    } else {
      out.witnesses.push_back({base_.record(t).name, it->shadow, *it->witness(record), *it->witness(t)});
    }
  }
  return out;
}

MnResult FertilityEngine::mn_result(int record, int m, int n) const {
  const std::vector<int> goal = targets(m);
  MnResult out = search(record, goal, census(n));
  out.m = m;
  out.n = n;
  return out;
}

namespace {

void fill_report(FertilityReport& report, const MnResult& r) {
  report.verdict = r.fertile;
  report.witnesses = r.witnesses;
  report.unsupported = r.unsupported;
  if (!report.unsupported.empty()) report.obstruction = report.unsupported.front();
}

}  // namespace

FertilityReport FertilityEngine::is_fertile(std::string_view knot) const {
  const KnotRecord& rec = base_.at(knot);
  FertilityReport report;
  report.knot = rec.name;
  report.predicate = Predicate::Fertile;
  report.m = rec.crossings - 1;
  report.n = rec.crossings;
  // A shadow with a nugatory crossing never carries a minimal diagram.
  const std::vector<int> goal = targets(rec.crossings - 1);
  fill_report(report, search(base_.index_of(knot), goal, reduced_census(rec.crossings)));
  return report;
}

FertilityReport FertilityEngine::is_mn_fertile(std::string_view knot, int m, int n) const {
  const KnotRecord& rec = base_.at(knot);
  FertilityReport report;
  report.knot = rec.name;
  report.predicate = Predicate::MnFertile;
  report.m = m;
  report.n = n;
  if (n < 0) throw Error(ErrorKind::LengthMismatch, "n must be non-negative");
  fill_report(report, mn_result(base_.index_of(knot), m, n));
  return report;
}

FertilityReport FertilityEngine::fertility_number(std::string_view knot, std::optional<int> m_max) const {
  const KnotRecord& rec = base_.at(knot);
  const int record = base_.index_of(knot);
  const int limit = m_max.value_or(rec.crossings);
  FertilityReport report;
  report.knot = rec.name;
  report.predicate = Predicate::FertilityNumber;
  report.n = rec.crossings;
  report.value = -1;
  MnResult last;
  for (int m = 0; m <= limit; ++m) {
    MnResult r = mn_result(record, m, rec.crossings);
    if (!r.fertile) {
      report.unsupported = r.unsupported;
      report.obstruction = r.unsupported.front();
      break;
    }
    report.value = m;
    last = std::move(r);
  }
  report.m = *report.value;
  report.verdict = *report.value >= 0;
  report.witnesses = last.witnesses;
  return report;
}

Interval FertilityEngine::gc_interval(std::string_view knot) const {
  const KnotRecord& rec = base_.at(knot);
  Interval out;
  out.lower = invariant_bounds(rec.homfly).gc_lower;
  out.upper = stats(rec.diagram).g;
  if (rec.crossings <= options_.crossing_ceiling) {
    for (const auto& md : minimal_diagrams(knot)) out.upper = std::min(out.upper, md.stats.g);
  }
  return out;
}

std::vector<MnResult> FertilityEngine::mn_table(std::string_view knot, int n_max) const {
  const KnotRecord& rec = base_.at(knot);
  const int record = base_.index_of(knot);
  std::vector<MnResult> out;
  for (int n = rec.crossings; n <= n_max; ++n) {
    const int m_top = std::min(n, base_.complete_through());
    for (int m = 0; m <= m_top; ++m) out.push_back(mn_result(record, m, n));
  }
  return out;
}

KnotResults FertilityEngine::collect(std::string_view knot, int n_max) const {
  const KnotRecord& rec = base_.at(knot);
  KnotResults out;
  out.knot = rec.name;
  if (rec.crossings > options_.crossing_ceiling) return out;
  if (rec.crossings <= base_.complete_through()) {
    out.fertility_number = *fertility_number(knot).value;
  }
  out.mn = mn_table(knot, std::min(n_max, options_.crossing_ceiling));
  out.minimal = minimal_diagrams(knot);
  out.minimal_complete = true;
  out.variation = variation_stats(out.minimal, gc_interval(knot), true);
  return out;
}

VariationStats variation_stats(const std::vector<MinimalDiagram>& diagrams, Interval gc, bool complete) {
  if (diagrams.empty()) throw Error(ErrorKind::EmptySet, "variation statistics of an empty diagram set");
  const bool resolved = std::any_of(diagrams.begin(), diagrams.end(), [](const MinimalDiagram& d) {
    return d.chirality == Chirality::Reference;
  });
  VariationStats v;
  v.complete = complete;
  v.chirality_resolved = resolved;
  bool first = true;
  int min_w = 0, max_w = 0;
  for (const auto& d : diagrams) {
    if (resolved && d.chirality != Chirality::Reference) continue;
    const auto& st = d.stats;
    if (first) {
      v.min_s = v.max_s = st.s;
      min_w = max_w = st.w;
      v.min_g = st.g;
      first = false;
    }
    v.min_s = std::min(v.min_s, st.s);
    v.max_s = std::max(v.max_s, st.s);
    min_w = std::min(min_w, st.w);
    max_w = std::max(max_w, st.w);
    v.min_g = std::min(v.min_g, st.g);
    ++v.diagrams;
  }
  v.scv = v.max_s - v.min_s;
  v.wv = (max_w - min_w) / 2;
  v.cgd = {v.min_g - gc.upper, v.min_g - gc.lower};
  return v;
}

BoundsReport verify_bounds(const KnotRecord& knot, const KnotBase& base, const KnotResults& results) {
  BoundsReport report;
  report.knot = knot.name;
  auto& out = report.entries;
  const int c = knot.crossings;
  const DegreeBounds db = bounds(knot.homfly);
  const InvariantBounds ib = invariant_bounds(knot.homfly);
  const bool trivial = c == 0;

  const int b = require(knot.braid_index, knot, "braid index b(K)");
  const int g = require(knot.genus, knot, "genus g(K)");
  const int gc = require(knot.canonical_genus, knot, "canonical genus g_c(K)");

  // Invariants read off the polynomial.
  out.push_back(entry("Morton", db.max_deg_z, 2 * gc, "max deg_z P <= 2 g_c(K)"));
  out.push_back(entry("MFW braid", ib.braid_lower, b, "breadth_v P / 2 + 1 <= b(K)"));
  out.push_back(entry("Lemma 2.1(ii) g <= g_c", g, gc, "g(K) <= g_c(K)"));

  // Lemma 2.1 over every shadow known to support K.
  struct ShadowSeen {
    int c, s, g;
  };
  std::vector<ShadowSeen> shadows;
  for (const auto& md : results.minimal) {
    const ShadowStats st = stats_shadow(md.shadow);
    shadows.push_back({st.c, st.s, st.g});
  }
  for (const auto& r : results.mn) {
    for (const auto& w : r.witnesses) {
      const ShadowStats st = stats_shadow(w.shadow);
      shadows.push_back({st.c, st.s, st.g});
    }
  }
  if (!shadows.empty()) {
    const auto min_c = std::min_element(shadows.begin(), shadows.end(),
                                        [](auto& x, auto& y) { return x.c < y.c; })->c;
    const auto min_g = std::min_element(shadows.begin(), shadows.end(),
                                        [](auto& x, auto& y) { return x.g < y.g; })->g;
    const auto min_s = std::min_element(shadows.begin(), shadows.end(),
                                        [](auto& x, auto& y) { return x.s < y.s; })->s;
    out.push_back(entry("Lemma 2.1(i)", c, min_c, "c(K) <= min c(S)"));
    out.push_back(entry("Lemma 2.1(ii)", gc, min_g, "g_c(K) <= min g(S)"));
    out.push_back(entry("Lemma 2.1(iii)", b, min_s, "b(K) <= min s(S)"));
  }

  // Lemma 2.2 over co-supported pairs, tightest pair per side.
  {
    std::optional<BoundEntry> left, right;
    for (const auto& r : results.mn) {
      for (const auto& w : r.witnesses) {
        const KnotRecord& other = base.at(w.target);
        const int gc_other = require(other.canonical_genus, other, "canonical genus g_c(K')");
        const ShadowStats st = stats_shadow(w.shadow);
        BoundEntry l = entry("Lemma 2.2 b(K) <= s(S)", b, st.s,
                             "b(K) <= s(S) with K'=" + other.name);
        BoundEntry rt = entry("Lemma 2.2 s(S) <= c(S)+1-2g_c(K')", st.s, st.c + 1 - 2 * gc_other,
                              "s(S) <= c(S)+1-2g_c(K') with K'=" + other.name);
        if (!left || l.right - l.left < left->right - left->left) left = l;
        if (!right || rt.right - rt.left < right->right - right->left) right = rt;
      }
    }
    if (left) out.push_back(*left);
    if (right) out.push_back(*right);
  }

  // Lemma 2.3, Theorem 1.1, Theorem 1.3 and the twist-knot chain for every
  // (m,n)-fertile verdict.
  for (const auto& r : results.mn) {
    if (!r.fertile) continue;
    const std::string mn = " (m,n)=(" + str(r.m) + "," + str(r.n) + ")";
    const int bound_b = r.m % 2 ? r.n - r.m + 2 : r.n - r.m + 3;
    out.push_back(entry("Lemma 2.3" + mn, b, bound_b,
                        r.m % 2 ? "b(K) <= n-m+2" : "b(K) <= n-m+3"));
    out.push_back(entry("Theorem 1.1 genus" + mn, gc, r.n - r.m + 1, "g_c(K) <= n-m+1"));
    const std::int64_t d = r.n - r.m;
    out.push_back(entry("Theorem 1.3" + mn, c, (2 * d + 1) * (3 * d + 4), "c(K) <= (2n-2m+1)(3n-3m+4)"));
    // The same chain with the Q-BM case that applies to each admissible b.
    std::int64_t qbm = 0;
    for (std::int64_t bb = 1; bb <= bound_b; ++bb) qbm = std::max(qbm, qbm_bound(bb, d + 1));
    out.push_back(entry("Theorem 1.3 by cases" + mn, c, qbm,
                        "c(K) <= max over b <= " + str(bound_b) + " of the Q-BM bound at g = n-m+1"));
    // The m-crossing twist knot T_m among the witnesses.
    for (const auto& w : r.witnesses) {
      const KnotRecord& t = base.at(w.target);
      if (!t.twist || *t.twist != r.m) continue;
      const ShadowStats st = stats_shadow(w.shadow);
      out.push_back(entry("Shadow genus left" + mn, 2 * gc - 1, 2 * st.g - 1, "2g_c(K)-1 <= 2g(S)-1"));
      out.push_back(entry("Shadow genus right" + mn, 2 * st.g - 1, 2 * r.n - 2 * r.m + 1,
                          "2g(S)-1 <= 2n-2m+1 (shadow supports " + t.name + ")"));
    }
  }

  if (results.fertility_number && !trivial) {
    const int f = *results.fertility_number;
    out.push_back(entry("Theorem 1.1 F", f, c + 1 - gc, "F(K) <= c(K)+1-g_c(K)"));
    out.push_back(entry("Theorem 1.1 HOMFLY", 2 * (c + 1 - gc), 2 * (c + 1) - db.max_deg_z,
                        "2(c(K)+1-g_c(K)) <= 2(c(K)+1) - max deg_z P"));
    if (results.variation && results.variation->complete && results.variation->cgd.exact()) {
      const auto& v = *results.variation;
      const std::int64_t rhs = floor_div(2 * c + 4 + v.scv + 2 * v.cgd.lower, 3);
      out.push_back(entry("Theorem 1.2", f, rhs, "F(K) <= floor((2c+4+scv+2cgd)/3)"));
    }
  }

  // Lemma 2.4 for twist knots, with c_+ and the maximal self-linking number
  // of the positive chirality.
  if (knot.twist) {
    const int m = *knot.twist;
    const int c_plus = m % 2 ? m : m - 2;
    const int sl_bar = m % 2 ? 1 : -3;
    const int sl_upper = std::max(invariant_bounds(knot.homfly).sl_upper,
                                  invariant_bounds(knot.homfly.mirrored()).sl_upper);
    out.push_back(entry("MFW sl(T_m)", sl_bar, sl_upper, "sl(T_m) <= min deg_v P - 1"));
    int sl_seen = -1000000;
    for (const auto& md : results.minimal) sl_seen = std::max(sl_seen, md.stats.sl);
    if (!results.minimal.empty()) {
      out.push_back(entry("sl(D) <= sl(T_m)", sl_seen, sl_bar, "max sl(D) over minimal diagrams <= sl(T_m)"));
    }
    std::optional<BoundEntry> worst;
    auto consider = [&](const Shadow& s) {
      const ShadowStats st = stats_shadow(s);
      BoundEntry e = entry("Lemma 2.4", 2 * st.g - 1, sl_bar + 2 * (st.c - c_plus),
                           "2g(S)-1 <= sl(T_m) + 2(c(S)-c_+(T_m))");
      if (!worst || e.right - e.left < worst->right - worst->left) worst = e;
    };
    for (const auto& md : results.minimal) consider(md.shadow);
    for (const auto& r : results.mn) {
      for (const auto& w : r.witnesses) consider(w.shadow);
    }
    if (worst) out.push_back(*worst);
  }

  // Quantitative Birman-Menasco.
  if (b == 2) {
    out.push_back(entry("Q-BM b=2", c, 2 * g + 1, "c(K) <= 2g(K)+1"));
  } else if (b == 3) {
    out.push_back(entry("Q-BM b=3", c, floor_div(5 * (2 * g + 2), 3), "c(K) <= floor(5(2g(K)+2)/3)"));
  } else if (b >= 4) {
    out.push_back(entry("Q-BM b>=4", c, static_cast<std::int64_t>(2 * b - 5) * (2 * g + b - 1),
                        "c(K) <= (2b(K)-5)(2g(K)+b(K)-1)"));
  }

  // Theorem 3.1 and the generalized Jones inequality over minimal diagrams.
  if (results.variation && !trivial) {
    const auto& v = *results.variation;
    const std::int64_t x = c - 2 * gc + 1 - b;
    out.push_back(entry("Theorem 3.1 scv", v.scv, x, "scv(K) <= c(K)-2g_c(K)+1-b(K)"));
    out.push_back(entry("Theorem 3.1 wv", v.wv, 2 * x, "wv(K) <= 2(c(K)-2g_c(K)+1-b(K))"));
    if (b == 2) {
      out.push_back(entry("Theorem 3.1 b=2", x, 0, "c(K)-2g_c(K)+1-b(K) <= 0"));
    } else if (b == 3) {
      out.push_back(entry("Theorem 3.1 b=3", x, floor_div(2 * c, 5), "c(K)-2g_c(K)+1-b(K) <= floor(2c/5)"));
    } else if (b > 3) {
      out.push_back(entry("Theorem 3.1 b>3", x, floor_div((2 * b - 6) * c, 2 * b - 5),
                          "c(K)-2g_c(K)+1-b(K) <= floor((2b-6)c/(2b-5))"));
    }
  }
  {
    std::optional<BoundEntry> worst;
    const auto& ds = results.minimal;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (std::size_t j = i + 1; j < ds.size(); ++j) {
        if (ds[i].chirality != ds[j].chirality) continue;
        const auto& a = ds[i].stats;
        const auto& e = ds[j].stats;
        BoundEntry be = entry("generalized Jones", std::abs(a.w - e.w), a.s + e.s - 2 * b,
                              "|w(D)-w(D')| <= s(D)+s(D')-2b(K)");
        if (!worst || be.right - be.left < worst->right - worst->left) worst = be;
      }
    }
    if (worst) out.push_back(*worst);
  }
  return report;
}

}  // namespace knotfert
