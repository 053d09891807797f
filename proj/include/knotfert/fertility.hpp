#pragma once

// Support censuses of shadows, fertility predicates, variation statistics of
// minimum-crossing diagrams, and checks of the fertility inequalities on
// computed data.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "knotfert/codes.hpp"
#include "knotfert/diagram.hpp"
#include "knotfert/homfly.hpp"
#include "knotfert/knotbase.hpp"

namespace knotfert {

struct FertilityOptions {
  // Shadows with nugatory crossings count toward (m,n)-fertility.
  bool allow_reducible = true;
  // Sweep one shadow per reflection pair. Support is mirror-closed, so the
  // verdicts are unchanged.
  bool quotient_reflection = true;
  // 0_1 is a target prime knot K'.
  bool include_unknot_target = true;
  int threads = 1;
  int crossing_ceiling = 7;
};

// Identification of one crossing assignment.
struct AssignmentResult {
  static constexpr int kUnidentified = -1;
  static constexpr int kAmbiguous = -2;  // fingerprint shared by several records

  int record = kUnidentified;
  Chirality chirality = Chirality::Ambiguous;
  std::uint64_t fingerprint_hash = 0;
};

struct SupportCensus {
  Shadow shadow;
  std::string key;  // canonical form of the shadow
  // Record index -> smallest assignment realizing it, in table order.
  std::vector<std::pair<int, std::uint64_t>> witnesses;
  // Hashes of fingerprints not in the table, sorted.
  std::vector<std::uint64_t> unidentified;
  // One entry per assignment bit pattern, 2^c entries.
  std::vector<AssignmentResult> assignments;

  bool supports(int record) const;
  std::optional<std::uint64_t> witness(int record) const;
};

struct MinimalDiagram {
  Shadow shadow;
  std::uint64_t bits = 0;
  Chirality chirality = Chirality::Ambiguous;
  DiagramStats stats;
};

struct Witness {
  std::string target;
  Shadow shadow;
  std::uint64_t knot_bits = 0;
  std::uint64_t target_bits = 0;
};

enum class Predicate { Fertile, MnFertile, FertilityNumber };
std::string_view to_string(Predicate p) noexcept;

struct FertilityReport {
  std::string knot;
  Predicate predicate = Predicate::Fertile;
  int m = 0;
  int n = 0;
  bool verdict = false;
  std::optional<int> value;  // F(K) for FertilityNumber
  std::vector<Witness> witnesses;
  std::optional<std::string> obstruction;  // first unsupported target
  std::vector<std::string> unsupported;    // all unsupported targets
};

struct Interval {
  int lower = 0;
  int upper = 0;
  bool exact() const { return lower == upper; }
};

struct VariationStats {
  int diagrams = 0;
  int scv = 0;
  int wv = 0;  // max of (w(D) - w(D'))/2
  int min_s = 0;
  int max_s = 0;
  int min_g = 0;
  Interval cgd;
  // True when computed from the complete minimal-diagram set; otherwise the
  // values are lower bounds.
  bool complete = false;
  // True when the diagrams were restricted to one chirality of K.
  bool chirality_resolved = false;
};

struct BoundEntry {
  std::string name;
  std::string relation;  // the inequality with its values substituted
  std::int64_t left = 0;
  std::int64_t right = 0;
  bool holds = false;
  bool tight = false;
};

struct BoundsReport {
  std::string knot;
  std::vector<BoundEntry> entries;
  bool all_hold() const;
};

// One (m,n) verdict for a knot, with the shadows used.
struct MnResult {
  int m = 0;
  int n = 0;
  bool fertile = false;
  std::vector<Witness> witnesses;
  std::vector<std::string> unsupported;
};

// Everything verify_bounds consumes for one knot.
struct KnotResults {
  std::string knot;
  std::optional<int> fertility_number;
  std::vector<MnResult> mn;
  std::vector<MinimalDiagram> minimal;
  bool minimal_complete = false;
  std::optional<VariationStats> variation;
};

class FertilityEngine {
 public:
  FertilityEngine(const KnotBase& base, HomflyEngine& homfly, FertilityOptions options = {});

  const FertilityOptions& options() const noexcept { return options_; }
  const KnotBase& base() const noexcept { return base_; }

  // Throws Error(ResourceLimit) above the crossing ceiling.
  SupportCensus support_census(const Shadow& shadow) const;

  // Censuses of all n-crossing shadows under the engine's options, computed
  // once and cached. Sorted by canonical key.
  const std::vector<SupportCensus>& census(int n) const;
  // Same for shadows without nugatory crossings.
  const std::vector<SupportCensus>& reduced_census(int n) const;

  std::optional<std::uint64_t> supports(const Shadow& shadow, std::string_view knot) const;

  // All diagrams on n = c(K) crossing shadows identifying to K, one per
  // diagram key. Throws Error(ResourceLimit) or Error(UnknownKnot).
  std::vector<MinimalDiagram> minimal_diagrams(std::string_view knot) const;

  FertilityReport is_fertile(std::string_view knot) const;
  FertilityReport is_mn_fertile(std::string_view knot, int m, int n) const;
  // Largest m <= m_max (default c(K)) with K (m, c(K))-fertile, -1 if none.
  FertilityReport fertility_number(std::string_view knot, std::optional<int> m_max = {}) const;

  Interval gc_interval(std::string_view knot) const;

  // Verdicts for every n in [c(K), n_max] and every m in [0, n] that the
  // table covers.
  std::vector<MnResult> mn_table(std::string_view knot, int n_max) const;

  // Runs the sweeps verify_bounds needs.
  KnotResults collect(std::string_view knot, int n_max) const;

 private:
  const std::vector<SupportCensus>& census_impl(int n, bool reduced) const;
  std::vector<int> targets(int m) const;
  void check_ceiling(int n) const;
  MnResult mn_result(int record, int m, int n) const;
  MnResult search(int record, const std::vector<int>& goal,
                  const std::vector<SupportCensus>& shadows) const;

  const KnotBase& base_;
  HomflyEngine& homfly_;
  FertilityOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, bool>, std::unique_ptr<std::vector<SupportCensus>>> cache_;
};

// Throws Error(EmptySet). gc is the canonical genus (interval) of K.
// Chirality-aware: when the diagrams carry Reference/Mirror tags, only the
// Reference ones count, so mirror images are not compared with each other.
VariationStats variation_stats(const std::vector<MinimalDiagram>& diagrams, Interval gc,
                               bool complete = false);

// Throws Error(MissingAnnotation) naming the invariant when an exact b(K),
// g(K) or g_c(K) is needed and unavailable.
BoundsReport verify_bounds(const KnotRecord& knot, const KnotBase& base, const KnotResults& results);

}  // namespace knotfert
