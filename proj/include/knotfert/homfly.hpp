#pragma once

// HOMFLY polynomial by skein recursion, normalized by
//   v^-1 P(L+) - v P(L-) = z P(L0),   P(unknot) = 1,
// so the k-component unlink evaluates to ((v^-1 - v) / z)^(k-1).

#include <cstddef>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "knotfert/diagram.hpp"
#include "knotfert/laurent.hpp"

namespace knotfert {

struct HomflyOptions {
  int crossing_ceiling = 16;
  bool memoize = true;
  bool simplify = true;
};

// Computes HOMFLY polynomials. The memo table is shared by all calls and is
// safe to use from several threads; inserts are idempotent.
class HomflyEngine {
 public:
  explicit HomflyEngine(HomflyOptions options = {}) : options_(options) {}

  HomflyEngine(const HomflyEngine&) = delete;
  HomflyEngine& operator=(const HomflyEngine&) = delete;

  // Throws Error(ResourceLimit) when d has more crossings than the ceiling.
  Laurent2 compute(const Diagram& d);

  const HomflyOptions& options() const noexcept { return options_; }
  std::size_t cache_size() const;
  void clear_cache();

 private:
  Laurent2 recurse(const Diagram& d);
  bool lookup(const std::string& key, Laurent2& out) const;
  void store(const std::string& key, const Laurent2& value);

  HomflyOptions options_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, Laurent2> cache_;
};

// Uses a process-wide engine with default options.
Laurent2 homfly(const Diagram& d);

// ((v^-1 - v) / z)^(components - 1)
Laurent2 unlink_value(int components);

}  // namespace knotfert
