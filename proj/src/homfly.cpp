#include "knotfert/homfly.hpp"

#include <mutex>
#include <vector>

#include "knotfert/error.hpp"

namespace knotfert {

namespace {

// First crossing met from below when walking the components in order from
// their first pass, or -1 when the diagram is descending (an unlink).
int first_ascending_crossing(const Diagram& d) {
  std::vector<char> seen(static_cast<std::size_t>(d.crossings()), 0);
  for (const auto& comp : d.components()) {
    for (const auto& p : comp) {
      if (seen[p.crossing]) continue;
      seen[p.crossing] = 1;
      if (!p.over) return p.crossing;
    }
  }
  return -1;
}

}  // namespace

Laurent2 unlink_value(int components) {
  // (v^-1 - v) z^-1
  const Laurent2 delta = Laurent2::monomial(1, -1, -1) - Laurent2::monomial(1, 1, -1);
  return delta.pow(components - 1);
}

Laurent2 HomflyEngine::compute(const Diagram& d) {
  if (d.crossings() > options_.crossing_ceiling) {
    throw Error(ErrorKind::ResourceLimit,
                "diagram has " + std::to_string(d.crossings()) +
                    " crossings, above the HOMFLY ceiling of " +
                    std::to_string(options_.crossing_ceiling));
  }
  return recurse(d);
}

// The walk order of `d` is kept through crossing switches, so every switch
// strictly reduces the number of ascending crossings; smoothing and the
// simplification moves reduce the crossing count.
Laurent2 HomflyEngine::recurse(const Diagram& input) {
  Diagram d = options_.simplify ? simplify(input) : input;
  if (d.crossings() == 0) return unlink_value(d.component_count());

  std::string key;
  if (options_.memoize) {
    key = diagram_key(d);
    Laurent2 hit;
    if (lookup(key, hit)) return hit;
  }

  Laurent2 value;
  const int x = first_ascending_crossing(d);
  if (x < 0) {
    value = unlink_value(d.component_count());
  } else {
    const Laurent2 switched = recurse(switch_crossing(d, x));
    const Laurent2 smoothed = recurse(smooth_crossing(d, x));
    if (d.sign(x) > 0) {
      // P(L+) = v^2 P(L-) + v z P(L0)
      value = switched.scaled(1, 2, 0) + smoothed.scaled(1, 1, 1);
    } else {
      // P(L-) = v^-2 P(L+) - v^-1 z P(L0)
      value = switched.scaled(1, -2, 0) - smoothed.scaled(1, -1, 1);
    }
  }
  if (options_.memoize) store(key, value);
  return value;
}

bool HomflyEngine::lookup(const std::string& key, Laurent2& out) const {
  std::shared_lock lock(mutex_);
  const auto it = cache_.find(key);
  if (it == cache_.end()) return false;
  out = it->second;
  return true;
}

void HomflyEngine::store(const std::string& key, const Laurent2& value) {
  std::unique_lock lock(mutex_);
  cache_.try_emplace(key, value);
}

std::size_t HomflyEngine::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

void HomflyEngine::clear_cache() {
  std::unique_lock lock(mutex_);
  cache_.clear();
}

Laurent2 homfly(const Diagram& d) {
  static HomflyEngine engine;
  return engine.compute(d);
}

}  // namespace knotfert
