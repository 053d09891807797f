#pragma once

#include <string>

#include "knotfert/knotbase.hpp"
#include "knotfert/laurent.hpp"
#include "oracles/skein_oracle.hpp"

#ifndef KNOTFERT_SOURCE_DIR
#define KNOTFERT_SOURCE_DIR "."
#endif

namespace testutil {

inline std::string source_path(const std::string& rel) { return std::string(KNOTFERT_SOURCE_DIR) + "/" + rel; }

inline oracle::Poly to_poly(const knotfert::Laurent2& p) {
  oracle::Poly out;
  for (const auto& t : p.terms()) out[{t.v, t.z}] = t.coeff;
  return out;
}

// Loaded once per test binary.
inline const knotfert::KnotBase& table() {
  static const knotfert::KnotBase base = knotfert::KnotBase::load(source_path("data/knots9.tbl"));
  return base;
}

}  // namespace testutil
