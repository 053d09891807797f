#pragma once

// JSON and CSV renderings of module results. Every top-level report carries a
// "meta" object naming the table and the ceilings it was computed with.

#include <string>

#include <json.hpp>

#include "knotfert/fertility.hpp"
#include "knotfert/knotbase.hpp"

namespace knotfert {

inline constexpr const char* kReportSchema = "knotfert-report/1";

struct RunMeta {
  std::string command;
  std::string table;
  int table_version = 1;
  int complete_through = -1;
  int homfly_ceiling = 16;
  int fertility_ceiling = 7;
  int threads = 1;
  bool allow_reducible = true;
  bool quotient_reflection = true;
  bool include_unknot_target = true;
};

RunMeta make_meta(const std::string& command, const KnotBase& base, const HomflyOptions& homfly,
                  const FertilityOptions& fertility);

nlohmann::ordered_json to_json(const RunMeta& meta);

// Shadow code with the orientation marks, e.g. "a+ b- c+ a- b+ c-".
std::string shadow_code(const Shadow& shadow);

nlohmann::ordered_json to_json(const ShadowStats& s);
nlohmann::ordered_json to_json(const DiagramStats& s);
nlohmann::ordered_json to_json(const DegreeBounds& b);
nlohmann::ordered_json to_json(const InvariantBounds& b);

nlohmann::ordered_json identify_json(const std::string& input, const Identification& id,
                                     const KnotBase& base);
nlohmann::ordered_json to_json(const SupportCensus& census, const KnotBase& base);
nlohmann::ordered_json to_json(const Witness& w);
nlohmann::ordered_json to_json(const FertilityReport& r);
nlohmann::ordered_json to_json(const MinimalDiagram& d);
nlohmann::ordered_json to_json(const VariationStats& v);
nlohmann::ordered_json to_json(const BoundsReport& r);

// Header plus one row per entry: knot,name,left,right,holds,tight,relation.
std::string bounds_csv_header();
std::string to_csv_rows(const BoundsReport& r);

std::string csv_escape(const std::string& field);

}  // namespace knotfert
