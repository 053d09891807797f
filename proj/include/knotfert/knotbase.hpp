#pragma once

// Prime-knot table with HOMFLY fingerprints, and identification of diagrams
// up to mirror image.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knotfert/diagram.hpp"
#include "knotfert/homfly.hpp"
#include "knotfert/laurent.hpp"

namespace knotfert {

// The unordered pair {P, P*}. key orders the two serialized polynomials so
// that a knot and its mirror image share it.
struct Fingerprint {
  Laurent2 p;
  Laurent2 p_mirror;
  std::string key;
  std::uint64_t hash = 0;

  static Fingerprint of(const Laurent2& p);
  bool amphichiral() const { return p == p_mirror; }
  std::string hash_hex() const;
};

// Reference: the HOMFLY polynomial equals the record's; Mirror: it equals the
// record's mirror transform; Ambiguous: the two coincide.
enum class Chirality : std::int8_t { Reference = 0, Mirror = 1, Ambiguous = 2 };

std::string_view to_string(Chirality c) noexcept;
Chirality flipped(Chirality c) noexcept;

struct KnotRecord {
  std::string name;
  int crossings = 0;
  std::string code;  // as written in the table
  Diagram diagram;
  Laurent2 homfly;
  Fingerprint fingerprint;
  std::optional<int> genus;
  std::optional<int> canonical_genus;
  std::optional<int> braid_index;
  std::optional<int> twist;
  std::optional<bool> alternating;
};

struct Identification {
  Fingerprint fingerprint;
  std::vector<int> matches;  // record indices, table order
  Chirality chirality = Chirality::Ambiguous;  // meaningful for one match
};

class KnotBase {
 public:
  // Header line: "# knotfert-table v<version> complete_through=<c>".
  // Records: "name crossings code [key=value ...]" with keys b, g, gc, alt,
  // twist; the code is a PD code or "<shadow code> | <bits>" without spaces
  // inside the PD list. Throws Error(ParseError) naming the line, or
  // Error(DuplicateName).
  static KnotBase parse(std::string_view text, const std::string& source = "<table>",
                        HomflyEngine* engine = nullptr);
  static KnotBase load(const std::string& path, HomflyEngine* engine = nullptr);

  const std::string& source() const noexcept { return source_; }
  int version() const noexcept { return version_; }
  // Every prime knot with at most this many crossings is present.
  int complete_through() const noexcept { return complete_through_; }

  const std::vector<KnotRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  const KnotRecord& record(int index) const { return records_.at(static_cast<std::size_t>(index)); }

  // -1 when absent.
  int index_of(std::string_view name) const;
  // Throws Error(UnknownKnot).
  const KnotRecord& at(std::string_view name) const;

  // Record indices with this fingerprint, in table order.
  std::vector<int> lookup(const Fingerprint& fp) const;

  // Groups of two or more records sharing a fingerprint.
  const std::vector<std::vector<int>>& collisions() const noexcept { return collisions_; }

  Identification identify_polynomial(const Laurent2& p) const;

  // Throws Error(NotAKnot) or Error(ResourceLimit).
  Identification identify(const Diagram& d, HomflyEngine& engine) const;
  Identification identify(const Diagram& d) const;

  std::vector<std::string> names(const std::vector<int>& indices) const;

 private:
  std::string source_;
  int version_ = 1;
  int complete_through_ = -1;
  std::vector<KnotRecord> records_;
  std::map<std::string, int, std::less<>> by_name_;
  std::map<std::string, std::vector<int>, std::less<>> by_fingerprint_;
  std::vector<std::vector<int>> collisions_;
};

}  // namespace knotfert
