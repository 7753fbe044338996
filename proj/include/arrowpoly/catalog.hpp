#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arrowpoly/codec.hpp"

namespace arrowpoly {

enum class EntryStatus {
  Required,    // unambiguous diagrams; must verify exactly
  BestEffort,  // transcribed from published figures
};

struct CatalogEntry {
  std::string name;
  std::string pd_text;
  std::optional<std::string> expected_unnormalized;  // canonical text
  std::optional<std::string> expected_normalized;
  std::set<int> expected_as_set;
  int expected_vcn_bound = 0;
  EntryStatus status = EntryStatus::Required;
  std::string note;
};

const std::vector<CatalogEntry>& catalog_entries();

const CatalogEntry* find_entry(const std::string& name);

struct VerifyResult {
  std::string name;
  bool pass = false;
  std::vector<std::string> diffs;  // "field: expected ... got ..." lines
  ComputeResult computed;
};

// Recomputes every expected field of the named entry and diffs it against
// the stored values. Throws std::out_of_range for unknown names.
VerifyResult verify_entry(const std::string& name);

}  // namespace arrowpoly
