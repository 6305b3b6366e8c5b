#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zsc/oracle/backend.hpp"
#include "zsc/zs_classify/classify.hpp"

namespace zsc {

/// Ordered, distinct, lowercase region names of one shape.
struct RegionSet {
  std::string className;
  std::vector<std::string> regions;

  /// Position of `name` (case-insensitive, trimmed) or -1.
  int index_of(std::string_view name) const;
  std::size_t size() const { return regions.size(); }
  /// Throws Error{Validation}: empty set, empty name or duplicate.
  void validate() const;
  bool operator==(const RegionSet&) const = default;
};

/// Relation R1 <-> R2 as distinct (source, target) pairs in first-seen order.
struct SemanticMapping {
  std::vector<std::pair<std::string, std::string>> pairs;

  bool contains(std::string_view source, std::string_view target) const;
  /// Throws Error{Validation} naming the first pair whose source is not in
  /// `source` or target is not in `target`.
  void validate(const RegionSet& source, const RegionSet& target) const;
  bool operator==(const SemanticMapping&) const = default;
};

SemanticMapping identity_mapping(const RegionSet& regions);

struct RegionProposal {
  RegionSet regions1, regions2;
  SemanticMapping mapping;
  bool operator==(const RegionProposal&) const = default;
};

/// Extracts the first balanced {...} block of `text` and reads
/// {"regions_1": [...], "regions_2": [...], "mapping": [[src, tgt], ...]}.
/// Missing block, bad JSON or wrong shape: Error{Parse}. Duplicate or
/// undeclared names: Error{Validation}.
RegionProposal parse_mapping_response(std::string_view text);

/// First balanced-brace substring, honouring JSON string quoting; empty if none.
std::string_view first_json_object(std::string_view text);

std::string regions_prompt(const std::string& class1, const std::string& class2);

/// One chat call (plus one repair retry when the reply does not parse or
/// validate). For equal classes the target set is the source set and the
/// mapping is the identity.
RegionProposal generate_regions_and_mapping(const ClassLabel& class1, const ClassLabel& class2,
                                            OracleGateway& oracle);

nlohmann::json to_json(const RegionProposal& proposal);
RegionProposal region_proposal_from_json(const nlohmann::json& j);

}  // namespace zsc
