#include "zsc/region_semantics/regions.hpp"

#include <set>

#include "zsc/common/assets.hpp"
#include "zsc/common/error.hpp"
#include "zsc/common/text.hpp"

namespace zsc {

using nlohmann::json;

namespace {

std::string clean(std::string_view name) { return to_lower(trim(name)); }

std::vector<std::string> name_list(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    fail(ErrorKind::Parse, std::string("region reply lacks an array '") + key + "'");
  std::vector<std::string> out;
  for (const auto& item : j[key]) {
    if (!item.is_string()) fail(ErrorKind::Parse, std::string("'") + key + "' holds a non-string entry");
    out.push_back(clean(item.get<std::string>()));
  }
  return out;
}

std::string pair_text(const std::pair<std::string, std::string>& p) {
  return "[\"" + p.first + "\", \"" + p.second + "\"]";
}

}  // namespace

int RegionSet::index_of(std::string_view name) const {
  const std::string key = clean(name);
  for (std::size_t i = 0; i < regions.size(); ++i)
    if (regions[i] == key) return static_cast<int>(i);
  return -1;
}

void RegionSet::validate() const {
  if (regions.empty()) fail(ErrorKind::Validation, "region set for '" + className + "' is empty");
  std::set<std::string> seen;
  for (const auto& r : regions) {
    if (r.empty()) fail(ErrorKind::Validation, "region set for '" + className + "' has an empty name");
    if (r != clean(r)) fail(ErrorKind::Validation, "region name '" + r + "' is not lowercase and trimmed");
    if (!seen.insert(r).second)
      fail(ErrorKind::Validation, "region '" + r + "' is listed twice for '" + className + "'");
  }
}

bool SemanticMapping::contains(std::string_view source, std::string_view target) const {
  const std::string s = clean(source), t = clean(target);
  for (const auto& p : pairs)
    if (p.first == s && p.second == t) return true;
  return false;
}

void SemanticMapping::validate(const RegionSet& source, const RegionSet& target) const {
  for (const auto& p : pairs) {
    if (source.index_of(p.first) < 0)
      fail(ErrorKind::Validation, "mapping pair " + pair_text(p) + " uses source region '" + p.first +
                                      "' missing from regions_1");
    if (target.index_of(p.second) < 0)
      fail(ErrorKind::Validation, "mapping pair " + pair_text(p) + " uses target region '" + p.second +
                                      "' missing from regions_2");
  }
}

SemanticMapping identity_mapping(const RegionSet& regions) {
  SemanticMapping m;
  for (const auto& r : regions.regions) m.pairs.emplace_back(r, r);
  return m;
}

std::string_view first_json_object(std::string_view text) {
  const std::size_t start = text.find('{');
  if (start == std::string_view::npos) return {};
  int depth = 0;
  bool inString = false, escaped = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (inString) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') inString = false;
      continue;
    }
    if (c == '"') inString = true;
    else if (c == '{') ++depth;
    else if (c == '}' && --depth == 0) return text.substr(start, i - start + 1);
  }
  return {};
}

RegionProposal parse_mapping_response(std::string_view text) {
  const std::string_view block = first_json_object(text);
  if (block.empty()) fail(ErrorKind::Parse, "region reply contains no JSON object");
  json j;
  try {
    j = json::parse(block);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("region reply is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::Parse, "region reply is not a JSON object");

  RegionProposal out;
  out.regions1.regions = name_list(j, "regions_1");
  out.regions2.regions = name_list(j, "regions_2");
  if (!j.contains("mapping") || !j["mapping"].is_array())
    fail(ErrorKind::Parse, "region reply lacks an array 'mapping'");
  for (const auto& item : j["mapping"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_string())
      fail(ErrorKind::Parse, "mapping entries must be [source, target] string pairs, got " + item.dump());
    std::pair<std::string, std::string> p{clean(item[0].get<std::string>()), clean(item[1].get<std::string>())};
    if (!out.mapping.contains(p.first, p.second)) out.mapping.pairs.push_back(std::move(p));
  }
  out.regions1.validate();
  out.regions2.validate();
  out.mapping.validate(out.regions1, out.regions2);
  return out;
}

std::string regions_prompt(const std::string& class1, const std::string& class2) {
  std::string prompt = trim(asset("prompts/regions.txt"));
  prompt = replace_all(std::move(prompt), "SHAPE_SRC_LABEL", class1);
  return replace_all(std::move(prompt), "SHAPE_TRGT_LABEL", class2);
}

RegionProposal generate_regions_and_mapping(const ClassLabel& class1, const ClassLabel& class2,
                                            OracleGateway& oracle) {
  if (trim(class1.label).empty() || trim(class2.label).empty())
    fail(ErrorKind::Input, "region generation needs two non-empty class labels");
  ChatRequest request;
  request.messages = {{"user", regions_prompt(class1.label, class2.label)}};
  request.intent = {ChatIntent::Kind::RegionMapping, {}, class1.label, class2.label};

  RegionProposal out;
  const std::string first = oracle.chat(request);
  try {
    out = parse_mapping_response(first);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Parse && e.kind() != ErrorKind::Validation) throw;
    request.messages.push_back({"assistant", first});
    request.messages.push_back({"user", trim(asset("prompts/repair.txt"))});
    try {
      out = parse_mapping_response(oracle.chat(request));
    } catch (const Error& retry) {
      if (retry.kind() != ErrorKind::Parse && retry.kind() != ErrorKind::Validation) throw;
      fail(retry.kind(), "region reply for '" + class1.label + "' / '" + class2.label +
                             "' unusable after one repair attempt: " + retry.what());
    }
  }
  out.regions1.className = class1.label;
  out.regions2.className = class2.label;
  if (class1.label == class2.label) {
    out.regions2.regions = out.regions1.regions;
    out.mapping = identity_mapping(out.regions1);
  }
  return out;
}

json to_json(const RegionProposal& p) {
  json mapping = json::array();
  for (const auto& [s, t] : p.mapping.pairs) mapping.push_back({s, t});
  return {{"class_1", p.regions1.className},
          {"class_2", p.regions2.className},
          {"regions_1", p.regions1.regions},
          {"regions_2", p.regions2.regions},
          {"mapping", mapping}};
}

RegionProposal region_proposal_from_json(const json& j) {
  RegionProposal p = parse_mapping_response(j.dump());
  p.regions1.className = j.value("class_1", std::string());
  p.regions2.className = j.value("class_2", std::string());
  return p;
}

}  // namespace zsc
