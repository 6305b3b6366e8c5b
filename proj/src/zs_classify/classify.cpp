#include "zsc/zs_classify/classify.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <set>

#include "zsc/common/assets.hpp"
#include "zsc/common/error.hpp"
#include "zsc/common/text.hpp"
#include "zsc/view_render/raster.hpp"

namespace zsc {
namespace {

void require_proposals(const ClassProposals& p) {
  if (p.proposals.empty()) fail(ErrorKind::Input, "no class proposals for shape '" + p.shapeId + "'");
}

}  // namespace

std::string_view to_string(LabelMethod method) {
  return method == LabelMethod::Unified ? "unified" : "voting";
}

std::string caption_prompt() { return trim(asset("prompts/caption.txt")); }

std::string unification_prompt(const ClassProposals& proposals) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [view, text] : proposals.proposals) list.push_back(trim(text));
  return replace_all(trim(asset("prompts/unify.txt")), "ANSWERS_LIST", list.dump());
}

ClassProposals propose_classes(const Mesh& mesh, OracleGateway& oracle, const ClassifyOptions& options) {
  const auto cameras = classification_viewpoints(options.views, options.imageSize);
  const std::string prompt = caption_prompt();
  ClassProposals out{mesh.id, {}};
  out.proposals.resize(cameras.size());
  parallel_for(cameras.size(), options.threads, [&](std::size_t i) {
    try {
      const RenderedView view = render(mesh, cameras[i]);
      out.proposals[i] = {static_cast<int>(i), oracle.caption(image_ref(view, mesh.id), prompt)};
    } catch (const Error& e) {
      fail(e.kind(), "classification view " + std::to_string(i) + ": " + e.what());
    }
  });
  return out;
}

ClassLabel unify_classes(const ClassProposals& proposals, OracleGateway& oracle) {
  require_proposals(proposals);
  std::set<std::string> distinct;
  std::vector<std::string> raw;
  for (const auto& [view, text] : proposals.proposals) {
    distinct.insert(normalize_label(text));
    raw.push_back(text);
  }
  if (distinct.size() == 1 && has_alpha(*distinct.begin())) return {*distinct.begin(), LabelMethod::Unified};

  ChatRequest request;
  request.messages = {{"user", unification_prompt(proposals)}};
  request.intent = {ChatIntent::Kind::UnifyClasses, raw, "", ""};
  const std::string reply = oracle.chat(request);
  std::string firstLine;
  for (std::size_t start = 0; start <= reply.size();) {
    const std::size_t end = std::min(reply.find('\n', start), reply.size());
    firstLine = trim(reply.substr(start, end - start));
    if (!firstLine.empty()) break;
    start = end + 1;
  }
  const std::size_t lead = firstLine.find_first_not_of("\"'*`");
  const std::string label = lead == std::string::npos ? "" : normalize_label(firstLine.substr(lead));
  if (!has_alpha(label))
    fail(ErrorKind::Validation, "class unification for '" + proposals.shapeId +
                                    "' returned no usable label: '" + reply + "'");
  return {label, LabelMethod::Unified};
}

ClassLabel majority_vote(const ClassProposals& proposals) {
  require_proposals(proposals);
  std::map<std::string, int> counts;
  for (const auto& [view, text] : proposals.proposals) ++counts[normalize_label(text)];
  std::string best;
  int bestCount = 0;
  for (const auto& [label, count] : counts)
    if (count > bestCount) {
      best = label;
      bestCount = count;
    }
  return {best, LabelMethod::Voting};
}

}  // namespace zsc
