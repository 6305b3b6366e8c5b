#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zsc/common/parallel.hpp"
#include "zsc/mesh_core/mesh.hpp"
#include "zsc/oracle/backend.hpp"
#include "zsc/view_render/camera.hpp"

namespace zsc {

struct ClassProposals {
  std::string shapeId;
  std::vector<std::pair<int, std::string>> proposals;  // (view index, caption), view order
};

enum class LabelMethod { Unified, Voting };
std::string_view to_string(LabelMethod method);

/// Lowercase, trimmed, no leading article or trailing punctuation.
struct ClassLabel {
  std::string label;
  LabelMethod method = LabelMethod::Unified;
  bool operator==(const ClassLabel&) const = default;
};

struct ClassifyOptions {
  int views = 12;
  int imageSize = kDefaultImageSize;
  unsigned threads = default_thread_count();
};

/// The captioning prompt sent with every classification view.
std::string caption_prompt();
/// Unification prompt with ANSWERS_LIST replaced by the proposals as a JSON list.
std::string unification_prompt(const ClassProposals& proposals);

/// Renders classification_viewpoints(views) and captions each. The mesh id
/// is forwarded as the image's shape id. Errors carry the failing view.
ClassProposals propose_classes(const Mesh& mesh, OracleGateway& oracle,
                               const ClassifyOptions& options = {});

/// One chat call, skipped when only one proposal exists or all proposals
/// normalize to the same label. A reply without letters is a Validation error.
ClassLabel unify_classes(const ClassProposals& proposals, OracleGateway& oracle);

/// Most frequent normalized proposal; ties go to the lexicographically
/// smallest label.
ClassLabel majority_vote(const ClassProposals& proposals);

}  // namespace zsc
