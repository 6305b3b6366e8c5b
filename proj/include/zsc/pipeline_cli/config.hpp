#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "zsc/fmap_dense/fmap.hpp"
#include "zsc/oracle/synthetic.hpp"

namespace zsc {

enum class OracleMode { Http, Replay, Synthetic };
std::string_view to_string(OracleMode mode);
OracleMode parse_oracle_mode(const std::string& text);

/// Every knob of a run. Keys in JSON match the field names.
struct PipelineConfig {
  OracleMode oracleMode = OracleMode::Synthetic;
  std::string sidecarUrl = "http://127.0.0.1:8080";
  std::string fixtureDir;  // replay and record
  std::string dataset;     // synthetic ground truth (dataset manifest)
  int kClassViews = 12;
  int vSegViews = 180;
  std::vector<double> radii = {2.0, 1.75, 1.5};
  double boxThreshold = kDefaultBoxThreshold;
  int imageSize = kDefaultImageSize;
  int basisK = kDefaultBasisSize;
  int icpIters = 10;
  double commutativityWeight = 1e-2;
  double orthogonalityWeight = 0.5;
  bool weightByScore = true;
  std::uint64_t seed = 0;
  SyntheticNoise noise;  // seed is taken from `seed`
  int httpTimeoutMs = 120'000;
  int httpRetries = 3;
  int httpMaxInFlight = 8;

  /// Throws Error{Input} naming the offending field.
  void validate() const;
};

/// Unknown keys and wrong types are Error{Input}.
PipelineConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PipelineConfig& config);
PipelineConfig load_config(const std::string& path);

/// sha256 of the sorted compact dump of `to_json(config)`.
std::string config_hash(const PipelineConfig& config);

}  // namespace zsc
