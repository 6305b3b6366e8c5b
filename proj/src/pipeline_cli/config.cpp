#include "zsc/pipeline_cli/config.hpp"

#include <cmath>

#include "zsc/common/error.hpp"
#include "zsc/common/hash.hpp"
#include "zsc/common/text.hpp"

namespace zsc {

using nlohmann::json;

std::string_view to_string(OracleMode mode) {
  switch (mode) {
    case OracleMode::Http: return "http";
    case OracleMode::Replay: return "replay";
    case OracleMode::Synthetic: return "synthetic";
  }
  return "synthetic";
}

OracleMode parse_oracle_mode(const std::string& text) {
  const std::string t = to_lower(trim(text));
  if (t == "http") return OracleMode::Http;
  if (t == "replay") return OracleMode::Replay;
  if (t == "synthetic") return OracleMode::Synthetic;
  fail(ErrorKind::Input, "oracle mode must be http, replay or synthetic, got '" + text + "'");
}

void PipelineConfig::validate() const {
  auto positive = [](int v, const char* name) {
    if (v <= 0) fail(ErrorKind::Input, std::string("config field '") + name + "' must be positive");
  };
  positive(kClassViews, "kClassViews");
  positive(vSegViews, "vSegViews");
  positive(basisK, "basisK");
  positive(httpTimeoutMs, "httpTimeoutMs");
  positive(httpMaxInFlight, "httpMaxInFlight");
  if (icpIters < 0) fail(ErrorKind::Input, "config field 'icpIters' must be >= 0");
  if (httpRetries < 0) fail(ErrorKind::Input, "config field 'httpRetries' must be >= 0");
  if (imageSize < 16) fail(ErrorKind::Input, "config field 'imageSize' must be at least 16");
  if (radii.empty()) fail(ErrorKind::Input, "config field 'radii' must not be empty");
  for (double r : radii)
    if (!(r > 0)) fail(ErrorKind::Input, "config field 'radii' must hold positive values");
  if (vSegViews % static_cast<int>(radii.size()) != 0)
    fail(ErrorKind::Input, "config field 'vSegViews' (" + std::to_string(vSegViews) +
                               ") must be divisible by the number of radii (" + std::to_string(radii.size()) + ")");
  if (!(boxThreshold >= 0) || !std::isfinite(boxThreshold))
    fail(ErrorKind::Input, "config field 'boxThreshold' must be a finite non-negative number");
  if (commutativityWeight < 0 || orthogonalityWeight < 0 || orthogonalityWeight > 1)
    fail(ErrorKind::Input, "config weights must satisfy commutativityWeight >= 0 and 0 <= orthogonalityWeight <= 1");
  if (noise.boxJitter < 0 || noise.maskDropout < 0 || noise.maskDropout > 1 || noise.minConfidence < 0 ||
      noise.minConfidence > 1)
    fail(ErrorKind::Input, "config field 'noise' is out of range");
}

json to_json(const PipelineConfig& c) {
  return {{"oracleMode", to_string(c.oracleMode)},
          {"sidecarUrl", c.sidecarUrl},
          {"fixtureDir", c.fixtureDir},
          {"dataset", c.dataset},
          {"kClassViews", c.kClassViews},
          {"vSegViews", c.vSegViews},
          {"radii", c.radii},
          {"boxThreshold", c.boxThreshold},
          {"imageSize", c.imageSize},
          {"basisK", c.basisK},
          {"icpIters", c.icpIters},
          {"commutativityWeight", c.commutativityWeight},
          {"orthogonalityWeight", c.orthogonalityWeight},
          {"weightByScore", c.weightByScore},
          {"seed", c.seed},
          {"noise",
           {{"boxJitter", c.noise.boxJitter},
            {"maskDropout", c.noise.maskDropout},
            {"minConfidence", c.noise.minConfidence}}},
          {"httpTimeoutMs", c.httpTimeoutMs},
          {"httpRetries", c.httpRetries},
          {"httpMaxInFlight", c.httpMaxInFlight}};
}

PipelineConfig config_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::Input, "config must be a JSON object");
  PipelineConfig c;
  const json defaults = to_json(c);
  for (const auto& [key, value] : j.items()) {
    if (!defaults.contains(key)) fail(ErrorKind::Input, "unknown config field '" + key + "'");
    const json& d = defaults[key];
    const bool numeric = d.is_number() && value.is_number();
    if (d.type() != value.type() && !numeric)
      fail(ErrorKind::Input, "config field '" + key + "' must be of type " + d.type_name() + ", got " +
                                 value.type_name());
  }
  try {
    if (j.contains("oracleMode")) c.oracleMode = parse_oracle_mode(j["oracleMode"]);
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j[key].get<std::remove_reference_t<decltype(field)>>();
    };
    get("sidecarUrl", c.sidecarUrl);
    get("fixtureDir", c.fixtureDir);
    get("dataset", c.dataset);
    get("kClassViews", c.kClassViews);
    get("vSegViews", c.vSegViews);
    get("radii", c.radii);
    get("boxThreshold", c.boxThreshold);
    get("imageSize", c.imageSize);
    get("basisK", c.basisK);
    get("icpIters", c.icpIters);
    get("commutativityWeight", c.commutativityWeight);
    get("orthogonalityWeight", c.orthogonalityWeight);
    get("weightByScore", c.weightByScore);
    get("seed", c.seed);
    get("httpTimeoutMs", c.httpTimeoutMs);
    get("httpRetries", c.httpRetries);
    get("httpMaxInFlight", c.httpMaxInFlight);
    if (j.contains("noise")) {
      const json& n = j["noise"];
      for (const auto& [key, value] : n.items())
        if (!defaults["noise"].contains(key) || !value.is_number())
          fail(ErrorKind::Input, "config field 'noise." + key + "' is unknown or not a number");
      c.noise.boxJitter = n.value("boxJitter", c.noise.boxJitter);
      c.noise.maskDropout = n.value("maskDropout", c.noise.maskDropout);
      c.noise.minConfidence = n.value("minConfidence", c.noise.minConfidence);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::Input, std::string("config: ") + e.what());
  }
  c.noise.seed = c.seed;
  c.validate();
  return c;
}

PipelineConfig load_config(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Input, path + ": malformed config: " + e.what());
  }
  return config_from_json(j);
}

std::string config_hash(const PipelineConfig& config) { return sha256_hex(to_json(config).dump()); }

}  // namespace zsc
