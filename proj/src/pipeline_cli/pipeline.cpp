#include "zsc/pipeline_cli/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "zsc/common/error.hpp"
#include "zsc/common/hash.hpp"
#include "zsc/common/text.hpp"
#include "zsc/eval_bench/metrics.hpp"
#include "zsc/oracle/http.hpp"
#include "zsc/oracle/replay.hpp"
#include "zsc/oracle/synthetic.hpp"
#include "zsc/region_semantics/regions.hpp"
#include "zsc/sam3d_segment/sam3d.hpp"
#include "zsc/zs_classify/classify.hpp"

namespace zsc {

namespace fs = std::filesystem;
using nlohmann::json;

void write_json(const fs::path& path, const json& j, bool pretty) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_text_file(path.string(), (pretty ? j.dump(2) : j.dump()) + "\n");
}

json read_json(const fs::path& path) {
  try {
    return json::parse(read_text_file(path.string()));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Schema, path.string() + ": malformed JSON: " + e.what());
  }
}

std::shared_ptr<OracleBackend> make_backend(const PipelineConfig& config) {
  switch (config.oracleMode) {
    case OracleMode::Synthetic: {
      if (config.dataset.empty())
        fail(ErrorKind::Input, "synthetic mode needs 'dataset' (a manifest with the ground truth)");
      SyntheticNoise noise = config.noise;
      noise.seed = config.seed;
      return std::make_shared<SyntheticOracle>(synthetic_knowledge(load_dataset(config.dataset)), noise);
    }
    case OracleMode::Replay:
      if (config.fixtureDir.empty()) fail(ErrorKind::Input, "replay mode needs 'fixtureDir'");
      if (!fs::is_directory(config.fixtureDir))
        spdlog::warn("fixture directory '{}' does not exist; every request will miss", config.fixtureDir);
      return std::make_shared<ReplayOracle>(std::make_shared<FixtureStore>(config.fixtureDir));
    case OracleMode::Http: {
      HttpOptions opts;
      opts.baseUrl = config.sidecarUrl;
      opts.timeout = std::chrono::milliseconds(config.httpTimeoutMs);
      opts.retries = config.httpRetries;
      opts.maxInFlight = config.httpMaxInFlight;
      auto http = std::make_shared<HttpOracle>(opts);
      const SidecarHealth health = http->health();
      if (!health.reachable)
        fail(ErrorKind::BackendUnavailable, "sidecar at " + config.sidecarUrl + " is not healthy: " + health.detail);
      spdlog::info("sidecar at {} healthy ({})", config.sidecarUrl, health.detail);
      return http;
    }
  }
  fail(ErrorKind::Invariant, "unhandled oracle mode");
}

RunManifest::RunManifest(fs::path dir, std::string command, const PipelineConfig& config, bool timings)
    : dir_(std::move(dir)), timings_(timings) {
  fs::create_directories(dir_);
  doc_ = {{"command", command},
          {"config", to_json(config)},
          {"configHash", config_hash(config)},
          {"inputs", json::object()},
          {"stages", json::array()},
          {"status", "running"}};
  write();
}

void RunManifest::input(const std::string& role, const fs::path& path) {
  const std::string bytes = read_text_file(path.string());
  doc_["inputs"][role] = {{"path", path.generic_string()}, {"sha256", sha256_hex(bytes)}};
  write();
}

void RunManifest::set(const std::string& key, json value) {
  doc_[key] = std::move(value);
  write();
}

void RunManifest::run_stage(const std::string& name, const std::function<void()>& body) {
  json entry = {{"name", name}, {"status", "running"}};
  const auto start = std::chrono::steady_clock::now();
  auto stamp = [&] {
    if (timings_)
      entry["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  spdlog::info("stage {}", name);
  try {
    body();
  } catch (const Error& e) {
    entry["status"] = "failed";
    stamp();
    doc_["stages"].push_back(entry);
    doc_["status"] = "failed";
    doc_["failedStage"] = name;
    doc_["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    write();
    throw;
  } catch (const std::exception& e) {
    entry["status"] = "failed";
    stamp();
    doc_["stages"].push_back(entry);
    doc_["status"] = "failed";
    doc_["failedStage"] = name;
    doc_["error"] = {{"kind", "internal"}, {"message", e.what()}};
    write();
    throw;
  }
  entry["status"] = "ok";
  stamp();
  doc_["stages"].push_back(entry);
  write();
}

void RunManifest::skip_stage(const std::string& name) {
  doc_["stages"].push_back({{"name", name}, {"status", "skipped"}});
  write();
}

void RunManifest::finish() {
  doc_["status"] = "ok";
  write();
}

void RunManifest::write() const { write_json(dir_ / "MANIFEST.json", doc_); }

Mesh load_pipeline_mesh(const fs::path& path) {
  LoadReport report;
  Mesh raw = load_mesh(path, &report);
  if (report.degenerateDropped > 0)
    spdlog::warn("{}: dropped {} degenerate faces; face labels refer to the cleaned mesh", path.string(),
                 report.degenerateDropped);
  Mesh mesh = normalize_unit_sphere(raw);
  mesh.id = raw.id;
  return mesh;
}

namespace {

json class_json(const ClassProposals& p, const ClassLabel& label) {
  json proposals = json::array();
  for (const auto& [view, text] : p.proposals) proposals.push_back({{"view", view}, {"text", text}});
  return {{"shape", p.shapeId}, {"label", label.label}, {"method", to_string(label.method)}, {"proposals", proposals}};
}

ClassLabel classify_shape(const Mesh& mesh, OracleGateway& oracle, const PipelineConfig& config, unsigned threads,
                          bool voting, json* report) {
  ClassifyOptions opts;
  opts.views = config.kClassViews;
  opts.imageSize = config.imageSize;
  opts.threads = threads;
  const ClassProposals proposals = propose_classes(mesh, oracle, opts);
  const ClassLabel label = voting ? majority_vote(proposals) : unify_classes(proposals, oracle);
  if (report) *report = class_json(proposals, label);
  return label;
}

SegmentOptions segment_options(const PipelineConfig& config, unsigned threads) {
  SegmentOptions opts;
  opts.views = config.vSegViews;
  opts.radii = config.radii;
  opts.imageSize = config.imageSize;
  opts.boxThreshold = config.boxThreshold;
  opts.weightByScore = config.weightByScore;
  opts.threads = threads;
  return opts;
}

json segmentation_report(const Segmentation& s) {
  json j = segmentation_json(s);
  json rows = json::array();
  for (Eigen::Index f = 0; f < s.scores.scores.rows(); ++f) {
    json row = json::array();
    for (Eigen::Index r = 0; r < s.scores.scores.cols(); ++r) row.push_back(s.scores.scores(f, r));
    rows.push_back(row);
  }
  j["scores"] = rows;
  return j;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

VertexColors region_colors(const Mesh& mesh, const VertexLabels& labels) {
  VertexColors out(mesh.num_vertices());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = region_color(labels[v]);
  return out;
}

VertexColors position_colors(const Mesh& mesh) {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity()), hi = -lo;
  for (const Vec3& p : mesh.vertices) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Vec3 extent = (hi - lo).cwiseMax(Vec3::Constant(1e-12));
  VertexColors out;
  for (const Vec3& p : mesh.vertices) out.push_back((p - lo).cwiseQuotient(extent));
  return out;
}

void require_output_dir(const fs::path& dir) {
  if (dir.empty()) fail(ErrorKind::Input, "an output directory is required");
}

}  // namespace

void cmd_classify(const fs::path& meshPath, const PipelineConfig& config, std::shared_ptr<OracleBackend> backend,
                  const RunOptions& run, bool baselineVoting) {
  config.validate();
  require_output_dir(run.output);
  RunManifest manifest(run.output, "classify", config, run.timings);
  manifest.input("mesh", meshPath);
  OracleGateway oracle(std::move(backend));
  manifest.run_stage("classify", [&] {
    const Mesh mesh = load_pipeline_mesh(meshPath);
    json report;
    classify_shape(mesh, oracle, config, run.threads, baselineVoting, &report);
    write_json(run.output / "classify.json", report);
  });
  manifest.finish();
}

void cmd_regions(const std::string& class1, const std::string& class2, const PipelineConfig& config,
                 std::shared_ptr<OracleBackend> backend, const RunOptions& run) {
  config.validate();
  require_output_dir(run.output);
  RunManifest manifest(run.output, "regions", config, run.timings);
  manifest.set("classes", {class1, class2});
  OracleGateway oracle(std::move(backend));
  manifest.run_stage("regions", [&] {
    const RegionProposal p = generate_regions_and_mapping({normalize_label(class1)}, {normalize_label(class2)}, oracle);
    write_json(run.output / "regions.json", to_json(p));
  });
  manifest.finish();
}

void cmd_segment(const fs::path& meshPath, const std::vector<std::string>& regions, const PipelineConfig& config,
                 std::shared_ptr<OracleBackend> backend, const RunOptions& run) {
  config.validate();
  require_output_dir(run.output);
  RunManifest manifest(run.output, "segment", config, run.timings);
  manifest.input("mesh", meshPath);
  OracleGateway oracle(std::move(backend));
  manifest.run_stage("segment", [&] {
    const Mesh mesh = load_pipeline_mesh(meshPath);
    RegionSet set{"", {}};
    for (const auto& r : regions) set.regions.push_back(to_lower(trim(r)));
    const Segmentation s = segment(mesh, set, oracle, segment_options(config, run.threads));
    write_json(run.output / "segmentation.json", segmentation_report(s), false);
    save_colored_obj(run.output / "segmentation.obj", mesh, region_colors(mesh, s.vertexLabels));
  });
  manifest.finish();
}

void cmd_match(const fs::path& mesh1Path, const fs::path& mesh2Path, const PipelineConfig& config,
               std::shared_ptr<OracleBackend> backend, const RunOptions& run, const MatchOptions& match) {
  config.validate();
  require_output_dir(run.output);
  RunManifest manifest(run.output, "match", config, run.timings);
  manifest.input("mesh1", mesh1Path);
  manifest.input("mesh2", mesh2Path);
  manifest.set("pairId", match.pairId.empty() ? mesh1Path.stem().string() + "__" + mesh2Path.stem().string()
                                              : match.pairId);
  manifest.set("options", {{"baselineVoting", match.baselineVoting}, {"skipDense", match.skipDense}});
  OracleGateway oracle(std::move(backend));
  const fs::path& out = run.output;

  Mesh mesh1, mesh2;
  ClassLabel label1, label2;
  RegionProposal proposal;
  Segmentation seg1, seg2;
  CoarseCorrespondence coarse;
  DenseResult dense;

  manifest.run_stage("classify", [&] {
    mesh1 = load_pipeline_mesh(mesh1Path);
    mesh2 = load_pipeline_mesh(mesh2Path);
    json r1, r2;
    label1 = classify_shape(mesh1, oracle, config, run.threads, match.baselineVoting, &r1);
    label2 = classify_shape(mesh2, oracle, config, run.threads, match.baselineVoting, &r2);
    write_json(out / "classes.json", {{"shape1", r1}, {"shape2", r2}});
  });
  manifest.run_stage("regions", [&] {
    proposal = generate_regions_and_mapping(label1, label2, oracle);
    write_json(out / "regions.json", to_json(proposal));
  });
  manifest.run_stage("segment", [&] {
    const SegmentOptions opts = segment_options(config, run.threads);
    seg1 = segment(mesh1, proposal.regions1, oracle, opts);
    write_json(out / "segmentation_1.json", segmentation_report(seg1), false);
    seg2 = segment(mesh2, proposal.regions2, oracle, opts);
    write_json(out / "segmentation_2.json", segmentation_report(seg2), false);
  });
  manifest.run_stage("coarse_correspondence", [&] {
    coarse = coarse_correspondence(seg1.faceLabels, seg2.faceLabels, proposal.mapping, proposal.regions1,
                                   proposal.regions2);
    write_json(out / "correspondence.json", correspondence_json(coarse), false);
  });
  if (match.skipDense) {
    manifest.skip_stage("dense_correspondence");
    manifest.skip_stage("export");
    manifest.finish();
    return;
  }
  manifest.run_stage("dense_correspondence", [&] {
    DenseOptions opts;
    opts.basisSize = config.basisK;
    opts.icpIters = config.icpIters;
    opts.weights.commutativity = config.commutativityWeight;
    opts.weights.orthogonality = config.orthogonalityWeight;
    dense = dense_correspondence(mesh1, mesh2, coarse, opts);
    write_json(out / "pointmap.json", {{"direction", "shape2_to_shape1"}, {"map", dense.pointMap}}, false);
    write_json(out / "functional_map.json",
               {{"descriptorCount", dense.descriptorCount},
                {"icpIterations", dense.icpIterations},
                {"initial", matrix_json(dense.initial.C)},
                {"refined", matrix_json(dense.refined.C)},
                {"initialPointMap", dense.initialPointMap}},
               false);
  });
  manifest.run_stage("export", [&] {
    save_colored_obj(out / "segmentation_1.obj", mesh1, region_colors(mesh1, seg1.vertexLabels));
    save_colored_obj(out / "segmentation_2.obj", mesh2, region_colors(mesh2, seg2.vertexLabels));
    const VertexColors source = position_colors(mesh1);
    VertexColors transferred;
    for (int v : dense.pointMap) transferred.push_back(source[v]);
    save_colored_obj(out / "transfer_1.obj", mesh1, source);
    save_colored_obj(out / "transfer_2.obj", mesh2, transferred);
  });
  manifest.finish();
}

std::string text_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (widths.size() <= c) widths.push_back(0);
      widths[c] = std::max(widths[c], row[c].size());
    }
  std::ostringstream out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      std::string cell = rows[r][c];
      if (c + 1 < rows[r].size()) cell.resize(widths[c], ' ');
      line += (c ? "  " : "") + cell;
    }
    out << line << "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t c = 0; c < widths.size(); ++c) total += widths[c] + (c ? 2 : 0);
      out << std::string(total, '-') << "\n";
    }
  }
  return out.str();
}

namespace {

struct RunDir {
  fs::path dir;
  json manifest;
  int views = 0;
};

FaceLabels labels_of(const json& seg, const char* key) { return seg.at(key).get<FaceLabels>(); }

json evaluate_run(const PairAnnotation& a, const RunDir& run, const SynonymTable& classes,
                  const SynonymTable& regions) {
  const json cls = read_json(run.dir / "classes.json");
  const RegionProposal proposal = region_proposal_from_json(read_json(run.dir / "regions.json"));
  const json s1 = read_json(run.dir / "segmentation_1.json"), s2 = read_json(run.dir / "segmentation_2.json");
  const FaceLabels fl1 = labels_of(s1, "faceLabels"), fl2 = labels_of(s2, "faceLabels");
  const VertexLabels vl1 = labels_of(s1, "vertexLabels"), vl2 = labels_of(s2, "vertexLabels");

  const std::string sha1 = sha256_hex(read_text_file(a.shape1Path.string()));
  if (run.manifest["inputs"].contains("mesh1") && run.manifest["inputs"]["mesh1"].value("sha256", "") != sha1)
    spdlog::warn("run {} used a different shape-1 mesh than pair '{}' annotates", run.dir.string(), a.id);

  json r;
  r["id"] = a.id;
  r["views"] = run.views;
  const std::vector<std::string> predicted{cls["shape1"]["label"], cls["shape2"]["label"]};
  r["classAcc"] = zs_class_acc(predicted, {a.gtClass1, a.gtClass2}, classes);
  F1Score f1a = srgen_f1(proposal.regions1.regions, a.gtRegions1.regions, regions);
  F1Score f1b = srgen_f1(proposal.regions2.regions, a.gtRegions2.regions, regions);
  r["regionsF1"] = f1_from_counts(f1a.tp + f1b.tp, f1a.fp + f1b.fp, f1a.fn + f1b.fn).f1;
  r["mappingF1"] = srgen_f1(proposal.mapping, a.gtMapping, regions).f1;
  const SrIou iou = sriou({proposal.regions1, fl1}, {proposal.regions2, fl2}, a, regions);
  r["srIou1"] = iou.i1;
  r["srIou2"] = iou.i2;
  r["srIou"] = iou.i12;
  r["kpLabelAcc"] = kp_label_acc(proposal.regions1, vl1, proposal.regions2, vl2, proposal.mapping, a, regions);
  if (fs::exists(run.dir / "pointmap.json")) {
    const PointMap map = read_json(run.dir / "pointmap.json").at("map").get<PointMap>();
    r["geodesicError"] = avg_geodesic_error(map, a, load_mesh(a.shape1Path));
  } else {
    r["geodesicError"] = nullptr;
  }
  return r;
}

std::string fmt(const json& v) {
  if (v.is_null()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v.get<double>());
  return buf;
}

const char* kMetricKeys[] = {"classAcc", "regionsF1", "mappingF1", "srIou", "kpLabelAcc", "geodesicError"};

json mean_of(const std::vector<json>& rows) {
  json agg;
  for (const char* key : kMetricKeys) {
    double sum = 0;
    int n = 0;
    for (const auto& r : rows)
      if (r.contains(key) && !r[key].is_null()) {
        sum += r[key].get<double>();
        ++n;
      }
    agg[key] = n ? json(sum / n) : json(nullptr);
  }
  agg["pairs"] = rows.size();
  return agg;
}

SynonymTable table_section(const std::string& path, const std::string& section) {
  if (path.empty()) return SynonymTable::builtin(section);
  const json j = read_json(path);
  if (!j.contains(section)) fail(ErrorKind::Input, path + ": no '" + section + "' section");
  return SynonymTable::from_json(j[section]);
}

}  // namespace

std::string cmd_eval(const fs::path& results, const fs::path& manifestPath, const RunOptions& run,
                     const std::string& synonymsPath) {
  require_output_dir(run.output);
  if (!fs::is_directory(results)) fail(ErrorKind::Input, "results directory '" + results.string() + "' not found");
  const auto pairs = load_dataset(manifestPath);
  const SynonymTable classes = table_section(synonymsPath, "classes");
  const SynonymTable regions = table_section(synonymsPath, "regions");

  std::map<std::string, std::vector<RunDir>> runs;
  std::vector<fs::path> manifests;
  for (const auto& entry : fs::recursive_directory_iterator(results))
    if (entry.is_regular_file() && entry.path().filename() == "MANIFEST.json") manifests.push_back(entry.path());
  std::sort(manifests.begin(), manifests.end());
  for (const auto& path : manifests) {
    json m = read_json(path);
    if (m.value("command", "") != "match" || !m.contains("pairId")) continue;
    RunDir r{path.parent_path(), m, m["config"].value("vSegViews", 0)};
    runs[m["pairId"].get<std::string>()].push_back(std::move(r));
  }

  json perPair = json::array(), skipped = json::array();
  std::vector<json> primary;
  std::map<int, std::vector<json>> byViews;
  for (const auto& a : pairs) {
    auto it = runs.find(a.id);
    std::vector<const RunDir*> ok;
    if (it != runs.end())
      for (const auto& r : it->second)
        if (r.manifest.value("status", "") == "ok") ok.push_back(&r);
    if (ok.empty()) {
      skipped.push_back({{"id", a.id}, {"reason", it == runs.end() ? "no run" : "no successful run"}});
      continue;
    }
    // the densest view sampling is the headline result; every run feeds the sweep
    std::stable_sort(ok.begin(), ok.end(), [](const RunDir* x, const RunDir* y) { return x->views > y->views; });
    std::set<int> seen;
    for (const RunDir* r : ok) {
      if (!seen.insert(r->views).second) continue;
      json row = evaluate_run(a, *r, classes, regions);
      byViews[r->views].push_back(row);
      if (r == ok.front()) {
        primary.push_back(row);
        perPair.push_back(row);
      }
    }
  }

  json report = {{"pairs", perPair}, {"aggregate", mean_of(primary)}, {"skipped", skipped}};
  if (byViews.size() > 1) {
    json sweep = json::array();
    for (const auto& [v, rows] : byViews) {
      json row = mean_of(rows);
      row["views"] = v;
      sweep.push_back(row);
    }
    report["viewSweep"] = sweep;
  }

  std::vector<std::vector<std::string>> table{
      {"pair", "views", "ZSClassAcc", "SRGen-F1", "Map-F1", "SRIoU", "KPLabelAcc", "GeoErr"}};
  auto add_row = [&](const std::string& name, const json& r, const std::string& views) {
    std::vector<std::string> row{name, views};
    for (const char* key : kMetricKeys) row.push_back(fmt(r[key]));
    table.push_back(row);
  };
  for (const auto& r : perPair) add_row(r["id"], r, std::to_string(r["views"].get<int>()));
  add_row("mean", report["aggregate"], "");
  std::string text = text_table(table);
  if (!skipped.empty()) {
    text += "\nskipped:";
    for (const auto& s : skipped) text += " " + s["id"].get<std::string>() + " (" + s["reason"].get<std::string>() + ")";
    text += "\n";
  }
  if (report.contains("viewSweep")) {
    std::vector<std::vector<std::string>> sweep{{"views", "pairs", "SRIoU", "KPLabelAcc", "GeoErr"}};
    for (const auto& r : report["viewSweep"])
      sweep.push_back({std::to_string(r["views"].get<int>()), std::to_string(r["pairs"].get<int>()), fmt(r["srIou"]),
                       fmt(r["kpLabelAcc"]), fmt(r["geodesicError"])});
    text += "\n" + text_table(sweep);
  }
  write_json(run.output / "report.json", report);
  write_text_file((run.output / "report.txt").string(), text);
  return text;
}

std::vector<PairEntry> read_pair_list(const fs::path& path) {
  const std::string text = read_text_file(path.string());
  const fs::path base = path.parent_path();
  std::vector<PairEntry> out;
  const std::string head = trim(text);
  if (!head.empty() && head.front() == '{') {
    const json j = read_json(path);
    if (!j.contains("pairs") || !j["pairs"].is_array()) fail(ErrorKind::Schema, path.string() + ": needs 'pairs'");
    for (const auto& p : j["pairs"]) {
      if (!p.contains("shape1") || !p.contains("shape2"))
        fail(ErrorKind::Schema, path.string() + ": every pair needs shape1 and shape2");
      PairEntry e{p.value("id", ""), base / p["shape1"].get<std::string>(), base / p["shape2"].get<std::string>()};
      if (e.id.empty()) e.id = e.shape1.stem().string() + "__" + e.shape2.stem().string();
      out.push_back(std::move(e));
    }
  } else {
    std::istringstream lines(text);
    std::string line;
    int number = 0;
    while (std::getline(lines, line)) {
      ++number;
      const std::string t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      std::istringstream fields(t);
      std::string a, b, extra;
      if (!(fields >> a >> b) || (fields >> extra))
        fail(ErrorKind::Input, path.string() + ":" + std::to_string(number) + ": expected two mesh paths");
      PairEntry e{"", base / a, base / b};
      e.id = e.shape1.stem().string() + "__" + e.shape2.stem().string();
      out.push_back(std::move(e));
    }
  }
  if (out.empty()) fail(ErrorKind::Input, path.string() + ": no pairs listed");
  return out;
}

void cmd_record(const fs::path& pairList, const PipelineConfig& config, std::shared_ptr<OracleBackend> inner,
                const RunOptions& run, bool force) {
  config.validate();
  if (config.fixtureDir.empty()) fail(ErrorKind::Input, "record needs 'fixtureDir'");
  auto store = std::make_shared<FixtureStore>(config.fixtureDir);
  if (!store->empty() && !force)
    fail(ErrorKind::Input, "fixture store '" + config.fixtureDir + "' already holds " + std::to_string(store->size()) +
                               " records; pass --force to record over it");
  const auto pairs = read_pair_list(pairList);
  auto recorder = std::make_shared<RecordingOracle>(std::move(inner), store);
  for (const auto& p : pairs) {
    RunOptions pairRun = run;
    pairRun.output = run.output / p.id;
    MatchOptions m;
    m.pairId = p.id;
    spdlog::info("recording pair {}", p.id);
    cmd_match(p.shape1, p.shape2, config, recorder, pairRun, m);
  }
  spdlog::info("fixture store '{}' holds {} records", config.fixtureDir, store->size());
}

}  // namespace zsc
