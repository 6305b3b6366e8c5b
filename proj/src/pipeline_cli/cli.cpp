#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>

#include "zsc/common/error.hpp"
#include "zsc/common/text.hpp"
#include "zsc/pipeline_cli/pipeline.hpp"

namespace zsc {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string item = trim(text.substr(start, end - start));
    if (!item.empty()) out.push_back(item);
    start = end + 1;
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"zero-shot shape correspondence pipeline", "zsc"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);  // later flags override

  std::string configPath, mode, fixtures, dataset, logLevel = "info";
  std::string output = "zsc_out";
  int views = 0, classViews = 0, imageSize = 0, basisK = 0;
  long long seed = -1;
  unsigned threads = 0;
  bool timings = false;
  app.add_option("-c,--config", configPath, "JSON config file");
  app.add_option("-o,--output", output, "run directory");
  app.add_option("--mode", mode, "oracle mode: http | replay | synthetic");
  app.add_option("--fixtures", fixtures, "fixture directory (replay, record)");
  app.add_option("--dataset", dataset, "dataset manifest (synthetic ground truth)");
  app.add_option("--views", views, "segmentation views v");
  app.add_option("--class-views", classViews, "classification views k");
  app.add_option("--image-size", imageSize, "render resolution");
  app.add_option("--basis", basisK, "spectral basis size");
  app.add_option("--seed", seed, "synthetic noise seed");
  app.add_option("--threads", threads, "worker threads");
  app.add_option("--log-level", logLevel, "trace | debug | info | warn | error | off");
  app.add_flag("--timings", timings, "record stage seconds in MANIFEST.json");

  auto* classify = app.add_subcommand("classify", "label one shape");
  std::string mesh1, mesh2;
  bool voting = false;
  classify->add_option("mesh", mesh1, "mesh file")->required();
  classify->add_flag("--baseline-voting", voting, "majority vote instead of the chat unification");

  auto* regions = app.add_subcommand("regions", "generate regions and mapping for two classes");
  std::string class1, class2;
  regions->add_option("class1", class1)->required();
  regions->add_option("class2", class2)->required();

  auto* segmentCmd = app.add_subcommand("segment", "segment one shape into given regions");
  std::string regionList;
  segmentCmd->add_option("mesh", mesh1, "mesh file")->required();
  segmentCmd->add_option("--regions", regionList, "comma-separated region names")->required();

  auto* match = app.add_subcommand("match", "full pipeline on a shape pair");
  MatchOptions matchOpts;
  match->add_option("mesh1", mesh1)->required();
  match->add_option("mesh2", mesh2)->required();
  match->add_flag("--baseline-voting", matchOpts.baselineVoting);
  match->add_flag("--skip-dense", matchOpts.skipDense, "stop after the coarse correspondence");
  match->add_option("--pair-id", matchOpts.pairId);

  auto* eval = app.add_subcommand("eval", "score run directories against a dataset");
  std::string results, manifest, synonyms;
  eval->add_option("results", results, "directory holding match runs")->required();
  eval->add_option("manifest", manifest, "dataset manifest")->required();
  eval->add_option("--synonyms", synonyms, "synonym table JSON {classes, regions}");

  auto* record = app.add_subcommand("record", "run pairs and persist every oracle exchange");
  std::string pairList;
  bool force = false;
  record->add_option("pairs", pairList, "dataset manifest or text file of mesh pairs")->required();
  record->add_flag("--force", force, "record into a non-empty fixture store");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto logger = spdlog::get("zsc");
  if (!logger) logger = spdlog::stderr_color_mt("zsc");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(logLevel));
  spdlog::set_pattern("[%l] %v");

  try {
    PipelineConfig config = configPath.empty() ? PipelineConfig{} : load_config(configPath);
    if (!mode.empty()) config.oracleMode = parse_oracle_mode(mode);
    if (!fixtures.empty()) config.fixtureDir = fixtures;
    if (!dataset.empty()) config.dataset = dataset;
    if (views > 0) config.vSegViews = views;
    if (classViews > 0) config.kClassViews = classViews;
    if (imageSize > 0) config.imageSize = imageSize;
    if (basisK > 0) config.basisK = basisK;
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    if (const char* url = std::getenv("ZSC_SIDECAR_URL"); url && *url) config.sidecarUrl = url;
    config.validate();

    RunOptions run;
    run.output = output;
    run.timings = timings;
    if (threads > 0) run.threads = threads;

    if (*eval) {
      std::cout << cmd_eval(results, manifest, run, synonyms);
      return 0;
    }
    auto backend = make_backend(config);
    if (*classify) cmd_classify(mesh1, config, backend, run, voting);
    if (*regions) cmd_regions(class1, class2, config, backend, run);
    if (*segmentCmd) cmd_segment(mesh1, split_list(regionList), config, backend, run);
    if (*match) cmd_match(mesh1, mesh2, config, backend, run, matchOpts);
    if (*record) cmd_record(pairList, config, backend, run, force);
    return 0;
  } catch (const Error& e) {
    spdlog::error("{} error: {}", to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    return 5;
  }
}

}  // namespace zsc
