#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "zsc/oracle/backend.hpp"
#include "zsc/pipeline_cli/config.hpp"

namespace zsc {

struct RunOptions {
  std::filesystem::path output = "zsc_out";
  bool timings = false;  // stage seconds in MANIFEST (makes it run-dependent)
  unsigned threads = default_thread_count();
};

/// Backend for the configured mode. Http checks /v1/health first and fails
/// with Error{BackendUnavailable} carrying the health detail. Synthetic
/// loads ground truth from `config.dataset`.
std::shared_ptr<OracleBackend> make_backend(const PipelineConfig& config);

/// Per-run MANIFEST.json: command, config + hash, inputs with content
/// hashes, and one entry per stage (ok | failed | skipped). Rewritten after
/// every stage so a failure leaves the partial picture on disk.
class RunManifest {
 public:
  RunManifest(std::filesystem::path dir, std::string command, const PipelineConfig& config, bool timings);

  void input(const std::string& role, const std::filesystem::path& path);
  void set(const std::string& key, nlohmann::json value);
  void run_stage(const std::string& name, const std::function<void()>& body);
  void skip_stage(const std::string& name);
  void finish();

  const std::filesystem::path& dir() const { return dir_; }

 private:
  void write() const;

  std::filesystem::path dir_;
  bool timings_;
  nlohmann::json doc_;
};

/// Loads a mesh and rescales it into the unit sphere; the id stays the file stem.
Mesh load_pipeline_mesh(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& j, bool pretty = true);
nlohmann::json read_json(const std::filesystem::path& path);

struct MatchOptions {
  bool baselineVoting = false;
  bool skipDense = false;
  std::string pairId;  // default "<stem1>__<stem2>"
};

void cmd_classify(const std::filesystem::path& mesh, const PipelineConfig& config,
                  std::shared_ptr<OracleBackend> backend, const RunOptions& run, bool baselineVoting);
void cmd_regions(const std::string& class1, const std::string& class2, const PipelineConfig& config,
                 std::shared_ptr<OracleBackend> backend, const RunOptions& run);
void cmd_segment(const std::filesystem::path& mesh, const std::vector<std::string>& regions,
                 const PipelineConfig& config, std::shared_ptr<OracleBackend> backend, const RunOptions& run);
void cmd_match(const std::filesystem::path& mesh1, const std::filesystem::path& mesh2, const PipelineConfig& config,
               std::shared_ptr<OracleBackend> backend, const RunOptions& run, const MatchOptions& match = {});

/// Reads run directories (MANIFEST.json with a pair id) below `results`,
/// scores them against the dataset, and writes report.json / report.txt to
/// run.output. Pairs without a successful run are listed as skipped. The
/// aligned table is returned.
std::string cmd_eval(const std::filesystem::path& results, const std::filesystem::path& manifest,
                     const RunOptions& run, const std::string& synonymsPath = "");

struct PairEntry {
  std::string id;
  std::filesystem::path shape1, shape2;
};
/// Dataset manifest ({"pairs": [{id, shape1, shape2, ...}]}) or a text file
/// with two mesh paths per line; paths resolve against the list's directory.
std::vector<PairEntry> read_pair_list(const std::filesystem::path& path);

/// Runs cmd_match for every pair through a RecordingOracle writing into
/// config.fixtureDir. Refuses a non-empty store unless `force`.
void cmd_record(const std::filesystem::path& pairList, const PipelineConfig& config,
                std::shared_ptr<OracleBackend> inner, const RunOptions& run, bool force);

/// Aligned plain-text table; the first row is the header.
std::string text_table(const std::vector<std::vector<std::string>>& rows);

/// CLI entry point: parses arguments, runs the subcommand and maps errors
/// to exit codes (0 ok, 2 input, 3 fixture miss, 4 backend, 5 internal).
int run_cli(const std::vector<std::string>& args);

}  // namespace zsc
