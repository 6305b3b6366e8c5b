#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

namespace zsc {

/// Directory of JSON records {request_hash, endpoint, request, response},
/// one file per exchange, named <endpoint>-<hash>.json.
class FixtureStore {
 public:
  explicit FixtureStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path record_path(const std::string& endpoint, const std::string& hash) const;

  /// Response for a request hash, or nullopt. A record that fails to parse
  /// or lacks fields raises Error{Schema} naming the file and line.
  std::optional<nlohmann::json> lookup(const std::string& endpoint, const std::string& hash) const;

  void store(const std::string& endpoint, const std::string& hash, const nlohmann::json& request,
             const nlohmann::json& response);

  bool empty() const;
  std::size_t size() const;

 private:
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
};

}  // namespace zsc
