#include "zsc/oracle/fixture_store.hpp"

#include <algorithm>

#include "zsc/common/error.hpp"
#include "zsc/common/text.hpp"

namespace zsc {

namespace fs = std::filesystem;

FixtureStore::FixtureStore(fs::path dir) : dir_(std::move(dir)) {}

fs::path FixtureStore::record_path(const std::string& endpoint, const std::string& hash) const {
  return dir_ / (endpoint + "-" + hash + ".json");
}

std::optional<nlohmann::json> FixtureStore::lookup(const std::string& endpoint,
                                                   const std::string& hash) const {
  const fs::path path = record_path(endpoint, hash);
  if (!fs::exists(path)) return std::nullopt;
  const std::string text = read_text_file(path.string());
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    fail(ErrorKind::Schema, path.string() + ":" + std::to_string(line) + ": malformed fixture: " + e.what());
  }
  for (const char* key : {"request_hash", "endpoint", "request", "response"})
    if (!record.is_object() || !record.contains(key))
      fail(ErrorKind::Schema, path.string() + ":1: fixture record lacks '" + key + "'");
  if (record["request_hash"] != hash || record["endpoint"] != endpoint)
    fail(ErrorKind::Schema, path.string() + ":1: fixture key does not match its file name");
  return record["response"];
}

void FixtureStore::store(const std::string& endpoint, const std::string& hash,
                         const nlohmann::json& request, const nlohmann::json& response) {
  nlohmann::json record = {
      {"request_hash", hash}, {"endpoint", endpoint}, {"request", request}, {"response", response}};
  std::lock_guard lock(mutex_);
  fs::create_directories(dir_);
  write_text_file(record_path(endpoint, hash).string(), record.dump(2) + "\n");
}

bool FixtureStore::empty() const { return size() == 0; }

std::size_t FixtureStore::size() const {
  if (!fs::exists(dir_)) return 0;
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(dir_))
    if (entry.path().extension() == ".json") ++n;
  return n;
}

}  // namespace zsc
