#pragma once

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include <json.hpp>

#include "rumourlens/util.hpp"

namespace testing_support {

namespace fs = std::filesystem;

inline fs::path test_data(const std::string& name = "") { return fs::path(RUMOURLENS_TEST_DATA_DIR) / name; }
inline fs::path data_file(const std::string& name) { return fs::path(RUMOURLENS_DATA_DIR) / name; }
inline fs::path golden(const std::string& name = "") { return fs::path(RUMOURLENS_GOLDEN_DIR) / name; }

inline nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(rumourlens::read_file(p)); }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("rumourlens-" + tag + "-" + std::to_string(rd()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline bool update_goldens() {
  const char* v = std::getenv("RUMOURLENS_UPDATE_GOLDENS");
  return v && std::string(v) == "1";
}

}  // namespace testing_support
