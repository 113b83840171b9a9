#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qlab/measures.hpp"

namespace qlab {

// One JSON file per (encoding, measure, epsilon, engine version), named by the
// SHA-256 of those fields. Writes go to a temporary file that is renamed into
// place, so concurrent writers never leave a torn entry behind.
class ResultCache {
 public:
  /// Creates the directory if needed; throws std::filesystem::filesystem_error
  /// when it cannot be created.
  explicit ResultCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<MeasureResult> load(const std::string& encoding, const MeasureSpec& m) const;
  void store(const std::string& encoding, const MeasureSpec& m, const MeasureResult& r) const;

  static std::string key(const std::string& encoding, const MeasureSpec& m);

 private:
  std::filesystem::path path_for(const std::string& key) const;
  std::filesystem::path dir_;
};

/// SHA-256 as lowercase hex.
std::string sha256_hex(const std::string& data);

}  // namespace qlab
