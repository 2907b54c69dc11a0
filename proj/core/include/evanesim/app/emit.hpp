#pragma once

// Serialization of a ResultBundle. CSV writes one file per table plus
// provenance.csv and config.json; JSON writes a single bundle.json.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "evanesim/app/run.hpp"

namespace evanesim::app {

class IoError : public std::runtime_error {
 public:
  IoError(std::filesystem::path path, const std::string& message)
      : std::runtime_error(path.string() + ": " + message), path_(std::move(path)) {}

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// "# evanesim v<version>"
std::string banner();

/// One CSV document: banner, header with units, rows. Locale independent.
std::string table_to_csv(const Table& table);

nlohmann::json bundle_to_json(const ResultBundle& bundle);
ResultBundle bundle_from_json(const nlohmann::json& doc);

/// Writes the bundle under `directory` (created if missing) and returns the
/// files written, in order. Throws IoError naming the offending path.
std::vector<std::filesystem::path> emit(const ResultBundle& bundle, Format format,
                                        const std::filesystem::path& directory);

}  // namespace evanesim::app
