#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace fde::report {

inline constexpr const char* kVersion = "fde-0.1.0";

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t seed = 0;
  std::string version = kVersion;
};

// results/<command>-<timestamp>.csv (directory created if needed); the
// matching manifest path swaps the extension for .manifest.
std::filesystem::path results_file(const std::filesystem::path& dir,
                                   const std::string& command);
std::filesystem::path manifest_path(const std::filesystem::path& csv);

void write_manifest(const std::filesystem::path& path, const RunManifest& m);

// Header row + data rows, dot decimal separator.
class CsvWriter {
public:
  explicit CsvWriter(const std::filesystem::path& path);
  void comment(const std::string& text); // "# text" line
  void row(const std::vector<std::string>& cells);
  const std::filesystem::path& path() const { return path_; }

  static std::string sci(double v);    // scientific, 5 significant digits
  static std::string fixed3(double v); // 3 decimals (iteration averages)
  static std::string num(std::size_t v);

private:
  std::filesystem::path path_;
  std::ofstream out_;
};

} // namespace fde::report
