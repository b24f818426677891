#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace ugks::experiment {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Comma-separated writer with a fixed header. Throws IoError if the file
/// cannot be opened or a write fails.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

  /// Each field is already formatted; the count must match the header.
  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

/// Parses "1e-6,1e-4, 1" into doubles. Throws ConfigError on bad tokens.
std::vector<double> parse_number_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

}  // namespace ugks::experiment
