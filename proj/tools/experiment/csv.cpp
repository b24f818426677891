#include "csv.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

#include "config.hpp"

namespace ugks::experiment {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (res.ec != std::errc()) throw std::runtime_error("cannot format number");
  return {buf.data(), res.ptr};
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw std::logic_error("CSV row width does not match the header of " + path_.string());
  }
  for (std::size_t c = 0; c < fields.size(); ++c) {
    if (c) out_ << ',';
    out_ << fields[c];
  }
  out_ << '\n';
  if (!out_) throw IoError("write failed for " + path_.string());
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) throw IoError("closing " + path_.string() + " failed");
}

namespace {

template <class T>
std::vector<T> parse_list(std::string_view text, const char* what) {
  std::vector<T> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    T value{};
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
      throw ConfigError(std::string("bad ") + what + " in list: '" + std::string(token) + "'");
    }
    values.push_back(value);
    pos = end + 1;
  }
  return values;
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
  return parse_list<double>(text, "number");
}

std::vector<int> parse_int_list(std::string_view text) { return parse_list<int>(text, "integer"); }

}  // namespace ugks::experiment
