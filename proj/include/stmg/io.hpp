#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stmg {

/// Shortest decimal representation that round-trips the double.
std::string format_double(double value);

/// Minimal CSV emitter: header row first, deterministic row order is the
/// caller's responsibility.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double v);
  CsvWriter& cell(std::int64_t v);
  void end_row();

  const std::string& str() const { return out_; }

 private:
  std::string out_;
  std::size_t columns_ = 0;
  std::size_t in_row_ = 0;
};

void write_file(const std::string& path, const std::string& content);

}  // namespace stmg
