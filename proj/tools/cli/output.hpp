#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace perimeter::cli {

enum class Format { kCsv, kJsonl };

/// Empty cell: blank in CSV, null in JSONL.
struct Blank {};

using Cell = std::variant<Blank, double, std::int64_t, std::uint64_t, std::string>;

/// 12 significant digits, negative zero printed as 0.
std::string format_number(double v);

/// Streams rows with a fixed column order.
class TableWriter {
 public:
  TableWriter(std::ostream& os, Format format, std::vector<std::string> columns);

  /// Comment line ahead of the header (CSV: "# text"; JSONL: ignored).
  void comment(const std::string& text);
  void row(const std::vector<Cell>& cells);

 private:
  void ensure_header();

  std::ostream& os_;
  Format format_;
  std::vector<std::string> columns_;
  bool header_written_ = false;
};

}  // namespace perimeter::cli
