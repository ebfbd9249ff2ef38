#include "output.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace perimeter::cli {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

TableWriter::TableWriter(std::ostream& os, Format format, std::vector<std::string> columns)
    : os_(os), format_(format), columns_(std::move(columns)) {
  // A CSV file always carries its header, even with zero rows.
  if (format_ == Format::kCsv) ensure_header();
}

void TableWriter::comment(const std::string& text) {
  if (format_ != Format::kCsv) return;
  if (header_written_) throw std::logic_error("TableWriter: comment after header");
  os_ << "# " << text << '\n';
}

void TableWriter::ensure_header() {
  if (header_written_ || format_ != Format::kCsv) return;
  header_written_ = true;
  for (std::size_t i = 0; i < columns_.size(); ++i) os_ << (i ? "," : "") << columns_[i];
  os_ << '\n';
}

namespace {

struct CsvCell {
  std::string operator()(Blank) const { return {}; }
  std::string operator()(double v) const { return format_number(v); }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(std::uint64_t v) const { return std::to_string(v); }
  std::string operator()(const std::string& s) const { return s; }
};

struct JsonCell {
  nlohmann::ordered_json operator()(Blank) const { return nullptr; }
  // Round-trip through the 12-digit text so both formats carry the same value.
  nlohmann::ordered_json operator()(double v) const { return std::stod(format_number(v)); }
  nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
  nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
  nlohmann::ordered_json operator()(const std::string& s) const { return s; }
};

}  // namespace

void TableWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("TableWriter: row width mismatch");
  if (format_ == Format::kCsv) {
    ensure_header();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os_ << (i ? "," : "") << std::visit(CsvCell{}, cells[i]);
    }
    os_ << '\n';
    return;
  }
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < cells.size(); ++i) obj[columns_[i]] = std::visit(JsonCell{}, cells[i]);
  os_ << obj.dump() << '\n';
}

}  // namespace perimeter::cli
