#include "bso/csv.hpp"

#include <cstdio>

namespace bso {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path), path_(path) {
  if (!out_) throw ConfigError(path + ": cannot open for writing");
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
}

void CsvWriter::row(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << format_number(values[i]);
  out_ << "\n";
  if (!out_) throw ConfigError(path_ + ": write failed");
}

}  // namespace bso
