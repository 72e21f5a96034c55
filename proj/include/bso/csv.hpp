#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "bso/errors.hpp"

namespace bso {

// CSV with '#' comment lines, one header row, and rows of doubles printed
// with 12 significant digits. Output is byte-deterministic for equal input.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(std::span<const double> values);

 private:
  std::ofstream out_;
  std::string path_;
};

std::string format_number(double v);  // %.12g

}  // namespace bso
