#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace silt::csv {

/// 17 significant digits; round-trips every double.
std::string format(double v);

using Cell = std::variant<double, long long, unsigned long long, std::string, bool>;

/// Writes "# schema=<name>/<version>", the header row, then rows.
class Writer {
 public:
  Writer(std::ostream& os, const std::string& schema, int version, std::vector<std::string> columns);
  void row(const std::vector<Cell>& cells);
  std::size_t rows_written() const noexcept { return rows_; }

 private:
  std::ostream& os_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

/// Parsed file: schema line (without "# "), header and string cells.
struct Table {
  std::string schema;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read(std::istream& is);

}  // namespace silt::csv
