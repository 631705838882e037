#include "silt/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace silt::csv {

std::string format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Writer::Writer(std::ostream& os, const std::string& schema, int version, std::vector<std::string> columns)
    : os_(os), columns_(columns.size()) {
  os_ << "# schema=" << schema << '/' << version << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
  os_ << '\n';
}

void Writer::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_) throw std::invalid_argument("row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            os_ << format(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            os_ << (v ? "true" : "false");
          } else {
            os_ << v;
          }
        },
        cells[i]);
  }
  os_ << '\n';
  ++rows_;
}

Table read(std::istream& is) {
  Table t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      if (t.schema.empty()) t.schema = line.substr(2);
      continue;
    }
    if (t.header.empty()) {
      t.header = split(line);
    } else {
      t.rows.push_back(split(line));
    }
  }
  return t;
}

}  // namespace silt::csv
