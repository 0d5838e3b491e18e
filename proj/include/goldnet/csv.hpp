#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "goldnet/errors.hpp"
#include "goldnet/format.hpp"

namespace goldnet {

// Minimal CSV table. Cells are preformatted strings; an empty string is a
// missing value.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) {
      throw InvalidConfig("csv row has " + std::to_string(row.size()) + " cells, header has " +
                          std::to_string(header.size()));
    }
    rows.push_back(std::move(row));
  }
};

inline std::string cell(double v) { return format_double(v); }
inline std::string cell(std::size_t v) { return std::to_string(v); }

inline void write_csv(std::ostream& os, const CsvTable& t) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

}  // namespace goldnet
