#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace vsrcost::cli {

enum class Format { table, json, csv };

// A cell is empty, text, an exact count or a real number.
using Cell = std::variant<std::monostate, std::string, std::uint64_t, std::int64_t, double>;

struct Column {
  std::string key;
  std::string title;    // table header
  int decimals = 2;     // table rounding for doubles
};

// Column-oriented result set rendered three ways from the same cells, so
// CSV and JSON always carry the same numbers.
struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);

  // Array of objects keyed by column key; empty cells become null.
  nlohmann::json to_json() const;
  void write_csv(std::ostream& out) const;
  void write_table(std::ostream& out, bool color) const;
};

nlohmann::json cell_json(const Cell& cell);

// Shortest text that parses back to the same double.
std::string exact_number(double value);

// Color only for terminals, and never when NO_COLOR is set.
bool use_color();

}  // namespace vsrcost::cli
