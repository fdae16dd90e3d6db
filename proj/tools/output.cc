#include "output.h"

#include <cstdlib>
#include <ostream>
#include <unistd.h>

#include <fmt/format.h>

namespace vsrcost::cli {

namespace {

constexpr const char* kBold = "\x1b[1m";
constexpr const char* kReset = "\x1b[0m";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_text(const Cell& cell) {
  return std::visit(Overloaded{
                        [](std::monostate) { return std::string(); },
                        [](const std::string& s) { return csv_quote(s); },
                        [](std::uint64_t v) { return std::to_string(v); },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](double v) { return exact_number(v); },
                    },
                    cell);
}

std::string table_text(const Cell& cell, int decimals) {
  return std::visit(Overloaded{
                        [](std::monostate) { return std::string("-"); },
                        [](const std::string& s) { return s; },
                        [](std::uint64_t v) { return std::to_string(v); },
                        [](std::int64_t v) { return std::to_string(v); },
                        [&](double v) { return fmt::format("{:.{}f}", v, decimals); },
                    },
                    cell);
}

}  // namespace

std::string exact_number(double value) { return fmt::format("{}", value); }

nlohmann::json cell_json(const Cell& cell) {
  return std::visit(Overloaded{
                        [](std::monostate) { return nlohmann::json(); },
                        [](const std::string& s) { return nlohmann::json(s); },
                        [](std::uint64_t v) { return nlohmann::json(v); },
                        [](std::int64_t v) { return nlohmann::json(v); },
                        [](double v) { return nlohmann::json(v); },
                    },
                    cell);
}

void Table::add_row(std::vector<Cell> row) {
  row.resize(columns.size());
  rows.push_back(std::move(row));
}

nlohmann::json Table::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < columns.size(); ++c) obj[columns[c].key] = cell_json(row[c]);
    out.push_back(std::move(obj));
  }
  return out;
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c].key;
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << csv_text(row[c]);
    out << '\n';
  }
}

void Table::write_table(std::ostream& out, bool color) const {
  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].title.size();
  for (const auto& row : rows) {
    auto& line = text.emplace_back();
    for (std::size_t c = 0; c < columns.size(); ++c) {
      line.push_back(table_text(row[c], columns[c].decimals));
      width[c] = std::max(width[c], line.back().size());
    }
  }
  auto is_text = [&](std::size_t c) {
    for (const auto& row : rows)
      if (std::holds_alternative<std::string>(row[c])) return true;
    return false;
  };
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out << "  ";
      if (!is_text(c)) {
        out << fmt::format("{:>{}}", cells[c], width[c]);
      } else if (c + 1 < cells.size()) {
        out << fmt::format("{:<{}}", cells[c], width[c]);
      } else {
        out << cells[c];
      }
    }
    out << '\n';
  };
  std::vector<std::string> header;
  for (const auto& col : columns) header.push_back(col.title);
  if (color) out << kBold;
  emit(header);
  if (color) out << kReset;
  for (const auto& line : text) emit(line);
}

bool use_color() {
  const char* no_color = std::getenv("NO_COLOR");
  if (no_color && *no_color) return false;
  return isatty(STDOUT_FILENO) != 0;
}

}  // namespace vsrcost::cli
