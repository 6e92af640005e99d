#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "mmopt/bench.hpp"

namespace mmopt::bench {

namespace {

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

void append_csv_line(std::ostringstream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_field(fields[i]);
  out << '\n';
}

// Splits one record starting at `pos`; advances pos past the line break.
std::vector<std::string> read_csv_record(const std::string& text, std::size_t& pos) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  while (pos < text.size()) {
    const char ch = text[pos++];
    if (quoted) {
      if (ch == '"') {
        if (pos < text.size() && text[pos] == '"') {
          field += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      break;
    } else if (ch != '\r') {
      field += ch;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV");
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "aligned" || name == "text") return TableFormat::aligned;
  throw std::invalid_argument("unknown table format '" + name + "'");
}

std::string format_fixed(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out << std::fixed << std::setprecision(decimals) << value;
  std::string s = out.str();
  // Avoid printing a signed zero such as -0.00000.
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

std::string emit_table(const Table& table, TableFormat format) {
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw std::invalid_argument("row width differs from header");
  }
  std::ostringstream out;
  if (format == TableFormat::csv) {
    append_csv_line(out, table.columns);
    for (const auto& row : table.rows) append_csv_line(out, row);
    return out.str();
  }
  std::vector<std::size_t> width(table.columns.size());
  for (std::size_t j = 0; j < width.size(); ++j) {
    width[j] = table.columns[j].size();
    for (const auto& row : table.rows) width[j] = std::max(width[j], row[j].size());
  }
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t j = 0; j < fields.size(); ++j) {
      out << (j ? "  " : "") << std::setw(static_cast<int>(width[j])) << fields[j];
    }
    out << '\n';
  };
  line(table.columns);
  for (const auto& row : table.rows) line(row);
  return out.str();
}

Table parse_csv_table(const std::string& text) {
  Table table;
  std::size_t pos = 0;
  if (text.empty()) throw std::invalid_argument("empty CSV");
  table.columns = read_csv_record(text, pos);
  while (pos < text.size()) {
    auto row = read_csv_record(text, pos);
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != table.columns.size()) throw std::invalid_argument("CSV row width differs from header");
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

std::vector<std::string> summary_fields(const SummaryRow& r, const std::string& seed, bool include_timing) {
  std::vector<std::string> fields{r.problem, r.dims, seed, r.status, format_fixed(r.loss),
                                  std::to_string(r.iterations)};
  if (include_timing) fields.push_back(format_fixed(r.seconds));
  return fields;
}

std::vector<std::string> summary_columns(bool include_timing) {
  std::vector<std::string> cols{"problem", "dims", "seed", "status", "loss", "iterations"};
  if (include_timing) cols.emplace_back("seconds");
  return cols;
}

}  // namespace

Table summary_table(const std::vector<SummaryRow>& rows, bool include_timing) {
  Table table;
  table.columns = summary_columns(include_timing);
  for (const auto& r : rows) table.rows.push_back(summary_fields(r, std::to_string(r.seed), include_timing));
  return table;
}

Table summary_table(const ExperimentSummary& summary, bool include_timing) {
  Table table = summary_table(summary.rows, include_timing);
  table.rows.push_back(summary_fields(summary.mean, "mean", include_timing));
  return table;
}

Table barrier_table(const BarrierResult& result) {
  Table table;
  table.columns = {"n", "f", "||dx||", "t"};
  for (const auto& it : result.trace) {
    table.rows.push_back({std::to_string(it.iter), format_fixed(it.objective), format_fixed(it.step_norm),
                          format_fixed(it.step_length)});
  }
  return table;
}

Table table2_table(const std::vector<Vec>& dykstra, const std::vector<Vec>& proxdist) {
  Table table;
  table.columns = {"n", "dykstra_x1", "dykstra_x2", "pd_x1", "pd_x2"};
  const std::size_t count = std::max(dykstra.size(), proxdist.size());
  auto coord = [](const std::vector<Vec>& xs, std::size_t i, Eigen::Index j) {
    return i < xs.size() ? format_fixed(xs[i][j]) : std::string();
  };
  for (std::size_t i = 0; i < count; ++i) {
    table.rows.push_back({std::to_string(i + 1), coord(dykstra, i, 0), coord(dykstra, i, 1), coord(proxdist, i, 0),
                          coord(proxdist, i, 1)});
  }
  return table;
}

}  // namespace mmopt::bench
