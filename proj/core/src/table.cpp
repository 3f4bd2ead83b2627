#include "metiblt/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace metiblt {

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "json") return TableFormat::json;
  throw std::invalid_argument("unknown output format '" + name + "' (expected csv or json)");
}

void emit(const ResultTable& table, TableFormat format, std::ostream& out) {
  if (table.rows.empty()) throw std::invalid_argument("emit: empty result table");
  if (table.x_name.empty()) throw std::invalid_argument("emit: missing independent variable name");

  if (format == TableFormat::csv) {
    out << table.x_name << ",id,stat,value,ci_low,ci_high\n";
    for (const auto& row : table.rows)
      out << format_number(row.x) << ',' << row.id << ',' << row.stat << ','
          << format_number(row.value) << ',' << format_number(row.ci_low) << ','
          << format_number(row.ci_high) << '\n';
    return;
  }

  nlohmann::ordered_json doc;
  doc["x_name"] = table.x_name;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r;
    r["x"] = row.x;
    r["id"] = row.id;
    r["stat"] = row.stat;
    r["value"] = row.value;
    r["ci_low"] = row.ci_low;
    r["ci_high"] = row.ci_high;
    doc["rows"].push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

void emit_to_file(const ResultTable& table, TableFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  emit(table, format, out);
  if (!out.good()) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace metiblt
