#ifndef METIBLT_TABLE_HPP
#define METIBLT_TABLE_HPP

#include <ostream>
#include <string>
#include <vector>

namespace metiblt {

// Flat result table every experiment emits: one row per (independent
// variable, scheme or config, statistic). Column order is fixed so outputs
// diff cleanly across runs.
struct ResultRow {
  double x = 0.0;
  std::string id;
  std::string stat;
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct ResultTable {
  std::string x_name;  // header name of the independent variable
  std::vector<ResultRow> rows;
};

enum class TableFormat { csv, json };

TableFormat parse_table_format(const std::string& name);

// Deterministic rendering; throws on an empty table.
void emit(const ResultTable& table, TableFormat format, std::ostream& out);
void emit_to_file(const ResultTable& table, TableFormat format, const std::string& path);

}  // namespace metiblt

#endif
