#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stvss/permutations.hpp"
#include "stvss/rational.hpp"

namespace stvss {

enum class paper_table { table9, table10, table11, appB_table1, appC_table1, table8 };

std::string_view to_string(paper_table which);
std::optional<paper_table> parse_paper_table(std::string_view name);
std::vector<paper_table> all_paper_tables();

struct table_cell {
  std::optional<rational> value;       // empty renders as "-"
  std::optional<std::string> paper;    // printed reference value; "-" for blank cells
  bool decimal_compare = false;        // compare via 4-decimal rendering
  bool flagged = false;                // known discrepancy: checked against `regression`
  std::optional<rational> regression;  // frozen expected value for flagged cells
  std::string note;
};

struct paper_table_result {
  std::string name;
  std::string row_header;
  std::vector<std::string> columns;
  std::vector<std::string> row_labels;
  std::vector<std::vector<table_cell>> cells;
  std::vector<std::string> notes;
};

/// Recomputes one of the published contrast tables cell by cell: closed
/// forms where they apply, the exact enumeration oracle everywhere else.
paper_table_result generate_table(paper_table which,
                                  std::uint64_t budget = default_enumeration_budget);

struct table_check {
  bool ok = true;
  int cells_checked = 0;
  std::vector<std::string> mismatches;
  std::vector<std::string> flagged_notes;
};

/// Compares computed cells against the embedded reference values. Flagged
/// cells are compared against the frozen regression value and the reference
/// comparison is reported in `flagged_notes` instead of failing.
table_check check_table(const paper_table_result& result);

/// Tab-separated rendering; decimals >= 0 adds a decimal twin column per
/// value column.
std::string render_tsv(const paper_table_result& result, int decimals = -1);

}  // namespace stvss
