#include "stvss/tables.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

#include "stvss/basis.hpp"
#include "stvss/shift_analysis.hpp"

namespace stvss {

std::string_view to_string(paper_table which) {
  switch (which) {
    case paper_table::table9:
      return "table9";
    case paper_table::table10:
      return "table10";
    case paper_table::table11:
      return "table11";
    case paper_table::appB_table1:
      return "appB_table1";
    case paper_table::appC_table1:
      return "appC_table1";
    case paper_table::table8:
      return "table8";
  }
  return "?";
}

std::optional<paper_table> parse_paper_table(std::string_view name) {
  for (paper_table t : all_paper_tables()) {
    if (name == to_string(t)) return t;
  }
  return std::nullopt;
}

std::vector<paper_table> all_paper_tables() {
  return {paper_table::table9,      paper_table::table10,     paper_table::table11,
          paper_table::appB_table1, paper_table::appC_table1, paper_table::table8};
}

namespace {

rational oracle_two_share(const stvss_pair& pair, permutation_method method, int moving_share,
                          shift s, std::uint64_t budget) {
  shift_assignment shifts(1);
  shifts.set(moving_share, s);
  std::array<int, 2> shares{1, moving_share};
  return oracle_average_contrast(pair, method, shares, shifts, budget).a_bar;
}

table_cell value_cell(rational v, std::string paper) {
  table_cell cell;
  cell.value = v;
  cell.paper = std::move(paper);
  return cell;
}

table_cell dash_cell() {
  table_cell cell;
  cell.paper = "-";
  return cell;
}

// Comparison convention for the published diagonal-shift table: the
// traditional share is evaluated printed at the doubled height of the
// (N_y = 2) schemes, so a one-pixel vertical offset covers half a sub-pixel
// row. Equivalent to the (1, 2) vector-duplication closed form.
rational traditional_at_doubled_height(int m, const rational& a, int x, int y) {
  return analytic_contrast_stvss({1, 2}, m, a, x, y);
}

paper_table_result make_table9(std::uint64_t budget) {
  paper_table_result out;
  out.name = "table9";
  out.row_header = "n";
  const char* paper_cells[3][8] = {
      {"1/2", "1/2", "-1/4", "-3/8", "-", "1/4", "-", "-1/8"},
      {"1/3", "1/3", "-1/9", "-5/36", "-1/18", "-1/9", "-", "1/6"},
      {"1/4", "1/4", "-1/16", "-7/96", "-1/24", "-1/16", "-1/48", "-5/96"},
  };
  for (int x = 0; x <= 3; ++x) {
    out.columns.push_back("x=" + std::to_string(x) + " VSS");
    out.columns.push_back("x=" + std::to_string(x) + " STVSS");
  }
  int row = 0;
  for (int n : {2, 3, 4}) {
    basis_pair base = naor_shamir_2n(n);
    contrast_params cp = compute_contrast_params(base);
    stvss_pair stvss2x2 = construct_stvss(base, {2, 2});
    out.row_labels.push_back(std::to_string(n));
    std::vector<table_cell> cells;
    for (int x = 0; x <= 3; ++x) {
      // Traditional scheme column.
      if (x == 0) {
        cells.push_back(value_cell(cp.a, paper_cells[row][2 * x]));
      } else if (x <= cp.m - 1) {
        cells.push_back(
            value_cell(analytic_contrast_traditional(cp.m, cp.a, x), paper_cells[row][2 * x]));
      } else {
        cells.push_back(dash_cell());
      }
      // STVSS column, N_x = N_y = 2. The closed forms stop at x = m; beyond
      // that the oracle provides the value.
      rational v = x <= cp.m
                       ? analytic_contrast_stvss({2, 2}, cp.m, cp.a, x, 0)
                       : oracle_two_share(stvss2x2, permutation_method::synchronized, 2,
                                          {x, 0}, budget);
      cells.push_back(value_cell(v, paper_cells[row][2 * x + 1]));
    }
    out.cells.push_back(std::move(cells));
    ++row;
  }
  out.notes.push_back("STVSS columns use N_x = N_y = 2; cells with x > m come from the "
                      "enumeration oracle (no closed form is asserted there).");
  return out;
}

paper_table_result make_table10(std::uint64_t) {
  paper_table_result out;
  out.name = "table10";
  out.row_header = "n";
  const char* paper_cells[3][8] = {
      {"1/2", "1/2", "-", "1/4", "-", "-", "-", "-"},
      {"1/3", "1/3", "-", "1/6", "-", "-", "-", "-"},
      {"1/4", "1/4", "-", "1/8", "-", "-", "-", "-"},
  };
  for (int y = 0; y <= 3; ++y) {
    out.columns.push_back("y=" + std::to_string(y) + " VSS");
    out.columns.push_back("y=" + std::to_string(y) + " STVSS");
  }
  int row = 0;
  for (int n : {2, 3, 4}) {
    basis_pair base = naor_shamir_2n(n);
    contrast_params cp = compute_contrast_params(base);
    out.row_labels.push_back(std::to_string(n));
    std::vector<table_cell> cells;
    for (int y = 0; y <= 3; ++y) {
      if (y == 0) {
        cells.push_back(value_cell(cp.a, paper_cells[row][0]));
      } else {
        cells.push_back(dash_cell());
      }
      if (y < 2) {
        cells.push_back(value_cell(analytic_contrast_stvss({2, 2}, cp.m, cp.a, 0, y),
                                   paper_cells[row][2 * y + 1]));
      } else {
        cells.push_back(dash_cell());
      }
    }
    out.cells.push_back(std::move(cells));
    ++row;
  }
  return out;
}

paper_table_result make_table11(std::uint64_t) {
  paper_table_result out;
  out.name = "table11";
  out.row_header = "n";
  const std::array<std::pair<int, int>, 4> shifts{{{1, 1}, {1, 2}, {2, 1}, {2, 2}}};
  const char* paper_cells[3][8] = {
      {"-1/4", "-3/16", "-", "-", "-", "1/8", "-", "-"},
      {"-1/18", "-5/72", "-", "-", "-1/36", "-1/18", "-", "-"},
      {"-1/32", "-7/192", "-", "-", "-1/48", "-1/32", "-", "-"},
  };
  for (const auto& [x, y] : shifts) {
    std::string tag = "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    out.columns.push_back(tag + " VSS");
    out.columns.push_back(tag + " STVSS");
  }
  int row = 0;
  for (int n : {2, 3, 4}) {
    basis_pair base = naor_shamir_2n(n);
    contrast_params cp = compute_contrast_params(base);
    out.row_labels.push_back(std::to_string(n));
    std::vector<table_cell> cells;
    int col = 0;
    for (const auto& [x, y] : shifts) {
      if (x >= 1 && x <= cp.m - 1 && y < 2) {
        cells.push_back(value_cell(traditional_at_doubled_height(cp.m, cp.a, x, y),
                                   paper_cells[row][col]));
      } else {
        cells.push_back(dash_cell());
        cells.back().paper = paper_cells[row][col];
      }
      ++col;
      if (x <= cp.m && y < 2) {
        cells.push_back(value_cell(analytic_contrast_stvss({2, 2}, cp.m, cp.a, x, y),
                                   paper_cells[row][col]));
      } else {
        cells.push_back(dash_cell());
        cells.back().paper = paper_cells[row][col];
      }
      ++col;
    }
    out.cells.push_back(std::move(cells));
    ++row;
  }
  // The published n = 2, (1,1) VSS entry repeats the pure-horizontal value
  // -1/4; the doubled-height convention the other rows follow gives -1/8.
  out.cells[0][0].flagged = true;
  out.cells[0][0].regression = rational(-1, 8);
  out.cells[0][0].note =
      "published value -1/4 does not follow the doubled-height rule the n=3 and n=4 "
      "entries obey; computed value is checked against -1/8";
  out.notes.push_back(
      "VSS columns evaluate the traditional share printed at the doubled height of the "
      "N_y = 2 schemes, so y = 1 covers half a sub-pixel row; this is the convention the "
      "published n = 3 and n = 4 entries follow.");
  return out;
}

paper_table_result make_appB(std::uint64_t budget) {
  paper_table_result out;
  out.name = "appB_table1";
  out.row_header = "scheme";
  out.columns = {"(0,0)", "(1,0)", "(2,0)", "(0,1)", "(1,1)"};
  struct scheme_row {
    const char* label;
    stvss_kind kind;
    stvss_params params;
    std::array<const char*, 5> paper;
  };
  const scheme_row rows[] = {
      {"T11", stvss_kind::vector_dup, {1, 1}, {"1/2", "-1/4", "-", "-", "-"}},
      {"P21", stvss_kind::pixel_dup, {2, 1}, {"1/2", "1/8", "-1/4", "-", "-"}},
      {"V21", stvss_kind::vector_dup, {2, 1}, {"1/2", "-3/8", "1/4", "-", "-"}},
      {"P12", stvss_kind::pixel_dup, {1, 2}, {"1/2", "-1/4", "-", "1/4", "-"}},
      {"V12", stvss_kind::vector_dup, {1, 2}, {"1/2", "-1/4", "-", "1/4", "-"}},
      {"P22", stvss_kind::pixel_dup, {2, 2}, {"1/2", "1/8", "-1/4", "1/4", "1/16"}},
      {"V22", stvss_kind::vector_dup, {2, 2}, {"1/2", "-3/8", "1/4", "1/4", "-3/16"}},
  };
  const std::array<shift, 5> shifts{{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}}};
  basis_pair base = builtin_pair("ex2_2_2");
  for (const scheme_row& row : rows) {
    stvss_pair pair = construct(base, row.params, row.kind);
    out.row_labels.push_back(row.label);
    std::vector<table_cell> cells;
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      if (std::string_view(row.paper[i]) == "-") {
        cells.push_back(dash_cell());
        continue;
      }
      rational v = oracle_two_share(pair, permutation_method::synchronized, 2, shifts[i], budget);
      cells.push_back(value_cell(v, row.paper[i]));
    }
    out.cells.push_back(std::move(cells));
  }
  out.notes.push_back("T = traditional, P = pixel duplication, V = vector duplication; the "
                      "suffix gives (N_x, N_y). All values come from the enumeration oracle.");
  return out;
}

paper_table_result make_appC(std::uint64_t budget) {
  paper_table_result out;
  out.name = "appC_table1";
  out.row_header = "permutation";
  out.columns = {"x=0", "x=1", "x=2", "x=3"};
  basis_pair base = builtin_pair("ex1_2_3");
  stvss_pair pair = construct_stvss(base, {2, 1});
  struct method_row {
    const char* label;
    permutation_method method;
    std::array<const char*, 4> paper;
    bool flagged;
  };
  const method_row rows[] = {
      {"method1", permutation_method::full, {"1/3", "-1/18", "-4/90", "-1/30"}, true},
      {"method2", permutation_method::per_block_independent, {"1/3", "-1/9", "-1/18", "0"}, false},
      {"method3", permutation_method::synchronized, {"1/3", "-5/36", "-1/9", "1/6"}, false},
  };
  for (const method_row& row : rows) {
    out.row_labels.push_back(row.label);
    std::vector<table_cell> cells;
    for (int x = 0; x <= 3; ++x) {
      rational v = oracle_two_share(pair, row.method, 3, {x, 0}, budget);
      table_cell cell = value_cell(v, row.paper[static_cast<std::size_t>(x)]);
      if (row.flagged) {
        cell.flagged = true;
        cell.regression = *rational::parse(row.paper[static_cast<std::size_t>(x)]);
        cell.note = "computed under 6! = 720 joint permutations";
      }
      cells.push_back(cell);
    }
    out.cells.push_back(std::move(cells));
  }
  out.notes.push_back(
      "The published description of method 1 counts 120 column permutations of the 6-column "
      "matrices; 6! = 720 and no deduplication yields 120. The method-1 row is computed under "
      "720 joint permutations and compared against frozen regression values.");
  return out;
}

paper_table_result make_table8(std::uint64_t budget) {
  paper_table_result out;
  out.name = "table8";
  out.row_header = "";
  const std::array<std::pair<int, int>, 5> shifts{{{0, 0}, {1, 0}, {0, 6}, {1, 2}, {6, 1}}};
  const std::array<const char*, 5> paper{"0.1667", "-0.0306", "0.0833", "0.0076", "-0.0167"};
  for (const auto& [x1, x2] : shifts) {
    out.columns.push_back("(" + std::to_string(x1) + "," + std::to_string(x2) + ")");
  }
  basis_pair base = builtin_pair("ex7_3_4");
  stvss_pair pair = construct_stvss(base, {2, 2});
  out.row_labels.push_back("average contrast");
  std::vector<table_cell> cells;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    shift_assignment assignment(1);
    if (shifts[i].first != 0) assignment.set(2, {shifts[i].first, 0});
    if (shifts[i].second != 0) assignment.set(3, {shifts[i].second, 0});
    std::array<int, 3> shares{1, 2, 3};
    rational v = oracle_average_contrast(pair, permutation_method::synchronized, shares,
                                         assignment, budget)
                     .a_bar;
    table_cell cell = value_cell(v, paper[i]);
    cell.decimal_compare = true;
    if (shifts[i] == std::pair<int, int>{1, 2}) {
      cell.flagged = true;
      cell.regression = rational(1, 72);
      cell.note =
          "published 0.0076 is not reproducible: exhaustive enumeration gives 1/72 under "
          "every shifted-in content distribution with fair bit marginals (single shared "
          "neighbor matrix, independent per-share matrices, and i.i.d. bits all agree), "
          "and no (x1, x2) cell of the whole shift grid evaluates to 0.0076";
    }
    cells.push_back(cell);
  }
  out.cells.push_back(std::move(cells));
  out.notes.push_back("(x1, x2) are the horizontal displacements of shares 2 and 3 relative to "
                      "share 1; share 1 is the reference and the synchronized method is used.");
  return out;
}

}  // namespace

paper_table_result generate_table(paper_table which, std::uint64_t budget) {
  switch (which) {
    case paper_table::table9:
      return make_table9(budget);
    case paper_table::table10:
      return make_table10(budget);
    case paper_table::table11:
      return make_table11(budget);
    case paper_table::appB_table1:
      return make_appB(budget);
    case paper_table::appC_table1:
      return make_appC(budget);
    case paper_table::table8:
      return make_table8(budget);
  }
  throw std::invalid_argument("generate_table: unknown table");
}

table_check check_table(const paper_table_result& result) {
  table_check check;
  for (std::size_t r = 0; r < result.cells.size(); ++r) {
    for (std::size_t c = 0; c < result.cells[r].size(); ++c) {
      const table_cell& cell = result.cells[r][c];
      if (!cell.paper) continue;
      ++check.cells_checked;
      std::string where = result.name + " [" + result.row_labels[r] + ", " +
                          result.columns[c] + "]";
      if (cell.flagged) {
        if (!cell.regression || !cell.value || !(*cell.value == *cell.regression)) {
          check.ok = false;
          check.mismatches.push_back(where + ": computed " +
                                     (cell.value ? cell.value->str() : std::string("-")) +
                                     " != regression " +
                                     (cell.regression ? cell.regression->str() : std::string("?")));
        }
        std::string paper_cmp = *cell.paper;
        bool matches_paper = false;
        if (cell.value) {
          if (auto pv = rational::parse(paper_cmp)) {
            matches_paper = cell.decimal_compare ? cell.value->decimal(4) == paper_cmp
                                                 : *cell.value == *pv;
          }
        }
        check.flagged_notes.push_back(where + ": computed " +
                                      (cell.value ? cell.value->str() : std::string("-")) +
                                      (matches_paper ? " matches" : " differs from") +
                                      " published " + paper_cmp +
                                      (cell.note.empty() ? "" : " (" + cell.note + ")"));
        continue;
      }
      if (*cell.paper == "-") {
        if (cell.value) {
          check.ok = false;
          check.mismatches.push_back(where + ": expected blank, computed " + cell.value->str());
        }
        continue;
      }
      if (!cell.value) {
        check.ok = false;
        check.mismatches.push_back(where + ": expected " + *cell.paper + ", computed blank");
        continue;
      }
      if (cell.decimal_compare) {
        if (cell.value->decimal(4) != *cell.paper) {
          check.ok = false;
          check.mismatches.push_back(where + ": computed " + cell.value->decimal(4) +
                                     " != published " + *cell.paper);
        }
      } else {
        auto pv = rational::parse(*cell.paper);
        if (!pv || !(*cell.value == *pv)) {
          check.ok = false;
          check.mismatches.push_back(where + ": computed " + cell.value->str() +
                                     " != published " + *cell.paper);
        }
      }
    }
  }
  return check;
}

std::string render_tsv(const paper_table_result& result, int decimals) {
  std::ostringstream out;
  out << "# " << result.name << "\n";
  out << result.row_header;
  for (const std::string& col : result.columns) {
    out << "\t" << col;
    if (decimals >= 0) out << "\t" << col << " (dec)";
  }
  out << "\n";
  for (std::size_t r = 0; r < result.cells.size(); ++r) {
    out << result.row_labels[r];
    for (const table_cell& cell : result.cells[r]) {
      out << "\t" << (cell.value ? cell.value->str() : "-");
      if (decimals >= 0) {
        out << "\t" << (cell.value ? cell.value->decimal(decimals) : "-");
      }
    }
    out << "\n";
  }
  for (const std::string& note : result.notes) {
    out << "# note: " << note << "\n";
  }
  return out.str();
}

}  // namespace stvss
