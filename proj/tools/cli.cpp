#include "cli.hpp"

#include <array>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stvss/basis.hpp"
#include "stvss/codec.hpp"
#include "stvss/construct.hpp"
#include "stvss/permutations.hpp"
#include "stvss/shift_analysis.hpp"
#include "stvss/tables.hpp"

namespace stvss::cli {

namespace {

struct scheme_options {
  std::string scheme;
  std::string scheme_file;
  int nx = 1;
  int ny = 1;
  std::string kind = "vector";
  std::string method = "synchronized";
};

void add_scheme_flags(CLI::App* cmd, scheme_options& opts) {
  cmd->add_option("--scheme", opts.scheme,
                  "builtin basis pair: ex1_2_3, ex2_2_2, ex7_3_4, or ns<n> for the "
                  "(2,n) scheme with m = n");
  cmd->add_option("--scheme-file", opts.scheme_file,
                  "file holding a basis pair ('n m k' header) or an stvss pair "
                  "('NX NY KIND' header)");
  cmd->add_option("--nx", opts.nx, "horizontal block repetition count");
  cmd->add_option("--ny", opts.ny, "vertical row repetition count");
  cmd->add_option("--kind", opts.kind, "duplication kind: vector | pixel");
  cmd->add_option("--method", opts.method,
                  "permutation method: synchronized | per_block | full (aliases "
                  "method3/method2/method1)");
}

basis_pair load_base(const scheme_options& opts) {
  if (!opts.scheme.empty()) {
    if (opts.scheme.rfind("ns", 0) == 0) {
      return naor_shamir_2n(std::stoi(opts.scheme.substr(2)));
    }
    return builtin_pair(opts.scheme);
  }
  throw std::invalid_argument("no scheme given; use --scheme or --scheme-file");
}

stvss_pair load_pair(const scheme_options& opts) {
  auto kind = parse_stvss_kind(opts.kind);
  if (!kind) throw std::invalid_argument("unknown kind '" + opts.kind + "'");
  if (!opts.scheme_file.empty()) {
    std::ifstream in(opts.scheme_file);
    if (!in) throw std::invalid_argument("cannot open '" + opts.scheme_file + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    try {
      return parse_stvss_pair(text);
    } catch (const std::invalid_argument&) {
      basis_pair base = parse_basis_pair(text);
      return construct(base, {opts.nx, opts.ny}, *kind);
    }
  }
  return construct(load_base(opts), {opts.nx, opts.ny}, *kind);
}

permutation_method load_method(const scheme_options& opts) {
  auto method = parse_permutation_method(opts.method);
  if (!method) throw std::invalid_argument("unknown permutation method '" + opts.method + "'");
  return *method;
}

pixel_color parse_color(const std::string& text) {
  if (text == "white" || text == "0") return pixel_color::white;
  if (text == "black" || text == "1") return pixel_color::black;
  throw std::invalid_argument("color must be white or black");
}

// "i:x,y" -> share i shifted by (x, y).
std::pair<int, shift> parse_shift_flag(const std::string& text) {
  auto colon = text.find(':');
  auto comma = text.find(',', colon == std::string::npos ? 0 : colon);
  if (colon == std::string::npos || comma == std::string::npos) {
    throw std::invalid_argument("shift flag must look like SHARE:X,Y");
  }
  try {
    int share = std::stoi(text.substr(0, colon));
    shift s{std::stoi(text.substr(colon + 1, comma - colon - 1)),
            std::stoi(text.substr(comma + 1))};
    return {share, s};
  } catch (const std::exception&) {
    throw std::invalid_argument("shift flag must look like SHARE:X,Y");
  }
}

std::vector<int> parse_share_list(const std::string& text) {
  std::vector<int> shares;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) shares.push_back(std::stoi(token));
  }
  if (shares.empty()) throw std::invalid_argument("--shares must list at least one share");
  return shares;
}

pbm_format parse_format(const std::string& text) {
  if (text == "p1" || text == "P1") return pbm_format::p1;
  if (text == "p4" || text == "P4") return pbm_format::p4;
  throw std::invalid_argument("format must be p1 or p4");
}

void emit_matrix_rows(std::ostream& out, const boolean_matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << (m.get(r, c) ? 1 : 0);
    }
    out << "\n";
  }
}

int cmd_construct(const scheme_options& scheme, const std::string& out_path, bool matrices) {
  stvss_pair pair = load_pair(scheme);
  std::ostringstream out;
  out << format_stvss_pair(pair);
  if (matrices) {
    out << "# B0*\n";
    emit_matrix_rows(out, pair.b0_star());
    out << "# B1*\n";
    emit_matrix_rows(out, pair.b1_star());
  }
  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(out_path);
    if (!file) throw std::invalid_argument("cannot write '" + out_path + "'");
    file << out.str();
  }
  return 0;
}

int cmd_collection(const scheme_options& scheme, const std::string& color_text, bool count_only,
                   std::uint64_t limit, std::uint64_t budget) {
  stvss_pair pair = load_pair(scheme);
  permutation_method method = load_method(scheme);
  pixel_color color = parse_color(color_text);
  if (count_only) {
    std::cout << collection_size(pair, method) << "\n";
    return 0;
  }
  std::uint64_t emitted = 0;
  try {
    for_each_collection_matrix(pair, color, method, budget,
                               [&](const perm_word& word, const boolean_matrix& m) {
                                 if (limit && emitted >= limit) return;
                                 ++emitted;
                                 std::cout << "perm";
                                 for (std::uint32_t idx : word) std::cout << ' ' << idx;
                                 std::cout << "\n";
                                 emit_matrix_rows(std::cout, m);
                                 std::cout << "\n";
                               });
  } catch (const budget_exceeded& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_security(const scheme_options& scheme, std::uint64_t budget) {
  stvss_pair pair = load_pair(scheme);
  permutation_method method = load_method(scheme);
  security_witness base = verify_security(pair.base());
  std::cout << "base security: " << (base.ok ? "pass" : "FAIL") << "\n";
  if (!base.ok) {
    std::cout << "  offending rows:";
    for (int r : base.subset) std::cout << ' ' << r;
    std::cout << "\n";
    return 1;
  }
  stvss_security_report report = verify_stvss_security(pair, method, budget);
  std::cout << "stvss security (" << to_string(method) << "): " << (report.ok ? "pass" : "FAIL")
            << (report.exhaustive_enumeration ? "" : " [column-multiset equivalence]") << "\n";
  if (!report.ok) {
    std::cout << "  " << report.detail << "; shares:";
    for (int s : report.subset) std::cout << ' ' << s;
    std::cout << "\n";
    return 1;
  }
  return 0;
}

int cmd_contrast(const scheme_options& scheme, const std::string& shares_text,
                 const std::vector<std::string>& shift_flags, int reference,
                 const std::string& mode, std::uint64_t samples, std::uint64_t seed,
                 std::uint64_t budget, int decimals) {
  stvss_pair pair = load_pair(scheme);
  permutation_method method = load_method(scheme);
  std::vector<int> shares = parse_share_list(shares_text);
  if (reference == 0) reference = shares.front();

  shift_assignment shifts(reference);
  for (const std::string& flag : shift_flags) {
    auto [share, s] = parse_shift_flag(flag);
    // The model is mirror symmetric; negative displacements map to the
    // positive case.
    shifts.set(share, {std::abs(s.x), std::abs(s.y)});
  }

  auto print_rational = [&](const rational& v) {
    std::cout << v.str();
    if (decimals >= 0) std::cout << "\t" << v.decimal(decimals);
    std::cout << "\n";
  };

  if (mode == "oracle") {
    contrast_report report = oracle_average_contrast(pair, method, shares, shifts, budget);
    print_rational(report.a_bar);
    return 0;
  }
  if (mode == "analytic") {
    if (pair.k() != 2) throw std::invalid_argument("analytic mode covers (2, n) schemes only");
    if (pair.kind() != stvss_kind::vector_dup) {
      throw std::invalid_argument("analytic mode covers the vector duplication construction");
    }
    if (method != permutation_method::synchronized) {
      throw std::invalid_argument("analytic mode covers the synchronized method");
    }
    if (shifts.offsets().size() != 1) {
      throw std::invalid_argument("analytic mode needs exactly one shifted share");
    }
    shift s = shifts.offsets().begin()->second;
    contrast_params cp = compute_contrast_params(pair.base());
    print_rational(analytic_contrast_stvss(pair.params(), cp.m, cp.a, s.x, s.y));
    return 0;
  }
  if (mode == "mc") {
    monte_carlo_report report =
        monte_carlo_contrast(pair, method, shares, shifts, samples, seed);
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(6);
    line << report.a_bar << " ± " << report.std_error << " (se, " << report.samples
         << " samples)";
    std::cout << line.str() << "\n";
    return 0;
  }
  throw std::invalid_argument("mode must be analytic, oracle, or mc");
}

int cmd_tables(const std::string& which, bool check, bool all, int decimals,
               std::uint64_t budget) {
  std::vector<paper_table> selection;
  if (all) {
    selection = all_paper_tables();
  } else {
    auto table = parse_paper_table(which);
    if (!table) throw std::invalid_argument("unknown table '" + which + "'");
    selection.push_back(*table);
  }
  bool ok = true;
  for (paper_table table : selection) {
    paper_table_result result = generate_table(table, budget);
    std::cout << render_tsv(result, decimals);
    if (check) {
      table_check verdict = check_table(result);
      for (const std::string& note : verdict.flagged_notes) {
        std::cout << "# flagged: " << note << "\n";
      }
      for (const std::string& miss : verdict.mismatches) {
        std::cout << "# MISMATCH: " << miss << "\n";
      }
      std::cout << "# check: " << verdict.cells_checked << " cells, "
                << (verdict.ok ? "all match" : "MISMATCHES FOUND") << "\n";
      ok = ok && verdict.ok;
    }
    std::cout << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_encode(const scheme_options& scheme, const std::string& secret_path,
               const std::string& prefix, std::uint64_t seed, const std::string& format_text) {
  stvss_pair pair = load_pair(scheme);
  permutation_method method = load_method(scheme);
  pbm_format format = parse_format(format_text);
  std::ifstream in(secret_path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + secret_path + "'");
  bitmap secret = read_pbm(in);
  std::vector<share_image> shares = encode(secret, pair, method, seed);
  for (const share_image& share : shares) {
    std::string path = prefix + "_" + std::to_string(share.share_index) + ".pbm";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    write_share_pbm(out, share, format);
    std::cout << path << "\n";
  }
  return 0;
}

int cmd_stack(const std::vector<std::string>& share_paths,
              const std::vector<std::string>& shift_flags, int reference,
              const std::string& out_path, const std::string& format_text) {
  if (share_paths.size() < 2) throw std::invalid_argument("stack needs at least two shares");
  std::vector<share_image> shares;
  for (const std::string& path : share_paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    shares.push_back(read_share_pbm(in));
  }
  if (reference == 0) {
    reference = shares.front().share_index;
    for (const share_image& share : shares) reference = std::min(reference, share.share_index);
  }
  shift_assignment shifts(reference);
  for (const std::string& flag : shift_flags) {
    auto [share, s] = parse_shift_flag(flag);
    shifts.set(share, s);
  }
  bitmap stacked = stack_shares(shares, shifts);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
  write_pbm(out, stacked, parse_format(format_text));
  std::cout << out_path << "\n";
  return 0;
}

int cmd_measure(const scheme_options& scheme, const std::string& secret_path,
                const std::string& stacked_path, const std::vector<std::string>& shift_flags,
                int reference) {
  stvss_pair pair = load_pair(scheme);
  std::ifstream sin(secret_path, std::ios::binary);
  if (!sin) throw std::invalid_argument("cannot open '" + secret_path + "'");
  bitmap secret = read_pbm(sin);
  std::ifstream tin(stacked_path, std::ios::binary);
  if (!tin) throw std::invalid_argument("cannot open '" + stacked_path + "'");
  bitmap stacked = read_pbm(tin);

  shift_assignment shifts(reference == 0 ? 1 : reference);
  for (const std::string& flag : shift_flags) {
    auto [share, s] = parse_shift_flag(flag);
    shifts.set(share, s);
  }
  empirical_contrast result = measure_empirical_contrast(secret, stacked, pair, shifts);
  std::cout << result.contrast.str() << "\t" << result.contrast.decimal(6) << "\tse="
            << result.std_error << "\tblack_cells=" << result.black_cells
            << "\twhite_cells=" << result.white_cells << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"shift-tolerant visual secret sharing toolkit"};
  app.require_subcommand(1);

  scheme_options scheme;
  std::uint64_t budget = default_enumeration_budget;
  int exit_code = 0;

  auto* construct_cmd = app.add_subcommand("construct", "build and print an stvss pair");
  add_scheme_flags(construct_cmd, scheme);
  std::string construct_out;
  bool construct_matrices = false;
  construct_cmd->add_option("--out", construct_out, "write to file instead of stdout");
  construct_cmd->add_flag("--matrices", construct_matrices, "also print B0*/B1*");
  construct_cmd->callback(
      [&]() { exit_code = cmd_construct(scheme, construct_out, construct_matrices); });

  auto* collection_cmd =
      app.add_subcommand("collection", "enumerate a collection in lexicographic order");
  add_scheme_flags(collection_cmd, scheme);
  std::string collection_color = "white";
  bool collection_count = false;
  std::uint64_t collection_limit = 0;
  collection_cmd->add_option("--color", collection_color, "white | black");
  collection_cmd->add_flag("--count", collection_count, "print the collection size only");
  collection_cmd->add_option("--limit", collection_limit, "dump at most this many records");
  collection_cmd->add_option("--budget", budget, "enumeration budget");
  collection_cmd->callback([&]() {
    exit_code =
        cmd_collection(scheme, collection_color, collection_count, collection_limit, budget);
  });

  auto* security_cmd = app.add_subcommand("security", "run the security validators");
  add_scheme_flags(security_cmd, scheme);
  security_cmd->add_option("--budget", budget, "enumeration budget");
  security_cmd->callback([&]() { exit_code = cmd_security(scheme, budget); });

  auto* contrast_cmd =
      app.add_subcommand("contrast", "average contrast under share misalignment");
  add_scheme_flags(contrast_cmd, scheme);
  std::string contrast_shares = "1,2";
  std::vector<std::string> contrast_shifts;
  std::string contrast_mode = "oracle";
  int contrast_reference = 0;
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t mc_seed = 1;
  int contrast_decimals = -1;
  contrast_cmd->add_option("--shares", contrast_shares, "stacked shares, e.g. 1,3");
  contrast_cmd->add_option("--shift", contrast_shifts,
                           "per-share displacement SHARE:X,Y (repeatable)");
  contrast_cmd->add_option("--reference", contrast_reference,
                           "reference share (default: first of --shares)");
  contrast_cmd->add_option("--mode", contrast_mode, "analytic | oracle | mc");
  contrast_cmd->add_option("--samples", mc_samples, "Monte Carlo sample count");
  contrast_cmd->add_option("--seed", mc_seed, "Monte Carlo seed");
  contrast_cmd->add_option("--budget", budget, "enumeration budget");
  contrast_cmd->add_option("--decimals", contrast_decimals, "append a decimal rendering");
  contrast_cmd->callback([&]() {
    exit_code = cmd_contrast(scheme, contrast_shares, contrast_shifts, contrast_reference,
                             contrast_mode, mc_samples, mc_seed, budget, contrast_decimals);
  });

  auto* tables_cmd = app.add_subcommand("tables", "reproduce the published contrast tables");
  std::string tables_which = "table9";
  bool tables_check = false;
  bool tables_all = false;
  int tables_decimals = 4;
  tables_cmd->add_option("--which", tables_which,
                         "table9 | table10 | table11 | appB_table1 | appC_table1 | table8");
  tables_cmd->add_flag("--check", tables_check, "compare against embedded reference values");
  tables_cmd->add_flag("--all", tables_all, "emit every table");
  tables_cmd->add_option("--decimals", tables_decimals, "decimal twin column precision");
  tables_cmd->add_option("--budget", budget, "enumeration budget");
  tables_cmd->callback([&]() {
    exit_code = cmd_tables(tables_which, tables_check, tables_all, tables_decimals, budget);
  });

  auto* encode_cmd = app.add_subcommand("encode", "encode a secret bitmap into share images");
  add_scheme_flags(encode_cmd, scheme);
  std::string encode_secret;
  std::string encode_prefix = "share";
  std::uint64_t encode_seed = 1;
  std::string encode_format = "p4";
  encode_cmd->add_option("--secret", encode_secret, "secret PBM (P1 or P4)")->required();
  encode_cmd->add_option("--out-prefix", encode_prefix, "share files <prefix>_<i>.pbm");
  encode_cmd->add_option("--seed", encode_seed, "encoding seed");
  encode_cmd->add_option("--format", encode_format, "p1 | p4");
  encode_cmd->callback([&]() {
    exit_code = cmd_encode(scheme, encode_secret, encode_prefix, encode_seed, encode_format);
  });

  auto* stack_cmd = app.add_subcommand("stack", "overlay share images with offsets");
  std::vector<std::string> stack_files;
  std::vector<std::string> stack_shifts;
  int stack_reference = 0;
  std::string stack_out = "stacked.pbm";
  std::string stack_format = "p4";
  stack_cmd->add_option("shares", stack_files, "share PBM files")->required();
  stack_cmd->add_option("--shift", stack_shifts, "per-share displacement SHARE:X,Y");
  stack_cmd->add_option("--reference", stack_reference, "reference share index");
  stack_cmd->add_option("--out", stack_out, "output PBM path");
  stack_cmd->add_option("--format", stack_format, "p1 | p4");
  stack_cmd->callback([&]() {
    exit_code = cmd_stack(stack_files, stack_shifts, stack_reference, stack_out, stack_format);
  });

  auto* measure_cmd =
      app.add_subcommand("measure", "empirical contrast of a stacked reconstruction");
  add_scheme_flags(measure_cmd, scheme);
  std::string measure_secret;
  std::string measure_stacked;
  std::vector<std::string> measure_shifts;
  int measure_reference = 0;
  measure_cmd->add_option("--secret", measure_secret, "original secret PBM")->required();
  measure_cmd->add_option("--stacked", measure_stacked, "stacked reconstruction PBM")->required();
  measure_cmd->add_option("--shift", measure_shifts, "per-share displacement SHARE:X,Y");
  measure_cmd->add_option("--reference", measure_reference, "reference share index");
  measure_cmd->callback([&]() {
    exit_code =
        cmd_measure(scheme, measure_secret, measure_stacked, measure_shifts, measure_reference);
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("stvss");
  for (const std::string& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 2;
  } catch (const budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

}  // namespace stvss::cli
