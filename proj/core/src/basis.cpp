#include "stvss/basis.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace stvss {

namespace {

// Visits all size-q subsets of {1..n} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int q, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    fn(idx);
    int pos = q - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - (q - 1 - pos)) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < q; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
}

// Multiset of column patterns restricted to the given rows (1-based).
std::map<std::string, int> column_multiset(const boolean_matrix& m, const std::vector<int>& rows) {
  std::map<std::string, int> out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::string pattern;
    pattern.reserve(rows.size());
    for (int r : rows) {
      pattern.push_back(m.get(static_cast<std::size_t>(r - 1), c) ? '1' : '0');
    }
    ++out[pattern];
  }
  return out;
}

int count_pattern(const boolean_matrix& m, int i, int j, bool bi, bool bj) {
  int count = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (m.get(static_cast<std::size_t>(i - 1), c) == bi &&
        m.get(static_cast<std::size_t>(j - 1), c) == bj) {
      ++count;
    }
  }
  return count;
}

}  // namespace

security_witness verify_security(const boolean_matrix& b0, const boolean_matrix& b1, int k) {
  security_witness out;
  if (b0.rows() != b1.rows() || b0.cols() != b1.cols()) {
    out.ok = false;
    out.detail = "matrix shapes differ";
    return out;
  }
  int n = static_cast<int>(b0.rows());
  for (int q = 1; q < k && out.ok; ++q) {
    for_each_subset(n, q, [&](const std::vector<int>& subset) {
      if (!out.ok) return;
      if (column_multiset(b0, subset) != column_multiset(b1, subset)) {
        out.ok = false;
        out.subset = subset;
        out.detail = "restricted column multisets differ";
      }
    });
  }
  return out;
}

basis_pair::basis_pair(boolean_matrix b0, boolean_matrix b1, int k)
    : b0_(std::move(b0)), b1_(std::move(b1)), k_(k) {
  if (b0_.rows() != b1_.rows() || b0_.cols() != b1_.cols()) {
    throw std::invalid_argument("basis_pair: B0 and B1 must have equal shape");
  }
  n_ = static_cast<int>(b0_.rows());
  m_ = static_cast<int>(b0_.cols());
  if (k_ < 2 || k_ > n_) {
    throw std::invalid_argument("basis_pair: requires 2 <= k <= n");
  }
  security_witness sec = verify_security(b0_, b1_, k_);
  if (!sec.ok) {
    std::string msg = "basis_pair: security condition fails on rows {";
    for (std::size_t i = 0; i < sec.subset.size(); ++i) {
      if (i) msg += ",";
      msg += std::to_string(sec.subset[i]);
    }
    msg += "}";
    throw std::invalid_argument(msg);
  }
  contrast_params cp = compute_contrast_params(*this);
  if (cp.h <= cp.l) {
    throw std::invalid_argument("basis_pair: degenerate contrast, h <= l");
  }
}

contrast_params compute_contrast_params(const basis_pair& pair) {
  contrast_params out;
  out.m = pair.m();
  int l = 0;
  int h = pair.m();
  bool first = true;
  for_each_subset(pair.n(), pair.k(), [&](const std::vector<int>& subset) {
    int w0 = static_cast<int>(stack_rows(pair.b0(), subset).weight());
    int w1 = static_cast<int>(stack_rows(pair.b1(), subset).weight());
    if (first) {
      l = w0;
      h = w1;
      first = false;
    } else {
      l = std::max(l, w0);
      h = std::min(h, w1);
    }
  });
  out.l = l;
  out.h = h;
  out.a = rational(h - l, pair.m());
  return out;
}

security_witness verify_security(const basis_pair& pair) {
  return verify_security(pair.b0(), pair.b1(), pair.k());
}

basis_pair naor_shamir_2n(int n) {
  if (n < 2) throw std::invalid_argument("naor_shamir_2n: requires n >= 2");
  boolean_matrix b0(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  boolean_matrix b1(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    b0.set(static_cast<std::size_t>(r), 0, true);
    b1.set(static_cast<std::size_t>(r), static_cast<std::size_t>(r), true);
  }
  return basis_pair(std::move(b0), std::move(b1), 2);
}

basis_pair builtin_pair(std::string_view name) {
  if (name == "ex1_2_3") {
    return basis_pair(boolean_matrix::from_strings({"011", "011", "011"}),
                      boolean_matrix::from_strings({"011", "101", "110"}), 2);
  }
  if (name == "ex2_2_2") {
    return basis_pair(boolean_matrix::from_strings({"10", "10"}),
                      boolean_matrix::from_strings({"10", "01"}), 2);
  }
  if (name == "ex7_3_4") {
    return basis_pair(
        boolean_matrix::from_strings({"001110", "001101", "001011", "000111"}),
        boolean_matrix::from_strings({"100011", "010011", "001011", "000111"}), 3);
  }
  throw std::invalid_argument("builtin_pair: unknown name '" + std::string(name) + "'");
}

std::vector<std::string> builtin_pair_names() {
  return {"ex1_2_3", "ex2_2_2", "ex7_3_4"};
}

pair_structure decompose_pair(const basis_pair& pair, int i, int j) {
  if (pair.k() != 2) throw std::invalid_argument("decompose_pair: requires k = 2");
  if (i == j || i < 1 || j < 1 || i > pair.n() || j > pair.n()) {
    throw std::invalid_argument("decompose_pair: invalid row indices");
  }
  pair_structure s;
  s.a_p = count_pattern(pair.b1(), i, j, true, true);
  int ones_both_b0 = count_pattern(pair.b0(), i, j, true, true);
  s.e = ones_both_b0 - s.a_p;
  s.c = count_pattern(pair.b0(), i, j, true, false);
  s.d = count_pattern(pair.b0(), i, j, false, true);
  s.b_p = count_pattern(pair.b1(), i, j, false, false);
  bool consistent =
      s.e >= 0 &&
      count_pattern(pair.b1(), i, j, true, false) == s.c + s.e &&
      count_pattern(pair.b1(), i, j, false, true) == s.d + s.e &&
      count_pattern(pair.b0(), i, j, false, false) == s.b_p + s.e &&
      s.a_p + s.b_p + s.c + s.d + 2 * s.e == pair.m();
  if (!consistent) {
    throw std::invalid_argument("decompose_pair: rows do not fit the canonical (2,n) form");
  }
  return s;
}

namespace {

boolean_matrix parse_matrix_rows(std::istream& in, int n, int m) {
  boolean_matrix out(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
  for (int r = 0; r < n; ++r) {
    std::string line;
    do {
      if (!std::getline(in, line)) {
        throw std::invalid_argument("basis pair: unexpected end of input");
      }
    } while (line.find_first_not_of(" \t\r") == std::string::npos);
    std::istringstream row(line);
    int value = 0;
    for (int c = 0; c < m; ++c) {
      if (!(row >> value) || (value != 0 && value != 1)) {
        throw std::invalid_argument("basis pair: rows must hold m entries of 0/1");
      }
      out.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c), value == 1);
    }
    int extra = 0;
    if (row >> extra) throw std::invalid_argument("basis pair: ragged row");
  }
  return out;
}

}  // namespace

basis_pair parse_basis_pair(std::istream& in) {
  int n = 0;
  int m = 0;
  int k = 0;
  std::string header;
  do {
    if (!std::getline(in, header)) {
      throw std::invalid_argument("basis pair: missing header");
    }
  } while (header.find_first_not_of(" \t\r") == std::string::npos);
  std::istringstream hs(header);
  if (!(hs >> n >> m >> k) || n < 1 || m < 1) {
    throw std::invalid_argument("basis pair: header must be 'n m k'");
  }
  boolean_matrix b0 = parse_matrix_rows(in, n, m);
  std::string sep;
  do {
    if (!std::getline(in, sep)) {
      throw std::invalid_argument("basis pair: missing --- separator");
    }
  } while (sep.find_first_not_of(" \t\r") == std::string::npos);
  if (sep.substr(0, 3) != "---") {
    throw std::invalid_argument("basis pair: expected --- separator");
  }
  boolean_matrix b1 = parse_matrix_rows(in, n, m);
  return basis_pair(std::move(b0), std::move(b1), k);
}

basis_pair parse_basis_pair(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_basis_pair(in);
}

std::string format_basis_pair(const basis_pair& pair) {
  std::ostringstream out;
  out << pair.n() << " " << pair.m() << " " << pair.k() << "\n";
  auto emit = [&](const boolean_matrix& mat) {
    for (std::size_t r = 0; r < mat.rows(); ++r) {
      for (std::size_t c = 0; c < mat.cols(); ++c) {
        if (c) out << " ";
        out << (mat.get(r, c) ? 1 : 0);
      }
      out << "\n";
    }
  };
  emit(pair.b0());
  out << "---\n";
  emit(pair.b1());
  return out.str();
}

}  // namespace stvss
