#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stvss/bits.hpp"
#include "stvss/rational.hpp"

namespace stvss {

/// Contrast and security parameters of a basis pair: stacking any k rows of
/// B0 weighs at most l, any k rows of B1 at least h, and a = (h-l)/m.
struct contrast_params {
  int h = 0;
  int l = 0;
  int m = 0;
  rational a;
};

/// Column-pattern counts of a canonical (2,n) pair restricted to two rows:
/// m = a_p + b_p + c + d + 2e, l = a_p + c + d + e, h = l + e.
struct pair_structure {
  int a_p = 0;
  int b_p = 0;
  int c = 0;
  int d = 0;
  int e = 0;
};

/// Result of the security check. On failure `subset` holds an offending
/// row subset (1-based) whose restricted column multisets differ.
struct security_witness {
  bool ok = true;
  std::vector<int> subset;
  std::string detail;
};

/// Checks that for every subset of q < k rows the multiset of q-length
/// columns of B0 equals that of B1, which makes the column-permuted
/// collections identically distributed on those rows.
security_witness verify_security(const boolean_matrix& b0, const boolean_matrix& b1, int k);

/// Basis matrices of a (k, n) visual secret sharing scheme. Construction
/// validates shape, the security condition, and h > l; invalid input throws
/// std::invalid_argument carrying the witness.
class basis_pair {
 public:
  basis_pair(boolean_matrix b0, boolean_matrix b1, int k);

  const boolean_matrix& b0() const { return b0_; }
  const boolean_matrix& b1() const { return b1_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int k() const { return k_; }

  friend bool operator==(const basis_pair&, const basis_pair&) = default;

 private:
  boolean_matrix b0_;
  boolean_matrix b1_;
  int n_ = 0;
  int m_ = 0;
  int k_ = 0;
};

/// l = max stacked weight over k-subsets of B0, h = min over k-subsets of B1.
contrast_params compute_contrast_params(const basis_pair& pair);

/// Convenience form of the security check for an already-validated pair.
security_witness verify_security(const basis_pair& pair);

/// The (2, n) scheme with m = n, h = 2, l = 1: B0 repeats [1 0 ... 0],
/// B1 is the n x n identity pattern.
basis_pair naor_shamir_2n(int n);

/// Literal matrices from the worked examples: "ex1_2_3" (2,3), "ex2_2_2"
/// (2,2), "ex7_3_4" (3,4). Unknown names throw std::invalid_argument.
basis_pair builtin_pair(std::string_view name);
std::vector<std::string> builtin_pair_names();

/// Column-pattern decomposition of rows (i, j), 1-based, for k = 2 pairs.
/// Cross-checks the canonical form and throws std::invalid_argument when the
/// pair does not fit it.
pair_structure decompose_pair(const basis_pair& pair, int i, int j);

/// Text format: first line "n m k", then n rows of m space-separated 0/1 for
/// B0, a "---" line, then n rows for B1. Ragged rows are rejected.
basis_pair parse_basis_pair(std::istream& in);
basis_pair parse_basis_pair(std::string_view text);
std::string format_basis_pair(const basis_pair& pair);

}  // namespace stvss
