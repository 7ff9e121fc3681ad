#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "stvss/basis.hpp"

namespace stvss {

enum class pixel_color { white = 0, black = 1 };

/// How the collections C0*/C1* are generated from the star matrices:
///   full                  -- all (n_x*m)! joint column permutations
///   per_block_independent -- (m!)^{n_x}, each width-m block permuted alone
///   synchronized          -- m!, the same permutation applied to every block
///                            (the scheme default)
enum class permutation_method { full, per_block_independent, synchronized };

std::string_view to_string(permutation_method method);
/// Accepts the canonical tokens plus "method1"/"method2"/"method3".
std::optional<permutation_method> parse_permutation_method(std::string_view text);

/// Block repetition counts: n_x copies of each base row concatenated
/// horizontally, n_y copies stacked vertically per share.
struct stvss_params {
  int nx = 1;
  int ny = 1;
};

enum class stvss_kind { vector_dup, pixel_dup };

std::string_view to_string(stvss_kind kind);
std::optional<stvss_kind> parse_stvss_kind(std::string_view text);

/// Shift-tolerant basis matrices built from a base (k, n) pair. Share i
/// (1-based) owns rows (i-1)*n_y+1 .. i*n_y of each star matrix; the total
/// pixel expansion is m* = n_x * n_y * m.
class stvss_pair {
 public:
  const boolean_matrix& b0_star() const { return b0_star_; }
  const boolean_matrix& b1_star() const { return b1_star_; }
  const boolean_matrix& star(pixel_color color) const {
    return color == pixel_color::white ? b0_star_ : b1_star_;
  }
  const basis_pair& base() const { return base_; }
  const stvss_params& params() const { return params_; }
  stvss_kind kind() const { return kind_; }

  int n() const { return base_.n(); }
  int k() const { return base_.k(); }
  int base_m() const { return base_.m(); }
  int block_width() const { return params_.nx * base_.m(); }
  int block_height() const { return params_.ny; }
  long long expansion() const {
    return static_cast<long long>(params_.nx) * params_.ny * base_.m();
  }

  /// The n_y x (n_x*m) sub-matrix owned by share i (1-based).
  boolean_matrix share_block(pixel_color color, int share) const;

  /// Wraps candidate star matrices for analysis. Only shapes are validated;
  /// security is what verify_stvss_security is for.
  static stvss_pair from_parts(boolean_matrix b0_star, boolean_matrix b1_star, basis_pair base,
                               stvss_params params, stvss_kind kind);

  friend bool operator==(const stvss_pair&, const stvss_pair&) = default;

  friend stvss_pair construct_stvss(const basis_pair& base, stvss_params params);
  friend stvss_pair construct_pixel_duplication(const basis_pair& base, stvss_params params);

 private:
  stvss_pair(boolean_matrix b0s, boolean_matrix b1s, basis_pair base,
             stvss_params params, stvss_kind kind);

  boolean_matrix b0_star_;
  boolean_matrix b1_star_;
  basis_pair base_;
  stvss_params params_;
  stvss_kind kind_;
};

/// Row vector duplication: each share block is n_y identical rows, each the
/// n_x-fold concatenation of the base row, blocks stacked share by share.
stvss_pair construct_stvss(const basis_pair& base, stvss_params params);

/// Pixel duplication baseline: each base entry becomes a constant
/// n_y x n_x sub-block.
stvss_pair construct_pixel_duplication(const basis_pair& base, stvss_params params);

stvss_pair construct(const basis_pair& base, stvss_params params, stvss_kind kind);

struct stvss_security_report {
  bool ok = true;
  /// True when the q < k restricted collections were compared by full
  /// enumeration; false when the equivalent column-multiset criterion was
  /// used because the collection exceeds the enumeration budget.
  bool exhaustive_enumeration = true;
  std::vector<int> subset;  // offending share subset on failure, 1-based
  std::string detail;
};

/// Per-share block weights must agree between the two star matrices, and for
/// every subset of q < k shares the restricted collections under `method`
/// must be equal as multisets.
stvss_security_report verify_stvss_security(const stvss_pair& pair, permutation_method method,
                                            std::uint64_t budget = 10'000'000);

/// Text format: header line "NX NY KIND", then the base pair in the basis
/// format ("n m k", B0 rows, ---, B1 rows).
stvss_pair parse_stvss_pair(std::istream& in);
stvss_pair parse_stvss_pair(std::string_view text);
std::string format_stvss_pair(const stvss_pair& pair);

}  // namespace stvss
