#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "stvss/construct.hpp"
#include "stvss/permutations.hpp"
#include "stvss/rational.hpp"

namespace stvss {

/// Relative displacement of one share: positive x moves its content left by
/// x pixels, positive y moves it up by y pixels, so the shifted-in material
/// comes from the right/below neighbor blocks.
struct shift {
  int x = 0;
  int y = 0;
  friend bool operator==(const shift&, const shift&) = default;
};

/// Per-share displacements relative to a reference share (implicitly zero).
class shift_assignment {
 public:
  explicit shift_assignment(int reference_share);

  shift_assignment& set(int share, shift s);
  int reference() const { return reference_; }
  shift of(int share) const;
  const std::map<int, shift>& offsets() const { return offsets_; }

 private:
  int reference_ = 1;
  std::map<int, shift> offsets_;
};

/// Exact average stacked weights over the reference footprint and the
/// average contrast a_bar = (h_bar - l_bar) / m*. The per-footprint-row
/// breakdown supports checking that shifted-in rows contribute no contrast.
struct contrast_report {
  rational h_bar;
  rational l_bar;
  rational a_bar;
  long long m_star = 0;
  std::vector<rational> h_rows;
  std::vector<rational> l_rows;
};

/// One shifted share's own encoded blocks: the current pixel's block plus
/// the three neighbors a (x, y) shift can pull content from.
struct block_neighborhood {
  boolean_matrix current;
  boolean_matrix right;
  boolean_matrix below;
  boolean_matrix below_right;
};

/// Hamming weight of the OR of the reference block with the shifted share's
/// content over the reference footprint. All blocks must be n_y x (n_x*m);
/// 0 <= x <= n_x*m and 0 <= y <= n_y.
long long stacked_weight(const boolean_matrix& reference_block,
                         const block_neighborhood& shifted, shift s);

/// Exact expectation of the stacked weight over the current pixel's matrix
/// (uniform in its collection) and every required neighbor pixel (color
/// uniform, matrix uniform in that color's collection; all shares of one
/// neighbor pixel read the same matrix). `shares` are 1-based and must have
/// size k. Throws budget_exceeded when enumeration would exceed `budget`.
contrast_report oracle_average_contrast(const stvss_pair& pair, permutation_method method,
                                        std::span<const int> shares,
                                        const shift_assignment& shifts,
                                        std::uint64_t budget = default_enumeration_budget);

struct monte_carlo_report {
  double h_bar = 0;
  double l_bar = 0;
  double a_bar = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
};

/// Unbiased sampling estimator of oracle_average_contrast; deterministic for
/// a fixed seed.
monte_carlo_report monte_carlo_contrast(const stvss_pair& pair, permutation_method method,
                                        std::span<const int> shares,
                                        const shift_assignment& shifts, std::uint64_t samples,
                                        std::uint64_t seed);

/// Average contrast of a traditional (2, n) scheme under a horizontal shift
/// of x pixels (1 <= x <= m-1): -(m-x)/(m(m-1)) * a.
rational analytic_contrast_traditional(int m, const rational& a, int x);

/// Closed-form average contrast of the vector-duplication scheme, piecewise:
///   x = 0:           (n_y-y)/n_y * a
///   1 <= x <= m-1:  -(n_x*m-x)(n_y-y) / (n_x*n_y*m*(m-1)) * a
///   x = m:           (n_x-1)(n_y-y) / (n_x*n_y) * a
/// Valid for 0 <= x <= m and 0 <= y < n_y; anything else throws.
rational analytic_contrast_stvss(stvss_params params, int m, const rational& a, int x, int y);

}  // namespace stvss
