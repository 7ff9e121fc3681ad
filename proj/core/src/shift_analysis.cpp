#include "stvss/shift_analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace stvss {

namespace {

enum slot_id { slot_current = 0, slot_right = 1, slot_below = 2, slot_below_right = 3 };
constexpr int num_slots = 4;

// Where one footprint cell of one share reads from: a slot (current block or
// one of its three neighbors) and block-local coordinates inside that slot.
struct cell_source {
  int slot;
  int row;
  int col;
};

cell_source locate(int r, int c, shift s, int height, int width) {
  int rr = r + s.y;
  int cc = c + s.x;
  cell_source src{};
  if (rr < height) {
    src.slot = cc < width ? slot_current : slot_right;
    src.row = rr;
  } else {
    src.slot = cc < width ? slot_below : slot_below_right;
    src.row = rr - height;
  }
  src.col = cc < width ? cc : cc - width;
  return src;
}

void check_shift_bounds(shift s, int height, int width) {
  if (s.x < 0 || s.x > width || s.y < 0 || s.y > height) {
    throw std::out_of_range("shift: requires 0 <= x <= n_x*m and 0 <= y <= n_y");
  }
}

}  // namespace

shift_assignment::shift_assignment(int reference_share) : reference_(reference_share) {
  if (reference_share < 1) {
    throw std::invalid_argument("shift_assignment: share indices are 1-based");
  }
}

shift_assignment& shift_assignment::set(int share, shift s) {
  if (share < 1) throw std::invalid_argument("shift_assignment: share indices are 1-based");
  if (share == reference_) {
    throw std::invalid_argument("shift_assignment: the reference share is never shifted");
  }
  offsets_[share] = s;
  return *this;
}

shift shift_assignment::of(int share) const {
  auto it = offsets_.find(share);
  return it == offsets_.end() ? shift{} : it->second;
}

long long stacked_weight(const boolean_matrix& reference_block, const block_neighborhood& shifted,
                         shift s) {
  const int height = static_cast<int>(reference_block.rows());
  const int width = static_cast<int>(reference_block.cols());
  const boolean_matrix* slots[num_slots] = {&shifted.current, &shifted.right, &shifted.below,
                                            &shifted.below_right};
  for (const boolean_matrix* block : slots) {
    if (static_cast<int>(block->rows()) != height || static_cast<int>(block->cols()) != width) {
      throw std::invalid_argument("stacked_weight: block dimensions differ");
    }
  }
  check_shift_bounds(s, height, width);
  long long weight = 0;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      cell_source src = locate(r, c, s, height, width);
      bool bit = reference_block.get(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) ||
                 slots[src.slot]->get(static_cast<std::size_t>(src.row),
                                      static_cast<std::size_t>(src.col));
      weight += bit ? 1 : 0;
    }
  }
  return weight;
}

namespace {

// One needed cell of a neighbor slot: which share block it lives in, where,
// and which footprint position it lands on.
struct slot_cell {
  int share;  // 1-based
  int row;
  int col;
  int foot_r;
  int foot_c;
};

struct slot_table {
  bool needed = false;
  std::vector<slot_cell> cells;
  // Distinct relevant contents with multiplicities; masks are per footprint
  // row, `words` words each.
  std::vector<std::vector<std::uint64_t>> key_masks;
  std::vector<std::uint64_t> key_mults;
  std::uint64_t total = 1;
};

struct oracle_problem {
  const stvss_pair* pair;
  permutation_method method;
  std::vector<int> shares;
  std::vector<shift> share_shifts;
  int height;
  int width;
  int words;  // words per footprint row
  // Per share, per footprint cell: source.
  std::vector<std::vector<cell_source>> sources;
  slot_table slots[num_slots];  // slot_current unused
};

oracle_problem build_problem(const stvss_pair& pair, permutation_method method,
                             std::span<const int> shares, const shift_assignment& shifts) {
  oracle_problem p;
  p.pair = &pair;
  p.method = method;
  p.height = pair.block_height();
  p.width = pair.block_width();
  p.words = (p.width + 63) / 64;

  if (static_cast<int>(shares.size()) != pair.k()) {
    throw std::invalid_argument("oracle: need exactly k shares");
  }
  std::vector<int> seen;
  for (int s : shares) {
    if (s < 1 || s > pair.n()) throw std::out_of_range("oracle: share index out of range");
    if (std::find(seen.begin(), seen.end(), s) != seen.end()) {
      throw std::invalid_argument("oracle: duplicate share index");
    }
    seen.push_back(s);
  }
  if (std::find(seen.begin(), seen.end(), shifts.reference()) == seen.end()) {
    throw std::invalid_argument("oracle: reference share must be one of the stacked shares");
  }
  for (const auto& [share, s] : shifts.offsets()) {
    if (std::find(seen.begin(), seen.end(), share) == seen.end()) {
      throw std::invalid_argument("oracle: shift assigned to a share that is not stacked");
    }
    check_shift_bounds(s, p.height, p.width);
  }

  p.shares.assign(shares.begin(), shares.end());
  for (int s : p.shares) p.share_shifts.push_back(shifts.of(s));

  p.sources.resize(p.shares.size());
  for (std::size_t j = 0; j < p.shares.size(); ++j) {
    p.sources[j].reserve(static_cast<std::size_t>(p.height * p.width));
    for (int r = 0; r < p.height; ++r) {
      for (int c = 0; c < p.width; ++c) {
        cell_source src = locate(r, c, p.share_shifts[j], p.height, p.width);
        p.sources[j].push_back(src);
        if (src.slot != slot_current) {
          p.slots[src.slot].needed = true;
          p.slots[src.slot].cells.push_back({p.shares[j], src.row, src.col, r, c});
        }
      }
    }
  }
  return p;
}

// Enumerates both colors of the collection once and groups the matrices by
// the content of the slot's needed cells.
void build_slot_table(const stvss_pair& pair, permutation_method method, std::uint64_t budget,
                      slot_table& slot, int height, int words) {
  if (!slot.needed) {
    slot.key_masks.push_back(std::vector<std::uint64_t>(
        static_cast<std::size_t>(height) * static_cast<std::size_t>(words), 0));
    slot.key_mults.push_back(1);
    slot.total = 1;
    return;
  }
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
  for (pixel_color color : {pixel_color::white, pixel_color::black}) {
    for_each_collection_matrix(
        pair, color, method, budget, [&](const perm_word&, const boolean_matrix& m) {
          std::string key;
          key.reserve(slot.cells.size());
          for (const slot_cell& cell : slot.cells) {
            std::size_t row = static_cast<std::size_t>(cell.share - 1) *
                                  static_cast<std::size_t>(height) +
                              static_cast<std::size_t>(cell.row);
            key.push_back(m.get(row, static_cast<std::size_t>(cell.col)) ? '1' : '0');
          }
          ++counts[key];
          ++total;
        });
  }
  slot.total = total;
  for (const auto& [key, mult] : counts) {
    std::vector<std::uint64_t> mask(
        static_cast<std::size_t>(height) * static_cast<std::size_t>(words), 0);
    for (std::size_t i = 0; i < slot.cells.size(); ++i) {
      if (key[i] != '1') continue;
      const slot_cell& cell = slot.cells[i];
      mask[static_cast<std::size_t>(cell.foot_r) * static_cast<std::size_t>(words) +
           static_cast<std::size_t>(cell.foot_c / 64)] |=
          std::uint64_t{1} << (cell.foot_c % 64);
    }
    slot.key_masks.push_back(std::move(mask));
    slot.key_mults.push_back(mult);
  }
}

// OR of all current-sourced content over the footprint for one collection
// matrix, as packed words per footprint row.
void accumulate_current(const oracle_problem& p, const boolean_matrix& m,
                        std::vector<std::uint64_t>& acc) {
  std::fill(acc.begin(), acc.end(), 0);
  for (std::size_t j = 0; j < p.shares.size(); ++j) {
    std::size_t block_top = static_cast<std::size_t>(p.shares[j] - 1) *
                            static_cast<std::size_t>(p.height);
    const auto& sources = p.sources[j];
    for (int r = 0; r < p.height; ++r) {
      for (int c = 0; c < p.width; ++c) {
        const cell_source& src = sources[static_cast<std::size_t>(r * p.width + c)];
        if (src.slot != slot_current) continue;
        if (m.get(block_top + static_cast<std::size_t>(src.row),
                  static_cast<std::size_t>(src.col))) {
          acc[static_cast<std::size_t>(r) * static_cast<std::size_t>(p.words) +
              static_cast<std::size_t>(c / 64)] |= std::uint64_t{1} << (c % 64);
        }
      }
    }
  }
}

struct color_totals {
  unsigned __int128 weight = 0;
  std::vector<unsigned __int128> row_weight;
  unsigned __int128 denominator = 0;
};

color_totals run_color(const oracle_problem& p, pixel_color color, std::uint64_t budget) {
  const slot_table& right = p.slots[slot_right];
  const slot_table& below = p.slots[slot_below];
  const slot_table& corner = p.slots[slot_below_right];

  std::uint64_t current_size = collection_size_capped(*p.pair, p.method, budget);
  if (current_size > budget) {
    throw budget_exceeded("oracle: collection size exceeds budget");
  }
  unsigned __int128 combos = static_cast<unsigned __int128>(current_size) *
                             right.key_masks.size() * below.key_masks.size() *
                             corner.key_masks.size();
  if (combos > budget) {
    throw budget_exceeded("oracle: case enumeration exceeds budget; use the Monte Carlo estimator");
  }

  color_totals totals;
  totals.row_weight.assign(static_cast<std::size_t>(p.height), 0);
  std::vector<std::uint64_t> acc(
      static_cast<std::size_t>(p.height) * static_cast<std::size_t>(p.words), 0);

  std::uint64_t enumerated = 0;
  for_each_collection_matrix(
      *p.pair, color, p.method, budget, [&](const perm_word&, const boolean_matrix& m) {
        ++enumerated;
        accumulate_current(p, m, acc);
        for (std::size_t ir = 0; ir < right.key_masks.size(); ++ir) {
          for (std::size_t ib = 0; ib < below.key_masks.size(); ++ib) {
            for (std::size_t ic = 0; ic < corner.key_masks.size(); ++ic) {
              std::uint64_t mult = right.key_mults[ir] * below.key_mults[ib];
              mult *= corner.key_mults[ic];
              for (int r = 0; r < p.height; ++r) {
                std::uint64_t row_bits = 0;
                for (int w = 0; w < p.words; ++w) {
                  std::size_t idx = static_cast<std::size_t>(r) *
                                        static_cast<std::size_t>(p.words) +
                                    static_cast<std::size_t>(w);
                  std::uint64_t v = acc[idx] | right.key_masks[ir][idx] |
                                    below.key_masks[ib][idx] | corner.key_masks[ic][idx];
                  row_bits += static_cast<std::uint64_t>(std::popcount(v));
                }
                totals.row_weight[static_cast<std::size_t>(r)] +=
                    static_cast<unsigned __int128>(row_bits) * mult;
              }
            }
          }
        }
      });
  for (const auto& rw : totals.row_weight) totals.weight += rw;
  totals.denominator = static_cast<unsigned __int128>(enumerated) * right.total * below.total *
                       corner.total;
  return totals;
}

rational to_rational(unsigned __int128 num, unsigned __int128 den) {
  return rational::from_int128(static_cast<__int128>(num), static_cast<__int128>(den));
}

}  // namespace

contrast_report oracle_average_contrast(const stvss_pair& pair, permutation_method method,
                                        std::span<const int> shares,
                                        const shift_assignment& shifts, std::uint64_t budget) {
  oracle_problem p = build_problem(pair, method, shares, shifts);
  for (slot_table& slot : p.slots) {
    build_slot_table(pair, method, budget, slot, p.height, p.words);
  }
  color_totals white = run_color(p, pixel_color::white, budget);
  color_totals black = run_color(p, pixel_color::black, budget);

  contrast_report report;
  report.m_star = pair.expansion();
  report.l_bar = to_rational(white.weight, white.denominator);
  report.h_bar = to_rational(black.weight, black.denominator);
  report.a_bar = (report.h_bar - report.l_bar) / rational(report.m_star);
  for (int r = 0; r < p.height; ++r) {
    report.l_rows.push_back(
        to_rational(white.row_weight[static_cast<std::size_t>(r)], white.denominator));
    report.h_rows.push_back(
        to_rational(black.row_weight[static_cast<std::size_t>(r)], black.denominator));
  }
  return report;
}

monte_carlo_report monte_carlo_contrast(const stvss_pair& pair, permutation_method method,
                                        std::span<const int> shares,
                                        const shift_assignment& shifts, std::uint64_t samples,
                                        std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("monte_carlo_contrast: samples must be >= 1");
  oracle_problem p = build_problem(pair, method, shares, shifts);
  std::mt19937_64 rng(seed);

  const double m_star = static_cast<double>(pair.expansion());
  double sum_d = 0;
  double sum_d2 = 0;
  double sum_w = 0;
  double sum_b = 0;

  // Sampled slot contents, stored as footprint-row masks.
  std::vector<std::uint64_t> slot_mask[num_slots];
  for (auto& mask : slot_mask) {
    mask.assign(static_cast<std::size_t>(p.height) * static_cast<std::size_t>(p.words), 0);
  }
  std::vector<std::uint64_t> acc(slot_mask[0].size(), 0);

  auto sample_slot = [&](int slot_idx) {
    auto& mask = slot_mask[slot_idx];
    std::fill(mask.begin(), mask.end(), 0);
    const slot_table& slot = p.slots[slot_idx];
    if (!slot.needed) return;
    pixel_color color = uniform_below(rng, 2) == 0 ? pixel_color::white : pixel_color::black;
    perm_word word = sample_word(pair, method, rng);
    for (const slot_cell& cell : slot.cells) {
      std::size_t row = static_cast<std::size_t>(cell.share - 1) *
                            static_cast<std::size_t>(p.height) +
                        static_cast<std::size_t>(cell.row);
      if (collection_cell(pair, color, method, word, row, static_cast<std::size_t>(cell.col))) {
        mask[static_cast<std::size_t>(cell.foot_r) * static_cast<std::size_t>(p.words) +
             static_cast<std::size_t>(cell.foot_c / 64)] |= std::uint64_t{1}
                                                            << (cell.foot_c % 64);
      }
    }
  };

  auto stacked = [&](pixel_color color, const perm_word& word) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t j = 0; j < p.shares.size(); ++j) {
      std::size_t block_top = static_cast<std::size_t>(p.shares[j] - 1) *
                              static_cast<std::size_t>(p.height);
      for (int r = 0; r < p.height; ++r) {
        for (int c = 0; c < p.width; ++c) {
          const cell_source& src = p.sources[j][static_cast<std::size_t>(r * p.width + c)];
          if (src.slot != slot_current) continue;
          if (collection_cell(pair, color, method, word,
                              block_top + static_cast<std::size_t>(src.row),
                              static_cast<std::size_t>(src.col))) {
            acc[static_cast<std::size_t>(r) * static_cast<std::size_t>(p.words) +
                static_cast<std::size_t>(c / 64)] |= std::uint64_t{1} << (c % 64);
          }
        }
      }
    }
    long long weight = 0;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      std::uint64_t v = acc[i] | slot_mask[slot_right][i] | slot_mask[slot_below][i] |
                        slot_mask[slot_below_right][i];
      weight += std::popcount(v);
    }
    return weight;
  };

  for (std::uint64_t i = 0; i < samples; ++i) {
    sample_slot(slot_right);
    sample_slot(slot_below);
    sample_slot(slot_below_right);
    perm_word white_word = sample_word(pair, method, rng);
    perm_word black_word = sample_word(pair, method, rng);
    long long w = stacked(pixel_color::white, white_word);
    long long b = stacked(pixel_color::black, black_word);
    double d = (static_cast<double>(b) - static_cast<double>(w)) / m_star;
    sum_d += d;
    sum_d2 += d * d;
    sum_w += static_cast<double>(w);
    sum_b += static_cast<double>(b);
  }

  monte_carlo_report report;
  report.samples = samples;
  report.l_bar = sum_w / static_cast<double>(samples);
  report.h_bar = sum_b / static_cast<double>(samples);
  report.a_bar = sum_d / static_cast<double>(samples);
  if (samples > 1) {
    double mean = report.a_bar;
    double var = (sum_d2 - static_cast<double>(samples) * mean * mean) /
                 static_cast<double>(samples - 1);
    report.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
  }
  return report;
}

rational analytic_contrast_traditional(int m, const rational& a, int x) {
  if (m < 2) throw std::invalid_argument("analytic_contrast_traditional: requires m >= 2");
  if (x < 1 || x > m - 1) {
    throw std::out_of_range("analytic_contrast_traditional: requires 1 <= x <= m-1");
  }
  return rational(-(m - x), m * (m - 1)) * a;
}

rational analytic_contrast_stvss(stvss_params params, int m, const rational& a, int x, int y) {
  if (params.nx < 1 || params.ny < 1 || m < 1) {
    throw std::invalid_argument("analytic_contrast_stvss: bad parameters");
  }
  if (y < 0 || y >= params.ny) {
    throw std::out_of_range("analytic_contrast_stvss: requires 0 <= y < n_y");
  }
  if (x < 0 || x > m) {
    throw std::out_of_range("analytic_contrast_stvss: formulas cover 0 <= x <= m");
  }
  if (x == 0) {
    return rational(params.ny - y, params.ny) * a;
  }
  if (x == m) {
    return rational((params.nx - 1) * (params.ny - y), params.nx * params.ny) * a;
  }
  long long num = -static_cast<long long>(params.nx) * m + x;
  num *= (params.ny - y);
  long long den = static_cast<long long>(params.nx) * params.ny * m * (m - 1);
  return rational(num, den) * a;
}

}  // namespace stvss
