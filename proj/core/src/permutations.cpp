#include "stvss/permutations.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace stvss {

namespace {

std::uint64_t factorial_capped(std::uint64_t n, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (f > cap / i) return cap + 1;
    f *= i;
  }
  return f;
}

std::uint64_t pow_capped(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

}  // namespace

std::uint64_t collection_size_capped(const stvss_pair& pair, permutation_method method,
                                     std::uint64_t cap) {
  auto m = static_cast<std::uint64_t>(pair.base_m());
  switch (method) {
    case permutation_method::synchronized:
      return factorial_capped(m, cap);
    case permutation_method::per_block_independent: {
      std::uint64_t block = factorial_capped(m, cap);
      if (block > cap) return cap + 1;
      return pow_capped(block, pair.params().nx, cap);
    }
    case permutation_method::full:
      return factorial_capped(static_cast<std::uint64_t>(pair.block_width()), cap);
  }
  return cap + 1;
}

std::uint64_t collection_size(const stvss_pair& pair, permutation_method method) {
  std::uint64_t cap = std::numeric_limits<std::uint64_t>::max() - 1;
  std::uint64_t size = collection_size_capped(pair, method, cap);
  if (size > cap) throw std::overflow_error("collection_size: exceeds 64 bits");
  return size;
}

perm_word identity_word(const stvss_pair& pair, permutation_method method) {
  std::size_t len = 0;
  switch (method) {
    case permutation_method::synchronized:
      len = static_cast<std::size_t>(pair.base_m());
      break;
    case permutation_method::per_block_independent:
    case permutation_method::full:
      len = static_cast<std::size_t>(pair.block_width());
      break;
  }
  perm_word word(len);
  if (method == permutation_method::per_block_independent) {
    auto m = static_cast<std::size_t>(pair.base_m());
    for (std::size_t i = 0; i < len; ++i) word[i] = static_cast<std::uint32_t>(i % m);
  } else {
    std::iota(word.begin(), word.end(), 0u);
  }
  return word;
}

bool next_word(const stvss_pair& pair, permutation_method method, perm_word& word) {
  if (method != permutation_method::per_block_independent) {
    return std::next_permutation(word.begin(), word.end());
  }
  // Odometer over the blocks, rightmost block advancing fastest, which keeps
  // the concatenated word in lexicographic order.
  auto m = static_cast<std::size_t>(pair.base_m());
  std::size_t blocks = word.size() / m;
  for (std::size_t b = blocks; b-- > 0;) {
    auto first = word.begin() + static_cast<std::ptrdiff_t>(b * m);
    auto last = first + static_cast<std::ptrdiff_t>(m);
    if (std::next_permutation(first, last)) return true;
  }
  return false;
}

boolean_matrix realize_collection_matrix(const stvss_pair& pair, pixel_color color,
                                         permutation_method method, const perm_word& word) {
  const boolean_matrix& star = pair.star(color);
  switch (method) {
    case permutation_method::synchronized: {
      const boolean_matrix& base =
          color == pixel_color::white ? pair.base().b0() : pair.base().b1();
      boolean_matrix permuted = base.permuted_columns(word);
      boolean_matrix out(star.rows(), star.cols());
      auto ny = static_cast<std::size_t>(pair.params().ny);
      auto nx = static_cast<std::size_t>(pair.params().nx);
      auto m = static_cast<std::size_t>(pair.base_m());
      for (std::size_t r = 0; r < out.rows(); ++r) {
        std::size_t base_row = r / ny;
        for (std::size_t c = 0; c < out.cols(); ++c) {
          std::size_t base_col =
              pair.kind() == stvss_kind::vector_dup ? c % m : c / nx;
          out.set(r, c, permuted.get(base_row, base_col));
        }
      }
      return out;
    }
    case permutation_method::per_block_independent: {
      auto m = static_cast<std::size_t>(pair.base_m());
      if (word.size() != star.cols()) {
        throw std::invalid_argument("realize: word length mismatch");
      }
      boolean_matrix out(star.rows(), star.cols());
      for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = 0; c < out.cols(); ++c) {
          std::size_t block = c / m;
          out.set(r, c, star.get(r, block * m + word[c]));
        }
      }
      return out;
    }
    case permutation_method::full:
      return star.permuted_columns(word);
  }
  throw std::logic_error("realize: unreachable");
}

bool collection_cell(const stvss_pair& pair, pixel_color color, permutation_method method,
                     const perm_word& word, std::size_t row, std::size_t col) {
  const boolean_matrix& star = pair.star(color);
  auto m = static_cast<std::size_t>(pair.base_m());
  switch (method) {
    case permutation_method::synchronized: {
      const boolean_matrix& base =
          color == pixel_color::white ? pair.base().b0() : pair.base().b1();
      std::size_t base_row = row / static_cast<std::size_t>(pair.params().ny);
      std::size_t base_col =
          pair.kind() == stvss_kind::vector_dup
              ? col % m
              : col / static_cast<std::size_t>(pair.params().nx);
      return base.get(base_row, word[base_col]);
    }
    case permutation_method::per_block_independent: {
      std::size_t block = col / m;
      return star.get(row, block * m + word[col]);
    }
    case permutation_method::full:
      return star.get(row, word[col]);
  }
  throw std::logic_error("collection_cell: unreachable");
}

void for_each_collection_matrix(
    const stvss_pair& pair, pixel_color color, permutation_method method, std::uint64_t budget,
    const std::function<void(const perm_word&, const boolean_matrix&)>& fn) {
  if (collection_size_capped(pair, method, budget) > budget) {
    throw budget_exceeded("collection enumeration exceeds budget of " + std::to_string(budget) +
                          " permutation choices");
  }
  perm_word word = identity_word(pair, method);
  do {
    fn(word, realize_collection_matrix(pair, color, method, word));
  } while (next_word(pair, method, word));
}

std::vector<boolean_matrix> enumerate_collection(const stvss_pair& pair, pixel_color color,
                                                 permutation_method method, std::uint64_t budget) {
  std::vector<boolean_matrix> out;
  for_each_collection_matrix(pair, color, method, budget,
                             [&](const perm_word&, const boolean_matrix& m) { out.push_back(m); });
  return out;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    std::uint64_t v = rng();
    if (v < limit) return v % n;
  }
}

namespace {

void shuffle_segment(perm_word& word, std::size_t first, std::size_t count,
                     std::mt19937_64& rng) {
  for (std::size_t i = count; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(word[first + i - 1], word[first + j]);
  }
}

}  // namespace

perm_word sample_word(const stvss_pair& pair, permutation_method method, std::mt19937_64& rng) {
  perm_word word = identity_word(pair, method);
  if (method == permutation_method::per_block_independent) {
    auto m = static_cast<std::size_t>(pair.base_m());
    for (std::size_t b = 0; b < word.size() / m; ++b) shuffle_segment(word, b * m, m, rng);
  } else {
    shuffle_segment(word, 0, word.size(), rng);
  }
  return word;
}

boolean_matrix sample_matrix(const stvss_pair& pair, pixel_color color,
                             permutation_method method, std::mt19937_64& rng) {
  return realize_collection_matrix(pair, color, method, sample_word(pair, method, rng));
}

std::vector<std::pair<std::string, rational>> prefix_distribution(
    const stvss_pair& pair, pixel_color color, permutation_method method, int share,
    int row_in_block, int width, std::uint64_t budget) {
  if (share < 1 || share > pair.n()) {
    throw std::out_of_range("prefix_distribution: share index out of range");
  }
  if (row_in_block < 1 || row_in_block > pair.block_height()) {
    throw std::out_of_range("prefix_distribution: row index out of range");
  }
  if (width < 0 || width > pair.block_width()) {
    throw std::out_of_range("prefix_distribution: width out of range");
  }
  std::size_t row = static_cast<std::size_t>(share - 1) *
                        static_cast<std::size_t>(pair.block_height()) +
                    static_cast<std::size_t>(row_in_block - 1);
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
  for_each_collection_matrix(pair, color, method, budget,
                             [&](const perm_word&, const boolean_matrix& m) {
                               std::string key;
                               key.reserve(static_cast<std::size_t>(width));
                               for (int c = 0; c < width; ++c) {
                                 key.push_back(m.get(row, static_cast<std::size_t>(c)) ? '1' : '0');
                               }
                               ++counts[key];
                               ++total;
                             });
  std::vector<std::pair<std::string, rational>> out;
  out.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    out.emplace_back(key, rational(static_cast<long long>(count), static_cast<long long>(total)));
  }
  return out;
}

stvss_security_report verify_stvss_security(const stvss_pair& pair, permutation_method method,
                                            std::uint64_t budget) {
  stvss_security_report report;
  // Per-share block weights must be indistinguishable.
  for (int i = 1; i <= pair.n(); ++i) {
    std::size_t w0 = 0;
    std::size_t w1 = 0;
    boolean_matrix blk0 = pair.share_block(pixel_color::white, i);
    boolean_matrix blk1 = pair.share_block(pixel_color::black, i);
    for (std::size_t r = 0; r < blk0.rows(); ++r) {
      w0 += blk0.row_weight(r);
      w1 += blk1.row_weight(r);
    }
    if (w0 != w1) {
      report.ok = false;
      report.subset = {i};
      report.detail = "share block weights differ";
      return report;
    }
  }

  // Restricted collections for every q < k share subset must match as
  // multisets.
  int n = pair.n();
  int k = pair.k();
  int ny = pair.block_height();
  auto restrict_key = [&](const boolean_matrix& m, const std::vector<int>& subset) {
    std::string key;
    for (int s : subset) {
      for (int r = 0; r < ny; ++r) {
        std::size_t row = static_cast<std::size_t>(s - 1) * static_cast<std::size_t>(ny) +
                          static_cast<std::size_t>(r);
        for (std::size_t c = 0; c < m.cols(); ++c) key.push_back(m.get(row, c) ? '1' : '0');
      }
      key.push_back('|');
    }
    return key;
  };

  bool enumerable = collection_size_capped(pair, method, budget) <= budget;
  report.exhaustive_enumeration = enumerable;

  std::vector<std::vector<int>> subsets;
  {
    std::vector<int> idx;
    std::function<void(int, int)> gen = [&](int start, int remaining) {
      if (remaining == 0) {
        subsets.push_back(idx);
        return;
      }
      for (int v = start; v <= n - remaining + 1; ++v) {
        idx.push_back(v);
        gen(v + 1, remaining - 1);
        idx.pop_back();
      }
    };
    for (int q = 1; q < k; ++q) gen(1, q);
  }

  if (enumerable) {
    for (const auto& subset : subsets) {
      std::map<std::string, std::int64_t> delta;
      for_each_collection_matrix(pair, pixel_color::white, method, budget,
                                 [&](const perm_word&, const boolean_matrix& m) {
                                   ++delta[restrict_key(m, subset)];
                                 });
      for_each_collection_matrix(pair, pixel_color::black, method, budget,
                                 [&](const perm_word&, const boolean_matrix& m) {
                                   --delta[restrict_key(m, subset)];
                                 });
      for (const auto& [key, count] : delta) {
        if (count != 0) {
          report.ok = false;
          report.subset = subset;
          report.detail = "restricted collections differ as multisets";
          return report;
        }
      }
    }
  } else {
    // Column permutations act transitively on column arrangements, so the
    // restricted collections are equal as multisets exactly when the
    // restricted star matrices have equal column multisets. This check is
    // exact; the flag records that no enumeration ran.
    report.detail = "collection too large to enumerate; used column-multiset equivalence";
    for (const auto& subset : subsets) {
      std::map<std::string, int> c0;
      std::map<std::string, int> c1;
      for (std::size_t c = 0; c < pair.b0_star().cols(); ++c) {
        std::string p0;
        std::string p1;
        for (int s : subset) {
          for (int r = 0; r < ny; ++r) {
            std::size_t row = static_cast<std::size_t>(s - 1) * static_cast<std::size_t>(ny) +
                              static_cast<std::size_t>(r);
            p0.push_back(pair.b0_star().get(row, c) ? '1' : '0');
            p1.push_back(pair.b1_star().get(row, c) ? '1' : '0');
          }
        }
        ++c0[p0];
        ++c1[p1];
      }
      if (c0 != c1) {
        report.ok = false;
        report.subset = subset;
        report.detail = "restricted star column multisets differ";
        return report;
      }
    }
  }
  return report;
}

}  // namespace stvss
