#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stvss/construct.hpp"
#include "stvss/rational.hpp"

namespace stvss {

inline constexpr std::uint64_t default_enumeration_budget = 10'000'000;

/// Raised when an exact operation would enumerate more permutation choices
/// than the configured budget; callers fall back to sampling.
struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A permutation word selects one matrix from a collection:
///   synchronized          -- m indices, one permutation applied to every block
///   per_block_independent -- n_x*m indices, m per block, each block alone
///   full                  -- n_x*m indices over all star columns jointly
using perm_word = std::vector<std::uint32_t>;

/// Number of permutation choices: m!, (m!)^{n_x}, or (n_x*m)!.
/// Throws std::overflow_error beyond 64 bits.
std::uint64_t collection_size(const stvss_pair& pair, permutation_method method);

/// Saturating variant for budget checks: returns min(size, cap + 1).
std::uint64_t collection_size_capped(const stvss_pair& pair, permutation_method method,
                                     std::uint64_t cap);

/// The matrix selected by `word` from the color's collection.
boolean_matrix realize_collection_matrix(const stvss_pair& pair, pixel_color color,
                                         permutation_method method, const perm_word& word);

/// Single cell of the selected matrix, without materializing it.
bool collection_cell(const stvss_pair& pair, pixel_color color, permutation_method method,
                     const perm_word& word, std::size_t row, std::size_t col);

perm_word identity_word(const stvss_pair& pair, permutation_method method);

/// Advances `word` to the next choice in lexicographic order; returns false
/// after wrapping back to the identity.
bool next_word(const stvss_pair& pair, permutation_method method, perm_word& word);

/// Calls fn(word, matrix) for every permutation choice in lexicographic
/// order. Throws budget_exceeded when the collection is larger than `budget`.
void for_each_collection_matrix(
    const stvss_pair& pair, pixel_color color, permutation_method method, std::uint64_t budget,
    const std::function<void(const perm_word&, const boolean_matrix&)>& fn);

/// Materialized deterministic sequence, one matrix per permutation choice.
std::vector<boolean_matrix> enumerate_collection(const stvss_pair& pair, pixel_color color,
                                                 permutation_method method,
                                                 std::uint64_t budget = default_enumeration_budget);

/// Uniform over permutation choices; matrices with repeated columns appear
/// with proportional multiplicity.
perm_word sample_word(const stvss_pair& pair, permutation_method method, std::mt19937_64& rng);
boolean_matrix sample_matrix(const stvss_pair& pair, pixel_color color,
                             permutation_method method, std::mt19937_64& rng);

/// Exact marginal distribution of the first `width` entries of the given
/// share row (share and row_in_block 1-based) under a uniformly drawn
/// collection matrix. Keys are bit strings; probabilities sum to 1.
std::vector<std::pair<std::string, rational>> prefix_distribution(
    const stvss_pair& pair, pixel_color color, permutation_method method, int share,
    int row_in_block, int width, std::uint64_t budget = default_enumeration_budget);

/// Unbiased uniform draw from [0, n) by rejection; stable across standard
/// library implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

}  // namespace stvss
