#include "stvss/bits.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace stvss;

namespace {

boolean_matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  boolean_matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng() & 1);
  }
  return m;
}

}  // namespace

TEST_CASE("hamming weight") {
  bit_row v(3);
  v.set(1, true);
  v.set(2, true);
  CHECK(hamming_weight(v) == 2);
  CHECK(hamming_weight(bit_row(0)) == 0);
  bit_row ones(6);
  for (std::size_t i = 0; i < 6; ++i) ones.set(i, true);
  CHECK(hamming_weight(ones) == 6);
}

TEST_CASE("stack_rows matches the worked (2,3) example") {
  boolean_matrix b0 = boolean_matrix::from_strings({"011", "011", "011"});
  boolean_matrix b1 = boolean_matrix::from_strings({"011", "101", "110"});
  std::vector<int> first_two{1, 2};
  CHECK(stack_rows(b1, first_two).weight() == 3);
  CHECK(stack_rows(b0, first_two).weight() == 2);
  std::vector<int> single{2};
  CHECK(stack_rows(b1, single) == b1.row(1));
}

TEST_CASE("stack_rows rejects bad indices") {
  boolean_matrix m = boolean_matrix::from_strings({"01", "10"});
  std::vector<int> out_of_range{1, 3};
  CHECK_THROWS_AS(stack_rows(m, out_of_range), std::out_of_range);
  std::vector<int> zero{0};
  CHECK_THROWS_AS(stack_rows(m, zero), std::out_of_range);
  std::vector<int> duplicate{1, 1};
  CHECK_THROWS_AS(stack_rows(m, duplicate), std::invalid_argument);
}

TEST_CASE("stacking is idempotent, commutative, and monotone") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t rows = 2 + rng() % 5;
    std::size_t cols = 1 + rng() % 70;  // crosses the one-word boundary
    boolean_matrix m = random_matrix(rng, rows, cols);

    std::vector<int> all;
    for (std::size_t r = 1; r <= rows; ++r) all.push_back(static_cast<int>(r));
    std::vector<int> reversed(all.rbegin(), all.rend());
    CHECK(stack_rows(m, all) == stack_rows(m, reversed));

    std::vector<int> single{1};
    CHECK(stack_rows(m, single) == m.row(0));

    std::size_t prefix_weight = 0;
    for (std::size_t take = 1; take <= rows; ++take) {
      std::vector<int> prefix(all.begin(), all.begin() + static_cast<long>(take));
      std::size_t w = stack_rows(m, prefix).weight();
      CHECK(w >= prefix_weight);
      prefix_weight = w;
    }
  }
}

TEST_CASE("from_strings validates input") {
  CHECK_THROWS_AS(boolean_matrix::from_strings({"01", "011"}), std::invalid_argument);
  CHECK_THROWS_AS(boolean_matrix::from_strings({"0a"}), std::invalid_argument);
  CHECK_THROWS_AS(boolean_matrix(0, 3), std::invalid_argument);
}

TEST_CASE("permuted_columns applies the word") {
  boolean_matrix m = boolean_matrix::from_strings({"011", "101"});
  std::vector<std::uint32_t> word{2, 0, 1};
  boolean_matrix p = m.permuted_columns(word);
  CHECK(p == boolean_matrix::from_strings({"101", "110"}));
  std::vector<std::uint32_t> bad{0, 1};
  CHECK_THROWS_AS(m.permuted_columns(bad), std::invalid_argument);
}

TEST_CASE("row_slice extracts share blocks") {
  boolean_matrix m = boolean_matrix::from_strings({"00", "01", "10", "11"});
  boolean_matrix s = m.row_slice(1, 2);
  CHECK(s == boolean_matrix::from_strings({"01", "10"}));
  CHECK_THROWS_AS(m.row_slice(3, 2), std::out_of_range);
}

TEST_CASE("bitmap basics") {
  bitmap b(3, 2);
  CHECK(b.width() == 3);
  CHECK(b.height() == 2);
  b.set(2, 1, true);
  CHECK(b.get(2, 1));
  CHECK(!b.get(0, 0));
  CHECK_THROWS_AS(b.get(3, 0), std::out_of_range);
  CHECK_THROWS_AS(bitmap(0, 1), std::invalid_argument);
}
