#include "stvss/bits.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace stvss {

bit_row::bit_row(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

bool bit_row::get(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("bit_row: index out of range");
  return (words_[i / 64] >> (i % 64)) & 1u;
}

void bit_row::set(std::size_t i, bool v) {
  if (i >= size_) throw std::out_of_range("bit_row: index out of range");
  std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (v) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

void bit_row::or_with(const bit_row& other) {
  if (other.size_ != size_) throw std::invalid_argument("bit_row: size mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
}

std::size_t bit_row::weight() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

void bit_row::clear() { std::fill(words_.begin(), words_.end(), 0); }

boolean_matrix::boolean_matrix(std::size_t rows, std::size_t cols) : cols_(cols) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("boolean_matrix: dimensions must be positive");
  }
  rows_.assign(rows, bit_row(cols));
}

boolean_matrix boolean_matrix::from_strings(std::initializer_list<std::string_view> rows) {
  std::vector<std::string_view> v(rows.begin(), rows.end());
  return from_strings(std::span<const std::string_view>(v));
}

boolean_matrix boolean_matrix::from_strings(std::span<const std::string_view> rows) {
  if (rows.empty()) throw std::invalid_argument("boolean_matrix: no rows");
  boolean_matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) {
      throw std::invalid_argument("boolean_matrix: ragged rows");
    }
    for (std::size_t c = 0; c < m.cols_; ++c) {
      char ch = rows[r][c];
      if (ch != '0' && ch != '1') {
        throw std::invalid_argument("boolean_matrix: entries must be 0 or 1");
      }
      m.rows_[r].set(c, ch == '1');
    }
  }
  return m;
}

bool boolean_matrix::get(std::size_t r, std::size_t c) const { return row(r).get(c); }

void boolean_matrix::set(std::size_t r, std::size_t c, bool v) {
  if (r >= rows_.size()) throw std::out_of_range("boolean_matrix: row out of range");
  rows_[r].set(c, v);
}

const bit_row& boolean_matrix::row(std::size_t r) const {
  if (r >= rows_.size()) throw std::out_of_range("boolean_matrix: row out of range");
  return rows_[r];
}

boolean_matrix boolean_matrix::row_slice(std::size_t first, std::size_t count) const {
  if (first + count > rows_.size() || count == 0) {
    throw std::out_of_range("boolean_matrix: row slice out of range");
  }
  boolean_matrix out(count, cols_);
  for (std::size_t r = 0; r < count; ++r) out.rows_[r] = rows_[first + r];
  return out;
}

boolean_matrix boolean_matrix::permuted_columns(std::span<const std::uint32_t> word) const {
  if (word.size() != cols_) {
    throw std::invalid_argument("boolean_matrix: permutation word length mismatch");
  }
  boolean_matrix out(rows(), cols_);
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (word[j] >= cols_) throw std::out_of_range("boolean_matrix: bad permutation word");
      out.rows_[r].set(j, rows_[r].get(word[j]));
    }
  }
  return out;
}

std::string boolean_matrix::to_string() const {
  std::string out;
  for (std::size_t r = 0; r < rows(); ++r) {
    if (r > 0) out.push_back('\n');
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(get(r, c) ? '1' : '0');
  }
  return out;
}

std::size_t hamming_weight(const bit_row& v) { return v.weight(); }

bit_row stack_rows(const boolean_matrix& mat, std::span<const int> rows) {
  if (rows.empty()) throw std::invalid_argument("stack_rows: empty row set");
  bit_row acc(mat.cols());
  std::vector<bool> seen(mat.rows(), false);
  for (int r1 : rows) {
    if (r1 < 1 || static_cast<std::size_t>(r1) > mat.rows()) {
      throw std::out_of_range("stack_rows: row index out of range");
    }
    if (seen[static_cast<std::size_t>(r1 - 1)]) {
      throw std::invalid_argument("stack_rows: duplicate row index");
    }
    seen[static_cast<std::size_t>(r1 - 1)] = true;
    acc.or_with(mat.row(static_cast<std::size_t>(r1 - 1)));
  }
  return acc;
}

bitmap::bitmap(std::size_t width, std::size_t height) : width_(width) {
  if (width == 0 || height == 0) {
    throw std::invalid_argument("bitmap: dimensions must be positive");
  }
  rows_.assign(height, bit_row(width));
}

bool bitmap::get(std::size_t x, std::size_t y) const { return row(y).get(x); }

void bitmap::set(std::size_t x, std::size_t y, bool v) { row(y).set(x, v); }

const bit_row& bitmap::row(std::size_t y) const {
  if (y >= rows_.size()) throw std::out_of_range("bitmap: row out of range");
  return rows_[y];
}

bit_row& bitmap::row(std::size_t y) {
  if (y >= rows_.size()) throw std::out_of_range("bitmap: row out of range");
  return rows_[y];
}

}  // namespace stvss
