#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stvss {

/// Fixed-width row of bits packed into 64-bit words. Rows of basis matrices
/// fit one word for every scheme in the supported desk-scale range (m <= 64);
/// wider rows spill into further words and just run slower.
class bit_row {
 public:
  bit_row() = default;
  explicit bit_row(std::size_t size);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool v);

  void or_with(const bit_row& other);
  std::size_t weight() const;
  void clear();

  std::span<const std::uint64_t> words() const { return words_; }
  std::uint64_t* word_data() { return words_.data(); }

  friend bool operator==(const bit_row&, const bit_row&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense 0/1 matrix; rows are share rows, columns are sub-pixel positions.
class boolean_matrix {
 public:
  boolean_matrix() = default;
  boolean_matrix(std::size_t rows, std::size_t cols);

  /// Builds from rows like {"011", "101", "110"}; rows must be equal length.
  static boolean_matrix from_strings(std::initializer_list<std::string_view> rows);
  static boolean_matrix from_strings(std::span<const std::string_view> rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool v);

  const bit_row& row(std::size_t r) const;
  std::size_t row_weight(std::size_t r) const { return row(r).weight(); }

  /// New matrix made of `count` consecutive rows starting at `first`.
  boolean_matrix row_slice(std::size_t first, std::size_t count) const;

  /// out(r, j) = (*this)(r, word[j]); word must be a permutation of 0..cols-1.
  boolean_matrix permuted_columns(std::span<const std::uint32_t> word) const;

  friend bool operator==(const boolean_matrix&, const boolean_matrix&) = default;

  /// Rows joined by '\n', bits written as '0'/'1' without separators.
  std::string to_string() const;

 private:
  std::size_t cols_ = 0;
  std::vector<bit_row> rows_;
};

/// Number of 1 entries in the vector.
std::size_t hamming_weight(const bit_row& v);

/// Elementwise OR of the selected rows (1-based, distinct, in range).
bit_row stack_rows(const boolean_matrix& mat, std::span<const int> rows);

/// Black-and-white raster, 1 = black, 0 = white/transparent.
class bitmap {
 public:
  bitmap() = default;
  bitmap(std::size_t width, std::size_t height);

  std::size_t width() const { return width_; }
  std::size_t height() const { return rows_.size(); }

  bool get(std::size_t x, std::size_t y) const;
  void set(std::size_t x, std::size_t y, bool v);

  const bit_row& row(std::size_t y) const;
  bit_row& row(std::size_t y);

  friend bool operator==(const bitmap&, const bitmap&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<bit_row> rows_;
};

}  // namespace stvss
