#pragma once

// Dense linear algebra over GF(2).
//
// Index convention: entry 0 of a vector is the most significant bit level.
// A shift S^k moves entry j to entry j+k and discards whatever falls past the
// end, so a gain-n link of an m-level channel is S^(m-n): the top n levels of
// the input arrive in the bottom n positions of the output.
//
// Storage packs entry i into bit (i % 64) of word (i / 64). With that layout,
// applying S^k to a vector of length <= 64 is a left shift of its word.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace cifc::gf2 {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t len);

  /// Low `len` bits of `word`, entry i taken from bit i.
  static BitVector from_word(std::uint64_t word, std::size_t len);
  static BitVector random(std::size_t len, std::mt19937_64& rng);

  std::size_t size() const noexcept { return len_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);

  bool any() const noexcept;
  std::size_t count() const noexcept;

  /// Packed form; only valid for size() <= 64.
  std::uint64_t to_word() const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend bool operator==(const BitVector&, const BitVector&) = default;

  std::string to_string() const;

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static BitMatrix identity(std::size_t n);
  static BitMatrix random(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static BitMatrix from_columns(std::size_t rows, std::span<const BitVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value = true);

  BitVector row(std::size_t r) const;
  BitVector column(std::size_t c) const;
  void set_column(std::size_t c, const BitVector& v);
  /// XOR row `src` into row `dst`.
  void add_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);

  /// Packed column words; only valid for rows() <= 64.
  std::vector<std::uint64_t> column_words() const;

  BitMatrix transpose() const;
  BitMatrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t r0, std::size_t c0, const BitMatrix& b);
  BitMatrix select_columns(std::span<const std::size_t> idx) const;

  BitVector apply(const BitVector& x) const;

  bool is_zero() const noexcept;
  bool is_identity() const noexcept;

  BitMatrix& operator+=(const BitMatrix& other);
  friend BitMatrix operator+(BitMatrix a, const BitMatrix& b) { return a += b; }
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t word_index(std::size_t r, std::size_t c) const noexcept {
    return r * words_per_row_ + c / 64;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// m x m matrix of S^k. S^0 = I and S^k = 0 for k >= m.
BitMatrix shift_matrix(std::size_t m, std::size_t k);

/// Throws DimensionMismatch unless a.cols() == b.rows().
BitMatrix matmul(const BitMatrix& a, const BitMatrix& b);
inline BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) { return matmul(a, b); }

BitMatrix hstack(const BitMatrix& a, const BitMatrix& b);
BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);

std::size_t rank(const BitMatrix& m);

/// Throws DimensionMismatch for non-square input, SingularMatrix when rank-deficient.
BitMatrix invert(const BitMatrix& m);

/// Columns form a basis of the right null space {x : m x = 0}.
BitMatrix null_space(const BitMatrix& m);

/// Indices of a maximal set of candidate columns that extends a basis of
/// col(span). The count is rank([span | candidates]) - rank(span).
/// Candidates are scanned left to right.
std::vector<std::size_t> basis_complete(const BitMatrix& span, const BitMatrix& candidates);

/// Solves x * a = b for x (row-space solve). Returns false when no solution
/// exists. Used to build left-inverse style decoders.
bool solve_left(const BitMatrix& a, const BitMatrix& b, BitMatrix& x);

}  // namespace cifc::gf2
