#include "cifc/gf2/bit_matrix.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <utility>

#include "cifc/error.hpp"

namespace cifc::gf2 {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

std::uint64_t tail_mask(std::size_t len) {
  const std::size_t r = len % 64;
  return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

// Reduced row echelon form restricted to the first `pivot_cols` columns,
// leftmost pivot first. Returns the pivot column of each pivot row, in order.
std::vector<std::size_t> rref(BitMatrix& a, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < pivot_cols && prow < a.rows(); ++c) {
    std::size_t sel = prow;
    while (sel < a.rows() && !a.get(sel, c)) ++sel;
    if (sel == a.rows()) continue;
    a.swap_rows(prow, sel);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r != prow && a.get(r, c)) a.add_row(r, prow);
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

}  // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::size_t len) : len_(len), words_(words_for(len), 0) {}

BitVector BitVector::from_word(std::uint64_t word, std::size_t len) {
  if (len > 64) throw DimensionMismatch("BitVector::from_word: length exceeds 64");
  BitVector v(len);
  if (len > 0) v.words_[0] = word & tail_mask(len);
  return v;
}

BitVector BitVector::random(std::size_t len, std::mt19937_64& rng) {
  BitVector v(len);
  for (auto& w : v.words_) w = rng();
  if (!v.words_.empty()) v.words_.back() &= tail_mask(len);
  return v;
}

bool BitVector::get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= bit;
  } else {
    words_[i / 64] &= ~bit;
  }
}

void BitVector::flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

bool BitVector::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVector::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::uint64_t BitVector::to_word() const {
  if (len_ > 64) throw DimensionMismatch("BitVector::to_word: length exceeds 64");
  return words_.empty() ? 0 : words_[0];
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.len_ != len_) throw DimensionMismatch("BitVector xor: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::string BitVector::to_string() const {
  std::string s;
  s.reserve(len_);
  for (std::size_t i = 0; i < len_; ++i) s.push_back(get(i) ? '1' : '0');
  return s;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_(words_for(cols)), bits_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  BitMatrix m(rows, cols);
  if (cols == 0) return m;
  const std::uint64_t mask = tail_mask(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t w = 0; w < m.words_per_row_; ++w) m.bits_[r * m.words_per_row_ + w] = rng();
    m.bits_[r * m.words_per_row_ + m.words_per_row_ - 1] &= mask;
  }
  return m;
}

BitMatrix BitMatrix::from_columns(std::size_t rows, std::span<const BitVector> columns) {
  BitMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  return (bits_[word_index(r, c)] >> (c % 64)) & 1U;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  auto& w = bits_[word_index(r, c)];
  w = value ? (w | bit) : (w & ~bit);
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (get(r, c)) v.set(c);
  }
  return v;
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (get(r, c)) v.set(r);
  }
  return v;
}

void BitMatrix::set_column(std::size_t c, const BitVector& v) {
  if (v.size() != rows_) throw DimensionMismatch("set_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) set(r, c, v.get(r));
}

void BitMatrix::add_row(std::size_t dst, std::size_t src) {
  std::uint64_t* d = bits_.data() + dst * words_per_row_;
  const std::uint64_t* s = bits_.data() + src * words_per_row_;
  for (std::size_t w = 0; w < words_per_row_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(bits_.begin() + static_cast<std::ptrdiff_t>(a * words_per_row_),
                   bits_.begin() + static_cast<std::ptrdiff_t>((a + 1) * words_per_row_),
                   bits_.begin() + static_cast<std::ptrdiff_t>(b * words_per_row_));
}

std::vector<std::uint64_t> BitMatrix::column_words() const {
  if (rows_ > 64) throw DimensionMismatch("column_words: more than 64 rows");
  std::vector<std::uint64_t> out(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) out[c] |= std::uint64_t{1} << r;
    }
  }
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r);
    }
  }
  return t;
}

BitMatrix BitMatrix::block(std::size_t r0, std::size_t c0, std::size_t nrows,
                           std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) throw DimensionMismatch("block: out of range");
  BitMatrix b(nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    for (std::size_t c = 0; c < ncols; ++c) {
      if (get(r0 + r, c0 + c)) b.set(r, c);
    }
  }
  return b;
}

void BitMatrix::set_block(std::size_t r0, std::size_t c0, const BitMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("set_block: out of range");
  for (std::size_t r = 0; r < b.rows_; ++r) {
    for (std::size_t c = 0; c < b.cols_; ++c) set(r0 + r, c0 + c, b.get(r, c));
  }
}

BitMatrix BitMatrix::select_columns(std::span<const std::size_t> idx) const {
  BitMatrix out(rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (get(r, idx[j])) out.set(r, j);
    }
  }
  return out;
}

BitVector BitMatrix::apply(const BitVector& x) const {
  if (x.size() != cols_) throw DimensionMismatch("apply: vector length != cols");
  BitVector y(rows_);
  const auto xw = x.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_per_row_; ++w) acc ^= bits_[r * words_per_row_ + w] & xw[w];
    if (std::popcount(acc) & 1) y.set(r);
  }
  return y;
}

bool BitMatrix::is_zero() const noexcept {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

bool BitMatrix::is_identity() const noexcept {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c) != (r == c)) return false;
    }
  }
  return true;
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw DimensionMismatch("matrix add: shape mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= other.bits_[i];
  return *this;
}

std::string BitMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) os << row(r).to_string() << '\n';
  return os.str();
}

// ---------------------------------------------------------------- free functions

BitMatrix shift_matrix(std::size_t m, std::size_t k) {
  BitMatrix s(m, m);
  for (std::size_t j = 0; j + k < m; ++j) s.set(j + k, j);
  return s;
}

BitMatrix matmul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: a.cols != b.rows");
  BitMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!a.get(i, k)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b.get(k, j)) c.set(i, j, !c.get(i, j));
      }
    }
  }
  return c;
}

BitMatrix hstack(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row count mismatch");
  BitMatrix out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column count mismatch");
  BitMatrix out(a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

std::size_t rank(const BitMatrix& m) {
  BitMatrix work = m;
  return rref(work, work.cols()).size();
}

BitMatrix invert(const BitMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("invert: matrix is not square");
  const std::size_t n = m.rows();
  BitMatrix aug = hstack(m, BitMatrix::identity(n));
  if (rref(aug, n).size() != n) throw SingularMatrix("invert: matrix is singular over GF(2)");
  return aug.block(0, n, n, n);
}

BitMatrix null_space(const BitMatrix& m) {
  BitMatrix work = m;
  const auto pivots = rref(work, work.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols());
    v.set(f);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (work.get(r, f)) v.set(pivots[r]);
    }
    basis.push_back(std::move(v));
  }
  return BitMatrix::from_columns(m.cols(), basis);
}

std::vector<std::size_t> basis_complete(const BitMatrix& span, const BitMatrix& candidates) {
  if (span.rows() != candidates.rows()) throw DimensionMismatch("basis_complete: row count mismatch");
  // Incremental echelon basis stored as rows of the transpose.
  std::vector<BitVector> basis;
  std::vector<std::size_t> lead;
  auto reduce = [&](BitVector v) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (v.get(lead[i])) v ^= basis[i];
    }
    return v;
  };
  auto insert = [&](const BitVector& v) {
    BitVector r = reduce(v);
    if (!r.any()) return false;
    std::size_t l = 0;
    while (!r.get(l)) ++l;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].get(l)) basis[i] ^= r;
    }
    basis.push_back(std::move(r));
    lead.push_back(l);
    return true;
  };
  for (std::size_t c = 0; c < span.cols(); ++c) insert(span.column(c));
  std::vector<std::size_t> chosen;
  for (std::size_t c = 0; c < candidates.cols(); ++c) {
    if (insert(candidates.column(c))) chosen.push_back(c);
  }
  return chosen;
}

bool solve_left(const BitMatrix& a, const BitMatrix& b, BitMatrix& x) {
  // x a = b  <=>  a^T x^T = b^T.
  if (a.cols() != b.cols()) throw DimensionMismatch("solve_left: a.cols != b.cols");
  const BitMatrix at = a.transpose();
  const BitMatrix bt = b.transpose();
  BitMatrix aug = hstack(at, bt);
  const auto pivots = rref(aug, at.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r) {
    for (std::size_t c = 0; c < bt.cols(); ++c) {
      if (aug.get(r, at.cols() + c)) return false;
    }
  }
  BitMatrix xt(at.cols(), bt.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    for (std::size_t c = 0; c < bt.cols(); ++c) xt.set(pivots[r], c, aug.get(r, at.cols() + c));
  }
  x = xt.transpose();
  return true;
}

}  // namespace cifc::gf2
