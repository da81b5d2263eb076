#pragma once

#include <optional>
#include <vector>

#include "blockqec/bitvec.hpp"

namespace blockqec {

// Dense GF(2) matrix, rows stored as packed bit vectors.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}
  explicit Gf2Matrix(std::vector<BitVec> rows);

  static Gf2Matrix identity(size_t n);

  size_t num_rows() const { return rows_.size(); }
  size_t num_cols() const { return cols_; }
  const BitVec& row(size_t i) const { return rows_[i]; }
  BitVec& row(size_t i) { return rows_[i]; }
  const std::vector<BitVec>& rows() const { return rows_; }
  void append_row(const BitVec& r);
  BitVec column(size_t j) const;

  bool get(size_t i, size_t j) const { return rows_[i].get(j); }
  void set(size_t i, size_t j, bool v) { rows_[i].set(j, v); }
  bool operator==(const Gf2Matrix&) const = default;

  BitVec mul_vec(const BitVec& x) const;  // A x, x indexed by columns
  Gf2Matrix mul(const Gf2Matrix& o) const;
  Gf2Matrix transposed() const;

  // True if v lies in the row space.
  bool row_space_contains(const BitVec& v) const;
  std::vector<BitVec> kernel_basis() const;

 private:
  size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

size_t rank(const Gf2Matrix& a);

// Solves A x = b. Deterministic: columns are eliminated left to right with
// the lowest-index available pivot row, and free variables are set to zero.
// Returns nullopt when the system is inconsistent.
std::optional<BitVec> solve_gf2(const Gf2Matrix& a, const BitVec& b);

}  // namespace blockqec
