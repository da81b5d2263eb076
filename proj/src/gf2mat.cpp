#include "blockqec/gf2mat.hpp"

#include <stdexcept>

namespace blockqec {

Gf2Matrix::Gf2Matrix(std::vector<BitVec> rows) : rows_(std::move(rows)) {
  if (!rows_.empty()) {
    cols_ = rows_[0].size();
    for (const auto& r : rows_)
      if (r.size() != cols_) throw std::invalid_argument("Gf2Matrix: ragged rows");
  }
}

Gf2Matrix Gf2Matrix::identity(size_t n) {
  Gf2Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void Gf2Matrix::append_row(const BitVec& r) {
  if (rows_.empty() && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("Gf2Matrix::append_row: size mismatch");
  rows_.push_back(r);
}

BitVec Gf2Matrix::column(size_t j) const {
  BitVec c(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i].get(j)) c.set(i, true);
  return c;
}

BitVec Gf2Matrix::mul_vec(const BitVec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("Gf2Matrix::mul_vec: size mismatch");
  BitVec y(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i].dot(x)) y.set(i, true);
  return y;
}

Gf2Matrix Gf2Matrix::mul(const Gf2Matrix& o) const {
  if (cols_ != o.num_rows()) throw std::invalid_argument("Gf2Matrix::mul: shape mismatch");
  Gf2Matrix r(num_rows(), o.num_cols());
  for (size_t i = 0; i < num_rows(); ++i) {
    BitVec acc(o.num_cols());
    for (size_t k = 0; k < cols_; ++k)
      if (rows_[i].get(k)) acc ^= o.row(k);
    r.row(i) = acc;
  }
  return r;
}

Gf2Matrix Gf2Matrix::transposed() const {
  Gf2Matrix r(cols_, num_rows());
  for (size_t i = 0; i < num_rows(); ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (get(i, j)) r.set(j, i, true);
  return r;
}

namespace {

// Row echelon reduction; returns pivot column per reduced row.
std::vector<size_t> eliminate(std::vector<BitVec>& rows, size_t cols) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

bool Gf2Matrix::row_space_contains(const BitVec& v) const {
  std::vector<BitVec> work = rows_;
  size_t base = eliminate(work, cols_).size();
  work.push_back(v);
  return eliminate(work, cols_).size() == base;
}

std::vector<BitVec> Gf2Matrix::kernel_basis() const {
  std::vector<BitVec> work = rows_;
  std::vector<size_t> pivots = eliminate(work, cols_);
  std::vector<bool> is_pivot(cols_, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<BitVec> basis;
  for (size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    BitVec v(cols_);
    v.set(f, true);
    for (size_t r = 0; r < pivots.size(); ++r)
      if (work[r].get(f)) v.set(pivots[r], true);
    basis.push_back(v);
  }
  return basis;
}

size_t rank(const Gf2Matrix& a) {
  std::vector<BitVec> work = a.rows();
  return eliminate(work, a.num_cols()).size();
}

std::optional<BitVec> solve_gf2(const Gf2Matrix& a, const BitVec& b) {
  if (b.size() != a.num_rows()) throw std::invalid_argument("solve_gf2: size mismatch");
  size_t cols = a.num_cols();
  // Augment rows with the right-hand side as an extra column.
  std::vector<BitVec> work;
  work.reserve(a.num_rows());
  for (size_t i = 0; i < a.num_rows(); ++i) {
    BitVec r(cols + 1);
    for (size_t j = 0; j < cols; ++j)
      if (a.get(i, j)) r.set(j, true);
    if (b.get(i)) r.set(cols, true);
    work.push_back(r);
  }
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < work.size(); ++c) {
    size_t p = r;
    while (p < work.size() && !work[p].get(c)) ++p;
    if (p == work.size()) continue;
    std::swap(work[r], work[p]);
    for (size_t i = 0; i < work.size(); ++i)
      if (i != r && work[i].get(c)) work[i] ^= work[r];
    pivots.push_back(c);
    ++r;
  }
  for (size_t i = r; i < work.size(); ++i)
    if (work[i].get(cols)) return std::nullopt;
  BitVec x(cols);
  for (size_t i = 0; i < pivots.size(); ++i)
    if (work[i].get(cols)) x.set(pivots[i], true);
  return x;
}

}  // namespace blockqec
