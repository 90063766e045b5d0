#include "tcsp/gf2.hpp"

#include <utility>

#include "tcsp/error.hpp"

namespace tcsp {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

Gf2Matrix Gf2Matrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Gf2Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ArityError("GF(2) matrix rows of different length");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c] != 0);
  }
  return m;
}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
  Gf2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool v) noexcept {
  auto& w = data_[r * words_ + c / 64];
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  w = v ? (w | bit) : (w & ~bit);
}

void Gf2Matrix::add_row(std::size_t r, std::size_t s) noexcept {
  for (std::size_t w = 0; w < words_; ++w) data_[r * words_ + w] ^= data_[s * words_ + w];
}

void Gf2Matrix::swap_rows(std::size_t r, std::size_t s) noexcept {
  for (std::size_t w = 0; w < words_; ++w) std::swap(data_[r * words_ + w], data_[s * words_ + w]);
}

bool Gf2Matrix::row_is_zero(std::size_t r) const noexcept {
  for (std::size_t w = 0; w < words_; ++w) {
    if (data_[r * words_ + w]) return false;
  }
  return true;
}

void Gf2Matrix::append_row(const std::vector<bool>& bits) {
  if (rows_ == 0 && cols_ == 0 && data_.empty()) {
    cols_ = bits.size();
    words_ = (cols_ + 63) / 64;
  }
  if (bits.size() != cols_) throw ArityError("appended GF(2) row has the wrong length");
  data_.resize(data_.size() + words_, 0);
  ++rows_;
  for (std::size_t c = 0; c < cols_; ++c) set(rows_ - 1, c, bits[c]);
}

std::vector<bool> Gf2Matrix::row(std::size_t r) const {
  std::vector<bool> out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c);
  return out;
}

std::string Gf2Matrix::to_string() const {
  std::string out;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) out += '\n';
    for (std::size_t c = 0; c < cols_; ++c) out += get(r, c) ? '1' : '0';
  }
  return out;
}

void Gf2System::add_equation(const std::vector<std::size_t>& vars, bool value) {
  std::vector<bool> bits(matrix.cols());
  for (auto v : vars) {
    if (v >= bits.size()) throw ArityError("equation variable out of range");
    bits[v] = !bits[v];
  }
  matrix.append_row(bits);
  rhs.push_back(value);
}

namespace {

// Gauss-Jordan on m; returns the pivot column of each nonzero row.
std::vector<std::size_t> eliminate(Gf2Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && !m.get(p, col)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != row && m.get(r, col)) m.add_row(r, row);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Gf2Matrix augmented(const Gf2System& s) {
  if (s.rhs.size() != s.matrix.rows()) throw ArityError("right-hand side does not match the row count");
  Gf2Matrix m(s.matrix.rows(), s.matrix.cols() + 1);
  for (std::size_t r = 0; r < s.matrix.rows(); ++r) {
    for (std::size_t c = 0; c < s.matrix.cols(); ++c) m.set(r, c, s.matrix.get(r, c));
    m.set(r, s.matrix.cols(), s.rhs[r]);
  }
  return m;
}

}  // namespace

Gf2Matrix rref(const Gf2Matrix& m) {
  Gf2Matrix out = m;
  eliminate(out);
  return out;
}

std::size_t rank(const Gf2Matrix& m) {
  Gf2Matrix copy = m;
  return eliminate(copy).size();
}

bool solvable(const Gf2System& s) { return rank(s.matrix) == rank(augmented(s)); }

std::optional<std::vector<bool>> solve(const Gf2System& s) {
  Gf2Matrix m = augmented(s);
  const std::size_t n = s.matrix.cols();
  const auto pivots = eliminate(m);
  std::vector<bool> x(n, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == n) return std::nullopt;  // 0 = 1
    x[pivots[r]] = m.get(r, n);
  }
  return x;
}

Gf2Matrix nullspace_basis(const std::vector<std::vector<bool>>& vectors, std::size_t width) {
  // The complement of the row space of V is the null space of V.
  Gf2Matrix v(vectors.size(), width);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].size() != width) throw ArityError("vectors of different length");
    for (std::size_t c = 0; c < width; ++c) v.set(r, c, vectors[r][c]);
  }
  const auto pivots = eliminate(v);
  std::vector<bool> is_pivot(width, false);
  for (auto p : pivots) is_pivot[p] = true;
  Gf2Matrix out(0, width);
  for (std::size_t f = 0; f < width; ++f) {
    if (is_pivot[f]) continue;
    std::vector<bool> row(width, false);
    row[f] = true;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (v.get(r, f)) row[pivots[r]] = true;
    }
    out.append_row(row);
  }
  return out;
}

}  // namespace tcsp
