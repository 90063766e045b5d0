#ifndef TCSP_GF2_HPP
#define TCSP_GF2_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tcsp {

/// Dense matrix over GF(2), rows packed into 64-bit words.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols);
  /// Rows given as 0/1 lists of equal length.
  static Gf2Matrix from_rows(const std::vector<std::vector<int>>& rows);
  static Gf2Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) noexcept;
  void flip(std::size_t r, std::size_t c) noexcept { data_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

  /// Row r += row s.
  void add_row(std::size_t r, std::size_t s) noexcept;
  void swap_rows(std::size_t r, std::size_t s) noexcept;
  bool row_is_zero(std::size_t r) const noexcept;
  void append_row(const std::vector<bool>& bits);
  std::vector<bool> row(std::size_t r) const;

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

  /// Rows as strings of 0/1, separated by newlines.
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

/// matrix * x = rhs.
struct Gf2System {
  Gf2Matrix matrix;
  std::vector<bool> rhs;
  std::vector<std::string> var_names;

  /// Adds the equation sum_{i in vars} x_i = value.
  void add_equation(const std::vector<std::size_t>& vars, bool value);
};

/// Reduced row echelon form: zero rows last, every leading 1 strictly right
/// of the one above it, each leading 1 the only 1 in its column.
Gf2Matrix rref(const Gf2Matrix& m);

std::size_t rank(const Gf2Matrix& m);

/// rank(M) == rank(M | b).
bool solvable(const Gf2System& s);

/// A solution with every free variable 0, or nothing.
std::optional<std::vector<bool>> solve(const Gf2System& s);

/// Rows spanning the orthogonal complement of span(vectors): the homogeneous
/// system they form has exactly span(vectors) as solution set. `width` gives
/// the vector length (needed when `vectors` is empty).
Gf2Matrix nullspace_basis(const std::vector<std::vector<bool>>& vectors, std::size_t width);

}  // namespace tcsp

#endif  // TCSP_GF2_HPP
