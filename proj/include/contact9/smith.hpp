#pragma once

#include "contact9/integer.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace contact9 {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::initializer_list<long long> values);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  std::vector<Integer> apply(const std::vector<Integer>& v) const;
  IntMatrix transpose() const;
  /// Rows [begin, end).
  IntMatrix row_block(std::size_t begin, std::size_t end) const;
  /// Columns [begin, end).
  IntMatrix col_block(std::size_t begin, std::size_t end) const;
  std::vector<Integer> column(std::size_t c) const;
  bool is_diagonal() const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Which unimodular factors to accumulate during reduction.
struct SmithTracking {
  bool left = true;           // U
  bool left_inverse = true;   // U^{-1}
  bool right = true;          // V
  bool right_inverse = true;  // V^{-1}
};

/// U * A * V = D with D diagonal, d_1 | d_2 | ... | d_rank, all positive.
struct SmithForm {
  IntMatrix diagonal_matrix;
  std::vector<Integer> diagonal;  // the nonzero invariant factors, length rank
  IntMatrix left;
  IntMatrix left_inverse;
  IntMatrix right;
  IntMatrix right_inverse;

  std::size_t rank() const { return diagonal.size(); }
};

/// Smith normal form by minimal-pivot elimination.  Factors not requested in
/// `tracking` are returned empty.
SmithForm smith_normal_form(const IntMatrix& a, SmithTracking tracking = {});

/// Some integer solution of A x = b given the Smith form of A, if one exists.
std::optional<std::vector<Integer>> solve_integer(const SmithForm& snf, const std::vector<Integer>& b);

/// Determinant of a square matrix (fraction-free elimination).
Integer determinant(const IntMatrix& a);

}  // namespace contact9
