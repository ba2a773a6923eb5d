#include "contact9/smith.hpp"

#include <stdexcept>

namespace contact9 {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::initializer_list<long long> values)
    : IntMatrix(rows, cols) {
  if (values.size() != rows * cols) throw std::invalid_argument("IntMatrix initializer has wrong size");
  std::size_t k = 0;
  for (long long v : values) data_[k++] = v;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix product size mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Integer& b = rhs(k, j);
        if (b != 0) out(i, j) += a * b;
      }
    }
  }
  return out;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("IntMatrix::apply size mismatch");
  std::vector<Integer> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Integer& a = (*this)(i, j);
      if (a != 0 && v[j] != 0) out[i] += a * v[j];
    }
  }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

IntMatrix IntMatrix::row_block(std::size_t begin, std::size_t end) const {
  IntMatrix out(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i - begin, j) = (*this)(i, j);
  }
  return out;
}

IntMatrix IntMatrix::col_block(std::size_t begin, std::size_t end) const {
  IntMatrix out(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = begin; j < end; ++j) out(i, j - begin) = (*this)(i, j);
  }
  return out;
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
  std::vector<Integer> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
  return out;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i != j && (*this)(i, j) != 0) return false;
    }
  }
  return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Integer& s = (*this)(src, j);
    if (s != 0) (*this)(dst, j) += factor * s;
  }
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Integer& s = (*this)(i, src);
    if (s != 0) (*this)(i, dst) += factor * s;
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

namespace {

// Elementary operations applied simultaneously to A and the tracked factors.
class Reducer {
 public:
  Reducer(const IntMatrix& a, SmithTracking t) : a_(a), t_(t) {
    if (t.left) u_ = IntMatrix::identity(a.rows());
    if (t.left_inverse) ui_ = IntMatrix::identity(a.rows());
    if (t.right) v_ = IntMatrix::identity(a.cols());
    if (t.right_inverse) vi_ = IntMatrix::identity(a.cols());
  }

  IntMatrix& a() { return a_; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    a_.swap_rows(i, j);
    if (t_.left) u_.swap_rows(i, j);
    if (t_.left_inverse) ui_.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    a_.swap_cols(i, j);
    if (t_.right) v_.swap_cols(i, j);
    if (t_.right_inverse) vi_.swap_rows(i, j);
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    a_.add_row(dst, src, f);
    if (t_.left) u_.add_row(dst, src, f);
    if (t_.left_inverse) ui_.add_col(src, dst, -f);
  }
  // col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    a_.add_col(dst, src, f);
    if (t_.right) v_.add_col(dst, src, f);
    if (t_.right_inverse) vi_.add_row(src, dst, -f);
  }
  void negate_row(std::size_t r) {
    a_.negate_row(r);
    if (t_.left) u_.negate_row(r);
    if (t_.left_inverse) ui_.negate_col(r);
  }

  SmithForm finish(std::vector<Integer> diag) {
    SmithForm f;
    f.diagonal_matrix = std::move(a_);
    f.diagonal = std::move(diag);
    f.left = std::move(u_);
    f.left_inverse = std::move(ui_);
    f.right = std::move(v_);
    f.right_inverse = std::move(vi_);
    return f;
  }

 private:
  IntMatrix a_;
  SmithTracking t_;
  IntMatrix u_, ui_, v_, vi_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input, SmithTracking tracking) {
  Reducer red(input, tracking);
  IntMatrix& a = red.a();
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<Integer> diag;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool found = false;
    for (;;) {
      // pivot: minimal nonzero absolute value in the trailing block
      std::size_t pr = 0, pc = 0;
      Integer best = 0;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          const Integer& x = a(i, j);
          if (x == 0) continue;
          Integer ax = abs(x);
          if (best == 0 || ax < best) {
            best = ax;
            pr = i;
            pc = j;
            if (best == 1) break;
          }
        }
        if (best == 1) break;
      }
      if (best == 0) break;
      found = true;
      red.swap_rows(t, pr);
      red.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        red.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        red.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility of the trailing block by the pivot
      bool divisible = true;
      const Integer p = a(t, t);
      for (std::size_t i = t + 1; i < m && divisible; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a(i, j) % p != 0) {
            red.add_row(t, i, 1);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (!found) break;
    if (a(t, t) < 0) red.negate_row(t);
    diag.push_back(a(t, t));
  }
  return red.finish(std::move(diag));
}

std::optional<std::vector<Integer>> solve_integer(const SmithForm& snf, const std::vector<Integer>& b) {
  const IntMatrix& u = snf.left;
  const IntMatrix& v = snf.right;
  if (u.rows() == 0 && b.size() != 0) throw std::invalid_argument("solve_integer needs the left factor");
  if (v.rows() == 0 && snf.diagonal_matrix.cols() != 0) {
    throw std::invalid_argument("solve_integer needs the right factor");
  }
  std::vector<Integer> ub = u.rows() == 0 ? std::vector<Integer>{} : u.apply(b);
  const std::size_t r = snf.rank();
  std::vector<Integer> y(snf.diagonal_matrix.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < r) {
      if (ub[i] % snf.diagonal[i] != 0) return std::nullopt;
      y[i] = ub[i] / snf.diagonal[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  if (y.empty()) return y;
  return v.apply(y);
}

Integer determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  // Bareiss
  IntMatrix a = input;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace contact9
