#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace contact9 {

/// Dense vector over F2, packed into 64-bit words.
class F2Vector {
 public:
  F2Vector() = default;
  explicit F2Vector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static F2Vector unit(std::size_t size, std::size_t index) {
    F2Vector v(size);
    v.set(index, true);
    return v;
  }
  static F2Vector from_indices(std::size_t size, const std::vector<std::size_t>& indices);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    if (value) {
      words_[i / 64] |= bit;
    } else {
      words_[i / 64] &= ~bit;
    }
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  bool is_zero() const;
  std::size_t popcount() const;
  /// Index of the lowest set bit, or size() when zero.
  std::size_t lowest() const;
  std::vector<std::size_t> support() const;
  bool dot(const F2Vector& other) const;

  F2Vector& operator+=(const F2Vector& other);
  friend F2Vector operator+(F2Vector a, const F2Vector& b) { return a += b; }
  friend bool operator==(const F2Vector& a, const F2Vector& b) = default;

  /// Concatenation [a | b].
  static F2Vector concat(const F2Vector& a, const F2Vector& b);
  F2Vector slice(std::size_t begin, std::size_t length) const;
  /// Grows or truncates, keeping the leading entries.
  void resize(std::size_t size);

  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Linear map F2^cols -> F2^rows stored by columns (images of basis vectors).
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols, F2Vector(rows)) {}

  static F2Matrix identity(std::size_t n);
  static F2Matrix from_columns(std::size_t rows, std::vector<F2Vector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  bool get(std::size_t r, std::size_t c) const { return columns_[c].get(r); }
  void set(std::size_t r, std::size_t c, bool v) { columns_[c].set(r, v); }
  const F2Vector& column(std::size_t c) const { return columns_[c]; }
  F2Vector& column(std::size_t c) { return columns_[c]; }
  const std::vector<F2Vector>& columns() const { return columns_; }

  F2Vector apply(const F2Vector& v) const;
  F2Matrix operator*(const F2Matrix& rhs) const;
  F2Matrix transpose() const;
  bool is_zero() const;
  friend bool operator==(const F2Matrix& a, const F2Matrix& b) = default;

  std::size_t rank() const;
  /// Basis of the null space.
  std::vector<F2Vector> kernel() const;
  /// Echelon-reduced basis of the column space.
  std::vector<F2Vector> image_basis() const;
  /// Some x with apply(x) == b, if one exists.
  std::optional<F2Vector> solve(const F2Vector& b) const;
  std::optional<F2Matrix> inverse() const;

 private:
  std::size_t rows_ = 0;
  std::vector<F2Vector> columns_;
};

/// Incremental row-echelon basis of a subspace of F2^n.  Every inserted vector
/// carries a record of which inserted vectors it combines, so the structure
/// answers membership, coordinates and kernel questions.
class F2Echelon {
 public:
  explicit F2Echelon(std::size_t ambient) : ambient_(ambient) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }

  /// Inserts v.  Returns the combination of earlier inserted vectors equal to
  /// v when v is dependent, std::nullopt when v enlarged the span.
  std::optional<F2Vector> insert(const F2Vector& v);

  /// Reduces v against the basis; zero result iff v is in the span.
  F2Vector reduce(const F2Vector& v) const;
  bool contains(const F2Vector& v) const { return reduce(v).is_zero(); }
  /// Combination (over inserted vectors, indexed by insertion order) summing
  /// to v, when v is in the span.
  std::optional<F2Vector> express(const F2Vector& v) const;

  /// The reduced basis rows (fully reduced: pivots are cleared in other rows).
  std::vector<F2Vector> basis() const;

 private:
  struct Row {
    F2Vector vec;
    F2Vector combo;  // over inserted vectors
    std::size_t pivot;
  };
  void reserve_combos(std::size_t n);

  std::size_t ambient_;
  std::size_t inserted_ = 0;
  std::size_t combo_capacity_ = 0;
  std::vector<Row> rows_;
};

/// Coordinates in a quotient V / W given a basis of W and vectors whose
/// classes form a basis of the quotient.
class F2QuotientBasis {
 public:
  F2QuotientBasis(std::size_t ambient, const std::vector<F2Vector>& relations,
                  const std::vector<F2Vector>& representatives);

  std::size_t dimension() const { return dimension_; }
  /// Coordinates of [v] in the representative basis; nullopt when v is not in
  /// span(relations) + span(representatives).
  std::optional<F2Vector> coordinates(const F2Vector& v) const;

 private:
  std::size_t relation_count_;
  std::size_t dimension_;
  F2Echelon echelon_;
};

/// Basis of {x : A x in span(subspace)} for A: F2^n -> F2^m.
std::vector<F2Vector> preimage_of_subspace(const F2Matrix& map, const std::vector<F2Vector>& subspace);

/// True iff the two spans coincide.
bool same_span(std::size_t ambient, const std::vector<F2Vector>& a, const std::vector<F2Vector>& b);

}  // namespace contact9
