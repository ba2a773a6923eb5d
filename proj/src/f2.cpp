#include "contact9/f2.hpp"

#include <bit>
#include <stdexcept>

namespace contact9 {

F2Vector F2Vector::from_indices(std::size_t size, const std::vector<std::size_t>& indices) {
  F2Vector v(size);
  for (std::size_t i : indices) {
    if (i >= size) throw std::out_of_range("F2Vector index out of range");
    v.flip(i);
  }
  return v;
}

bool F2Vector::is_zero() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t F2Vector::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t F2Vector::lowest() const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k] != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
  }
  return size_;
}

std::vector<std::size_t> F2Vector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    auto w = words_[k];
    while (w != 0) {
      out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

bool F2Vector::dot(const F2Vector& other) const {
  if (other.size_ != size_) throw std::invalid_argument("F2Vector::dot size mismatch");
  unsigned acc = 0;
  for (std::size_t k = 0; k < words_.size(); ++k) acc ^= std::popcount(words_[k] & other.words_[k]) & 1U;
  return acc != 0;
}

F2Vector& F2Vector::operator+=(const F2Vector& other) {
  if (other.size_ != size_) throw std::invalid_argument("F2Vector addition size mismatch");
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
  return *this;
}

F2Vector F2Vector::concat(const F2Vector& a, const F2Vector& b) {
  F2Vector out(a.size() + b.size());
  for (std::size_t i : a.support()) out.set(i, true);
  for (std::size_t i : b.support()) out.set(a.size() + i, true);
  return out;
}

F2Vector F2Vector::slice(std::size_t begin, std::size_t length) const {
  if (begin + length > size_) throw std::out_of_range("F2Vector::slice");
  F2Vector out(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (get(begin + i)) out.set(i, true);
  }
  return out;
}

void F2Vector::resize(std::size_t size) {
  words_.resize((size + 63) / 64, 0);
  if (size < size_ && size % 64 != 0) words_.back() &= (std::uint64_t{1} << (size % 64)) - 1;
  size_ = size;
}

std::string F2Vector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

F2Matrix F2Matrix::from_columns(std::size_t rows, std::vector<F2Vector> columns) {
  for (const auto& c : columns) {
    if (c.size() != rows) throw std::invalid_argument("F2Matrix column has wrong length");
  }
  F2Matrix m;
  m.rows_ = rows;
  m.columns_ = std::move(columns);
  return m;
}

F2Vector F2Matrix::apply(const F2Vector& v) const {
  if (v.size() != cols()) throw std::invalid_argument("F2Matrix::apply size mismatch");
  F2Vector out(rows_);
  for (std::size_t c : v.support()) out += columns_[c];
  return out;
}

F2Matrix F2Matrix::operator*(const F2Matrix& rhs) const {
  if (cols() != rhs.rows()) throw std::invalid_argument("F2Matrix product size mismatch");
  F2Matrix out(rows_, rhs.cols());
  for (std::size_t c = 0; c < rhs.cols(); ++c) out.columns_[c] = apply(rhs.columns_[c]);
  return out;
}

F2Matrix F2Matrix::transpose() const {
  F2Matrix out(cols(), rows_);
  for (std::size_t c = 0; c < cols(); ++c) {
    for (std::size_t r : columns_[c].support()) out.set(c, r, true);
  }
  return out;
}

bool F2Matrix::is_zero() const {
  for (const auto& c : columns_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::size_t F2Matrix::rank() const {
  F2Echelon e(rows_);
  for (const auto& c : columns_) e.insert(c);
  return e.rank();
}

std::vector<F2Vector> F2Matrix::kernel() const {
  F2Echelon e(rows_);
  std::vector<F2Vector> out;
  for (std::size_t c = 0; c < cols(); ++c) {
    if (auto combo = e.insert(columns_[c])) {
      F2Vector k = *combo;
      k.resize(cols());
      k.flip(c);
      out.push_back(std::move(k));
    }
  }
  return out;
}

std::vector<F2Vector> F2Matrix::image_basis() const {
  F2Echelon e(rows_);
  for (const auto& c : columns_) e.insert(c);
  return e.basis();
}

std::optional<F2Vector> F2Matrix::solve(const F2Vector& b) const {
  F2Echelon e(rows_);
  for (const auto& c : columns_) e.insert(c);
  auto combo = e.express(b);
  if (!combo) return std::nullopt;
  combo->resize(cols());
  return combo;
}

std::optional<F2Matrix> F2Matrix::inverse() const {
  if (rows_ != cols()) return std::nullopt;
  F2Echelon e(rows_);
  for (const auto& c : columns_) e.insert(c);
  if (e.rank() != rows_) return std::nullopt;
  F2Matrix inv(rows_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto combo = e.express(F2Vector::unit(rows_, i));
    combo->resize(rows_);
    inv.columns_[i] = *combo;
  }
  return inv;
}

void F2Echelon::reserve_combos(std::size_t n) {
  if (n <= combo_capacity_) return;
  std::size_t cap = combo_capacity_ == 0 ? 64 : combo_capacity_;
  while (cap < n) cap *= 2;
  for (auto& r : rows_) r.combo.resize(cap);
  combo_capacity_ = cap;
}

std::optional<F2Vector> F2Echelon::insert(const F2Vector& v) {
  if (v.size() != ambient_) throw std::invalid_argument("F2Echelon::insert size mismatch");
  reserve_combos(inserted_ + 1);
  F2Vector vec = v;
  F2Vector combo(combo_capacity_);
  for (const auto& r : rows_) {
    if (vec.get(r.pivot)) {
      vec += r.vec;
      combo += r.combo;
    }
  }
  const std::size_t index = inserted_++;
  if (vec.is_zero()) {
    // combo expresses v in terms of earlier vectors
    combo.resize(inserted_);
    return combo;
  }
  combo.flip(index);
  const std::size_t pivot = vec.lowest();
  for (auto& r : rows_) {
    if (r.vec.get(pivot)) {
      r.vec += vec;
      r.combo += combo;
    }
  }
  rows_.push_back(Row{std::move(vec), std::move(combo), pivot});
  return std::nullopt;
}

F2Vector F2Echelon::reduce(const F2Vector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("F2Echelon::reduce size mismatch");
  F2Vector vec = v;
  for (const auto& r : rows_) {
    if (vec.get(r.pivot)) vec += r.vec;
  }
  return vec;
}

std::optional<F2Vector> F2Echelon::express(const F2Vector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("F2Echelon::express size mismatch");
  F2Vector vec = v;
  F2Vector combo(combo_capacity_);
  for (const auto& r : rows_) {
    if (vec.get(r.pivot)) {
      vec += r.vec;
      combo += r.combo;
    }
  }
  if (!vec.is_zero()) return std::nullopt;
  combo.resize(inserted_);
  return combo;
}

std::vector<F2Vector> F2Echelon::basis() const {
  std::vector<F2Vector> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.vec);
  return out;
}

F2QuotientBasis::F2QuotientBasis(std::size_t ambient, const std::vector<F2Vector>& relations,
                                 const std::vector<F2Vector>& representatives)
    : relation_count_(relations.size()), dimension_(representatives.size()), echelon_(ambient) {
  for (const auto& r : relations) echelon_.insert(r);
  for (const auto& r : representatives) {
    if (echelon_.insert(r)) throw std::invalid_argument("quotient representatives are dependent modulo relations");
  }
}

std::optional<F2Vector> F2QuotientBasis::coordinates(const F2Vector& v) const {
  auto combo = echelon_.express(v);
  if (!combo) return std::nullopt;
  return combo->slice(relation_count_, dimension_);
}

std::vector<F2Vector> preimage_of_subspace(const F2Matrix& map, const std::vector<F2Vector>& subspace) {
  // kernel of x -> map(x) mod span(subspace): stack [map | subspace] and project
  const std::size_t n = map.cols();
  std::vector<F2Vector> cols = map.columns();
  for (const auto& s : subspace) cols.push_back(s);
  auto k = F2Matrix::from_columns(map.rows(), std::move(cols)).kernel();
  F2Echelon e(n);
  for (const auto& v : k) e.insert(v.slice(0, n));
  return e.basis();
}

bool same_span(std::size_t ambient, const std::vector<F2Vector>& a, const std::vector<F2Vector>& b) {
  F2Echelon ea(ambient);
  for (const auto& v : a) ea.insert(v);
  F2Echelon eb(ambient);
  for (const auto& v : b) eb.insert(v);
  if (ea.rank() != eb.rank()) return false;
  for (const auto& v : b) {
    if (!ea.contains(v)) return false;
  }
  return true;
}

}  // namespace contact9
