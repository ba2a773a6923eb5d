#pragma once

#include "contact9/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace contact9::simplicial {

/// Coefficient ring: the integers, or Z/2^j for j >= 1.
struct Ring {
  unsigned exponent = 0;  // 0 for Z

  static constexpr Ring integers() { return Ring{0}; }
  static constexpr Ring mod2(unsigned j = 1) { return Ring{j}; }

  bool integral() const { return exponent == 0; }
  /// 2^j, or 0 for the integers.
  Integer modulus() const { return integral() ? Integer(0) : pow2(exponent); }
  /// Canonical representative of a in this ring.
  Integer normalize(const Integer& a) const { return integral() ? a : mod_floor(a, modulus()); }
  std::string name() const { return integral() ? "Z" : "Z/" + to_string(modulus()); }

  friend bool operator==(Ring, Ring) = default;
};

/// Sparse cochain: values on degree-d simplices, keyed by simplex index in the
/// complex's face list.  Only nonzero ring elements are stored.
class Cochain {
 public:
  using Entry = std::pair<std::size_t, Integer>;

  Cochain(int degree, Ring ring) : degree_(degree), ring_(ring) {}
  static Cochain from_dense(int degree, Ring ring, const std::vector<Integer>& values);
  static Cochain from_bits(int degree, const std::vector<std::uint8_t>& bits);

  int degree() const { return degree_; }
  Ring ring() const { return ring_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Integer value(std::size_t index) const;
  void set(std::size_t index, const Integer& value);

  std::vector<Integer> dense(std::size_t length) const;
  std::vector<std::uint8_t> bits(std::size_t length) const;

  /// Coefficient reduction into a quotient ring (Z -> Z/2^j, or Z/2^j -> Z/2^i, i <= j).
  Cochain reduced(Ring target) const;
  /// Lift of a Z/2^j cochain to integers with values in [0, 2^j).
  Cochain lifted() const;

  Cochain& operator+=(const Cochain& other);
  Cochain& operator-=(const Cochain& other);
  Cochain scaled(const Integer& factor) const;
  /// Exact division of every value (integral cochains only).
  Cochain divided(const Integer& divisor) const;

  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend bool operator==(const Cochain&, const Cochain&) = default;

 private:
  int degree_;
  Ring ring_;
  std::vector<Entry> entries_;  // sorted by index, values normalized and nonzero
};

}  // namespace contact9::simplicial
