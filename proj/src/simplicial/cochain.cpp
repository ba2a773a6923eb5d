#include "contact9/simplicial/cochain.hpp"

#include "contact9/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace contact9::simplicial {

Cochain Cochain::from_dense(int degree, Ring ring, const std::vector<Integer>& values) {
  Cochain c(degree, ring);
  for (std::size_t i = 0; i < values.size(); ++i) {
    Integer v = ring.normalize(values[i]);
    if (v != 0) c.entries_.emplace_back(i, std::move(v));
  }
  return c;
}

Cochain Cochain::from_bits(int degree, const std::vector<std::uint8_t>& bits) {
  Cochain c(degree, Ring::mod2());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] & 1U) c.entries_.emplace_back(i, Integer(1));
  }
  return c;
}

Integer Cochain::value(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  return it != entries_.end() && it->first == index ? it->second : Integer(0);
}

void Cochain::set(std::size_t index, const Integer& value) {
  Integer v = ring_.normalize(value);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) {
    if (v == 0) {
      entries_.erase(it);
    } else {
      it->second = std::move(v);
    }
  } else if (v != 0) {
    entries_.insert(it, Entry{index, std::move(v)});
  }
}

std::vector<Integer> Cochain::dense(std::size_t length) const {
  std::vector<Integer> out(length);
  for (const auto& [i, v] : entries_) {
    if (i >= length) throw std::out_of_range("cochain support exceeds simplex count");
    out[i] = v;
  }
  return out;
}

std::vector<std::uint8_t> Cochain::bits(std::size_t length) const {
  std::vector<std::uint8_t> out(length, 0);
  for (const auto& [i, v] : entries_) {
    if (i >= length) throw std::out_of_range("cochain support exceeds simplex count");
    out[i] = static_cast<std::uint8_t>((v & 1) != 0);
  }
  return out;
}

Cochain Cochain::reduced(Ring target) const {
  if (target.integral()) throw ContractViolation("cannot reduce into the integers");
  if (!ring_.integral() && target.exponent > ring_.exponent) {
    throw ContractViolation("reduction Z/" + to_string(ring_.modulus()) + " -> " + target.name() + " is not defined");
  }
  Cochain c(degree_, target);
  for (const auto& [i, v] : entries_) {
    Integer r = target.normalize(v);
    if (r != 0) c.entries_.emplace_back(i, std::move(r));
  }
  return c;
}

Cochain Cochain::lifted() const {
  Cochain c(degree_, Ring::integers());
  c.entries_ = entries_;
  return c;
}

Cochain& Cochain::operator+=(const Cochain& other) {
  if (other.degree_ != degree_ || other.ring_ != ring_) throw ContractViolation("cochain sum: degree or ring mismatch");
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Integer v = ring_.normalize(a->second + b->second);
      if (v != 0) merged.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& other) { return *this += other.scaled(-1); }

Cochain Cochain::scaled(const Integer& factor) const {
  Cochain c(degree_, ring_);
  for (const auto& [i, v] : entries_) {
    Integer r = ring_.normalize(v * factor);
    if (r != 0) c.entries_.emplace_back(i, std::move(r));
  }
  return c;
}

Cochain Cochain::divided(const Integer& divisor) const {
  if (!ring_.integral()) throw ContractViolation("division is only defined on integral cochains");
  Cochain c(degree_, ring_);
  for (const auto& [i, v] : entries_) {
    if (v % divisor != 0) throw InternalInconsistency("cochain value not divisible by " + to_string(divisor));
    c.entries_.emplace_back(i, v / divisor);
  }
  return c;
}

}  // namespace contact9::simplicial
