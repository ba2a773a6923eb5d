#pragma once

// Shared helpers for the unit and acceptance suites.

#include "contact9/simplicial/cohomology.hpp"

#include <random>

namespace contact9::testing {

using simplicial::Cochain;
using simplicial::CohomologyClass;
using simplicial::Ring;
using simplicial::SimplicialCohomology;
using simplicial::SimplicialComplex;

/// Random cocycle: random combination of group representatives plus the
/// coboundary of a random cochain one degree down.
inline Cochain random_cocycle(const SimplicialCohomology& h, int degree, Ring ring, std::mt19937_64& rng) {
  const auto g = h.group(degree, ring);
  Cochain out(degree, ring);
  for (const auto& rep : g.basis_cocycles) {
    const long long c = static_cast<long long>(rng() % 5) - 2;
    if (c != 0) out += rep.scaled(c);
  }
  if (degree > 0) {
    const auto& k = h.complex();
    Cochain noise(degree - 1, ring);
    for (std::size_t i = 0; i < k.count(degree - 1); ++i) {
      if (rng() % 3 == 0) noise.set(i, static_cast<long long>(rng() % 7) - 3);
    }
    out += simplicial::coboundary(k, noise);
  }
  return out;
}

/// Random mod-2 cochain (not necessarily a cocycle).
inline Cochain random_cochain(const SimplicialComplex& k, int degree, std::mt19937_64& rng) {
  Cochain out(degree, Ring::mod2());
  for (std::size_t i = 0; i < k.count(degree); ++i) {
    if (rng() % 2 == 0) out.set(i, 1);
  }
  return out;
}

/// Mod-2 coboundary written directly from the face lists.
inline Cochain naive_coboundary_mod2(const SimplicialComplex& k, const Cochain& x) {
  const int d = x.degree();
  Cochain out(d + 1, Ring::mod2());
  for (std::size_t i = 0; i < k.count(d + 1); ++i) {
    const auto& s = k.simplex(d + 1, i);
    int acc = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      std::vector<int> face;
      for (std::size_t t = 0; t < s.size(); ++t) {
        if (t != j) face.push_back(s[t]);
      }
      acc += static_cast<int>(x.value(*k.index_of(face)));
    }
    if (acc % 2) out.set(i, 1);
  }
  return out;
}

/// Sum over all top simplices of the front/back-face product, mod 2.
inline bool naive_pairing(const SimplicialComplex& k, const Cochain& x, const Cochain& y) {
  const int p = x.degree();
  const int n = k.dimension();
  int acc = 0;
  for (const auto& s : k.simplices(n)) {
    std::vector<int> front(s.begin(), s.begin() + p + 1);
    std::vector<int> back(s.begin() + p, s.end());
    acc += static_cast<int>(x.value(*k.index_of(front)) * y.value(*k.index_of(back)) % 2);
  }
  return acc % 2 == 1;
}

/// A class of order dividing 2 as an F2 vector: each coordinate is 0 or half
/// the generator order.
inline F2Vector order_two_bits(const CohomologyClass& z) {
  F2Vector out(z.coords.size());
  for (std::size_t i = 0; i < z.coords.size(); ++i) out.set(i, z.coords[i] != 0);
  return out;
}

inline F2Vector f2_coords(const CohomologyClass& x) { return order_two_bits(x); }

}  // namespace contact9::testing
