#include "contact9/simplicial/kernels.hpp"

#include "contact9/errors.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace contact9::simplicial::kernels {

namespace {

void check_length(const SimplicialComplex& k, int degree, std::size_t length, const char* what) {
  if (length != k.count(degree)) throw std::invalid_argument(std::string(what) + ": cochain length does not match simplex count");
}

std::size_t face_index(const SimplicialComplex& k, const std::vector<int>& face) {
  auto idx = k.index_of(face);
  if (!idx) throw InternalInconsistency("face of a simplex missing from the complex");
  return *idx;
}

Integer coboundary_at(const SimplicialComplex& k, const Simplex& s, std::span<const Integer> x, std::vector<int>& face) {
  Integer acc = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    face.clear();
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (t != j) face.push_back(s[t]);
    }
    const Integer& v = x[face_index(k, face)];
    if (v == 0) continue;
    if (j % 2 == 0) {
      acc += v;
    } else {
      acc -= v;
    }
  }
  return acc;
}

// Advances a strictly increasing combination of {0..n}; false when exhausted.
bool next_combination(std::vector<int>& u, int n) {
  const int r = static_cast<int>(u.size());
  int pos = r - 1;
  while (pos >= 0 && u[static_cast<std::size_t>(pos)] == n - (r - 1 - pos)) --pos;
  if (pos < 0) return false;
  ++u[static_cast<std::size_t>(pos)];
  for (int t = pos + 1; t < r; ++t) u[static_cast<std::size_t>(t)] = u[static_cast<std::size_t>(t - 1)] + 1;
  return true;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<Integer> coboundary_serial(const SimplicialComplex& k, int degree, std::span<const Integer> x) {
  check_length(k, degree, x.size(), "coboundary");
  const auto& targets = k.simplices(degree + 1);
  std::vector<Integer> out(targets.size());
  std::vector<int> face;
  for (std::size_t t = 0; t < targets.size(); ++t) out[t] = coboundary_at(k, targets[t], x, face);
  return out;
}

std::vector<Integer> coboundary_parallel(const SimplicialComplex& k, int degree, std::span<const Integer> x) {
  check_length(k, degree, x.size(), "coboundary");
  const auto& targets = k.simplices(degree + 1);
  const auto n = static_cast<long long>(targets.size());
  std::vector<Integer> out(targets.size());
#pragma omp parallel
  {
    std::vector<int> face;
#pragma omp for schedule(static)
    for (long long t = 0; t < n; ++t) {
      out[static_cast<std::size_t>(t)] = coboundary_at(k, targets[static_cast<std::size_t>(t)], x, face);
    }
  }
  return out;
}

std::vector<Integer> cup_serial(const SimplicialComplex& k, std::span<const Integer> x, int p,
                                std::span<const Integer> y, int q) {
  check_length(k, p, x.size(), "cup");
  check_length(k, q, y.size(), "cup");
  const auto& targets = k.simplices(p + q);
  std::vector<Integer> out(targets.size());
  std::vector<int> front, back;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const Simplex& s = targets[t];
    front.assign(s.begin(), s.begin() + p + 1);
    back.assign(s.begin() + p, s.end());
    out[t] = x[face_index(k, front)] * y[face_index(k, back)];
  }
  return out;
}

std::vector<Integer> cup_parallel(const SimplicialComplex& k, std::span<const Integer> x, int p,
                                  std::span<const Integer> y, int q) {
  check_length(k, p, x.size(), "cup");
  check_length(k, q, y.size(), "cup");
  const auto& targets = k.simplices(p + q);
  const auto n = static_cast<long long>(targets.size());
  std::vector<Integer> out(targets.size());
#pragma omp parallel
  {
    std::vector<int> front, back;
#pragma omp for schedule(static)
    for (long long t = 0; t < n; ++t) {
      const Simplex& s = targets[static_cast<std::size_t>(t)];
      front.assign(s.begin(), s.begin() + p + 1);
      const Integer& a = x[face_index(k, front)];
      if (a == 0) continue;
      back.assign(s.begin() + p, s.end());
      out[static_cast<std::size_t>(t)] = a * y[face_index(k, back)];
    }
  }
  return out;
}

Bits cup_i_mod2_serial(const SimplicialComplex& k, std::span<const std::uint8_t> x, int p,
                       std::span<const std::uint8_t> y, int q, int i) {
  if (i < 0) throw std::invalid_argument("cup_i: negative i");
  check_length(k, p, x.size(), "cup_i");
  check_length(k, q, y.size(), "cup_i");
  const int n = p + q - i;
  const auto& targets = k.simplices(n);
  Bits out(targets.size(), 0);
  if (n < 0 || i > n) return out;
  std::vector<int> even, odd, bounds;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const Simplex& s = targets[t];
    unsigned acc = 0;
    std::vector<int> u(static_cast<std::size_t>(i + 1));
    for (int a = 0; a <= i; ++a) u[static_cast<std::size_t>(a)] = a;
    do {
      bounds.assign(1, 0);
      bounds.insert(bounds.end(), u.begin(), u.end());
      bounds.push_back(n);
      even.clear();
      odd.clear();
      for (std::size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
        auto& dst = seg % 2 == 0 ? even : odd;
        for (int v = bounds[seg]; v <= bounds[seg + 1]; ++v) dst.push_back(s[static_cast<std::size_t>(v)]);
      }
      if (static_cast<int>(even.size()) != p + 1) continue;
      acc ^= x[face_index(k, even)] & y[face_index(k, odd)] & 1U;
    } while (next_combination(u, n));
    out[t] = static_cast<std::uint8_t>(acc);
  }
  return out;
}

Bits cup_i_mod2_parallel(const SimplicialComplex& k, std::span<const std::uint8_t> x, int p,
                         std::span<const std::uint8_t> y, int q, int i) {
  if (i < 0) throw std::invalid_argument("cup_i: negative i");
  check_length(k, p, x.size(), "cup_i");
  check_length(k, q, y.size(), "cup_i");
  const int n = p + q - i;
  const auto& targets = k.simplices(n);
  Bits out(targets.size(), 0);
  if (n < 0 || i > n) return out;
  const auto count = static_cast<long long>(targets.size());
#pragma omp parallel
  {
    std::vector<int> u(static_cast<std::size_t>(i + 1));
    std::vector<int> even, odd;
    even.reserve(static_cast<std::size_t>(p + 1));
    odd.reserve(static_cast<std::size_t>(q + 1));
#pragma omp for schedule(dynamic, 16)
    for (long long t = 0; t < count; ++t) {
      const Simplex& s = targets[static_cast<std::size_t>(t)];
      unsigned acc = 0;
      for (int a = 0; a <= i; ++a) u[static_cast<std::size_t>(a)] = a;
      do {
        // even intervals [0,u_0], [u_1,u_2], ...: sizes known before building faces
        int even_size = u[0] + 1;
        for (int a = 1; a + 1 <= i; a += 2) even_size += u[static_cast<std::size_t>(a + 1)] - u[static_cast<std::size_t>(a)] + 1;
        if (i % 2 == 1) even_size += n - u[static_cast<std::size_t>(i)] + 1;
        if (even_size != p + 1) continue;
        even.clear();
        odd.clear();
        int lo = 0;
        for (int seg = 0; seg <= i + 1; ++seg) {
          const int hi = seg <= i ? u[static_cast<std::size_t>(seg)] : n;
          auto& dst = seg % 2 == 0 ? even : odd;
          for (int v = lo; v <= hi; ++v) dst.push_back(s[static_cast<std::size_t>(v)]);
          lo = hi;
        }
        if ((x[*k.index_of(even)] & 1U) == 0) continue;
        acc ^= y[*k.index_of(odd)] & 1U;
      } while (next_combination(u, n));
      out[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(acc);
    }
  }
  return out;
}

}  // namespace contact9::simplicial::kernels
