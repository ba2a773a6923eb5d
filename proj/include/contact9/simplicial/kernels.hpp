#pragma once

// Cochain-level kernels.  Each kernel has a plain serial reference and an
// OpenMP version that parallelizes over target simplices; the two must agree
// bit for bit (tests/test_kernels.cpp, bench/bench_kernels.cpp).

#include "contact9/integer.hpp"
#include "contact9/simplicial/complex.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace contact9::simplicial::kernels {

using Bits = std::vector<std::uint8_t>;

/// Integral coboundary (delta x)(s) = sum_j (-1)^j x(s with vertex j removed).
std::vector<Integer> coboundary_serial(const SimplicialComplex& k, int degree, std::span<const Integer> x);
std::vector<Integer> coboundary_parallel(const SimplicialComplex& k, int degree, std::span<const Integer> x);

/// Front-face/back-face product of integral cochains of degrees p and q.
std::vector<Integer> cup_serial(const SimplicialComplex& k, std::span<const Integer> x, int p,
                                std::span<const Integer> y, int q);
std::vector<Integer> cup_parallel(const SimplicialComplex& k, std::span<const Integer> x, int p,
                                  std::span<const Integer> y, int q);

/// Steenrod's cup-i product mod 2.  For a target simplex (v_0..v_n),
/// n = p + q - i, sum over 0 <= u_0 < ... < u_i <= n of
/// x(even intervals) * y(odd intervals) of the partition
/// [0,u_0], [u_0,u_1], ..., [u_i,n].
Bits cup_i_mod2_serial(const SimplicialComplex& k, std::span<const std::uint8_t> x, int p,
                       std::span<const std::uint8_t> y, int q, int i);
Bits cup_i_mod2_parallel(const SimplicialComplex& k, std::span<const std::uint8_t> x, int p,
                         std::span<const std::uint8_t> y, int q, int i);

/// Number of OpenMP threads the parallel kernels use (1 without OpenMP).
int max_threads();

}  // namespace contact9::simplicial::kernels
