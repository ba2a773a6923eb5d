#include "doctest.h"

#include "contact9/f2.hpp"
#include "contact9/smith.hpp"

#include <random>
#include <set>

using namespace contact9;

namespace {

// Cofactor expansion, independent of the library's elimination.
Integer laplace(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == c) continue;
        minor(r - 1, cc++) = a(r, k);
      }
    }
    const Integer term = a(0, c) * laplace(minor);
    acc += c % 2 == 0 ? term : Integer(-term);
  }
  return acc;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}.
std::vector<Integer> invariant_factors(const IntMatrix& a) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rows, cols;
    std::vector<std::size_t> cur;
    subsets(a.rows(), k, 0, cur, rows);
    subsets(a.cols(), k, 0, cur, cols);
    Integer g = 0;
    for (const auto& r : rows) {
      for (const auto& c : cols) {
        IntMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) m(i, j) = a(r[i], c[j]);
        }
        g = boost::multiprecision::gcd(g, laplace(m));
      }
    }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  }
  return m;
}

void check_smith(const IntMatrix& a) {
  const SmithForm s = smith_normal_form(a);
  CHECK(s.left * a * s.right == s.diagonal_matrix);
  CHECK(s.diagonal_matrix.is_diagonal());
  CHECK(s.left * s.left_inverse == IntMatrix::identity(a.rows()));
  CHECK(s.right * s.right_inverse == IntMatrix::identity(a.cols()));
  const Integer du = determinant(s.left);
  const Integer dv = determinant(s.right);
  CHECK((du == 1 || du == -1));
  CHECK((dv == 1 || dv == -1));
  for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
  for (const auto& d : s.diagonal) CHECK(d > 0);
  CHECK(s.diagonal == invariant_factors(a));
}

}  // namespace

TEST_CASE("smith form of the identity and the zero matrix") {
  const SmithForm id = smith_normal_form(IntMatrix::identity(3));
  CHECK(id.diagonal_matrix == IntMatrix::identity(3));
  CHECK(id.left == IntMatrix::identity(3));
  CHECK(id.right == IntMatrix::identity(3));

  const SmithForm z = smith_normal_form(IntMatrix(2, 2));
  CHECK(z.rank() == 0);
  CHECK(z.diagonal_matrix == IntMatrix(2, 2));
  CHECK(z.left == IntMatrix::identity(2));
  CHECK(z.right == IntMatrix::identity(2));
}

TEST_CASE("smith form of [[2,4],[6,8]]") {
  const IntMatrix a(2, 2, {2, 4, 6, 8});
  const SmithForm s = smith_normal_form(a);
  CHECK(s.diagonal == std::vector<Integer>{2, 4});
  CHECK(invariant_factors(a) == std::vector<Integer>{2, 4});
  check_smith(a);
}

TEST_CASE("smith form agrees with determinantal divisors on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 4;
    const std::size_t c = 1 + rng() % 5;
    check_smith(random_matrix(rng, r, c, trial % 3 == 0 ? 2 : 9));
  }
  // rank-deficient products
  for (int trial = 0; trial < 20; ++trial) {
    const IntMatrix a = random_matrix(rng, 4, 2, 5) * random_matrix(rng, 2, 4, 5);
    check_smith(a);
  }
}

TEST_CASE("smith form does not overflow on large entries") {
  IntMatrix a(3, 3);
  Integer big = Integer(1) << 200;
  a(0, 0) = big;
  a(0, 1) = big + 1;
  a(1, 0) = 3 * big;
  a(1, 1) = 7;
  a(2, 2) = big * big;
  const SmithForm s = smith_normal_form(a);
  CHECK(s.left * a * s.right == s.diagonal_matrix);
  Integer product = 1;
  for (const auto& d : s.diagonal) product *= d;
  const Integer det = determinant(a);
  CHECK(product == (det < 0 ? Integer(-det) : det));
}

TEST_CASE("integer solve") {
  const IntMatrix a(2, 3, {2, 0, 0, 0, 4, 6});
  const SmithForm s = smith_normal_form(a);
  auto x = solve_integer(s, {4, 2});
  REQUIRE(x);
  CHECK(a.apply(*x) == std::vector<Integer>{4, 2});
  CHECK_FALSE(solve_integer(s, {1, 0}));
  CHECK_FALSE(solve_integer(s, {0, 1}));
}

TEST_CASE("determinant matches cofactor expansion") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const IntMatrix a = random_matrix(rng, n, n, 7);
    CHECK(determinant(a) == laplace(a));
  }
}

namespace {

F2Matrix random_f2(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  F2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng() % 3 == 0);
  }
  return m;
}

// Rank by counting the distinct images of all 2^cols inputs.
std::size_t brute_rank(const F2Matrix& m) {
  std::set<std::string> images;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m.cols()); ++mask) {
    F2Vector x(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) x.set(i, (mask >> i) & 1U);
    images.insert(m.apply(x).to_string());
  }
  std::size_t r = 0;
  while ((std::size_t{1} << r) < images.size()) ++r;
  return r;
}

}  // namespace

TEST_CASE("F2 rank, kernel and solve") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + rng() % 9;
    const std::size_t cols = 1 + rng() % 9;
    const F2Matrix m = random_f2(rng, rows, cols);
    const std::size_t r = m.rank();
    CHECK(r == brute_rank(m));
    const auto k = m.kernel();
    CHECK(k.size() == cols - r);
    for (const auto& v : k) CHECK(m.apply(v).is_zero());
    CHECK(F2Matrix::from_columns(cols, k).rank() == k.size());

    F2Vector x(cols);
    for (std::size_t i = 0; i < cols; ++i) x.set(i, rng() % 2 == 0);
    const F2Vector b = m.apply(x);
    auto s = m.solve(b);
    REQUIRE(s);
    CHECK(m.apply(*s) == b);
    CHECK(m.transpose().transpose() == m);
  }
}

TEST_CASE("F2 inverse and echelon bookkeeping") {
  std::mt19937_64 rng(5);
  int invertible = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const F2Matrix m = random_f2(rng, 6, 6);
    auto inv = m.inverse();
    CHECK(inv.has_value() == (m.rank() == 6));
    if (inv) {
      ++invertible;
      CHECK(m * *inv == F2Matrix::identity(6));
    }
  }
  CHECK(invertible > 0);

  F2Echelon e(5);
  const F2Vector a = F2Vector::from_indices(5, {0, 1});
  const F2Vector b = F2Vector::from_indices(5, {1, 2});
  CHECK_FALSE(e.insert(a));
  CHECK_FALSE(e.insert(b));
  auto dep = e.insert(a + b);
  REQUIRE(dep);
  CHECK(dep->get(0));
  CHECK(dep->get(1));
  auto ex = e.express(F2Vector::from_indices(5, {0, 2}));
  REQUIRE(ex);
  CHECK(ex->get(0) != ex->get(2));
  CHECK_FALSE(e.contains(F2Vector::unit(5, 4)));

  const F2QuotientBasis q(5, {a}, {b, F2Vector::unit(5, 4)});
  auto coords = q.coordinates(a + F2Vector::unit(5, 4));
  REQUIRE(coords);
  CHECK_FALSE(coords->get(0));
  CHECK(coords->get(1));
  CHECK_FALSE(q.coordinates(F2Vector::unit(5, 3)));
}

TEST_CASE("subspace preimage and span equality") {
  F2Matrix m(3, 3);
  m.set(0, 0, true);
  m.set(1, 1, true);
  const auto pre = preimage_of_subspace(m, {F2Vector::unit(3, 0)});
  CHECK(same_span(3, pre, {F2Vector::unit(3, 0), F2Vector::unit(3, 2)}));
  CHECK_FALSE(same_span(3, pre, {F2Vector::unit(3, 0)}));
}
