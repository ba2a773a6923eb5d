#include "doctest.h"

#include "contact9/errors.hpp"
#include "contact9/simplicial/cohomology.hpp"
#include "contact9/simplicial/kernels.hpp"
#include "contact9/simplicial/standard.hpp"
#include "support.hpp"

#include <algorithm>
#include <random>

using namespace contact9;
using namespace contact9::simplicial;
using contact9::testing::f2_coords;
using contact9::testing::naive_coboundary_mod2;
using contact9::testing::naive_pairing;
using contact9::testing::random_cochain;
using contact9::testing::random_cocycle;

namespace {

std::vector<std::size_t> ranks(const std::vector<GradedGroup>& gs) {
  std::vector<std::size_t> out;
  for (const auto& g : gs) out.push_back(g.free_rank);
  return out;
}

// mod-2 Betti numbers from ranks of directly assembled coboundary matrices
std::vector<std::size_t> brute_f2_betti(const SimplicialComplex& k) {
  std::vector<std::size_t> rank(static_cast<std::size_t>(k.dimension() + 2), 0);
  for (int d = 0; d < k.dimension(); ++d) {
    F2Matrix m(k.count(d + 1), k.count(d));
    for (std::size_t i = 0; i < k.count(d); ++i) {
      Cochain e(d, Ring::mod2());
      e.set(i, 1);
      const Cochain image = naive_coboundary_mod2(k, e);
      for (const auto& entry : image.entries()) m.set(entry.first, i, true);
    }
    rank[static_cast<std::size_t>(d) + 1] = m.rank();
  }
  std::vector<std::size_t> out;
  for (int d = 0; d <= k.dimension(); ++d) {
    const std::size_t z = k.count(d) - rank[static_cast<std::size_t>(d) + 1];
    out.push_back(z - rank[static_cast<std::size_t>(d)]);
  }
  return out;
}

}  // namespace

TEST_CASE("complex construction and validation") {
  const auto s = standard::sphere(4);
  CHECK(s.dimension() == 4);
  CHECK(s.count(0) == 6);
  CHECK(s.count(4) == 6);
  CHECK(s.euler_characteristic() == 2);
  CHECK(s.is_mod2_pseudomanifold());
  CHECK(standard::torus().euler_characteristic() == 0);
  CHECK(standard::rp2().euler_characteristic() == 1);
  CHECK(standard::cp2().euler_characteristic() == 3);
  CHECK(standard::rp3().count(0) == 40);
  CHECK(standard::rp3().euler_characteristic() == 0);

  CHECK_THROWS_AS(SimplicialComplex({0, 1, 2}, {{0, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(SimplicialComplex({0, 1, 2}, {{0, 1, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(SimplicialComplex({0, 1, 2}, {{0, 1, 2}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(SimplicialComplex({0, 0, 2}, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("complex document parsing") {
  const auto k = parse_complex(R"({"vertices": [3, 1, 2], "facets": [[1, 2], [2, 3], [3, 1]]})");
  CHECK(k.vertices() == std::vector<VertexId>{3, 1, 2});
  CHECK(k.count(1) == 3);
  const auto again = parse_complex(emit_complex(k));
  CHECK(again.vertices() == k.vertices());
  CHECK(again.facet_ids() == k.facet_ids());

  const auto y = parse_complex("vertices: [0, 1, 2]\nfacets:\n  - [0, 1, 2]\n");
  CHECK(y.dimension() == 2);

  try {
    parse_complex("vertices: [0, 1, 2]\nfacets:\n  - [0, 1]\n  - [2, 2]\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.field().find("facets") != std::string::npos);
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_complex("vertices: [0, 1]\n"), ParseError);
  CHECK_THROWS_AS(parse_complex("{\"vertices\": [0, 1], \"facets\": [[0, \"x\"]]}"), ParseError);
}

TEST_CASE("integral cohomology of standard complexes") {
  const auto s4 = cohomology(standard::sphere(4), Ring::integers());
  CHECK(ranks(s4) == std::vector<std::size_t>{1, 0, 0, 0, 1});
  for (const auto& g : s4) CHECK(g.torsion.empty());

  const auto p2 = cohomology(standard::rp2(), Ring::integers());
  CHECK(ranks(p2) == std::vector<std::size_t>{1, 0, 0});
  CHECK(p2[1].torsion.empty());
  CHECK(p2[2].torsion == std::vector<Integer>{2});

  const auto p3 = cohomology(standard::rp3(), Ring::integers());
  CHECK(ranks(p3) == std::vector<std::size_t>{1, 0, 0, 1});
  CHECK(p3[2].torsion == std::vector<Integer>{2});

  const auto c2 = cohomology(standard::cp2(), Ring::integers());
  CHECK(ranks(c2) == std::vector<std::size_t>{1, 0, 1, 0, 1});

  const auto t2 = cohomology(standard::torus(), Ring::integers());
  CHECK(ranks(t2) == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("mod-2 cohomology matches brute-force ranks") {
  for (const auto& k : {standard::rp2(), standard::torus(), standard::cp2(), standard::rp3(),
                        standard::random_complex(8, 4, 14, 1), standard::random_complex(8, 3, 20, 2)}) {
    const auto groups = cohomology(k, Ring::mod2());
    const auto brute = brute_f2_betti(k);
    REQUIRE(groups.size() == brute.size());
    for (std::size_t d = 0; d < groups.size(); ++d) CHECK(groups[d].generators() == brute[d]);
  }
  const auto p2 = cohomology(standard::rp2(), Ring::mod2());
  CHECK(p2[0].generators() == 1);
  CHECK(p2[1].generators() == 1);
  CHECK(p2[2].generators() == 1);
}

TEST_CASE("mod-4 cohomology of RP2 and RP3") {
  const SimplicialCohomology h(standard::rp2());
  CHECK(h.group(0, Ring::mod2(2)).torsion == std::vector<Integer>{4});
  CHECK(h.group(1, Ring::mod2(2)).torsion == std::vector<Integer>{2});
  CHECK(h.group(2, Ring::mod2(2)).torsion == std::vector<Integer>{2});
  const SimplicialCohomology p3(standard::rp3());
  CHECK(p3.group(3, Ring::mod2(2)).torsion == std::vector<Integer>{4});
  CHECK(p3.group(1, Ring::mod2(2)).torsion == std::vector<Integer>{2});

  // every representative classifies to its own unit vector
  for (const auto* c : {&h, &p3}) {
    for (int d = 0; d <= c->dimension(); ++d) {
      for (unsigned j = 1; j <= 3; ++j) {
        const Ring r = Ring::mod2(j);
        for (std::size_t g = 0; g < c->generator_count(d, r); ++g) {
          const auto x = c->generator(d, r, g);
          CHECK(c->classify(c->representative(x)) == x);
        }
      }
    }
  }
}

TEST_CASE("cup products on the torus and RP2") {
  const auto t = standard::torus();
  const SimplicialCohomology h(t);
  REQUIRE(h.mod2(1).generators() == 2);
  const auto a = h.generator(1, Ring::mod2(), 0);
  const auto b = h.generator(1, Ring::mod2(), 1);
  const auto ra = h.representative(a);
  const auto rb = h.representative(b);
  CHECK(naive_pairing(t, ra, rb));
  CHECK_FALSE(naive_pairing(t, ra, ra));
  CHECK(h.cup(a, b) == h.generator(2, Ring::mod2(), 0));
  CHECK(h.cup(a, a).is_zero());
  CHECK(h.evaluate_mod2(h.cup(a, b)));

  const auto p = standard::rp2();
  const SimplicialCohomology hp(p);
  const auto x = hp.generator(1, Ring::mod2(), 0);
  CHECK(naive_pairing(p, hp.representative(x), hp.representative(x)));
  CHECK(hp.cup(x, x) == hp.generator(2, Ring::mod2(), 0));

  // unit
  const auto one = hp.generator(0, Ring::mod2(), 0);
  const auto r1 = hp.representative(one);
  CHECK(r1.entries().size() == 6);
  CHECK(cup(p, hp.representative(x), r1) == hp.representative(x));
  CHECK_THROWS_AS(cup(p, hp.representative(x), Cochain(0, Ring::integers())), ContractViolation);
}

TEST_CASE("cup-i coboundary relation on random complexes") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const auto k = standard::random_complex(8, 4, 12, 100 + static_cast<std::uint64_t>(trial));
    for (int i = 0; i <= 2; ++i) {
      for (int p = 0; p <= 2; ++p) {
        for (int q = 0; q <= 2; ++q) {
          if (p + q - i < 0 || p + q - i + 1 > k.dimension()) continue;
          const auto x = random_cochain(k, p, rng);
          const auto y = random_cochain(k, q, rng);
          const auto lhs = naive_coboundary_mod2(k, cup_i(k, x, y, i));
          Cochain rhs = cup_i(k, naive_coboundary_mod2(k, x), y, i) + cup_i(k, x, naive_coboundary_mod2(k, y), i);
          if (i > 0) rhs += cup_i(k, x, y, i - 1) + cup_i(k, y, x, i - 1);
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("cup-0 agrees with cup mod 2 and cup-n is the diagonal") {
  std::mt19937_64 rng(23);
  const auto k = standard::random_complex(8, 4, 12, 5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_cochain(k, 1, rng);
    const auto y = random_cochain(k, 2, rng);
    const auto integral = cup(k, x.lifted(), y.lifted()).reduced(Ring::mod2());
    CHECK(cup_i(k, x, y, 0) == integral);
    const auto z = random_cochain(k, 2, rng);
    CHECK(cup_i(k, z, z, 2) == z);
  }
  CHECK_THROWS_AS(cup_i(k, Cochain(1, Ring::integers()), Cochain(1, Ring::integers()), 1), ContractViolation);
}

TEST_CASE("Steenrod squares on RP2, RP3 and CP2") {
  const SimplicialCohomology p(standard::rp2());
  const auto a = p.generator(1, Ring::mod2(), 0);
  CHECK(p.sq(0, a) == a);
  CHECK(p.sq(1, a) == p.cup(a, a));
  CHECK_FALSE(p.sq(1, a).is_zero());
  CHECK(p.sq(2, a).is_zero());

  const SimplicialCohomology p3(standard::rp3());
  const auto b = p3.generator(1, Ring::mod2(), 0);
  CHECK(p3.sq(1, b) == p3.cup(b, b));
  const auto b2 = p3.cup(b, b);
  CHECK(p3.sq(1, b2).is_zero());
  CHECK_FALSE(p3.cup(b, b2).is_zero());

  const SimplicialCohomology c(standard::cp2());
  REQUIRE(c.integral(2).free_rank == 1);
  const auto x = c.generator(2, Ring::mod2(), 0);
  const auto x2 = c.cup(x, x);
  CHECK_FALSE(x2.is_zero());
  CHECK(c.sq(2, x) == x2);
  CHECK(c.sq(1, x).is_zero());
  CHECK(c.evaluate_mod2(x2));
  const auto z = c.generator(2, Ring::integers(), 0);
  const auto z2 = c.cup(z, z);
  const Integer e = c.evaluate_integral(z2);
  CHECK((e == 1 || e == -1));
}

TEST_CASE("Bockstein and reduction") {
  const SimplicialCohomology p(standard::rp2());
  const auto a = p.generator(1, Ring::mod2(), 0);
  const auto ba = p.bockstein(1, a);
  CHECK(ba == p.generator(2, Ring::integers(), 0));
  CHECK(p.reduce_mod(1, ba) == p.sq(1, a));

  const auto t = p.generator(2, Ring::integers(), 0);
  CHECK(p.reduce_mod(1, p.zero(2, Ring::integers())).is_zero());
  CHECK(p.bockstein(1, p.reduce_mod(1, t)).is_zero());

  const SimplicialCohomology c(standard::cp2());
  for (int d = 0; d <= 4; ++d) {
    for (std::size_t g = 0; g < c.mod2(d).generators(); ++g) {
      CHECK(c.bockstein(1, c.generator(d, Ring::mod2(), g)).is_zero());
    }
  }
  const auto z = c.generator(2, Ring::integers(), 0);
  CHECK(c.reduce_mod(1, z) == c.generator(2, Ring::mod2(), 0));
  CHECK(c.reduce_mod(1, c.scale(z, 2)).is_zero());
  CHECK(c.reduce_mod(2, c.scale(z, 2)) == c.scale(c.generator(2, Ring::mod2(2), 0), 2));

  // mod-4 Bockstein on RP3: the degree-1 class of order 2 in H^1(Z/4)
  const SimplicialCohomology p3(standard::rp3());
  const auto y = p3.generator(1, Ring::mod2(2), 0);
  CHECK(p3.bockstein(2, y).is_zero() == false);
  CHECK(p3.bockstein(2, p3.reduce_mod(2, p3.generator(3, Ring::integers(), 0))).is_zero());
}

TEST_CASE("exactness: reductions of integral classes are the kernel of the Bockstein") {
  for (const auto& k : {standard::rp2(), standard::rp3(), standard::cp2(), standard::torus(),
                        standard::random_complex(8, 3, 16, 9)}) {
    const SimplicialCohomology h(k);
    for (int d = 0; d <= h.dimension(); ++d) {
      const std::size_t m = h.mod2(d).generators();
      std::vector<F2Vector> image;
      for (std::size_t g = 0; g < h.integral(d).generators(); ++g) {
        image.push_back(f2_coords(h.reduce_mod(1, h.generator(d, Ring::integers(), g))));
      }
      std::vector<F2Vector> beta;
      for (std::size_t g = 0; g < m; ++g) beta.push_back(f2_coords(h.bockstein(1, h.generator(d, Ring::mod2(), g))));
      const std::size_t target = d < h.dimension() ? h.integral(d + 1).generators() : 0;
      const auto kernel = F2Matrix::from_columns(target, beta).kernel();
      CHECK(same_span(m, image, kernel));
    }
  }
}

TEST_CASE("cohomology operations do not depend on the vertex order") {
  std::mt19937_64 rng(31);
  for (const auto& k : {standard::rp2(), standard::cp2(), standard::random_complex(7, 3, 10, 4)}) {
    const SimplicialCohomology h(k);
    for (int trial = 0; trial < 5; ++trial) {
      auto order = k.vertices();
      std::shuffle(order.begin(), order.end(), rng);
      const auto k2 = k.reordered(order);
      const SimplicialCohomology h2(k2);
      auto move = [&](const CohomologyClass& x) { return h2.classify(transport(h.representative(x), k, k2)); };
      for (int d = 0; d <= h.dimension(); ++d) {
        CHECK(h.integral(d).free_rank == h2.integral(d).free_rank);
        CHECK(h.integral(d).torsion == h2.integral(d).torsion);
        for (std::size_t g = 0; g < h.mod2(d).generators(); ++g) {
          const auto x = h.generator(d, Ring::mod2(), g);
          for (int s = 0; s <= d; ++s) CHECK(move(h.sq(s, x)) == h2.sq(s, move(x)));
          CHECK(move(h.bockstein(1, x)) == h2.bockstein(1, move(x)));
          for (int e = 0; d + e <= h.dimension(); ++e) {
            for (std::size_t g2 = 0; g2 < h.mod2(e).generators(); ++g2) {
              const auto y = h.generator(e, Ring::mod2(), g2);
              CHECK(move(h.cup(x, y)) == h2.cup(move(x), move(y)));
            }
          }
        }
        for (std::size_t g = 0; g < h.integral(d).generators(); ++g) {
          const auto z = h.generator(d, Ring::integers(), g);
          for (int e = 0; d + e <= h.dimension(); ++e) {
            for (std::size_t g2 = 0; g2 < h.integral(e).generators(); ++g2) {
              const auto w = h.generator(e, Ring::integers(), g2);
              CHECK(move(h.cup(z, w)) == h2.cup(move(z), move(w)));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("classify rejects non-cocycles and random cocycles round-trip") {
  const SimplicialCohomology h(standard::torus());
  Cochain c(1, Ring::mod2());
  c.set(0, 1);
  CHECK_THROWS_AS(h.classify(c), ContractViolation);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto z = random_cocycle(h, 1, Ring::integers(), rng);
    const auto cls = h.classify(z);
    CHECK(h.classify(h.representative(cls)) == cls);
    CHECK(h.classify(z.reduced(Ring::mod2())) == h.reduce_mod(1, cls));
  }
}

TEST_CASE("products of complexes") {
  const auto s2 = standard::sphere(2);
  const auto k = product(s2, s2);
  const auto g = cohomology(k, Ring::integers());
  CHECK(ranks(g) == std::vector<std::size_t>{1, 0, 2, 0, 1});
  const auto t = product(standard::circle(3), standard::circle(3));
  CHECK(ranks(cohomology(t, Ring::integers())) == std::vector<std::size_t>{1, 2, 1});
}
