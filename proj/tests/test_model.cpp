#include "doctest.h"

#include "contact9/errors.hpp"
#include "contact9/model/builders.hpp"
#include "contact9/model/library.hpp"
#include "contact9/model/schema.hpp"
#include "contact9/model/validate.hpp"
#include "contact9/simplicial/standard.hpp"
#include "poly_oracle.hpp"

#include <algorithm>
#include <string>

using namespace contact9;
using namespace contact9::model;
using contact9::testing::Poly;
using contact9::testing::TruncatedRing;

namespace {

std::vector<ManifoldModel> all_models() {
  std::vector<ManifoldModel> out;
  for (const auto& n : library_names()) out.push_back(library(n));
  for (const auto& n : synthetic_names()) out.push_back(synthetic(n));
  return out;
}

// every product of basis elements against the oracle ring
void check_products(const CohomologyModel& m, const TruncatedRing& ring) {
  for (int i = 0; i <= m.dimension(); ++i) {
    for (int j = 0; i + j <= m.dimension(); ++j) {
      for (std::size_t a = 0; a < m.dim2(i); ++a) {
        for (std::size_t b = 0; b < m.dim2(j); ++b) {
          const Poly expect = ring.mul(ring.from_class(m, m.basis2(i, a)), ring.from_class(m, m.basis2(j, b)));
          const Poly got = ring.from_class(m, m.cup(m.basis2(i, a), m.basis2(j, b)));
          CHECK(got == expect);
        }
      }
    }
  }
}

// Sq of a monomial as the product of the generators' total squares
void check_squares(const CohomologyModel& m, const TruncatedRing& ring, const std::vector<std::pair<std::string, Poly>>& total) {
  for (int d = 0; d <= m.dimension(); ++d) {
    for (std::size_t i = 0; i < m.dim2(d); ++i) {
      const auto mono = ring.parse(m.piece(d).f2_basis[i]);
      Poly sq = ring.one();
      for (std::size_t g = 0; g < total.size(); ++g) sq = ring.mul(sq, ring.pow(total[g].second, mono[g]));
      for (int k = 0; d + k <= m.dimension(); ++k) {
        CHECK(ring.from_class(m, m.sq(k, m.basis2(d, i))) == ring.part(sq, d + k));
      }
    }
  }
}

TruncatedRing dold_ring() { return TruncatedRing({{"c", 1, 6}, {"d", 2, 3}}); }

// mod-2 Betti numbers and 2-torsion counts from Sq^1 ranks (torsion all of order 2)
struct Groups {
  std::vector<std::size_t> free, torsion;
};
Groups groups_from_sq1(const CohomologyModel& m) {
  Groups g;
  const int n = m.dimension();
  std::vector<std::size_t> rk(static_cast<std::size_t>(n) + 2, 0);
  for (int d = 0; d < n; ++d) rk[static_cast<std::size_t>(d) + 1] = m.sq_matrix(1, d).rank();
  for (int d = 0; d <= n; ++d) {
    const auto k = static_cast<std::size_t>(d);
    // dim2 = free + torsion(d) + torsion(d+1)
    g.torsion.push_back(rk[k]);
    g.free.push_back(m.dim2(d) - rk[k] - rk[k + 1]);
  }
  return g;
}

// Change of basis exchanging the summand blocks of a # b, for torsion-free
// summands of the same dimension.
ModelIso swap_iso(const CohomologyModel& a, const CohomologyModel& b) {
  const int n = a.dimension();
  ModelIso iso;
  for (int d = 0; d <= n; ++d) {
    const bool fused = d == 0 || d == n;
    const std::size_t na = fused ? 0 : a.dim2(d);
    const std::size_t nb = fused ? 0 : b.dim2(d);
    const std::size_t total = fused ? 1 : na + nb;
    F2Matrix m2(total, total);
    if (fused) {
      m2.set(0, 0, true);
    } else {
      for (std::size_t i = 0; i < na; ++i) m2.set(nb + i, i, true);
      for (std::size_t i = 0; i < nb; ++i) m2.set(i, na + i, true);
    }
    iso.mod2.push_back(m2);
    const std::size_t za = fused ? 0 : a.rank_z(d);
    const std::size_t zb = fused ? 0 : b.rank_z(d);
    const std::size_t zt = fused ? 1 : za + zb;
    IntMatrix mz(zt, zt);
    if (fused) {
      mz(0, 0) = 1;
    } else {
      for (std::size_t i = 0; i < za; ++i) mz(zb + i, i) = 1;
      for (std::size_t i = 0; i < zb; ++i) mz(i, za + i) = 1;
    }
    iso.integral.push_back(mz);
  }
  return iso;
}

}  // namespace

TEST_CASE("polynomial model products match the truncated ring") {
  const auto cp4 = complex_projective_model(4);
  check_products(cp4, TruncatedRing({{"a", 2, 5}}));
  const auto dold = library("Dold_5_2").cohomology;
  check_products(dold, dold_ring());
  check_products(library("S1xCP4").cohomology, TruncatedRing({{"s", 1, 2}, {"a", 2, 5}}));
  check_products(library("S1xHP2").cohomology, TruncatedRing({{"s", 1, 2}, {"u", 4, 3}}));
}

TEST_CASE("polynomial model squares follow the Cartan formula") {
  const TruncatedRing ring = dold_ring();
  const Poly c = ring.gen("c");
  const Poly d = ring.gen("d");
  const Poly total_c = ring.add(c, ring.mul(c, c));
  const Poly total_d = ring.add(ring.add(d, ring.mul(c, d)), ring.mul(d, d));
  check_squares(library("Dold_5_2").cohomology, ring, {{"c", total_c}, {"d", total_d}});

  const TruncatedRing rp = TruncatedRing({{"a", 1, 10}});
  const Poly a = rp.gen("a");
  check_squares(real_projective_model(9), rp, {{"a", rp.add(a, rp.mul(a, a))}});
}

TEST_CASE("Dold manifold Sq1 on monomials") {
  const auto m = library("Dold_5_2").cohomology;
  const TruncatedRing ring = dold_ring();
  for (int deg = 0; deg < 9; ++deg) {
    for (std::size_t i = 0; i < m.dim2(deg); ++i) {
      const auto e = ring.parse(m.piece(deg).f2_basis[i]);
      Poly expect;
      if ((e[0] + e[1]) % 2 == 1 && e[0] + 1 < 6) expect.insert({e[0] + 1, e[1]});
      CHECK(ring.from_class(m, m.sq(1, m.basis2(deg, i))) == expect);
    }
  }
}

TEST_CASE("Dold manifold integral groups agree with Sq1 homology") {
  const auto m = library("Dold_5_2").cohomology;
  const Groups g = groups_from_sq1(m);
  for (int d = 0; d <= 9; ++d) {
    INFO("degree " << d);
    CHECK(m.piece(d).z_rank == g.free[static_cast<std::size_t>(d)]);
    CHECK(m.piece(d).z_torsion.size() == g.torsion[static_cast<std::size_t>(d)]);
    for (const auto& t : m.piece(d).z_torsion) CHECK(t == 2);
  }
  CHECK(m.piece(9).z_rank == 1);
  CHECK(m.orientable());
}

TEST_CASE("product with a point is the identity") {
  for (const auto& name : {"S1xCP4", "S1xHP2", "S9"}) {
    const auto x = library(name).cohomology;
    CHECK(build_product(x, point_model()) == x);
    CHECK(build_product(point_model(), x) == x);
  }
}

TEST_CASE("products of spheres and Kunneth dimensions") {
  const auto s = build_product(sphere_model(4), sphere_model(5));
  for (int d = 0; d <= 9; ++d) {
    const std::size_t expect = (d == 0 || d == 4 || d == 5 || d == 9) ? 1 : 0;
    CHECK(s.piece(d).z_rank == expect);
    CHECK(s.dim2(d) == expect);
  }
  CHECK(validate(s).ok());

  const auto a = complex_projective_model(2);
  const auto b = build_product(sphere_model(1), sphere_model(4));
  const auto p = build_product(a, b);
  for (int d = 0; d <= 9; ++d) {
    std::size_t expect = 0;
    for (int i = 0; i <= d; ++i) expect += a.dim2(i) * b.dim2(d - i);
    CHECK(p.dim2(d) == expect);
    CHECK(p.rank_z(d) == expect);
  }
  CHECK_THROWS_AS(build_product(real_projective_model(3), sphere_model(2)), ContractViolation);
}

TEST_CASE("library and synthetic models validate") {
  for (const auto& m : all_models()) {
    INFO(m.label);
    const auto r = validate(m);
    CHECK_MESSAGE(r.ok(), r.summary());
    CHECK(m.cohomology.dimension() == 9);
  }
  for (int n = 1; n <= 4; ++n) CHECK(validate(complex_projective_model(n)).ok());
  for (int n = 1; n <= 6; ++n) CHECK(validate(real_projective_model(n)).ok());
  CHECK(validate(quaternionic_projective_model(2)).ok());
}

TEST_CASE("dropping an integral product is reported") {
  ManifoldModel m = library("S1xCP4");
  REQUIRE(m.cohomology.has_cupz(2, 6));
  m.cohomology.erase_cupz(2, 6);
  const auto r = validate(m);
  CHECK(r.has("cupz_missing"));
}

TEST_CASE("a degenerate pairing row is reported with its degree") {
  ManifoldModel m = library("S1xCP4");
  auto& c = m.cohomology;
  for (std::size_t b = 0; b < c.dim2(7); ++b) c.cup2_entry(2, 0, 7, b) = F2Vector(c.dim2(9));
  const auto r = validate(m);
  REQUIRE(r.has("poincare_pairing"));
  bool degree_named = false;
  for (const auto& v : r.violations) degree_named = degree_named || (v.check == "poincare_pairing" && (v.degree == 2 || v.degree == 7));
  CHECK(degree_named);
}

TEST_CASE("zeroing Sq1 breaks the Bockstein relation") {
  CohomologyModel m = real_projective_model(2);
  m.sq_matrix(1, 1) = F2Matrix(m.dim2(2), m.dim2(1));
  const auto r = validate(m);
  CHECK_FALSE(r.ok());
  REQUIRE(r.has("rho2_beta"));
  for (const auto& v : r.violations) {
    if (v.check == "rho2_beta") CHECK(v.witness == "a");
  }
}

TEST_CASE("model documents round-trip") {
  for (const auto& m : all_models()) {
    INFO(m.label);
    const std::string text = emit_model(m);
    const ManifoldModel back = parse_model(text);
    CHECK(back == m);
    CHECK(emit_model(back) == text);
  }
}

TEST_CASE("model parse errors name the field and line") {
  const std::string text = emit_model(library("S9"));
  const std::string key = "\"z_rank\": 1";
  const auto pos = text.find(key);
  REQUIRE(pos != std::string::npos);
  std::string bad = text;
  bad.replace(pos, key.size(), "\"z_rank\": \"one\"");
  const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
  try {
    parse_model(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field() == "graded[0].z_rank");
    CHECK(e.line() == line);
  }

  CHECK_THROWS_AS(parse_model("[1, 2]"), ParseError);
  CHECK_THROWS_AS(parse_model("schema_version: 2\nkind: manifold_model\n"), ParseError);
  try {
    parse_model("schema_version: 1\nkind: manifold_model\nlabel: x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field() == "dimension");
  }
}

TEST_CASE("connected sum with the sphere is the identity") {
  for (const auto& name : {"S1xCP4", "Dold_5_2", "M1_surgered"}) {
    const ManifoldModel x = library(name);
    const ManifoldModel s = connected_sum(library("S9"), x);
    CHECK(iso_violations(s, x, identity_iso(x.cohomology)).empty());
    CHECK(validate(s).ok());
  }
}

TEST_CASE("connected sum is commutative and associative") {
  const ManifoldModel a = library("S1xHP2");
  const ManifoldModel b = library("S1xCP4");
  const ManifoldModel c = synthetic("CP2xS5");
  const ManifoldModel ab = connected_sum(a, b);
  const ManifoldModel ba = connected_sum(b, a);
  CHECK(validate(ab).ok());
  const auto swap = swap_iso(a.cohomology, b.cohomology);
  const auto v = iso_violations(ab, ba, swap);
  CHECK_MESSAGE(v.empty(), (v.empty() ? "" : v.front()));

  const ManifoldModel left = connected_sum(ab, c);
  const ManifoldModel right = connected_sum(a, connected_sum(b, c));
  CHECK(iso_violations(left, right, identity_iso(left.cohomology)).empty());

  for (int d = 1; d < 9; ++d) CHECK(ab.cohomology.dim2(d) == a.cohomology.dim2(d) + b.cohomology.dim2(d));
  CHECK_THROWS_AS(connected_sum(a, ManifoldModel{real_projective_model(4), {}, {}, "RP4"}), ContractViolation);
}

TEST_CASE("models from triangulations") {
  const auto s4 = from_simplicial(simplicial::standard::sphere(4));
  CHECK(s4.dimension() == 4);
  CHECK(s4.piece(4).z_rank == 1);
  CHECK(s4.dim2(2) == 0);
  CHECK(validate(s4).ok());

  const auto cp2 = from_simplicial(simplicial::standard::cp2());
  CHECK(validate(cp2).ok());
  for (int d = 0; d <= 4; ++d) CHECK(cp2.piece(d).z_rank == (d % 2 == 0 ? 1U : 0U));
  const auto x = cp2.basis2(2, 0);
  CHECK(cp2.eval2(cp2.cup(x, x)));
  CHECK(cp2.sq(2, x) == cp2.cup(x, x));

  const auto rp2 = from_simplicial(simplicial::standard::rp2());
  CHECK(validate(rp2).ok());
  CHECK(rp2.piece(2).z_torsion == std::vector<Integer>{2});
  CHECK_FALSE(rp2.orientable());
  CHECK(rp2.sq(1, rp2.basis2(1, 0)) == rp2.basis2(2, 0));

  // two triangles sharing a vertex: not closed
  const auto bowtie = simplicial::SimplicialComplex::from_facets({{0, 1, 2}, {0, 3, 4}});
  CHECK_THROWS_AS(from_simplicial(bowtie), ValidationError);
}

TEST_CASE("random relabelings are isomorphisms") {
  for (const auto& m : all_models()) {
    INFO(m.label);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const ModelIso iso = random_iso(m.cohomology, seed);
      const ManifoldModel r = relabel(m, iso);
      CHECK(iso_violations(m, r, iso).empty());
      CHECK(validate(r).ok());
    }
  }
}

TEST_CASE("a tampered relabeling is detected") {
  const ManifoldModel m = library("S1xCP4");
  ModelIso iso = random_iso(m.cohomology, 7);
  const ManifoldModel r = relabel(m, iso);
  ModelIso bad = iso;
  bad.mod2[2] = F2Matrix(m.cohomology.dim2(2), m.cohomology.dim2(2));
  CHECK_FALSE(iso_violations(m, r, bad).empty());
}
