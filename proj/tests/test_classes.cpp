#include "doctest.h"

#include "contact9/classes/char_classes.hpp"
#include "contact9/errors.hpp"
#include "contact9/model/builders.hpp"
#include "contact9/model/library.hpp"
#include "contact9/simplicial/standard.hpp"
#include "poly_oracle.hpp"

using namespace contact9;
using namespace contact9::model;
using namespace contact9::classes;
using contact9::testing::Poly;
using contact9::testing::TruncatedRing;

namespace {

std::vector<ManifoldModel> all_models() {
  std::vector<ManifoldModel> out;
  for (const auto& n : library_names()) out.push_back(library(n));
  for (const auto& n : synthetic_names()) out.push_back(synthetic(n));
  return out;
}

void check_total(const CohomologyModel& m, const TruncatedRing& ring, const Poly& total) {
  const auto w = sw_total(m);
  REQUIRE(w.size() == static_cast<std::size_t>(m.dimension()) + 1);
  for (int k = 0; k <= m.dimension(); ++k) {
    INFO("w" << k);
    CHECK(ring.from_class(m, w[static_cast<std::size_t>(k)]) == ring.part(total, k));
  }
}

// 1 + x
Poly one_plus(const TruncatedRing& r, const Poly& x) { return r.add(r.one(), x); }

bool in_span(const std::vector<F2Vector>& basis, const F2Vector& x) {
  if (basis.empty()) return x.is_zero();
  return F2Matrix::from_columns(x.size(), basis).solve(x).has_value();
}

std::vector<F2Vector> all_vectors(std::size_t n) {
  std::vector<F2Vector> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    F2Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, (mask >> i) & 1U);
    out.push_back(v);
  }
  return out;
}

// rho2 of the integral generators of H^6, squared up by Sq^2
std::vector<F2Vector> sq2_of_h6_generators(const CohomologyModel& m) {
  std::vector<F2Vector> out;
  for (std::size_t g = 0; g < m.rank_z(6); ++g) out.push_back(m.sq(2, m.rho2(m.basis_z(6, g))).v);
  return out;
}

}  // namespace

TEST_CASE("Stiefel-Whitney classes of projective spaces") {
  for (int n = 1; n <= 9; ++n) {
    INFO("RP" << n);
    const TruncatedRing r({{"a", 1, n + 1}});
    check_total(real_projective_model(n), r, r.pow(one_plus(r, r.gen("a")), n + 1));
  }
  for (int n = 1; n <= 4; ++n) {
    INFO("CP" << n);
    const TruncatedRing r({{"a", 2, n + 1}});
    check_total(complex_projective_model(n), r, r.pow(one_plus(r, r.gen("a")), n + 1));
  }
  const TruncatedRing h({{"u", 4, 3}});
  check_total(quaternionic_projective_model(2), h, h.pow(one_plus(h, h.gen("u")), 3));
}

TEST_CASE("Stiefel-Whitney classes from triangulations") {
  const auto cp2 = from_simplicial(simplicial::standard::cp2());
  const auto w = sw_total(cp2);
  const auto x = cp2.basis2(2, 0);
  CHECK(w[2] == x);
  CHECK(w[4] == cp2.cup(x, x));
  CHECK(w[1].is_zero());
  CHECK(w[3].is_zero());

  const auto rp2 = from_simplicial(simplicial::standard::rp2());
  const auto wr = sw_total(rp2);
  const auto a = rp2.basis2(1, 0);
  CHECK(wr[1] == a);
  CHECK(wr[2] == rp2.cup(a, a));

  for (const auto& k : {simplicial::standard::sphere(4), simplicial::standard::torus()}) {
    const auto m = from_simplicial(k);
    const auto wk = sw_total(m);
    for (int i = 1; i <= m.dimension(); ++i) CHECK(wk[static_cast<std::size_t>(i)].is_zero());
  }
}

TEST_CASE("Dold manifold total class") {
  const ManifoldModel m = library("Dold_5_2");
  const TruncatedRing r({{"c", 1, 6}, {"d", 2, 3}});
  const Poly c = r.gen("c");
  const Poly total = r.mul(r.pow(one_plus(r, c), 5), r.pow(one_plus(r, r.add(c, r.gen("d"))), 3));
  check_total(m.cohomology, r, total);

  const SWClasses sw = sw_classes(m);
  CHECK_FALSE(sw.spinc());
  CHECK_FALSE(sw.W7.is_zero());
  CHECK(r.from_class(m.cohomology, sw[7]) == Poly{{5, 1}});
}

TEST_CASE("product classes") {
  const TruncatedRing r({{"s", 1, 2}, {"a", 2, 5}});
  check_total(library("S1xCP4").cohomology, r, r.pow(one_plus(r, r.gen("a")), 5));

  const ManifoldModel hp = library("S1xHP2");
  const TruncatedRing h({{"s", 1, 2}, {"u", 4, 3}});
  const WuClasses v = wu_classes(hp);
  CHECK(v.v2.is_zero());
  CHECK(h.from_class(hp.cohomology, v.v4) == h.gen("u"));
  const SWClasses sw = sw_classes(hp);
  CHECK(sw.spin());
  CHECK(h.from_class(hp.cohomology, sw[4]) == h.gen("u"));
  CHECK(h.from_class(hp.cohomology, sw[8]) == h.pow(h.gen("u"), 2));
}

TEST_CASE("Wu classes reject a non-orientable model") {
  ManifoldModel m{polynomial_model({{"a", 1, 9, "a + a^2"}, {"s", 1, 2, "s"}}), {}, {}, "RP8xS1"};
  CHECK_THROWS_AS(wu_classes(m), ValidationError);
}

TEST_CASE("integral lifts exist exactly when Sq1 vanishes") {
  const CohomologyModel m = real_projective_model(9);
  for (int d = 1; d <= 9; ++d) {
    const auto x = m.basis2(d, 0);
    const auto lift = integral_lift(m, x);
    INFO("a^" << d);
    CHECK(lift.has_value() == (d % 2 == 0 || d == 9));
    if (lift) CHECK(m.rho2(*lift) == x);
  }
  const CohomologyModel dold = library("Dold_5_2").cohomology;
  for (int d = 0; d <= 9; ++d) {
    for (const auto& v : all_vectors(dold.dim2(d))) {
      const Mod2Class x{d, v};
      const auto lift = integral_lift(dold, x);
      CHECK(lift.has_value() == (d == 9 || dold.sq(1, x).is_zero()));
      if (lift) CHECK(dold.rho2(*lift) == x);
    }
  }
}

TEST_CASE("D_M against a brute-force search") {
  for (const auto& m : all_models()) {
    INFO(m.label);
    const auto& c = m.cohomology;
    const SWClasses sw = sw_classes(m);
    const auto dm = compute_DM(m, sw);
    std::vector<F2Vector> torsion3;
    for (std::size_t g = c.piece(3).z_rank; g < c.rank_z(3); ++g) torsion3.push_back(c.rho2(c.basis_z(3, g)).v);
    std::size_t count = 0;
    for (const auto& v : all_vectors(c.dim2(1))) {
      const bool member = in_span(torsion3, c.cup(Mod2Class{1, v}, sw[2]).v);
      CHECK(member == in_span(dm, v));
      count += member ? 1 : 0;
    }
    CHECK(count == (std::size_t{1} << dm.size()));
  }
}

TEST_CASE("cosets modulo Sq2 of integral degree-6 classes") {
  for (const auto& m : all_models()) {
    INFO(m.label);
    const auto& c = m.cohomology;
    const auto sub = sq2_of_h6_generators(c);
    const auto basis = sq2_rho2_h6(c);
    for (const auto& v : basis) CHECK(in_span(sub, v));
    for (const auto& v : sub) CHECK(in_span(basis, v));
    if (c.dim2(8) > 6) continue;
    for (const auto& v : all_vectors(c.dim2(8))) {
      const CosetH8 x = coset_reduce(c, Mod2Class{8, v});
      CHECK(x.is_zero() == in_span(sub, v));
      CHECK(in_span(sub, x.representative.v + v));
      for (const auto& s : sub) CHECK(coset_reduce(c, Mod2Class{8, v + s}).same(x));
    }
  }
}

TEST_CASE("half products") {
  const CohomologyModel m = library("S1xCP4").cohomology;
  const auto a = m.basis_z(2, 0);
  const auto a3 = m.basis_z(6, 0);
  const IntClass c = m.scale(a, 2);
  const IntClass d = half_product(m, c, a3);
  CHECK(m.scale(d, 2) == m.cup_z(c, a3));
  CHECK(d == m.cup_z(a, a3));
  CHECK_THROWS_AS(half_product(m, a, a3), ValidationError);

  const CohomologyModel rp = real_projective_model(9);
  const auto sols = half_product_solutions(rp, rp.zero_z(8));
  CHECK(sols.size() == 2);
  CHECK(sols.front().is_zero());
  for (const auto& s : sols) CHECK(rp.scale(s, 2).is_zero());
}

TEST_CASE("sigma on spin models") {
  const ManifoldModel hp = library("S1xHP2");
  CHECK(sigma_w4(hp, sw_classes(hp)) == 1);
  const ManifoldModel m1 = library("M1_surgered");
  CHECK(sigma_w4(m1, sw_classes(m1)) == 1);
  const ManifoldModel s9 = library("S9");
  CHECK(sigma_w4(s9, sw_classes(s9)) == 0);

  ManifoldModel no_phi = m1;
  no_phi.phi_hat.reset();
  CHECK_FALSE(sigma_w4(no_phi, sw_classes(no_phi)).has_value());

  const ManifoldModel cp = library("S1xCP4");
  CHECK_THROWS_AS(sigma_w4(cp, sw_classes(cp)), ContractViolation);
}

TEST_CASE("W7 clauses agree on spin^c models") {
  std::size_t checked = 0;
  for (const auto& m : all_models()) {
    const SWClasses sw = sw_classes(m);
    if (!sw.spinc()) continue;
    INFO(m.label);
    const W7Clauses w = w7_clauses(m, sw);
    CHECK(w.bockstein_zero == w.lift_exists);
    CHECK(w.lift_exists == w.torsion_annihilates);
    CHECK(w.bockstein_zero);
    CHECK(sw.W7.is_zero());
    ++checked;
  }
  CHECK(checked >= 8);
}

TEST_CASE("square identities hold on every model") {
  std::size_t elements = 0;
  for (const auto& m : all_models()) {
    INFO(m.label);
    const SWClasses sw = sw_classes(m);
    const auto r = square_identities(m, sw);
    CHECK(r.violations.empty());
    CHECK(r.checked_d == sw.spinc());
    elements += r.elements_checked;
  }
  CHECK(elements > 50);
}

TEST_CASE("spin^c data and resampled choices") {
  const ManifoldModel m = library("M3_sum");
  const SWClasses sw = sw_classes(m);
  const auto data = spinc_data(m, sw);
  REQUIRE(data.has_value());
  const auto& c = m.cohomology;
  CHECK(c.rho2(data->c) == sw[2]);
  CHECK(c.rho2(data->v) == sw[6]);
  CHECK(c.scale(data->half_cv, 2) == c.cup_z(data->c, data->v));
  const CosetH8 ref = spinc_coset(m, sw, *data);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const SpincData alt = random_spinc_choice(m, *data, rng);
    CHECK(c.rho2(alt.c) == sw[2]);
    CHECK(spinc_coset(m, sw, alt).same(ref));
  }
  CHECK_FALSE(spinc_data(library("Dold_5_2"), sw_classes(library("Dold_5_2"))).has_value());
}
