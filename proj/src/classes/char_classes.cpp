#include "contact9/classes/char_classes.hpp"

#include "contact9/errors.hpp"

#include <algorithm>

namespace contact9::classes {

namespace {

constexpr int kDim = model::kManifoldDimension;

Mod2Class sum(const Mod2Class& a, const Mod2Class& b) { return {a.degree, a.v + b.v}; }

F2Echelon span_of(std::size_t ambient, const std::vector<F2Vector>& vs) {
  F2Echelon e(ambient);
  for (const auto& v : vs) e.insert(v);
  return e;
}

void require_nine(const ManifoldModel& m) {
  if (m.cohomology.dimension() != kDim) throw ContractViolation("expected a 9-dimensional model");
}

}  // namespace

std::vector<Mod2Class> wu_total(const CohomologyModel& m) {
  const int n = m.dimension();
  if (m.dim2(n) != 1 || !m.eval2(m.basis2(n, 0))) throw ValidationError("top degree is not spanned by a class dual to [M]");
  std::vector<Mod2Class> v;
  for (int k = 0; k <= n; ++k) {
    // pairing[x][y] = <y x, [M]>, rhs[x] = <Sq^k x, [M]>
    F2Matrix pairing(m.dim2(n - k), m.dim2(k));
    F2Vector rhs(m.dim2(n - k));
    for (std::size_t x = 0; x < m.dim2(n - k); ++x) {
      const Mod2Class bx = m.basis2(n - k, x);
      for (std::size_t y = 0; y < m.dim2(k); ++y) pairing.set(x, y, m.eval2(m.cup(m.basis2(k, y), bx)));
      rhs.set(x, m.eval2(m.sq(k, bx)));
    }
    if (pairing.rank() != m.dim2(k)) throw ValidationError("Wu class v" + std::to_string(k) + " is not unique: degenerate pairing");
    auto sol = pairing.solve(rhs);
    if (!sol) throw ValidationError("Wu class v" + std::to_string(k) + " has no solution");
    v.push_back({k, *sol});
  }
  return v;
}

std::vector<Mod2Class> sw_total(const CohomologyModel& m) {
  const std::vector<Mod2Class> v = wu_total(m);
  std::vector<Mod2Class> w;
  for (int k = 0; k <= m.dimension(); ++k) {
    Mod2Class acc = m.zero2(k);
    for (int i = 0; i <= k; ++i) acc = sum(acc, m.sq(i, v[static_cast<std::size_t>(k - i)]));
    w.push_back(acc);
  }
  return w;
}

WuClasses wu_classes(const ManifoldModel& mm) {
  require_nine(mm);
  const auto v = wu_total(mm.cohomology);
  if (!v[1].is_zero()) throw ValidationError("w1 = v1 is nonzero: model is not orientable");
  for (int k = 1; k <= kDim; ++k) {
    if (k != 2 && k != 4 && !v[static_cast<std::size_t>(k)].is_zero()) {
      throw ValidationError("Wu class v" + std::to_string(k) + " is nonzero");
    }
  }
  return {v[2], v[4]};
}

SWClasses sw_classes(const ManifoldModel& mm) {
  const WuClasses wu = wu_classes(mm);
  const CohomologyModel& m = mm.cohomology;
  SWClasses sw;
  sw.w = sw_total(m);
  sw.W3 = m.beta(sw[2]);
  sw.W7 = m.beta(sw[6]);
  if (sw[6] != m.sq(2, wu.v4)) throw ValidationError("identity w6 = Sq^2 v4 fails");
  const Mod2Class w2sq = m.cup(sw[2], sw[2]);
  if (sw[8] != sum(m.cup(sw[4], sw[4]), m.cup(w2sq, w2sq))) throw ValidationError("identity w8 = w4^2 + w2^4 fails");
  for (int i = 1; i <= 3; ++i) {
    if (sw[2 * i + 1] != m.sq(1, sw[2 * i])) {
      throw ValidationError("identity w" + std::to_string(2 * i + 1) + " = Sq^1 w" + std::to_string(2 * i) + " fails");
    }
  }
  if (!sw[9].is_zero()) throw ValidationError("identity w9 = 0 fails");
  return sw;
}

std::optional<IntClass> integral_lift(const CohomologyModel& m, const Mod2Class& x) {
  const auto t = m.rho2_matrix(x.degree).solve(x.v);
  const bool exact = x.degree == m.dimension() || m.beta(x).is_zero();
  if (t.has_value() != exact) throw InternalInconsistency("integral lift and Bockstein disagree in degree " + std::to_string(x.degree));
  if (!t) return std::nullopt;
  IntClass z = m.zero_z(x.degree);
  for (std::size_t g : t->support()) z.c[g] = 1;
  return z;
}

F2Matrix bockstein_matrix(const CohomologyModel& m, int d) {
  F2Matrix out(m.rank_z(d + 1), m.dim2(d));
  for (std::size_t x = 0; x < m.dim2(d); ++x) {
    const IntClass b = m.beta(m.basis2(d, x));
    for (std::size_t g = 0; g < b.c.size(); ++g) {
      if (b.c[g] == 0) continue;
      const Integer t = m.order(d + 1, g);
      if (t == 0 || t % 2 != 0 || b.c[g] != t / 2) throw ValidationError("beta leaves the 2-torsion in degree " + std::to_string(d + 1));
      out.set(g, x, true);
    }
  }
  return out;
}

std::vector<F2Vector> sq2_rho2_h6(const CohomologyModel& m) {
  F2Echelon image(m.dim2(8));
  for (const auto& y : bockstein_matrix(m, 6).kernel()) image.insert(m.sq(2, {6, y}).v);
  return image.basis();
}

CosetH8 coset_reduce(const CohomologyModel& m, const Mod2Class& x) {
  if (x.degree != 8) throw ContractViolation("coset_reduce needs a degree-8 class");
  CosetH8 c;
  c.subspace_basis = sq2_rho2_h6(m);
  const F2Echelon e = span_of(m.dim2(8), c.subspace_basis);
  c.representative = {8, e.reduce(x.v)};
  return c;
}

std::vector<IntClass> half_product_solutions(const CohomologyModel& m, const IntClass& cv) {
  IntClass d = m.zero_z(cv.degree);
  std::vector<std::size_t> halves;
  for (std::size_t g = 0; g < cv.c.size(); ++g) {
    const Integer t = m.order(cv.degree, g);
    const Integer& e = cv.c[g];
    if (t == 0) {
      if (e % 2 != 0) return {};
      d.c[g] = e / 2;
    } else if (t % 2 == 1) {
      d.c[g] = (e * ((t + 1) / 2)) % t;
    } else {
      if (e % 2 != 0) return {};
      d.c[g] = e / 2;
      halves.push_back(g);
    }
  }
  if (halves.size() > 16) throw ContractViolation("too many half-product solutions to enumerate");
  std::vector<IntClass> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << halves.size()); ++mask) {
    IntClass s = d;
    for (std::size_t i = 0; i < halves.size(); ++i) {
      if ((mask >> i) & 1U) s.c[halves[i]] += m.order(cv.degree, halves[i]) / 2;
    }
    out.push_back(m.normalize(std::move(s)));
  }
  return out;
}

IntClass half_product(const CohomologyModel& m, const IntClass& c, const IntClass& v) {
  const auto sols = half_product_solutions(m, m.cup_z(c, v));
  if (sols.empty()) throw ValidationError("cv is not divisible by 2");
  return sols.front();
}

std::optional<int> sigma_w4(const ManifoldModel& mm, const SWClasses& sw) {
  if (!sw.spin()) throw ContractViolation("sigma_w4 is defined for spin models only");
  if (sw[4].is_zero() || mm.cohomology.dim2(5) == 0) return 0;
  if (!mm.phi_hat) return std::nullopt;
  return mm.cohomology.eval2(mm.cohomology.cup(sw[4], *mm.phi_hat)) ? 1 : 0;
}

std::optional<SpincData> spinc_data(const ManifoldModel& mm, const SWClasses& sw) {
  require_nine(mm);
  if (!sw.spinc()) return std::nullopt;
  const CohomologyModel& m = mm.cohomology;
  auto c = integral_lift(m, sw[2]);
  auto v = integral_lift(m, sw[6]);
  if (!c || !v) throw InternalInconsistency("spin^c model without integral lifts of w2 and w6");
  return SpincData{*c, *v, half_product(m, *c, *v), std::nullopt};
}

SpincData random_spinc_choice(const ManifoldModel& mm, const SpincData& base, std::mt19937_64& rng) {
  const CohomologyModel& m = mm.cohomology;
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto perturb = [&](const IntClass& z) {
    IntClass out = z;
    for (auto& x : out.c) x += 2 * coeff(rng);
    return m.normalize(std::move(out));
  };
  SpincData d;
  d.c = perturb(base.c);
  d.v = perturb(base.v);
  const auto sols = half_product_solutions(m, m.cup_z(d.c, d.v));
  if (sols.empty()) throw InternalInconsistency("cv is not divisible by 2 for a resampled choice");
  d.half_cv = sols[std::uniform_int_distribution<std::size_t>(0, sols.size() - 1)(rng)];
  d.p_c = base.p_c;
  return d;
}

CosetH8 spinc_coset(const ManifoldModel& mm, const SWClasses& sw, const SpincData& data) {
  const CohomologyModel& m = mm.cohomology;
  return coset_reduce(m, sum(sw[8], m.rho2(data.half_cv)));
}

std::vector<F2Vector> compute_DM(const ManifoldModel& mm, const SWClasses& sw) {
  require_nine(mm);
  const CohomologyModel& m = mm.cohomology;
  std::vector<F2Vector> torsion_images;
  for (std::size_t g = m.piece(3).z_rank; g < m.rank_z(3); ++g) torsion_images.push_back(m.rho2(m.basis_z(3, g)).v);
  F2Matrix times_w2(m.dim2(3), m.dim2(1));
  for (std::size_t x = 0; x < m.dim2(1); ++x) times_w2.column(x) = m.cup(m.basis2(1, x), sw[2]).v;
  const auto dm = preimage_of_subspace(times_w2, torsion_images);

  const auto sub = sq2_rho2_h6(m);
  F2Matrix pairing(sub.size(), m.dim2(1));
  for (std::size_t x = 0; x < m.dim2(1); ++x) {
    for (std::size_t s = 0; s < sub.size(); ++s) pairing.set(s, x, m.eval2(m.cup(m.basis2(1, x), {8, sub[s]})));
  }
  if (!same_span(m.dim2(1), dm, pairing.kernel())) {
    throw ValidationError("D_M differs from the annihilator of Sq^2(rho2 H^6)");
  }
  return dm;
}

bool bockstein_hypothesis(const ManifoldModel& mm, const std::vector<F2Vector>& dm) {
  return std::all_of(dm.begin(), dm.end(), [&](const F2Vector& x) { return mm.cohomology.beta({1, x}).is_zero(); });
}

SquareIdentityReport square_identities(const ManifoldModel& mm, const SWClasses& sw) {
  require_nine(mm);
  const CohomologyModel& m = mm.cohomology;
  SquareIdentityReport r;
  const F2Echelon sub = span_of(m.dim2(8), sq2_rho2_h6(m));
  auto name = [&](int d, std::size_t i) { return m.piece(d).f2_basis[i]; };
  for (std::size_t y = 0; y < m.dim2(6); ++y, ++r.elements_checked) {
    const Mod2Class b = m.basis2(6, y);
    if (m.sq(2, b) != m.cup(sw[2], b)) r.violations.push_back("(a) Sq^2 y != w2 y for y = " + name(6, y));
  }
  const Mod2Class v4 = sum(sw[4], m.cup(sw[2], sw[2]));
  for (std::size_t z = 0; z < m.dim2(4); ++z, ++r.elements_checked) {
    const Mod2Class b = m.basis2(4, z);
    if (m.cup(b, b) != m.cup(v4, b)) r.violations.push_back("(b) z^2 != (w4 + w2^2) z for z = " + name(4, z));
  }
  if (bockstein_hypothesis(mm, compute_DM(mm, sw))) {
    r.checked_c = true;
    for (std::size_t x = 0; x < m.dim2(7); ++x, ++r.elements_checked) {
      if (!sub.contains(m.sq(1, m.basis2(7, x)).v)) r.violations.push_back("(c) Sq^1 x outside Sq^2(rho2 H^6) for x = " + name(7, x));
    }
  }
  if (sw.spinc()) {
    r.checked_d = true;
    for (std::size_t u = 0; u < m.rank_z(2); ++u, ++r.elements_checked) {
      if (!sub.contains(m.cup(sw[6], m.rho2(m.basis_z(2, u))).v)) {
        r.violations.push_back("(d) w6 rho2(u) outside Sq^2(rho2 H^6) for integral generator " + std::to_string(u) + " of H^2");
      }
    }
    if (sw[4].is_zero()) {
      r.checked_e = true;
      for (std::size_t y = 0; y < m.rank_z(4); ++y, ++r.elements_checked) {
        const Mod2Class ry = m.rho2(m.basis_z(4, y));
        if (!sub.contains(m.cup(ry, ry).v)) {
          r.violations.push_back("(e) rho2(y^2) outside Sq^2(rho2 H^6) for integral generator " + std::to_string(y) + " of H^4");
        }
      }
    }
  }
  return r;
}

W7Clauses w7_clauses(const ManifoldModel& mm, const SWClasses& sw) {
  require_nine(mm);
  const CohomologyModel& m = mm.cohomology;
  W7Clauses c{};
  c.bockstein_zero = m.beta(sw[6]).is_zero();
  c.lift_exists = m.rho2_matrix(6).solve(sw[6].v).has_value();
  c.torsion_annihilates = true;
  for (std::size_t g = m.piece(3).z_rank; g < m.rank_z(3); ++g) {
    if (m.eval2(m.cup(m.rho2(m.basis_z(3, g)), sw[6]))) c.torsion_annihilates = false;
  }
  return c;
}

}  // namespace contact9::classes
