#pragma once

#include "contact9/model/cohomology_model.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace contact9::classes {

using model::CohomologyModel;
using model::IntClass;
using model::ManifoldModel;
using model::Mod2Class;

/// Wu classes v_0..v_n of a model with nondegenerate mod-2 pairing, solved
/// from <v_k x, [M]> = <Sq^k x, [M]>.  Throws ValidationError when a system
/// has no solution or more than one.
std::vector<Mod2Class> wu_total(const CohomologyModel& m);
/// Stiefel-Whitney classes w_0..w_n = Sq(v).
std::vector<Mod2Class> sw_total(const CohomologyModel& m);

struct WuClasses {
  Mod2Class v2;
  Mod2Class v4;
};

/// Throws ValidationError when w_1 != 0 or some v_k with k not in {2, 4} is
/// nonzero.
WuClasses wu_classes(const ManifoldModel& m);

struct SWClasses {
  std::vector<Mod2Class> w;  // w[0] = 1, ..., w[9]
  IntClass W3;
  IntClass W7;

  const Mod2Class& operator[](int k) const { return w.at(static_cast<std::size_t>(k)); }
  bool spin() const { return w[2].is_zero(); }
  bool spinc() const { return W3.is_zero(); }
};

/// Throws ValidationError naming the identity (w6 = Sq^2 v4, w8 = w4^2 + w2^4,
/// w_odd = Sq^1 w_even, w9 = 0) that fails.
SWClasses sw_classes(const ManifoldModel& m);

/// Some z with rho2(z) = x; absent exactly when beta(x) != 0.  Throws
/// InternalInconsistency when the two criteria disagree.
std::optional<IntClass> integral_lift(const CohomologyModel& m, const Mod2Class& x);

/// Basis of {x in H^1 : x w2 in rho2(T H^3)}.  Cross-checked against the
/// annihilator of Sq^2(rho2 H^6); throws ValidationError on a mismatch.
std::vector<F2Vector> compute_DM(const ManifoldModel& m, const SWClasses& sw);

/// beta: H^d(F2) -> H^{d+1}(Z) as an F2 matrix into the order-2 elements
/// (one row per integral generator).  Throws ValidationError when some value
/// is not of order 2.
F2Matrix bockstein_matrix(const CohomologyModel& m, int d);

/// Basis of Sq^2(rho2 H^6) inside H^8(F2), computed as Sq^2(ker beta).
std::vector<F2Vector> sq2_rho2_h6(const CohomologyModel& m);

/// A class modulo Sq^2(rho2 H^6).
struct CosetH8 {
  Mod2Class representative;  // reduced against the subspace
  std::vector<F2Vector> subspace_basis;

  bool is_zero() const { return representative.is_zero(); }
  /// Same coset (the representatives are canonical, so this is equality).
  bool same(const CosetH8& other) const { return representative == other.representative; }
};

CosetH8 coset_reduce(const CohomologyModel& m, const Mod2Class& x);

/// Every d in H^8 with 2d = cv (in generator coordinates), canonical solution
/// first.  Empty when there is none.
std::vector<IntClass> half_product_solutions(const CohomologyModel& m, const IntClass& cv);
/// The canonical solution; throws ValidationError when 2d = cv has none.
IntClass half_product(const CohomologyModel& m, const IntClass& c, const IntClass& v);

/// <w4 phi_hat, [M]> for a spin model: 0 when w4 = 0 or H^5(F2) = 0, absent
/// when phi_hat is missing.  Throws ContractViolation for a non-spin model.
std::optional<int> sigma_w4(const ManifoldModel& m, const SWClasses& sw);

struct SpincData {
  IntClass c;        // rho2(c) = w2
  IntClass v;        // rho2(v) = w6
  IntClass half_cv;  // 2 half_cv = c v
  std::optional<IntClass> p_c;
};

/// The canonical choice of lifts; absent when W3 != 0.
std::optional<SpincData> spinc_data(const ManifoldModel& m, const SWClasses& sw);
/// Random alternative lifts c + 2r, v + 2r' and a random half-product
/// solution.
SpincData random_spinc_choice(const ManifoldModel& m, const SpincData& base, std::mt19937_64& rng);
/// The coset [w8 - rho2(cv/2)] for the given choice.
CosetH8 spinc_coset(const ManifoldModel& m, const SWClasses& sw, const SpincData& data);

/// True when beta vanishes on every class of D_M.
bool bockstein_hypothesis(const ManifoldModel& m, const std::vector<F2Vector>& dm);

/// Failures of the Steenrod-square identities for orientable 9-manifolds:
/// Sq^2 y = w2 y on H^6, z^2 = (w4 + w2^2) z on H^4, Sq^1 H^7 inside
/// Sq^2(rho2 H^6) under the Bockstein hypothesis, and for spin^c models
/// w6 rho2(u) and (when w4 = 0) rho2(y)^2 inside Sq^2(rho2 H^6).
struct SquareIdentityReport {
  std::vector<std::string> violations;
  bool checked_c = false;
  bool checked_d = false;
  bool checked_e = false;
  std::size_t elements_checked = 0;
};
SquareIdentityReport square_identities(const ManifoldModel& m, const SWClasses& sw);

/// The three equivalent forms of W7 = 0 on a spin^c model, computed
/// separately.
struct W7Clauses {
  bool bockstein_zero;   // beta(w6) = 0
  bool lift_exists;      // some v with rho2(v) = w6
  bool torsion_annihilates;  // t w6 = 0 for every torsion t in H^3
};
W7Clauses w7_clauses(const ManifoldModel& m, const SWClasses& sw);

}  // namespace contact9::classes
