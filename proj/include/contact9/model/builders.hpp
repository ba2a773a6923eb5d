#pragma once

#include "contact9/model/cohomology_model.hpp"
#include "contact9/simplicial/complex.hpp"
#include "contact9/smith.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace contact9::model {

/// A generator of a truncated polynomial algebra over F2.  `total_sq` is the
/// total square Sq(x) = x + Sq^1 x + ... written over the generator names,
/// e.g. "d + c*d + d^2".
struct PolynomialGenerator {
  std::string name;
  int degree = 0;
  int height = 2;  // x^height = 0
  std::string total_sq;
};

/// Model whose mod-2 cohomology is F2[x_1..x_r]/(x_i^{h_i}) with Sq from the
/// Cartan formula.  The integral structure assumes every torsion class has
/// order 2 (the mod-2 Bockstein spectral sequence collapses after Sq^1): free
/// generators represent Sq^1-homology, torsion generators are Sq^1-images.
/// Integral products are stored for every degree pair they are determined
/// for: all pairs when there is no torsion (monomial products with Koszul
/// signs), otherwise pairs landing in an elementary 2-group and the free part
/// of the top-degree pairing.
CohomologyModel polynomial_model(const std::vector<PolynomialGenerator>& generators);

/// The one-point model (unit for products).
CohomologyModel point_model();

/// Kunneth product of two models with torsion-free integral cohomology.
/// Throws ContractViolation for a factor with torsion.
CohomologyModel build_product(const CohomologyModel& a, const CohomologyModel& b);

/// Connected sum of oriented 9-dimensional models.  Degrees 1..8 are direct
/// sums, degrees 0 and 9 are identified.  Throws ContractViolation on a
/// dimension mismatch, a non-orientable summand, or torsion that does not
/// merge into a divisibility chain.
ManifoldModel connected_sum(const ManifoldModel& a, const ManifoldModel& b);

/// Model computed from a triangulation.  Throws ValidationError ("not a closed
/// manifold") when the mod-2 Poincare pairing is degenerate.
CohomologyModel from_simplicial(const simplicial::SimplicialComplex& x);

/// Degree-wise change of generators between two models: mod2[d] maps
/// coordinates of H^d(F2) in the source to the target, integral[d] does the
/// same for H^d(Z) and must be a signed permutation that only exchanges
/// generators of equal order.
struct ModelIso {
  std::vector<F2Matrix> mod2;
  std::vector<IntMatrix> integral;
};

ModelIso identity_iso(const CohomologyModel& m);
/// Random relabeling: random invertible mod-2 matrices and random signed
/// permutations of integral generators.
ModelIso random_iso(const CohomologyModel& m, std::uint64_t seed);

/// The model `m` rewritten in the coordinates given by `iso`; the result is
/// isomorphic to `m` by construction.
CohomologyModel relabel(const CohomologyModel& m, const ModelIso& iso);
ManifoldModel relabel(const ManifoldModel& m, const ModelIso& iso);

/// Every table on which `iso` fails to commute between a and b (empty when it
/// is an isomorphism of models).
std::vector<std::string> iso_violations(const ManifoldModel& a, const ManifoldModel& b, const ModelIso& iso);

Mod2Class apply(const ModelIso& iso, const Mod2Class& x);
IntClass apply(const ModelIso& iso, const IntClass& z);

}  // namespace contact9::model
