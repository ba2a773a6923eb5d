#pragma once

#include "contact9/f2.hpp"
#include "contact9/integer.hpp"
#include "contact9/simplicial/cochain.hpp"
#include "contact9/simplicial/complex.hpp"
#include "contact9/smith.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace contact9::simplicial {

/// One cohomology group in normalized form: free generators first, then
/// torsion generators in increasing order (each order divides the next).
/// For Z/2^j coefficients every generator is torsion of order dividing 2^j.
struct GradedGroup {
  int degree = 0;
  Ring ring;
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  std::vector<Cochain> basis_cocycles;

  std::size_t generators() const { return free_rank + torsion.size(); }
  /// Order of generator g, 0 when free.
  Integer order(std::size_t g) const { return g < free_rank ? Integer(0) : torsion[g - free_rank]; }
};

/// A class in a normalized group, by coordinates on its generators.  Torsion
/// coordinates are least non-negative residues.
struct CohomologyClass {
  int degree = 0;
  Ring ring;
  std::vector<Integer> coords;

  bool is_zero() const;
  friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;
};

/// Cohomology of a finite simplicial complex with integral, mod-2 and mod-2^j
/// coefficients, with cochain-level representatives for every generator and a
/// coordinate map from cocycles to classes.  Immutable after construction.
class SimplicialCohomology {
 public:
  explicit SimplicialCohomology(SimplicialComplex complex);
  ~SimplicialCohomology();
  SimplicialCohomology(SimplicialCohomology&&) noexcept;
  SimplicialCohomology& operator=(SimplicialCohomology&&) noexcept;

  const SimplicialComplex& complex() const { return complex_; }
  int dimension() const { return complex_.dimension(); }

  const GradedGroup& integral(int degree) const;
  const GradedGroup& mod2(int degree) const;
  /// Group with arbitrary supported coefficients (Z/2^j built from the
  /// integral data by the universal coefficient splitting).
  GradedGroup group(int degree, Ring ring) const;

  CohomologyClass zero(int degree, Ring ring) const;
  CohomologyClass generator(int degree, Ring ring, std::size_t index) const;
  std::size_t generator_count(int degree, Ring ring) const;

  bool is_cocycle(const Cochain& c) const;
  Cochain coboundary(const Cochain& c) const;
  /// Class of a cocycle.  Throws ContractViolation when c is not a cocycle.
  CohomologyClass classify(const Cochain& cocycle) const;
  Cochain representative(const CohomologyClass& x) const;

  CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b) const;
  CohomologyClass scale(const CohomologyClass& a, const Integer& factor) const;

  CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b) const;
  /// Sq^k [x] = [x cup_{n-k} x], n = deg x.
  CohomologyClass sq(int k, const CohomologyClass& x) const;
  /// Lift a Z/2^j representative, take the integral coboundary, divide by 2^j.
  CohomologyClass bockstein(unsigned j, const CohomologyClass& x) const;
  CohomologyClass reduce_mod(unsigned j, const CohomologyClass& z) const;

  /// Evaluation of a top-degree class on the mod-2 fundamental cycle (sum of
  /// all top simplices).  Requires a mod-2 pseudomanifold.
  bool evaluate_mod2(const CohomologyClass& x) const;
  /// Integral fundamental cycle (generator of the top integral homology) when
  /// it exists and has unit coefficients.
  const std::optional<std::vector<Integer>>& fundamental_cycle() const;
  Integer evaluate_integral(const CohomologyClass& x) const;

 private:
  struct Degree;
  const Degree& at(int degree) const;
  CohomologyClass classify_mod2(const Cochain& c) const;
  CohomologyClass classify_mod2j(const Cochain& c) const;
  CohomologyClass classify_integral(const Cochain& c) const;

  SimplicialComplex complex_;
  std::vector<std::unique_ptr<Degree>> degrees_;
  std::optional<std::vector<Integer>> fundamental_cycle_;
};

/// All groups H^0..H^dim with the given coefficients.
std::vector<GradedGroup> cohomology(const SimplicialComplex& complex, Ring ring);

/// Front-face/back-face cup product of cochains (same ring).
Cochain cup(const SimplicialComplex& complex, const Cochain& x, const Cochain& y);
/// Steenrod cup-i product; mod-2 cochains only.
Cochain cup_i(const SimplicialComplex& complex, const Cochain& x, const Cochain& y, int i);
Cochain coboundary(const SimplicialComplex& complex, const Cochain& x);

/// Moves a cochain between two vertex orders of the same complex: values are
/// matched on vertex sets, with the sign of the reordering for integral
/// cochains.
Cochain transport(const Cochain& x, const SimplicialComplex& from, const SimplicialComplex& to);

}  // namespace contact9::simplicial
