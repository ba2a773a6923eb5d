#pragma once

#include "contact9/f2.hpp"
#include "contact9/integer.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace contact9::model {

/// Mod-2 class: coordinates on the named basis of H^degree(F2).
struct Mod2Class {
  int degree = 0;
  F2Vector v;

  bool is_zero() const { return v.is_zero(); }
  friend bool operator==(const Mod2Class&, const Mod2Class&) = default;
};

/// Integral class: coordinates on the generators of H^degree(Z), free
/// generators first.  Torsion coordinates are least non-negative residues.
struct IntClass {
  int degree = 0;
  std::vector<Integer> c;

  bool is_zero() const;
  friend bool operator==(const IntClass&, const IntClass&) = default;
};

/// One degree of a model: integral group and mod-2 basis names.
struct GradedPiece {
  std::size_t z_rank = 0;
  std::vector<Integer> z_torsion;  // each >= 2, each dividing the next
  std::vector<std::string> f2_basis;

  std::size_t z_generators() const { return z_rank + z_torsion.size(); }
  std::size_t f2_dim() const { return f2_basis.size(); }
  friend bool operator==(const GradedPiece&, const GradedPiece&) = default;
};

/// Finitely presented cohomology of a closed n-manifold: integral groups,
/// mod-2 vector spaces, and the tables of rho2, beta, Sq^k, mod-2 products,
/// selected integral products and evaluation on the fundamental class.
/// Builders fill the tables through the mutable accessors; everything else
/// treats models as values.
class CohomologyModel {
 public:
  CohomologyModel() = default;
  /// Allocates all tables as zero for the given graded pieces (degrees 0..n).
  explicit CohomologyModel(std::vector<GradedPiece> graded);

  int dimension() const { return static_cast<int>(graded_.size()) - 1; }
  const std::vector<GradedPiece>& graded() const { return graded_; }
  const GradedPiece& piece(int d) const { return graded_.at(static_cast<std::size_t>(d)); }
  bool in_range(int d) const { return d >= 0 && d <= dimension(); }
  std::size_t dim2(int d) const { return in_range(d) ? piece(d).f2_dim() : 0; }
  std::size_t rank_z(int d) const { return in_range(d) ? piece(d).z_generators() : 0; }
  /// Order of integral generator g in degree d, 0 when free.
  Integer order(int d, std::size_t g) const;

  // Tables.
  const F2Matrix& rho2_matrix(int d) const { return rho2_.at(static_cast<std::size_t>(d)); }
  F2Matrix& rho2_matrix(int d) { return rho2_.at(static_cast<std::size_t>(d)); }
  /// beta of mod-2 basis element i in degree d, as coordinates in degree d + 1.
  const std::vector<Integer>& beta_entry(int d, std::size_t i) const;
  void set_beta_entry(int d, std::size_t i, std::vector<Integer> coords);
  /// Sq^k: H^d -> H^{d+k}, defined for d + k <= n.
  const F2Matrix& sq_matrix(int k, int d) const;
  F2Matrix& sq_matrix(int k, int d);
  /// Product of basis element a (degree i) and b (degree j).
  const F2Vector& cup2_entry(int i, std::size_t a, int j, std::size_t b) const;
  F2Vector& cup2_entry(int i, std::size_t a, int j, std::size_t b);
  /// Stored integral products for degree pairs (i, j); entry a * rank_z(j) + b.
  const std::map<std::pair<int, int>, std::vector<std::vector<Integer>>>& cupz_table() const { return cupz_; }
  bool has_cupz(int i, int j) const;
  void set_cupz(int i, int j, std::vector<std::vector<Integer>> products);
  void erase_cupz(int i, int j) { cupz_.erase({i, j}); }
  /// Functional on H^n(F2): value of each basis element on [M].
  const F2Vector& eval2() const { return eval2_; }
  void set_eval2(F2Vector v) { eval2_ = std::move(v); }
  /// Value of the integral top generator on [M] (+1 or -1), 0 when the model
  /// is not orientable.
  int orientation_sign() const { return orientation_; }
  void set_orientation_sign(int s) { orientation_ = s; }
  bool orientable() const;

  // Class arithmetic.
  Mod2Class zero2(int d) const { return {d, F2Vector(dim2(d))}; }
  IntClass zero_z(int d) const { return {d, std::vector<Integer>(rank_z(d))}; }
  Mod2Class basis2(int d, std::size_t i) const;
  IntClass basis_z(int d, std::size_t g) const;
  IntClass normalize(IntClass z) const;
  IntClass add(const IntClass& a, const IntClass& b) const;
  IntClass scale(const IntClass& a, const Integer& k) const;
  IntClass negate(const IntClass& a) const { return scale(a, -1); }

  // Operations.
  Mod2Class rho2(const IntClass& z) const;
  IntClass beta(const Mod2Class& x) const;
  Mod2Class sq(int k, const Mod2Class& x) const;
  Mod2Class cup(const Mod2Class& x, const Mod2Class& y) const;
  /// Integral product; throws ContractViolation when the degree pair is not
  /// stored.
  IntClass cup_z(const IntClass& a, const IntClass& b) const;
  bool eval2(const Mod2Class& top) const;
  Integer eval_z(const IntClass& top) const;

  /// Basis element by name, as (degree, index).
  std::optional<std::pair<int, std::size_t>> find_basis(const std::string& name) const;
  std::string describe(const Mod2Class& x) const;

  friend bool operator==(const CohomologyModel&, const CohomologyModel&) = default;

 private:
  std::vector<GradedPiece> graded_;
  std::vector<F2Matrix> rho2_;
  std::vector<std::vector<std::vector<Integer>>> beta_;
  std::vector<std::vector<F2Matrix>> sq_;
  std::vector<std::vector<std::vector<F2Vector>>> cup2_;
  std::map<std::pair<int, int>, std::vector<std::vector<Integer>>> cupz_;
  F2Vector eval2_;
  int orientation_ = 0;
};

/// Externally supplied value of the degree-8 coset datum.
struct OmegaDatum {
  Mod2Class representative;
  bool determined = false;
  friend bool operator==(const OmegaDatum&, const OmegaDatum&) = default;
};

/// A closed 9-manifold as cohomological data plus the optional inputs the
/// decision procedure cannot compute.
struct ManifoldModel {
  CohomologyModel cohomology;
  std::optional<Mod2Class> phi_hat;
  std::optional<OmegaDatum> omega_pc;
  std::string label;

  friend bool operator==(const ManifoldModel&, const ManifoldModel&) = default;
};

inline constexpr int kManifoldDimension = 9;

}  // namespace contact9::model
