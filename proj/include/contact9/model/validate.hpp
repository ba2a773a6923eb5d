#pragma once

#include "contact9/model/cohomology_model.hpp"

#include <string>
#include <vector>

namespace contact9::model {

struct Violation {
  std::string check;    // short identifier, e.g. "poincare_pairing"
  int degree = -1;
  std::string witness;  // basis element (or generator) exhibiting the failure
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  /// The spin^c relations among the w_k were checked (they apply only when
  /// W3 = 0).
  bool spinc_relations_checked = false;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& check) const;
  std::string summary() const;
};

/// Structural checks of the tables: groups, Steenrod axioms (including
/// Cartan and the Adem relations Sq^1 Sq^1 = 0, Sq^2 Sq^2 = Sq^3 Sq^1),
/// rho2/beta relations and exactness, products, Poincare pairing, integral
/// pairing and orientation.
ValidationReport validate(const CohomologyModel& m);

/// All structural checks plus the 9-manifold requirements: orientability,
/// Wu and Stiefel-Whitney identities, D_M consistency, and the spin^c
/// relations (odd w_k = 0, w6 = Sq^2 w4, w2 w4 = w2 w6 = 0) when W3 = 0.
ValidationReport validate(const ManifoldModel& m);

}  // namespace contact9::model
