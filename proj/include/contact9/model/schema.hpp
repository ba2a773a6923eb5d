#pragma once

#include "contact9/model/cohomology_model.hpp"

#include "json.hpp"

#include <string>

namespace contact9::model {

inline constexpr int kModelSchemaVersion = 1;

/// Parses a model document (JSON or YAML).  Sections: graded, rho2, beta, sq,
/// cup2, cupZ, orientation, optional phi_hat and omega_pc; classes are
/// written as lists of basis names.  Throws ParseError naming the field and
/// line.  Structural validity is not checked here; see validate().
ManifoldModel parse_model(const std::string& text);

/// Normalized document: every nonzero table entry, sorted by degree and
/// basis order.  parse_model(emit_model(m)) == m.
nlohmann::json model_to_json(const ManifoldModel& m);
std::string emit_model(const ManifoldModel& m);

/// Basis names of the support of a class.
nlohmann::json class_names(const CohomologyModel& m, const Mod2Class& x);
/// Integer as a JSON number when it fits in 64 bits, otherwise a string.
nlohmann::json integer_json(const Integer& z);
nlohmann::json integer_vector_json(const std::vector<Integer>& v);

}  // namespace contact9::model
