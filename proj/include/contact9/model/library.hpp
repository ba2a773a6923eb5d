#pragma once

#include "contact9/model/cohomology_model.hpp"

#include <string>
#include <vector>

namespace contact9::model {

/// Named example manifolds: S9, S1xHP2, S1xCP4, Dold_5_2, M1_surgered,
/// M3_sum.  Throws ContractViolation for an unknown name.
ManifoldModel library(const std::string& name);
std::vector<std::string> library_names();

/// Additional orientable 9-dimensional models used by the test suites.
/// Products and connected sums of projective spaces, spheres and their
/// combinations; see synthetic_names() for the list.
ManifoldModel synthetic(const std::string& name);
std::vector<std::string> synthetic_names();

/// Low-dimensional building blocks (point, spheres, projective spaces).
CohomologyModel sphere_model(int n);
CohomologyModel complex_projective_model(int n);
CohomologyModel real_projective_model(int n);
CohomologyModel quaternionic_projective_model(int n);

}  // namespace contact9::model
