#include "contact9/model/library.hpp"

#include "contact9/errors.hpp"
#include "contact9/model/builders.hpp"

#include <algorithm>

namespace contact9::model {

namespace {

ManifoldModel named(CohomologyModel c, std::string label) {
  ManifoldModel m;
  m.cohomology = std::move(c);
  m.label = std::move(label);
  return m;
}

Mod2Class basis_named(const CohomologyModel& c, const std::string& name) {
  const auto where = c.find_basis(name);
  if (!where) throw InternalInconsistency("library model lacks basis element " + name);
  return c.basis2(where->first, where->second);
}

CohomologyModel circle(const std::string& name = "s") { return polynomial_model({{name, 1, 2, name}}); }

ManifoldModel relabeled_sum(const ManifoldModel& a, const ManifoldModel& b, std::string label) {
  ManifoldModel m = connected_sum(a, b);
  m.label = std::move(label);
  return m;
}

}  // namespace

CohomologyModel sphere_model(int n) {
  if (n < 1) throw ContractViolation("sphere_model needs n >= 1");
  const std::string x = "x" + std::to_string(n);
  return polynomial_model({{x, n, 2, x}});
}

CohomologyModel complex_projective_model(int n) {
  if (n < 1) throw ContractViolation("complex_projective_model needs n >= 1");
  return polynomial_model({{"a", 2, n + 1, "a + a^2"}});
}

CohomologyModel real_projective_model(int n) {
  if (n < 1) throw ContractViolation("real_projective_model needs n >= 1");
  return polynomial_model({{"a", 1, n + 1, "a + a^2"}});
}

CohomologyModel quaternionic_projective_model(int n) {
  if (n < 1) throw ContractViolation("quaternionic_projective_model needs n >= 1");
  // Sq^4 u = u^2 and the remaining squares of u vanish
  return polynomial_model({{"u", 4, n + 1, "u + u^2"}});
}

std::vector<std::string> library_names() { return {"S9", "S1xHP2", "S1xCP4", "Dold_5_2", "M1_surgered", "M3_sum"}; }

ManifoldModel library(const std::string& name) {
  if (name == "S9") return named(polynomial_model({{"x9", 9, 2, "x9"}}), name);
  if (name == "S1xHP2") {
    ManifoldModel m = named(build_product(circle(), quaternionic_projective_model(2)), name);
    m.phi_hat = basis_named(m.cohomology, "s*u");
    return m;
  }
  if (name == "S1xCP4") return named(build_product(circle(), complex_projective_model(4)), name);
  if (name == "Dold_5_2") return named(polynomial_model({{"c", 1, 6, "c + c^2"}, {"d", 2, 3, "d + c*d + d^2"}}), name);
  if (name == "M1_surgered") {
    ManifoldModel m = named(polynomial_model({{"x4", 4, 2, "x4"}, {"x5", 5, 2, "x5 + x4*x5"}}), name);
    m.phi_hat = basis_named(m.cohomology, "x5");
    return m;
  }
  if (name == "M3_sum") return relabeled_sum(library("S1xHP2"), library("S1xCP4"), name);
  throw ContractViolation("unknown library model '" + name + "'");
}

std::vector<std::string> synthetic_names() {
  return {"RP9", "CP2xS5", "CP2xS1xS4", "CP2xCP2xS1", "RP9#S1xHP2", "S1xCP4#RP9", "RP7xS2#S1xCP4#S1xHP2"};
}

ManifoldModel synthetic(const std::string& name) {
  if (name == "RP9") return named(real_projective_model(9), name);
  if (name == "CP2xS5") return named(build_product(complex_projective_model(2), sphere_model(5)), name);
  if (name == "CP2xS1xS4") {
    return named(build_product(complex_projective_model(2), build_product(circle(), sphere_model(4))), name);
  }
  if (name == "CP2xCP2xS1") {
    const CohomologyModel b = polynomial_model({{"b", 2, 3, "b + b^2"}});
    return named(build_product(build_product(complex_projective_model(2), b), circle()), name);
  }
  if (name == "RP9#S1xHP2") return relabeled_sum(synthetic("RP9"), library("S1xHP2"), name);
  if (name == "S1xCP4#RP9") return relabeled_sum(library("S1xCP4"), synthetic("RP9"), name);
  if (name == "RP7xS2#S1xCP4#S1xHP2") {
    const ManifoldModel rp7s2 = named(polynomial_model({{"a", 1, 8, "a + a^2"}, {"b", 2, 2, "b"}}), "RP7xS2");
    ManifoldModel cp4 = library("S1xCP4");
    return relabeled_sum(connected_sum(rp7s2, cp4), library("S1xHP2"), name);
  }
  throw ContractViolation("unknown synthetic model '" + name + "'");
}

}  // namespace contact9::model
