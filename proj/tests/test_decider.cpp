#include "doctest.h"

#include "contact9/decider/decider.hpp"
#include "contact9/errors.hpp"
#include "contact9/model/library.hpp"
#include "contact9/model/validate.hpp"

#include <map>

using namespace contact9;
using namespace contact9::model;
using namespace contact9::decider;

namespace {

struct Expected {
  Outcome outcome;
  Obstruction obstruction;
  Missing missing;
};

const std::map<std::string, Expected>& expected() {
  static const std::map<std::string, Expected> table = {
      {"S9", {Outcome::Contact, Obstruction::None, Missing::None}},
      {"S1xHP2", {Outcome::NoContact, Obstruction::W8, Missing::None}},
      {"S1xCP4", {Outcome::Contact, Obstruction::None, Missing::None}},
      {"Dold_5_2", {Outcome::NoContact, Obstruction::W3, Missing::None}},
      {"M1_surgered", {Outcome::NoContact, Obstruction::O9, Missing::None}},
      {"M3_sum", {Outcome::NoContact, Obstruction::O8, Missing::None}},
      {"RP9", {Outcome::Contact, Obstruction::None, Missing::None}},
      {"CP2xS5", {Outcome::Contact, Obstruction::None, Missing::None}},
      {"CP2xS1xS4", {Outcome::Contact, Obstruction::None, Missing::None}},
      {"CP2xCP2xS1", {Outcome::Contact, Obstruction::None, Missing::None}},
      {"RP9#S1xHP2", {Outcome::NoContact, Obstruction::O8, Missing::None}},
      {"S1xCP4#RP9", {Outcome::Contact, Obstruction::None, Missing::None}},
      {"RP7xS2#S1xCP4#S1xHP2", {Outcome::Undetermined, Obstruction::None, Missing::OmegaValue}},
  };
  return table;
}

ManifoldModel model_named(const std::string& name) {
  for (const auto& n : library_names()) {
    if (n == name) return library(n);
  }
  return synthetic(name);
}

std::vector<ManifoldModel> all_models() {
  std::vector<ManifoldModel> out;
  for (const auto& [name, e] : expected()) out.push_back(model_named(name));
  return out;
}

}  // namespace

TEST_CASE("verdicts on the library and synthetic models") {
  for (const auto& [name, e] : expected()) {
    INFO(name);
    const ManifoldModel m = model_named(name);
    const Verdict v = decide(m);
    CHECK(v.outcome == e.outcome);
    CHECK(v.obstruction == e.obstruction);
    CHECK(v.missing == e.missing);
    if (v.outcome == Outcome::NoContact) {
      CHECK((v.witness_mod2.has_value() || v.witness_integral.has_value()));
      CHECK(verify_witness(m, v));
    }
    CHECK_FALSE(v.summary().empty());
    const auto j = verdict_json(m, v);
    CHECK(j["outcome"] == to_string(v.outcome));
  }
}

TEST_CASE("contact verdicts carry a vanishing trail") {
  for (const auto& m : all_models()) {
    const Verdict v = decide(m);
    if (v.outcome != Outcome::Contact) continue;
    INFO(m.label);
    CHECK(v.trail.o3.is_zero());
    REQUIRE(v.trail.o7.has_value());
    CHECK(v.trail.o7->is_zero());
    REQUIRE(v.trail.o8.has_value());
    CHECK(v.trail.o8->is_zero());
    CHECK_FALSE(v.trail.o8_rule.empty());
    if (v.trail.o9) CHECK(*v.trail.o9 == 0);
    CHECK_FALSE(v.witness_mod2.has_value());
  }
}

TEST_CASE("a forged witness is rejected") {
  const ManifoldModel m = library("M3_sum");
  Verdict v = decide(m);
  REQUIRE(v.witness_mod2.has_value());
  v.witness_mod2 = m.cohomology.zero2(v.witness_mod2->degree);
  CHECK_FALSE(verify_witness(m, v));
}

TEST_CASE("degree-8 coset by rule") {
  const auto cp = evaluate_omega_pc(library("S1xCP4"));
  REQUIRE(cp.has_value());
  CHECK(cp->is_zero());
  const auto m3 = evaluate_omega_pc(library("M3_sum"));
  REQUIRE(m3.has_value());
  CHECK_FALSE(m3->is_zero());
  CHECK_THROWS_AS(evaluate_omega_pc(library("Dold_5_2")), ContractViolation);
  CHECK_FALSE(evaluate_omega_pc(synthetic("RP7xS2#S1xCP4#S1xHP2")).has_value());
}

TEST_CASE("supplied omega values settle the undetermined model") {
  ManifoldModel m = synthetic("RP7xS2#S1xCP4#S1xHP2");
  const auto& c = m.cohomology;
  m.omega_pc = OmegaDatum{c.zero2(8), true};
  CHECK(decide(m).outcome == Outcome::Contact);

  std::optional<Mod2Class> nonzero;
  for (std::size_t i = 0; i < c.dim2(8) && !nonzero; ++i) {
    if (!classes::coset_reduce(c, c.basis2(8, i)).is_zero()) nonzero = c.basis2(8, i);
  }
  REQUIRE(nonzero.has_value());
  m.omega_pc = OmegaDatum{*nonzero, true};
  const Verdict v = decide(m);
  CHECK(v.outcome == Outcome::NoContact);
  CHECK(v.obstruction == Obstruction::O8);
  CHECK(verify_witness(m, v));

  m.omega_pc = OmegaDatum{*nonzero, false};
  CHECK(decide(m).missing == Missing::OmegaValue);
}

TEST_CASE("a missing phi_hat leaves spin models undetermined") {
  ManifoldModel m = library("M1_surgered");
  m.phi_hat.reset();
  const Verdict v = decide(m);
  CHECK(v.outcome == Outcome::Undetermined);
  CHECK(v.missing == Missing::PhiHat);
}

TEST_CASE("invalid models are refused") {
  ManifoldModel m = library("S1xCP4");
  auto& c = m.cohomology;
  for (std::size_t b = 0; b < c.dim2(7); ++b) c.cup2_entry(2, 0, 7, b) = F2Vector(c.dim2(9));
  CHECK_THROWS_AS(decide(m), ValidationError);
}

TEST_CASE("connected sum verdicts agree with the direct computation") {
  const auto names = library_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i; j < names.size(); ++j) {
      INFO(names[i] << " # " << names[j]);
      const SumVerdict s = decide_connected_sum_detailed(library(names[i]), library(names[j]));
      CHECK(s.verdict.same_result(s.direct));
      CHECK_FALSE(s.clause.empty());
    }
  }
  const SumVerdict m3 = decide_connected_sum_detailed(library("S1xHP2"), library("S1xCP4"));
  CHECK(m3.clause == "one spin");
  CHECK(m3.verdict.same_result(decide(library("M3_sum"))));
  CHECK(decide_connected_sum(library("M1_surgered"), library("M1_surgered")).outcome == Outcome::Contact);
  CHECK(decide_connected_sum(library("Dold_5_2"), library("S9")).obstruction == Obstruction::W3);
}

TEST_CASE("verdicts are invariant under relabeling") {
  for (const auto& m : all_models()) {
    INFO(m.label);
    CHECK(homotopy_invariance_check(m, m, identity_iso(m.cohomology)));
    const ModelIso iso = random_iso(m.cohomology, 99);
    const ManifoldModel r = relabel(m, iso);
    CHECK(homotopy_invariance_check(m, r, iso));
    CHECK(decide(r).same_result(decide(m)));
  }
  const ManifoldModel m = library("S1xCP4");
  ModelIso bad = identity_iso(m.cohomology);
  bad.mod2[2] = F2Matrix(m.cohomology.dim2(2), m.cohomology.dim2(2));
  CHECK_THROWS_AS(homotopy_invariance_check(m, m, bad), ContractViolation);
}

TEST_CASE("W7 vanishes on spin^c models") {
  for (const auto& m : all_models()) {
    INFO(m.label);
    if (classes::sw_classes(m).spinc()) {
      CHECK(check_w7_theorem(m));
    } else {
      CHECK_THROWS_AS(check_w7_theorem(m), ContractViolation);
    }
  }
}

TEST_CASE("verdicts do not depend on the seed") {
  for (const auto& m : all_models()) {
    INFO(m.label);
    const Verdict ref = decide(m);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Verdict v = decide(m, DecideOptions{seed, 5});
      CHECK(v.same_result(ref));
      if (ref.trail.o8 && v.trail.o8) CHECK(v.trail.o8->same(*ref.trail.o8));
    }
  }
}

TEST_CASE("choice sampling yields one coset") {
  const ChoiceSample s = sample_choices(library("M3_sum"), 3, 20);
  CHECK(s.evaluated >= 21);
  CHECK(s.distinct == 1);
  CHECK_FALSE(s.reference.is_zero());
  const ChoiceSample rp = sample_choices(synthetic("RP9"), 3, 20);
  CHECK(rp.distinct == 1);
  CHECK_THROWS_AS(sample_choices(library("Dold_5_2"), 3, 5), ContractViolation);
}
