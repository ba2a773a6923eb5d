#include "contact9/decider/decider.hpp"

#include "contact9/errors.hpp"
#include "contact9/model/schema.hpp"
#include "contact9/model/validate.hpp"

#include <random>

namespace contact9::decider {

using classes::SWClasses;
using nlohmann::json;

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Contact: return "Contact";
    case Outcome::NoContact: return "NoContact";
    case Outcome::Undetermined: return "Undetermined";
  }
  return "?";
}

std::string to_string(Obstruction o) {
  switch (o) {
    case Obstruction::None: return "none";
    case Obstruction::W3: return "W3";
    case Obstruction::O8: return "O8";
    case Obstruction::O9: return "O9";
    case Obstruction::W8: return "W8";
  }
  return "?";
}

std::string to_string(Missing m) {
  switch (m) {
    case Missing::None: return "none";
    case Missing::PhiHat: return "PhiHat";
    case Missing::OmegaValue: return "OmegaValue";
  }
  return "?";
}

std::string Verdict::summary() const {
  if (outcome == Outcome::NoContact) return "NoContact(" + to_string(obstruction) + ")";
  if (outcome == Outcome::Undetermined) return "Undetermined(" + to_string(missing) + ")";
  return "Contact";
}

namespace {

const model::CohomologyModel& coh(const ManifoldModel& m) { return m.cohomology; }

SWClasses checked_classes(const ManifoldModel& m) {
  const auto report = model::validate(m);
  if (!report.ok()) throw ValidationError(m.label + ": " + report.summary());
  return classes::sw_classes(m);
}

// Cosets over the canonical lifts, all half-product solutions and random
// resamplings.
ChoiceSample sample_with(const ManifoldModel& m, const SWClasses& sw, std::uint64_t seed, int samples) {
  const auto base = classes::spinc_data(m, sw);
  if (!base) throw ContractViolation("choice sampling needs a spin^c model");
  ChoiceSample out;
  out.reference = classes::spinc_coset(m, sw, *base);
  std::vector<CosetH8> seen{out.reference};
  auto record = [&](const CosetH8& c) {
    ++out.evaluated;
    for (const auto& s : seen) {
      if (s.same(c)) return;
    }
    seen.push_back(c);
  };
  ++out.evaluated;
  const auto& mc = coh(m);
  for (const auto& d : classes::half_product_solutions(mc, mc.cup_z(base->c, base->v))) {
    classes::SpincData alt = *base;
    alt.half_cv = d;
    record(classes::spinc_coset(m, sw, alt));
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) record(classes::spinc_coset(m, sw, classes::random_spinc_choice(m, *base, rng)));
  out.distinct = seen.size();
  return out;
}

// Brute-force Wu class: the unique x in H^k with <x y> = <Sq^k y> for all y.
Mod2Class brute_wu(const model::CohomologyModel& m, int k) {
  const int n = m.dimension();
  const std::size_t dim = m.dim2(k);
  if (dim > 20) throw ContractViolation("brute-force Wu class: degree too large");
  std::optional<Mod2Class> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dim); ++mask) {
    Mod2Class x = m.zero2(k);
    for (std::size_t i = 0; i < dim; ++i) x.v.set(i, (mask >> i) & 1U);
    bool ok = true;
    for (std::size_t y = 0; y < m.dim2(n - k) && ok; ++y) {
      const Mod2Class by = m.basis2(n - k, y);
      ok = m.eval2(m.cup(x, by)) == m.eval2(m.sq(k, by));
    }
    if (ok) {
      if (found) throw InternalInconsistency("Wu class is not unique");
      found = x;
    }
  }
  if (!found) throw InternalInconsistency("Wu class does not exist");
  return *found;
}

bool in_brute_subspace(const model::CohomologyModel& m, const Mod2Class& x) {
  // x = Sq^2 y for some y in H^6(F2) with beta(y) = 0
  const std::size_t dim = m.dim2(6);
  if (dim > 20) throw ContractViolation("brute-force subspace: degree too large");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dim); ++mask) {
    Mod2Class y = m.zero2(6);
    for (std::size_t i = 0; i < dim; ++i) y.v.set(i, (mask >> i) & 1U);
    if (m.beta(y).is_zero() && m.sq(2, y) == x) return true;
  }
  return false;
}

}  // namespace

std::optional<CosetH8> evaluate_omega_pc(const ManifoldModel& m, const SWClasses& sw) {
  if (!sw.spinc()) throw ContractViolation("evaluate_omega_pc needs W3 = 0");
  const auto& mc = coh(m);
  if (sw.spin()) return classes::coset_reduce(mc, sw[8]);
  if (sw[4].is_zero()) return classes::coset_reduce(mc, mc.zero2(8));
  if (classes::bockstein_hypothesis(m, classes::compute_DM(m, sw))) {
    return classes::spinc_coset(m, sw, *classes::spinc_data(m, sw));
  }
  if (m.omega_pc && m.omega_pc->determined) return classes::coset_reduce(mc, m.omega_pc->representative);
  return std::nullopt;
}

std::optional<CosetH8> evaluate_omega_pc(const ManifoldModel& m) { return evaluate_omega_pc(m, checked_classes(m)); }

Verdict decide(const ManifoldModel& m, const DecideOptions& options) {
  const SWClasses sw = checked_classes(m);
  const auto& mc = coh(m);
  Verdict v;
  v.trail.o3 = sw.W3;
  v.trail.spin = sw.spin();
  v.trail.o8_rule = "not reached";
  v.trail.o9_rule = "not reached";
  if (!sw.spinc()) {
    v.outcome = Outcome::NoContact;
    v.obstruction = Obstruction::W3;
    v.witness_integral = sw.W3;
    return v;
  }
  if (!sw.W7.is_zero()) throw InternalInconsistency(m.label + ": W7 != 0 on a spin^c model");
  v.trail.o7 = sw.W7;

  if (sw.spin()) {
    const CosetH8 o8 = classes::coset_reduce(mc, sw[8]);
    if (!o8.subspace_basis.empty()) throw InternalInconsistency(m.label + ": Sq^2(rho2 H^6) is nonzero on a spin model");
    v.trail.o8 = o8;
    v.trail.o8_rule = "w8";
    if (!sw[8].is_zero()) {
      v.outcome = Outcome::NoContact;
      v.obstruction = Obstruction::W8;
      v.witness_mod2 = sw[8];
      return v;
    }
    const auto sigma = classes::sigma_w4(m, sw);
    if (!sigma) {
      v.trail.o9_rule = "phi_hat missing";
      v.outcome = Outcome::Undetermined;
      v.missing = Missing::PhiHat;
      return v;
    }
    v.trail.o9 = *sigma;
    v.trail.o9_rule = sw[4].is_zero() ? "w4 = 0" : "w4 phi_hat";
    if (*sigma == 1) {
      v.outcome = Outcome::NoContact;
      v.obstruction = Obstruction::O9;
      v.witness_mod2 = mc.cup(sw[4], *m.phi_hat);
      return v;
    }
    v.outcome = Outcome::Contact;
    return v;
  }

  std::optional<CosetH8> o8;
  if (sw[4].is_zero()) {
    o8 = classes::coset_reduce(mc, mc.zero2(8));
    v.trail.o8_rule = "w4 = 0";
  } else if (classes::bockstein_hypothesis(m, classes::compute_DM(m, sw))) {
    const ChoiceSample s = sample_with(m, sw, options.seed, options.samples);
    if (s.distinct != 1) throw InternalInconsistency(m.label + ": the coset [w8 - rho2(cv/2)] depends on the choice of lifts");
    o8 = s.reference;
    v.trail.o8_rule = "w8 - rho2(cv/2)";
  } else if (m.omega_pc && m.omega_pc->determined) {
    o8 = classes::coset_reduce(mc, m.omega_pc->representative);
    v.trail.o8_rule = "supplied";
  }
  if (!o8) {
    v.trail.o8_rule = "unavailable";
    v.outcome = Outcome::Undetermined;
    v.missing = Missing::OmegaValue;
    return v;
  }
  v.trail.o8 = o8;
  if (!o8->is_zero()) {
    v.outcome = Outcome::NoContact;
    v.obstruction = Obstruction::O8;
    v.witness_mod2 = o8->representative;
    return v;
  }
  v.trail.o9 = 0;
  v.trail.o9_rule = "non-spin";
  v.outcome = Outcome::Contact;
  return v;
}

SumVerdict decide_connected_sum_detailed(const ManifoldModel& a, const ManifoldModel& b, const DecideOptions& options) {
  const SWClasses sa = checked_classes(a);
  const SWClasses sb = checked_classes(b);
  SumVerdict out;
  out.direct = decide(model::connected_sum(a, b), options);
  Verdict& v = out.verdict;
  v.trail = out.direct.trail;
  auto no = [&](Obstruction o) {
    v.outcome = Outcome::NoContact;
    v.obstruction = o;
  };
  auto undetermined = [&](Missing m) {
    v.outcome = Outcome::Undetermined;
    v.missing = m;
  };
  if (!sa.spinc() || !sb.spinc()) {
    out.clause = "W3";
    no(Obstruction::W3);
  } else if (sa.spin() && sb.spin()) {
    out.clause = "both spin";
    const auto sigma_a = classes::sigma_w4(a, sa);
    const auto sigma_b = classes::sigma_w4(b, sb);
    if (!sa[8].is_zero() || !sb[8].is_zero()) {
      no(Obstruction::W8);
    } else if (!sigma_a || !sigma_b) {
      undetermined(Missing::PhiHat);
    } else if (*sigma_a != *sigma_b) {
      no(Obstruction::O9);
    } else {
      v.outcome = Outcome::Contact;
    }
  } else if (!sa.spin() && !sb.spin()) {
    out.clause = "both non-spin";
    const Verdict da = decide(a, options);
    const Verdict db = decide(b, options);
    if (da.outcome == Outcome::NoContact || db.outcome == Outcome::NoContact) {
      no(Obstruction::O8);
    } else if (da.outcome == Outcome::Undetermined || db.outcome == Outcome::Undetermined) {
      undetermined(Missing::OmegaValue);
    } else {
      v.outcome = Outcome::Contact;
    }
  } else {
    out.clause = "one spin";
    const ManifoldModel& other = sa.spin() ? b : a;
    const SWClasses& sw_spin = sa.spin() ? sa : sb;
    if (!sw_spin[8].is_zero()) {
      no(Obstruction::O8);
    } else {
      const Verdict d = decide(other, options);
      if (d.outcome == Outcome::NoContact) {
        no(Obstruction::O8);
      } else if (d.outcome == Outcome::Undetermined) {
        undetermined(Missing::OmegaValue);
      } else {
        v.outcome = Outcome::Contact;
      }
    }
  }
  if (v.outcome == Outcome::NoContact) {
    v.witness_mod2 = out.direct.witness_mod2;
    v.witness_integral = out.direct.witness_integral;
  }
  const bool determined = v.outcome != Outcome::Undetermined && out.direct.outcome != Outcome::Undetermined;
  if (determined && !v.same_result(out.direct)) {
    throw InternalInconsistency("connected sum " + a.label + " # " + b.label + ": summand rule gives " + v.summary() + " but the sum gives " + out.direct.summary());
  }
  return out;
}

Verdict decide_connected_sum(const ManifoldModel& a, const ManifoldModel& b, const DecideOptions& options) {
  return decide_connected_sum_detailed(a, b, options).verdict;
}

bool homotopy_invariance_check(const ManifoldModel& a, const ManifoldModel& b, const model::ModelIso& iso) {
  const auto problems = model::iso_violations(a, b, iso);
  if (!problems.empty()) throw ContractViolation("not an isomorphism of models: " + problems.front());
  return decide(a).same_result(decide(b));
}

bool check_w7_theorem(const ManifoldModel& m) {
  const SWClasses sw = checked_classes(m);
  if (!sw.spinc()) throw ContractViolation(m.label + ": W3 != 0, the W7 statement does not apply");
  const auto c = classes::w7_clauses(m, sw);
  if (c.bockstein_zero != c.lift_exists || c.lift_exists != c.torsion_annihilates) {
    throw InternalInconsistency(m.label + ": the three forms of W7 = 0 disagree");
  }
  return c.bockstein_zero;
}

ChoiceSample sample_choices(const ManifoldModel& m, std::uint64_t seed, int samples) {
  const SWClasses sw = checked_classes(m);
  if (!sw.spinc() || !classes::bockstein_hypothesis(m, classes::compute_DM(m, sw))) {
    throw ContractViolation(m.label + ": choice sampling needs W3 = 0 and beta = 0 on D_M");
  }
  return sample_with(m, sw, seed, samples);
}

bool verify_witness(const ManifoldModel& m, const Verdict& v) {
  if (v.outcome != Outcome::NoContact) return false;
  const auto& mc = coh(m);
  const Mod2Class v2 = brute_wu(mc, 2);
  const Mod2Class v4 = brute_wu(mc, 4);
  const Mod2Class w2 = v2;
  const Mod2Class w4 = {4, v4.v + mc.cup(v2, v2).v};
  const Mod2Class w2sq = mc.cup(w2, w2);
  const Mod2Class w8 = {8, mc.cup(w4, w4).v + mc.cup(w2sq, w2sq).v};
  switch (v.obstruction) {
    case Obstruction::W3: {
      const IntClass W3 = mc.beta(w2);
      return !W3.is_zero() && v.witness_integral && *v.witness_integral == W3;
    }
    case Obstruction::W8:
      return w2.is_zero() && !w8.is_zero() && v.witness_mod2 && *v.witness_mod2 == w8;
    case Obstruction::O9:
      return w2.is_zero() && m.phi_hat && v.witness_mod2 && *v.witness_mod2 == mc.cup(w4, *m.phi_hat) && mc.eval2(*v.witness_mod2);
    case Obstruction::O8:
      if (!v.witness_mod2 || v.witness_mod2->is_zero() || !v.trail.o8) return false;
      return !in_brute_subspace(mc, *v.witness_mod2) && v.trail.o8->representative == *v.witness_mod2;
    case Obstruction::None:
      return false;
  }
  return false;
}

json verdict_json(const ManifoldModel& m, const Verdict& v) {
  const auto& mc = coh(m);
  json j;
  j["outcome"] = to_string(v.outcome);
  if (v.outcome == Outcome::NoContact) j["obstruction"] = to_string(v.obstruction);
  if (v.outcome == Outcome::Undetermined) j["missing"] = to_string(v.missing);
  json trail;
  trail["spin"] = v.trail.spin;
  trail["o3"] = {{"zero", v.trail.o3.is_zero()}, {"coordinates", model::integer_vector_json(v.trail.o3.c)}};
  if (v.trail.o7) {
    trail["o7"] = {{"zero", v.trail.o7->is_zero()}, {"coordinates", model::integer_vector_json(v.trail.o7->c)}};
  } else {
    trail["o7"] = nullptr;
  }
  if (v.trail.o8) {
    trail["o8"] = {{"representative", model::class_names(mc, v.trail.o8->representative)},
                   {"subspace_dim", v.trail.o8->subspace_basis.size()},
                   {"rule", v.trail.o8_rule}};
  } else {
    trail["o8"] = {{"representative", nullptr}, {"rule", v.trail.o8_rule}};
  }
  trail["o9"] = {{"value", v.trail.o9 ? json(*v.trail.o9) : json(nullptr)}, {"rule", v.trail.o9_rule}};
  j["trail"] = trail;
  if (v.witness_mod2) j["witness"] = {{"degree", v.witness_mod2->degree}, {"class", model::class_names(mc, *v.witness_mod2)}};
  if (v.witness_integral) {
    j["witness"] = {{"degree", v.witness_integral->degree}, {"coordinates", model::integer_vector_json(v.witness_integral->c)}};
  }
  return j;
}

}  // namespace contact9::decider
