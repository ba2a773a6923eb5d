#pragma once

#include "contact9/classes/char_classes.hpp"
#include "contact9/model/builders.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace contact9::decider {

using classes::CosetH8;
using model::IntClass;
using model::ManifoldModel;
using model::Mod2Class;

enum class Outcome { Contact, NoContact, Undetermined };
/// Stage at which a NoContact verdict fails: W3 != 0, a nonzero degree-8
/// coset, sigma_w4 = 1, or w8 != 0 on a spin model.
enum class Obstruction { None, W3, O8, O9, W8 };
enum class Missing { None, PhiHat, OmegaValue };

std::string to_string(Outcome o);
std::string to_string(Obstruction o);
std::string to_string(Missing m);

/// Record of the obstructions met on the way up the skeleta.
struct Trail {
  IntClass o3;                    // W3
  std::optional<IntClass> o7;     // W7, recorded once o3 = 0
  std::optional<CosetH8> o8;
  std::string o8_rule;            // how o8 was obtained
  std::optional<int> o9;
  std::string o9_rule;
  bool spin = false;
};

struct Verdict {
  Outcome outcome = Outcome::Undetermined;
  Obstruction obstruction = Obstruction::None;
  Missing missing = Missing::None;
  Trail trail;
  /// Nonzero class or coset representative exhibiting a NoContact verdict.
  std::optional<Mod2Class> witness_mod2;
  std::optional<IntClass> witness_integral;

  /// Same outcome, obstruction and missing datum.
  bool same_result(const Verdict& other) const {
    return outcome == other.outcome && obstruction == other.obstruction && missing == other.missing;
  }
  std::string summary() const;
};

inline constexpr std::uint64_t kDefaultSeed = 1729;
inline constexpr int kDefaultSamples = 20;

struct DecideOptions {
  std::uint64_t seed = kDefaultSeed;
  int samples = kDefaultSamples;
};

/// The degree-8 coset of a spin^c model: [w8] when w2 = 0, [0] when w4 = 0,
/// [w8 - rho2(cv/2)] when beta vanishes on D_M, otherwise the supplied
/// omega_pc if determined.  Absent when none applies; throws ContractViolation
/// when W3 != 0.
std::optional<CosetH8> evaluate_omega_pc(const ManifoldModel& m, const classes::SWClasses& sw);
std::optional<CosetH8> evaluate_omega_pc(const ManifoldModel& m);

/// Decides whether the oriented 9-manifold model admits a contact structure.
/// Throws ValidationError when validate() reports a violation and
/// InternalInconsistency when W7 != 0 on a spin^c model or when resampled
/// lifts change the degree-8 coset.
Verdict decide(const ManifoldModel& m, const DecideOptions& options = {});

/// Verdict for a # b from the verdicts and classes of the summands; the sum
/// is also built and decided, and disagreement between the two paths throws
/// InternalInconsistency.
struct SumVerdict {
  Verdict verdict;       // from the summands
  Verdict direct;        // decide(connected_sum(a, b))
  std::string clause;    // "both spin", "both non-spin", "one spin", "W3"
};
SumVerdict decide_connected_sum_detailed(const ManifoldModel& a, const ManifoldModel& b, const DecideOptions& options = {});
Verdict decide_connected_sum(const ManifoldModel& a, const ManifoldModel& b, const DecideOptions& options = {});

/// True iff decide(a) and decide(b) agree.  Throws ContractViolation when iso
/// does not commute with the tables of a and b.
bool homotopy_invariance_check(const ManifoldModel& a, const ManifoldModel& b, const model::ModelIso& iso);

/// True iff W7 = 0, computed as beta(w6) = 0, as existence of an integral
/// lift of w6, and as vanishing of t w6 for torsion t in H^3; throws
/// InternalInconsistency when these disagree and ContractViolation when
/// W3 != 0.
bool check_w7_theorem(const ManifoldModel& m);

/// Cosets [w8 - rho2(cv/2)] over the canonical choice, every half-product
/// solution, and `samples` random lifts.
struct ChoiceSample {
  std::size_t evaluated = 0;
  std::size_t distinct = 0;
  CosetH8 reference;
};
/// Throws ContractViolation unless the model is spin^c and beta vanishes on
/// D_M.
ChoiceSample sample_choices(const ManifoldModel& m, std::uint64_t seed, int samples);

/// Recomputes the witness of a NoContact verdict without the decision code
/// path; true when it confirms the obstruction.
bool verify_witness(const ManifoldModel& m, const Verdict& v);

nlohmann::json verdict_json(const ManifoldModel& m, const Verdict& v);

}  // namespace contact9::decider
