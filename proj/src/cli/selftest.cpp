#include "contact9/cli/selftest.hpp"

#include "contact9/classes/char_classes.hpp"
#include "contact9/decider/decider.hpp"
#include "contact9/model/builders.hpp"
#include "contact9/model/library.hpp"
#include "contact9/model/validate.hpp"
#include "contact9/simplicial/cohomology.hpp"
#include "contact9/simplicial/standard.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace contact9::cli {

using model::CohomologyModel;
using model::ManifoldModel;
using model::Mod2Class;
using simplicial::CohomologyClass;
using simplicial::Ring;
using simplicial::SimplicialCohomology;

std::optional<Fault> parse_fault(const std::string& name) {
  if (name == "zero-sq1") return Fault::ZeroSq1;
  if (name == "drop-pairing-row") return Fault::DropPairingRow;
  return std::nullopt;
}

namespace {

struct Subject {
  std::string name;
  ManifoldModel m;
};

std::vector<ManifoldModel> corpus_models() {
  std::vector<ManifoldModel> out;
  for (const auto& n : model::library_names()) out.push_back(model::library(n));
  for (const auto& n : model::synthetic_names()) out.push_back(model::synthetic(n));
  return out;
}

ManifoldModel triangulated(const std::string& name, const simplicial::SimplicialComplex& k) {
  return ManifoldModel{model::from_simplicial(k), std::nullopt, std::nullopt, name};
}

void zero_sq1(CohomologyModel& m) {
  for (int d = 0; d < m.dimension(); ++d) m.sq_matrix(1, d) = F2Matrix(m.dim2(d + 1), m.dim2(d));
}

// H^2 x H^7 row of the first degree-2 basis element
void drop_pairing_row(CohomologyModel& m) {
  for (std::size_t b = 0; b < m.dim2(7); ++b) m.cup2_entry(2, 0, 7, b) = F2Vector(m.dim2(9));
}

class Suite {
 public:
  explicit Suite(std::string name) { r_.name = std::move(name); }

  // Records one check; keeps the first failure.
  bool check(bool ok, const std::string& check, const std::string& subject, int degree, const std::string& witness,
             const std::string& message) {
    ++r_.checks;
    if (!ok && !r_.failure) r_.failure = Counterexample{check, subject, degree, witness, message};
    return ok;
  }
  bool failed() const { return r_.failure.has_value(); }

  void guard(const std::string& subject, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(false, "exception", subject, -1, "", e.what());
    }
  }

  SuiteResult result() && { return std::move(r_); }

 private:
  SuiteResult r_;
};

std::string coords_string(const CohomologyClass& x) {
  std::string s;
  for (const auto& c : x.coords) s += c == 0 ? '0' : '1';
  return s;
}

CohomologyClass random_class(const SimplicialCohomology& h, int d, std::mt19937_64& rng) {
  CohomologyClass x = h.zero(d, Ring::mod2());
  for (auto& c : x.coords) c = static_cast<long long>(rng() & 1U);
  return x;
}

SuiteResult steenrod_suite(const SelftestOptions& o) {
  Suite s("steenrod");
  std::mt19937_64 rng(o.seed);
  for (int t = 0; t < 5 && !s.failed(); ++t) {
    const int dim = 3 + t % 3;
    const std::string subject = "random complex " + std::to_string(t);
    s.guard(subject, [&] {
      const SimplicialCohomology h(simplicial::standard::random_complex(8, dim, 10, o.seed + static_cast<std::uint64_t>(t)));
      const int n = h.dimension();
      for (int rep = 0; rep < 5; ++rep) {
        for (int d = 0; d <= n; ++d) {
          if (h.generator_count(d, Ring::mod2()) == 0) continue;
          const CohomologyClass x = random_class(h, d, rng);
          const CohomologyClass y = random_class(h, d, rng);
          const std::string w = coords_string(x);
          s.check(h.sq(0, x) == x, "sq0_identity", subject, d, w, "Sq^0 x != x");
          if (2 * d <= n) s.check(h.sq(d, x) == h.cup(x, x), "sq_top_square", subject, d, w, "Sq^d x != x^2");
          for (int k = 0; d + k <= n; ++k) {
            if (k > d) s.check(h.sq(k, x).is_zero(), "sq_unstable", subject, d, w, "Sq^k x != 0 for k > deg x");
            s.check(h.sq(k, h.add(x, y)) == h.add(h.sq(k, x), h.sq(k, y)), "sq_additive", subject, d, w,
                    "Sq^k(x + y) != Sq^k x + Sq^k y");
          }
          if (d + 2 <= n) s.check(h.sq(1, h.sq(1, x)).is_zero(), "adem_sq1sq1", subject, d, w, "Sq^1 Sq^1 x != 0");
          if (d + 4 <= n) {
            s.check(h.sq(2, h.sq(2, x)) == h.sq(3, h.sq(1, x)), "adem_sq2sq2", subject, d, w,
                    "Sq^2 Sq^2 x != Sq^3 Sq^1 x");
          }
          for (int e = 0; d + e <= n; ++e) {
            if (h.generator_count(e, Ring::mod2()) == 0) continue;
            const CohomologyClass z = random_class(h, e, rng);
            const CohomologyClass xz = h.cup(x, z);
            for (int k = 0; d + e + k <= n; ++k) {
              CohomologyClass sum = h.zero(d + e + k, Ring::mod2());
              for (int i = 0; i <= k; ++i) {
                if (d + i > n || e + k - i > n) continue;
                sum = h.add(sum, h.cup(h.sq(i, x), h.sq(k - i, z)));
              }
              s.check(h.sq(k, xz) == sum, "cartan", subject, d, w + " * " + coords_string(z), "Cartan formula fails");
            }
          }
        }
      }
    });
  }
  return std::move(s).result();
}

SuiteResult exactness_suite(const std::vector<Subject>& subjects) {
  Suite s("exactness");
  for (const auto& sub : subjects) {
    s.guard(sub.name, [&] {
      const CohomologyModel& m = sub.m.cohomology;
      for (int d = 0; d < m.dimension(); ++d) {
        const F2Matrix beta = classes::bockstein_matrix(m, d);
        F2Echelon kernel(m.dim2(d));
        for (const auto& v : beta.kernel()) kernel.insert(v);
        F2Echelon image(m.dim2(d));
        for (const auto& v : m.rho2_matrix(d).columns()) image.insert(v);
        bool same = image.rank() == kernel.rank();
        for (const auto& v : image.basis()) same = same && kernel.contains(v);
        s.check(same, "rho2_image_is_beta_kernel", sub.name, d, "", "rho2(H^d(Z)) != ker beta");
      }
    });
  }
  return std::move(s).result();
}

SuiteResult bockstein_suite(std::vector<Subject> subjects, Fault fault) {
  Suite s("bockstein");
  for (auto& sub : subjects) {
    if (fault == Fault::ZeroSq1) zero_sq1(sub.m.cohomology);
    s.guard(sub.name, [&] {
      const CohomologyModel& m = sub.m.cohomology;
      for (int d = 0; d < m.dimension(); ++d) {
        for (std::size_t i = 0; i < m.dim2(d); ++i) {
          const Mod2Class x = m.basis2(d, i);
          s.check(m.rho2(m.beta(x)) == m.sq(1, x), "rho2_beta_is_sq1", sub.name, d, m.piece(d).f2_basis[i],
                  "rho2(beta(x)) != Sq^1 x");
        }
      }
    });
    if (s.failed()) break;
  }
  return std::move(s).result();
}

SuiteResult wu_suite(const std::vector<ManifoldModel>& corpus) {
  Suite s("wu");
  // classical total classes: 1 + a + a^2 for CP2 and RP2, 1 for the rest
  const std::vector<std::pair<ManifoldModel, int>> golden = {
      {triangulated("CP2", simplicial::standard::cp2()), 2},
      {triangulated("RP2", simplicial::standard::rp2()), 1},
      {triangulated("RP3", simplicial::standard::rp3()), 0},
      {triangulated("S4", simplicial::standard::sphere(4)), 0},
      {triangulated("T2", simplicial::standard::torus()), 0},
  };
  for (const auto& [gm, a_degree] : golden) {
    s.guard(gm.label, [&] {
      const CohomologyModel& m = gm.cohomology;
      const auto w = classes::sw_total(m);
      std::vector<Mod2Class> expect;
      for (int k = 0; k <= m.dimension(); ++k) expect.push_back(m.zero2(k));
      expect[0] = m.basis2(0, 0);
      if (a_degree > 0) {
        const Mod2Class a = m.basis2(a_degree, 0);
        expect[static_cast<std::size_t>(a_degree)] = a;
        expect[static_cast<std::size_t>(2 * a_degree)] = m.cup(a, a);
      }
      for (int k = 0; k <= m.dimension(); ++k) {
        const auto ku = static_cast<std::size_t>(k);
        s.check(w[ku] == expect[ku], "golden_sw", gm.label, k, m.describe(w[ku]), "unexpected w_k");
      }
    });
  }
  for (const auto& mm : corpus) {
    s.guard(mm.label, [&] {
      const CohomologyModel& m = mm.cohomology;
      const int n = m.dimension();
      const auto v = classes::wu_total(m);
      const auto w = classes::sw_total(m);
      for (int k = 0; k <= n; ++k) {
        for (std::size_t i = 0; i < m.dim2(n - k); ++i) {
          const Mod2Class x = m.basis2(n - k, i);
          s.check(m.eval2(m.cup(v[static_cast<std::size_t>(k)], x)) == m.eval2(m.sq(k, x)), "wu_formula", mm.label, k,
                  m.piece(n - k).f2_basis[i], "<v_k x, [M]> != <Sq^k x, [M]>");
        }
        Mod2Class sum = m.zero2(k);
        for (int i = 0; i <= k; ++i) {
          const auto& vi = v[static_cast<std::size_t>(k - i)];
          if (vi.degree + i <= n) sum.v += m.sq(i, vi).v;
        }
        s.check(sum == w[static_cast<std::size_t>(k)], "w_is_sq_v", mm.label, k, m.describe(w[static_cast<std::size_t>(k)]),
                "w_k != sum Sq^i v_{k-i}");
      }
    });
  }
  return std::move(s).result();
}

SuiteResult validate_suite(std::vector<ManifoldModel> corpus, Fault fault) {
  Suite s("validate");
  for (auto& m : corpus) {
    if (fault == Fault::DropPairingRow && m.label == "S1xCP4") drop_pairing_row(m.cohomology);
    s.guard(m.label, [&] {
      const auto r = model::validate(m);
      if (r.ok()) {
        s.check(true, "", m.label, -1, "", "");
      } else {
        // a degenerate pairing also breaks products; report the pairing first
        auto it = std::find_if(r.violations.begin(), r.violations.end(),
                               [](const model::Violation& v) { return v.check == "poincare_pairing"; });
        const auto& v = it != r.violations.end() ? *it : r.violations.front();
        s.check(false, v.check, m.label, v.degree, v.witness,
                v.message + " (" + std::to_string(r.violations.size()) + " violation(s))");
      }
    });
  }
  return std::move(s).result();
}

SuiteResult choice_suite(const std::vector<ManifoldModel>& corpus, const SelftestOptions& o) {
  Suite s("choice");
  for (const auto& m : corpus) {
    s.guard(m.label, [&] {
      const auto sw = classes::sw_classes(m);
      if (!sw.spinc() || !classes::bockstein_hypothesis(m, classes::compute_DM(m, sw))) return;
      const auto sample = decider::sample_choices(m, o.seed, o.samples);
      s.check(sample.distinct == 1, "choice_independence", m.label, 8, m.cohomology.describe(sample.reference.representative),
              std::to_string(sample.distinct) + " distinct cosets over " + std::to_string(sample.evaluated) + " choices");
    });
  }
  return std::move(s).result();
}

SuiteResult w7_suite(const std::vector<ManifoldModel>& corpus, const SelftestOptions& o) {
  Suite s("w7");
  std::vector<ManifoldModel> subjects;
  for (const auto& m : corpus) {
    subjects.push_back(m);
    ManifoldModel r = model::relabel(m, model::random_iso(m.cohomology, o.seed));
    r.label = m.label + " (relabeled)";
    subjects.push_back(std::move(r));
  }
  for (const auto& m : subjects) {
    s.guard(m.label, [&] {
      const auto sw = classes::sw_classes(m);
      if (!sw.spinc()) return;
      s.check(decider::check_w7_theorem(m), "W7_zero", m.label, 7, "", "W7 != 0");
      s.check(sw[7].is_zero(), "w7_zero", m.label, 7, m.cohomology.describe(sw[7]), "w7 != 0");
    });
  }
  return std::move(s).result();
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
  const std::vector<ManifoldModel> corpus = corpus_models();
  std::vector<Subject> subjects;
  for (const auto& [name, k] : std::vector<std::pair<std::string, simplicial::SimplicialComplex>>{
           {"RP2", simplicial::standard::rp2()}, {"T2", simplicial::standard::torus()}, {"CP2", simplicial::standard::cp2()}}) {
    subjects.push_back({name, triangulated(name, k)});
  }
  subjects.push_back({"RP9", model::ManifoldModel{model::real_projective_model(9), {}, {}, "RP9"}});
  for (const auto& m : corpus) subjects.push_back({m.label, m});

  std::vector<SuiteResult> out;
  out.push_back(steenrod_suite(options));
  out.push_back(exactness_suite(subjects));
  out.push_back(bockstein_suite(subjects, options.fault));
  out.push_back(wu_suite(corpus));
  out.push_back(validate_suite(corpus, options.fault));
  out.push_back(choice_suite(corpus, options));
  out.push_back(w7_suite(corpus, options));
  return out;
}

nlohmann::json suite_json(const SuiteResult& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["passed"] = r.passed();
  j["checks"] = r.checks;
  if (r.failure) {
    const auto& f = *r.failure;
    j["counterexample"] = {{"check", f.check}, {"subject", f.subject}, {"degree", f.degree}, {"witness", f.witness},
                           {"message", f.message}};
  }
  return j;
}

}  // namespace contact9::cli
