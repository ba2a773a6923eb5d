#include "contact9/cli/cli.hpp"

#include "contact9/classes/char_classes.hpp"
#include "contact9/errors.hpp"
#include "contact9/model/builders.hpp"
#include "contact9/model/library.hpp"
#include "contact9/model/schema.hpp"
#include "contact9/model/validate.hpp"
#include "contact9/simplicial/complex.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace contact9::cli {

using model::ManifoldModel;
using nlohmann::json;

std::string version() { return CONTACT9_VERSION; }

std::string verb_name(Verb v) {
  switch (v) {
    case Verb::Validate: return "validate";
    case Verb::Classes: return "classes";
    case Verb::Decide: return "decide";
    case Verb::Sum: return "sum";
    case Verb::Corpus: return "corpus";
    case Verb::Selftest: return "selftest";
  }
  return "?";
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::string Report::render(Format f) const { return f == Format::Structured ? document.dump(2) + "\n" : text; }

namespace {

constexpr const char* kLibraryPrefix = "library:";

struct Loaded {
  std::string digest;
  ManifoldModel model;
  bool from_complex = false;
};

struct Entry {
  json doc = json::object();
  std::string text;
  int code = kExitOk;
  std::vector<std::string> warnings;
  double elapsed_ms = 0;
};

bool is_complex_document(const std::string& text) {
  try {
    const YAML::Node root = YAML::Load(text);
    return root.IsMap() && (root["facets"] || (root["kind"] && root["kind"].IsScalar() && root["kind"].as<std::string>() == "simplicial_complex"));
  } catch (const YAML::Exception&) {
    return false;  // parse_model reports the error
  }
}

Loaded load(const std::string& source) {
  Loaded out;
  if (source.rfind(kLibraryPrefix, 0) == 0) {
    const std::string name = source.substr(std::char_traits<char>::length(kLibraryPrefix));
    const auto lib = model::library_names();
    const auto syn = model::synthetic_names();
    if (std::find(lib.begin(), lib.end(), name) != lib.end()) {
      out.model = model::library(name);
    } else if (std::find(syn.begin(), syn.end(), name) != syn.end()) {
      out.model = model::synthetic(name);
    } else {
      throw ParseError("input", 0, "unknown library model '" + name + "'");
    }
    out.digest = digest(model::emit_model(out.model));
    return out;
  }
  std::ifstream in(source, std::ios::binary);
  if (!in) throw ParseError("input", 0, "cannot read '" + source + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  out.digest = digest(text);
  if (is_complex_document(text)) {
    out.model = ManifoldModel{model::from_simplicial(simplicial::parse_complex(text)), std::nullopt, std::nullopt, source};
    out.from_complex = true;
  } else {
    out.model = model::parse_model(text);
    if (out.model.label.empty()) out.model.label = source;
  }
  return out;
}

// Maps the current exception to an exit code and an error record.
void record_failure(Entry& e, const std::string& source) {
  json err;
  try {
    throw;
  } catch (const ParseError& x) {
    e.code = kExitUsage;
    err = {{"kind", "parse_error"}, {"message", x.what()}};
    if (!x.field().empty()) err["field"] = x.field();
    if (x.line() > 0) err["line"] = x.line();
  } catch (const std::invalid_argument& x) {
    e.code = kExitUsage;
    err = {{"kind", "parse_error"}, {"message", x.what()}};
  } catch (const ValidationError& x) {
    e.code = kExitInvalid;
    err = {{"kind", "validation_error"}, {"message", x.what()}};
  } catch (const ContractViolation& x) {
    e.code = kExitInvalid;
    err = {{"kind", "unsupported_input"}, {"message", x.what()}};
  } catch (const std::exception& x) {
    e.code = kExitInternal;
    err = {{"kind", "internal_error"}, {"message", x.what()}};
  }
  e.doc["error"] = err;
  e.text += source + ": error: " + err["message"].get<std::string>() + "\n";
}

template <class Body>
Entry guarded(const std::string& source, Body body) {
  Entry e;
  e.doc["source"] = source;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(e);
  } catch (...) {
    record_failure(e, source);
  }
  e.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return e;
}

json violations_json(const model::ValidationReport& r) {
  json out = json::array();
  for (const auto& v : r.violations) {
    out.push_back({{"check", v.check}, {"degree", v.degree}, {"witness", v.witness}, {"message", v.message}});
  }
  return out;
}

model::ValidationReport validate_any(const Loaded& in) {
  if (in.model.cohomology.dimension() == model::kManifoldDimension) return model::validate(in.model);
  return model::validate(in.model.cohomology);
}

// Returns false (and fills the entry) when the input is invalid.
bool validated(Entry& e, const Loaded& in, const std::string& source, bool manifold = false) {
  const auto r = manifold ? model::validate(in.model) : validate_any(in);
  e.doc["valid"] = r.ok();
  if (r.ok()) return true;
  e.doc["violations"] = violations_json(r);
  e.code = kExitInvalid;
  e.text += source + ": invalid: " + r.summary() + "\n";
  return false;
}

void validate_entry(Entry& e, const std::string& source) {
  const Loaded in = load(source);
  e.doc["digest"] = in.digest;
  const auto r = validate_any(in);
  e.doc["valid"] = r.ok();
  e.doc["violations"] = violations_json(r);
  e.doc["spinc_relations_checked"] = r.spinc_relations_checked;
  if (r.ok()) {
    e.text += source + ": valid\n";
    return;
  }
  e.code = kExitInvalid;
  e.text += source + ": invalid, " + std::to_string(r.violations.size()) + " violation(s)\n";
  for (const auto& v : r.violations) {
    e.text += "  " + v.check + (v.degree >= 0 ? " in degree " + std::to_string(v.degree) : "") +
              (v.witness.empty() ? "" : " at " + v.witness) + ": " + v.message + "\n";
  }
}

json graded_classes(const model::CohomologyModel& m, const std::vector<model::Mod2Class>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(model::class_names(m, x));
  return out;
}

std::string total_text(const model::CohomologyModel& m, const std::vector<model::Mod2Class>& xs) {
  std::string s;
  for (const auto& x : xs) {
    if (x.is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += x.v.popcount() > 1 ? "(" + m.describe(x) + ")" : m.describe(x);
  }
  return s.empty() ? "0" : s;
}

void classes_entry(Entry& e, const std::string& source) {
  const Loaded in = load(source);
  e.doc["digest"] = in.digest;
  if (!validated(e, in, source)) return;
  const auto& m = in.model;
  const auto& c = m.cohomology;
  const auto v = classes::wu_total(c);
  const auto w = classes::sw_total(c);
  e.doc["dimension"] = c.dimension();
  e.doc["wu"] = graded_classes(c, v);
  e.doc["stiefel_whitney"] = graded_classes(c, w);
  e.text += source + ":\n  v = " + total_text(c, v) + "\n  w = " + total_text(c, w) + "\n";
  if (c.dimension() != model::kManifoldDimension || !c.orientable()) return;

  const auto sw = classes::sw_classes(m);
  e.doc["W3"] = model::integer_vector_json(sw.W3.c);
  e.doc["W7"] = model::integer_vector_json(sw.W7.c);
  e.doc["spin"] = sw.spin();
  e.doc["spinc"] = sw.spinc();
  e.text += std::string("  spin: ") + (sw.spin() ? "yes" : "no") + ", spin^c: " + (sw.spinc() ? "yes" : "no") + "\n";
  const auto dm = classes::compute_DM(m, sw);
  json dmj = json::array();
  for (const auto& x : dm) dmj.push_back(model::class_names(c, model::Mod2Class{1, x}));
  e.doc["D_M"] = dmj;
  e.doc["bockstein_hypothesis"] = classes::bockstein_hypothesis(m, dm);
  e.text += "  dim D_M = " + std::to_string(dm.size()) + "\n";
  if (sw.spin()) {
    const auto sigma = classes::sigma_w4(m, sw);
    e.doc["sigma_w4"] = sigma ? json(*sigma) : json(nullptr);
    e.text += "  sigma(w4) = " + (sigma ? std::to_string(*sigma) : std::string("unknown (phi_hat absent)")) + "\n";
  }
  if (sw.spinc()) {
    if (const auto data = classes::spinc_data(m, sw)) {
      e.doc["spinc_lifts"] = {{"c", model::integer_vector_json(data->c.c)},
                              {"v", model::integer_vector_json(data->v.c)},
                              {"half_cv", model::integer_vector_json(data->half_cv.c)}};
    }
    const auto o8 = decider::evaluate_omega_pc(m, sw);
    if (o8) {
      e.doc["omega_coset"] = {{"representative", model::class_names(c, o8->representative)},
                              {"subspace_dimension", o8->subspace_basis.size()}};
      e.text += "  degree-8 coset: [" + c.describe(o8->representative) + "]\n";
    } else {
      e.doc["omega_coset"] = nullptr;
      e.text += "  degree-8 coset: not determined\n";
    }
  }
  const auto sq = classes::square_identities(m, sw);
  e.doc["square_identities"] = {{"elements_checked", sq.elements_checked}, {"violations", sq.violations}};
}

int verdict_code(const decider::Verdict& v, bool strict) {
  switch (v.outcome) {
    case decider::Outcome::Contact: return kExitOk;
    case decider::Outcome::NoContact: return kExitNoContact;
    case decider::Outcome::Undetermined: return strict ? kExitUndetermined : kExitOk;
  }
  return kExitInternal;
}

void note_undetermined(Entry& e, const std::string& source, const decider::Verdict& v) {
  if (v.outcome == decider::Outcome::Undetermined) {
    e.warnings.push_back(source + ": undetermined, missing " + decider::to_string(v.missing));
  }
}

void decide_entry(Entry& e, const std::string& source, const Command& cmd) {
  const Loaded in = load(source);
  e.doc["digest"] = in.digest;
  if (!validated(e, in, source, true)) return;
  const auto v = decider::decide(in.model, {cmd.seed, cmd.samples});
  e.doc["verdict"] = decider::verdict_json(in.model, v);
  e.code = verdict_code(v, cmd.strict);
  e.text += source + ": " + v.summary() + "\n";
  note_undetermined(e, source, v);
}

void sum_entry(Entry& e, const Command& cmd) {
  const Loaded a = load(cmd.inputs[0]);
  const Loaded b = load(cmd.inputs[1]);
  e.doc["digests"] = {a.digest, b.digest};
  if (!validated(e, a, cmd.inputs[0], true) || !validated(e, b, cmd.inputs[1], true)) return;
  const auto s = decider::decide_connected_sum_detailed(a.model, b.model, {cmd.seed, cmd.samples});
  const ManifoldModel sum = model::connected_sum(a.model, b.model);
  e.doc["clause"] = s.clause;
  e.doc["verdict"] = decider::verdict_json(sum, s.verdict);
  e.doc["direct"] = decider::verdict_json(sum, s.direct);
  e.code = verdict_code(s.verdict, cmd.strict);
  e.text += sum.label + ": " + s.verdict.summary() + " (" + s.clause + ")\n";
  note_undetermined(e, sum.label, s.verdict);
}

std::vector<std::string> corpus_sources(const Command& cmd) {
  if (!cmd.inputs.empty()) return cmd.inputs;
  std::optional<std::string> dir = cmd.corpus_dir;
  if (!dir) {
    if (const char* env = std::getenv(kCorpusDirEnv); env != nullptr && *env != '\0') dir = env;
  }
  std::vector<std::string> out;
  if (!dir) {
    for (const auto& n : model::library_names()) out.push_back(kLibraryPrefix + n);
    return out;
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  for (const auto& f : fs::directory_iterator(*dir, ec)) {
    const auto ext = f.path().extension().string();
    if (f.is_regular_file() && (ext == ".json" || ext == ".yaml" || ext == ".yml")) out.push_back(f.path().string());
  }
  if (ec) throw ParseError("corpus_dir", 0, "cannot list '" + *dir + "': " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

Report assemble(const Command& cmd, std::vector<Entry> entries, json extra = json::object()) {
  Report r;
  json results = json::array();
  json warnings = json::array();
  double total_ms = 0;
  std::string body;
  for (auto& e : entries) {
    r.exit_code = std::max(r.exit_code, e.code);
    if (cmd.timing) e.doc["elapsed_ms"] = std::round(e.elapsed_ms * 1000) / 1000;
    total_ms += e.elapsed_ms;
    results.push_back(std::move(e.doc));
    for (auto& w : e.warnings) warnings.push_back(std::move(w));
    body += e.text;
  }
  json& d = r.document;
  d["schema_version"] = kReportSchemaVersion;
  d["kind"] = "report";
  d["tool"] = {{"name", "contact9"}, {"version", version()}};
  d["verb"] = verb_name(cmd.verb);
  d["settings"] = {{"seed", cmd.seed}, {"samples", cmd.samples}, {"strict", cmd.strict}};
  for (auto& [k, v] : extra.items()) d[k] = v;
  d["results"] = std::move(results);
  d["warnings"] = warnings;
  d["exit_code"] = r.exit_code;
  if (cmd.timing) d["timing"] = {{"total_ms", std::round(total_ms * 1000) / 1000}};

  std::string& t = r.text;
  t = "contact9 " + version() + " " + verb_name(cmd.verb) + "\n" + body;
  for (const auto& w : warnings) t += "warning: " + w.get<std::string>() + "\n";
  if (cmd.timing) t += "time: " + std::to_string(total_ms) + " ms\n";
  t += "exit: " + std::to_string(r.exit_code) + "\n";
  return r;
}

Report run_corpus(const Command& cmd) {
  std::vector<std::string> sources;
  try {
    sources = corpus_sources(cmd);
  } catch (const ParseError& e) {
    return usage_report(cmd, e.what());
  }
  std::vector<Entry> entries(sources.size());
  const auto n = static_cast<long long>(sources.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    const auto& s = sources[static_cast<std::size_t>(i)];
    entries[static_cast<std::size_t>(i)] = guarded(s, [&](Entry& e) {
      const Loaded in = load(s);
      e.doc["digest"] = in.digest;
      e.doc["label"] = in.model.label;
      if (!validated(e, in, s, true)) return;
      const auto v = decider::decide(in.model, {cmd.seed, cmd.samples});
      e.doc["verdict"] = decider::verdict_json(in.model, v);
      e.code = v.outcome == decider::Outcome::Undetermined && cmd.strict ? kExitUndetermined : kExitOk;
      note_undetermined(e, s, v);
      e.text = pad(in.model.label, 24) + pad(decider::to_string(v.outcome), 14) +
               pad(v.outcome == decider::Outcome::NoContact ? decider::to_string(v.obstruction) : "-", 13) +
               (v.outcome == decider::Outcome::Undetermined ? decider::to_string(v.missing) : "-") + "\n";
    });
  }
  Report r = assemble(cmd, std::move(entries));
  r.text.insert(r.text.find('\n') + 1, pad("model", 24) + pad("outcome", 14) + pad("obstruction", 13) + "missing\n");
  return r;
}

Report run_selftest_cmd(const Command& cmd) {
  const auto suites = run_selftest({cmd.seed, cmd.samples, cmd.fault});
  std::vector<Entry> entries;
  for (const auto& s : suites) {
    Entry e;
    e.doc = suite_json(s);
    e.code = s.passed() ? kExitOk : kExitInternal;
    e.text = pad(s.name, 12) + (s.passed() ? "pass" : "FAIL") + " (" + std::to_string(s.checks) + " checks)\n";
    if (s.failure) {
      const auto& f = *s.failure;
      e.text += "  first counterexample: " + f.check + " on " + f.subject +
                (f.degree >= 0 ? " in degree " + std::to_string(f.degree) : "") +
                (f.witness.empty() ? "" : " at " + f.witness) + ": " + f.message + "\n";
    }
    entries.push_back(std::move(e));
  }
  json extra = json::object();
  if (cmd.fault != Fault::None) extra["injected_fault"] = cmd.fault == Fault::ZeroSq1 ? "zero-sq1" : "drop-pairing-row";
  return assemble(cmd, std::move(entries), extra);
}

}  // namespace

Report usage_report(const Command& cmd, const std::string& message) {
  Entry e;
  e.code = kExitUsage;
  e.doc["error"] = {{"kind", "usage_error"}, {"message", message}};
  e.text = "error: " + message + "\n";
  std::vector<Entry> v;
  v.push_back(std::move(e));
  return assemble(cmd, std::move(v));
}

Report run(const Command& cmd) {
  if (cmd.samples < 0) return usage_report(cmd, "--samples must be non-negative");
  if (cmd.fault != Fault::None && cmd.verb != Verb::Selftest) return usage_report(cmd, "--inject-fault applies to selftest only");
  switch (cmd.verb) {
    case Verb::Selftest:
      if (!cmd.inputs.empty()) return usage_report(cmd, "selftest takes no inputs");
      return run_selftest_cmd(cmd);
    case Verb::Corpus:
      return run_corpus(cmd);
    case Verb::Sum: {
      if (cmd.inputs.size() != 2) return usage_report(cmd, "sum needs exactly two inputs");
      std::vector<Entry> v;
      v.push_back(guarded(cmd.inputs[0] + " # " + cmd.inputs[1], [&](Entry& e) { sum_entry(e, cmd); }));
      return assemble(cmd, std::move(v));
    }
    default:
      break;
  }
  if (cmd.inputs.empty()) return usage_report(cmd, verb_name(cmd.verb) + " needs at least one input");
  std::vector<Entry> entries;
  for (const auto& s : cmd.inputs) {
    entries.push_back(guarded(s, [&](Entry& e) {
      if (cmd.verb == Verb::Validate) validate_entry(e, s);
      if (cmd.verb == Verb::Classes) classes_entry(e, s);
      if (cmd.verb == Verb::Decide) decide_entry(e, s, cmd);
    }));
  }
  return assemble(cmd, std::move(entries));
}

}  // namespace contact9::cli
