#pragma once

#include "contact9/cli/selftest.hpp"
#include "contact9/decider/decider.hpp"
#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace contact9::cli {

/// Exit codes.  A run over several inputs exits with the largest code among
/// them.
enum ExitCode : int {
  kExitOk = 0,            // valid input, Contact, or Undetermined without --strict
  kExitNoContact = 1,
  kExitUndetermined = 2,  // only with --strict
  kExitInvalid = 3,       // validation failure
  kExitUsage = 4,         // parse, schema or usage error
  kExitInternal = 5,      // internal inconsistency or selftest failure
};

enum class Verb { Validate, Classes, Decide, Sum, Corpus, Selftest };
enum class Format { Text, Structured };

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kCorpusDirEnv = "CONTACT9_CORPUS_DIR";

/// Inputs are file paths (model or simplicial complex documents, JSON or
/// YAML) or "library:NAME" for a built-in model.
struct Command {
  Verb verb = Verb::Decide;
  std::vector<std::string> inputs;
  Format format = Format::Text;
  std::uint64_t seed = decider::kDefaultSeed;
  int samples = decider::kDefaultSamples;
  bool strict = false;
  bool timing = false;  // adds wall-clock times; the report is then not reproducible
  Fault fault = Fault::None;
  std::optional<std::string> corpus_dir;  // overrides CONTACT9_CORPUS_DIR
};

struct Report {
  int exit_code = kExitOk;
  nlohmann::json document;
  std::string text;
  std::string render(Format f) const;
};

Report run(const Command& cmd);
/// Report for a command that could not be run (exit code 4).
Report usage_report(const Command& cmd, const std::string& message);

/// Parses argv, runs the command and writes the report to `out`.  Returns the
/// exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string version();
std::string verb_name(Verb v);
/// FNV-1a 64-bit hash as "fnv1a64:" followed by 16 hex digits.
std::string digest(const std::string& bytes);

}  // namespace contact9::cli
