#pragma once

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace contact9::cli {

enum class Fault { None, ZeroSq1, DropPairingRow };

/// Parses "zero-sq1" / "drop-pairing-row"; nullopt for anything else.
std::optional<Fault> parse_fault(const std::string& name);

struct Counterexample {
  std::string check;
  std::string subject;  // model or complex
  int degree = -1;
  std::string witness;
  std::string message;
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::optional<Counterexample> failure;  // first counterexample
  bool passed() const { return !failure.has_value(); }
};

struct SelftestOptions {
  std::uint64_t seed = 1729;
  int samples = 20;
  Fault fault = Fault::None;
};

/// Runs every suite in a fixed order: steenrod, exactness, bockstein, wu,
/// validate, choice, w7.
std::vector<SuiteResult> run_selftest(const SelftestOptions& options);

nlohmann::json suite_json(const SuiteResult& r);

}  // namespace contact9::cli
