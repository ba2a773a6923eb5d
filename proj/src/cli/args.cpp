#include "contact9/cli/cli.hpp"

#include "CLI11.hpp"

#include <map>
#include <ostream>

namespace contact9::cli {

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Almost contact structures on closed oriented 9-manifolds", "contact9"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();

  Command cmd;
  std::string format = "text";
  std::string fault;
  std::string corpus_dir;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--seed", cmd.seed, "Seed for randomized choice sampling")->capture_default_str();
  app.add_option("--samples", cmd.samples, "Random lift choices per model")->capture_default_str();
  app.add_flag("--strict", cmd.strict, "Exit 2 on Undetermined");
  app.add_flag("--timing", cmd.timing, "Include wall-clock times");

  const std::map<std::string, std::pair<Verb, std::string>> verbs = {
      {"validate", {Verb::Validate, "Check model or complex documents"}},
      {"classes", {Verb::Classes, "Characteristic class report"}},
      {"decide", {Verb::Decide, "Decide existence of an almost contact structure"}},
      {"sum", {Verb::Sum, "Decide a connected sum from its two summands"}},
      {"corpus", {Verb::Corpus, "Verdict table over a corpus"}},
      {"selftest", {Verb::Selftest, "Run the invariant suites"}},
  };
  std::map<CLI::App*, Verb> by_app;
  for (const auto& [name, v] : verbs) {
    CLI::App* sub = app.add_subcommand(name, v.second);
    by_app[sub] = v.first;
    if (v.first == Verb::Selftest) {
      sub->add_option("--inject-fault", fault, "Deliberate defect")->check(CLI::IsMember({"zero-sq1", "drop-pairing-row"}));
      continue;
    }
    sub->add_option("inputs", cmd.inputs, "Model or complex files, or library:NAME");
    if (v.first == Verb::Corpus) {
      sub->add_option("--corpus-dir", corpus_dir, std::string("Corpus directory (default: $") + kCorpusDirEnv +
                                                      ", else the built-in library)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    cmd.format = format == "structured" ? Format::Structured : Format::Text;
    for (const auto& [sub, v] : by_app) {
      if (sub->parsed()) cmd.verb = v;
    }
    err << e.what() << "\n";
    out << usage_report(cmd, e.what()).render(cmd.format);
    return kExitUsage;
  }
  for (const auto& [sub, v] : by_app) {
    if (sub->parsed()) cmd.verb = v;
  }
  cmd.format = format == "structured" ? Format::Structured : Format::Text;
  if (!fault.empty()) cmd.fault = *parse_fault(fault);
  if (!corpus_dir.empty()) cmd.corpus_dir = corpus_dir;
  const Report r = run(cmd);
  out << r.render(cmd.format);
  return r.exit_code;
}

}  // namespace contact9::cli
