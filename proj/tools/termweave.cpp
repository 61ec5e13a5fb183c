#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "termweave/bench.hpp"
#include "termweave/codegen.hpp"
#include "termweave/match_one.hpp"
#include "termweave/net.hpp"
#include "termweave/parse.hpp"
#include "termweave/rewrite.hpp"

using namespace termweave;

namespace {

// exit statuses
constexpr int ok = 0, no_match = 1, usage = 2, step_limit = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SignatureTable load_signature(const std::string &path) {
  return path.empty() ? SignatureTable() : SignatureTable::parse(slurp(path));
}

int cmd_match(const std::string &sig_file, const std::string &pattern_text, const std::string &subject_text,
              bool all, const std::string &engine) {
  SignatureTable sig = load_signature(sig_file);
  // heads missing from the signature file are declared with the arity of first use
  Pattern p = Pattern::parse_declaring(pattern_text, sig);
  Term s = parse_term_declaring(subject_text, sig);
  std::vector<Substitution> found;
  if (engine == "one2one") {
    found = match_sorted(s, p, sig);
  } else {
    DiscriminationNet net(sig);
    net.add(p);
    for (auto &m : net.match_sorted(s))
      found.push_back(std::move(m.sigma));
  }
  if (found.empty())
    return no_match;
  if (!all)
    found.resize(1);
  for (const auto &sigma : found)
    std::cout << sigma.to_string() << "\n";
  return ok;
}

int cmd_rewrite(const std::string &sig_file, const std::string &rules_file, const std::string &subject_text,
                std::size_t max_steps, bool trace, const std::string &engine) {
  SignatureTable sig = load_signature(sig_file);
  const auto rules = parse_rules(slurp(rules_file), sig);
  Term s = parse_term(subject_text, sig);
  std::unique_ptr<RuleMatcher> matcher;
  if (engine == "net")
    matcher = make_net_rules(rules, sig);
  else
    matcher = std::make_unique<OneToOneRules>(rules, sig);
  const auto rep = replace_all(s, rules, sig, max_steps, *matcher, trace);
  for (const auto &st : rep.trace)
    std::cout << "pos=" << to_string(st.position) << " rule=" << st.rule << " sigma=" << st.sigma.to_string() << "\n";
  std::cout << to_string(rep.result) << "\n";
  if (!rep.normal_form) {
    std::cerr << "termweave: step limit " << max_steps << " reached before a normal form\n";
    return step_limit;
  }
  return ok;
}

int cmd_bench(const bench::BenchConfig &cfg, const std::string &out_file) {
  const auto records = bench::run_bench(cfg);
  std::ostringstream csv;
  csv << bench::csv_header() << "\n";
  for (const auto &r : records)
    csv << bench::to_csv(r) << "\n";
  if (out_file.empty() || out_file == "-") {
    std::cout << csv.str();
    return ok;
  }
  std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
  out << csv.str();
  out.close();
  if (!out)
    throw UsageError("cannot write " + out_file);
  return ok;
}

int cmd_codegen(const std::string &sig_file, const std::string &patterns_file, const std::string &out_dir,
                const std::string &name) {
  SignatureTable sig = load_signature(sig_file);
  DiscriminationNet net(sig);
  std::istringstream lines(slurp(patterns_file));
  for (std::string line; std::getline(lines, line);)
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      net.add(Pattern::parse(line, net.signature()));
  const auto spec = codegen::generate_matcher_source(net, name);
  try {
    codegen::write_spec(spec, out_dir);
  } catch (const std::exception &e) {
    throw UsageError(std::string("cannot write generated matcher: ") + e.what());
  }
  std::cout << "states " << net.states().size() << " patterns " << net.pattern_count() << "\n";
  return ok;
}

std::uint64_t default_seed() {
  if (const char *s = std::getenv("TERMWEAVE_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception &) {
      throw UsageError("TERMWEAVE_SEED is not a number: " + std::string(s));
    }
  }
  return 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"termweave: associative-commutative pattern matching and rewriting"};
  app.require_subcommand(1);

  std::string sig_file, pattern, subject, engine = "one2one";
  bool all = false;
  auto *m = app.add_subcommand("match", "match one pattern against a subject");
  m->add_option("--signatures", sig_file, "signature file");
  m->add_option("--pattern", pattern, "TERM [; where CONSTRAINT]")->required();
  m->add_option("--subject", subject)->required();
  m->add_flag("--all", all, "print every match, not just the least one");
  m->add_option("--engine", engine)->check(CLI::IsMember({"one2one", "net"}));

  std::string rules_file;
  std::size_t max_steps = 10000;
  bool trace = false;
  auto *r = app.add_subcommand("rewrite", "rewrite a subject to normal form");
  r->add_option("--signatures", sig_file);
  r->add_option("--rules", rules_file)->required();
  r->add_option("--subject", subject)->required();
  r->add_option("--max-steps", max_steps)->check(CLI::PositiveNumber);
  r->add_flag("--trace", trace);
  r->add_option("--engine", engine)->check(CLI::IsMember({"one2one", "net"}));

  bench::BenchConfig cfg;
  std::string engines = "one2one,net,codegen", out_file;
  std::optional<std::uint64_t> seed;
  auto *b = app.add_subcommand("bench", "run a workload with each engine and write CSV");
  b->add_option("--workload", cfg.workload, "prop or overlap")->required();
  b->add_option("--size", cfg.size, "number of subjects");
  b->add_option("--seed", seed, "defaults to $TERMWEAVE_SEED, then 1");
  b->add_option("--engines", engines);
  b->add_option("--out", out_file, "CSV file, - for stdout");
  b->add_option("--repetitions", cfg.repetitions, "timing repetitions (median is reported)");

  std::string patterns_file, out_dir, name = "matcher";
  auto *c = app.add_subcommand("codegen", "generate matcher source for a pattern file");
  c->add_option("--signatures", sig_file);
  c->add_option("--patterns", patterns_file)->required();
  c->add_option("--out", out_dir)->required();
  c->add_option("--name", name, "identifier for the generated matcher");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return usage;
  }

  try {
    if (m->parsed())
      return cmd_match(sig_file, pattern, subject, all, engine);
    if (r->parsed())
      return cmd_rewrite(sig_file, rules_file, subject, max_steps, trace, engine);
    if (b->parsed()) {
      cfg.seed = seed ? *seed : default_seed();
      cfg.engines = bench::parse_engines(engines);
      return cmd_bench(cfg, out_file);
    }
    return cmd_codegen(sig_file, patterns_file, out_dir, name);
  } catch (const std::exception &e) {
    std::cerr << "termweave: " << e.what() << "\n";
    return usage;
  }
}
