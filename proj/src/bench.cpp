#include "termweave/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "termweave/parse.hpp"
#include "termweave/rewrite.hpp"

namespace termweave::bench {

std::string to_string(Engine e) {
  switch (e) {
  case Engine::one2one:
    return "one2one";
  case Engine::net:
    return "net";
  case Engine::codegen:
    return "codegen";
  }
  return "?";
}

std::optional<Engine> parse_engine(std::string_view s) {
  for (Engine e : {Engine::one2one, Engine::net, Engine::codegen})
    if (s == to_string(e))
      return e;
  return std::nullopt;
}

std::vector<Engine> parse_engines(std::string_view list) {
  std::vector<Engine> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const auto name = list.substr(0, comma);
    auto e = parse_engine(name);
    if (!e)
      throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
    if (std::find(out.begin(), out.end(), *e) == out.end())
      out.push_back(*e);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
  }
  if (out.empty())
    throw std::invalid_argument("no engines given");
  return out;
}

std::string csv_header() { return "workload,engine,subjects,patterns,wall_ms,comparisons,matches"; }

std::string to_csv(const BenchRecord &r) {
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.4f", r.wall_ms);
  return r.workload + "," + to_string(r.engine) + "," + std::to_string(r.subjects) + "," +
         std::to_string(r.patterns) + "," + ms + "," + std::to_string(r.comparisons) + "," +
         std::to_string(r.matches);
}

// ---- workloads ---------------------------------------------------------------

SignatureTable overlap_signature() { return SignatureTable::parse("op f fixed:3\nop g variadic:0\nop p fixed:2\n"); }

std::vector<Pattern> overlap_patterns(const SignatureTable &sig, std::size_t count) {
  std::vector<Pattern> out;
  for (std::size_t i = 0; i < count; ++i) {
    // every third pattern ends the g(...) prefix with a sequence variable
    const std::string tail = i % 3 == 2 ? "x___" : "x_";
    const std::string text = "f(g(a, b, c, d, e, " + tail + "), p(y_, z_), p(c" + std::to_string(i % 20) + ", n" +
                             std::to_string(i / 20) + "))";
    out.push_back(Pattern::parse(text, sig));
  }
  return out;
}

std::vector<Term> overlap_subjects(Rng &rng, const SignatureTable &sig, std::size_t n) {
  static const char *const fillers[] = {"a", "b", "c", "g(a)", "g()", "p(a, b)", "g(a, b, c)"};
  auto filler = [&] { return std::string(fillers[rng.below(7)]); };
  std::vector<Term> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> prefix{"a", "b", "c", "d", "e"};
    if (rng.chance(1, 4))
      prefix[rng.below(5)] = "b"; // usually breaks the shared prefix
    std::string g = "g(";
    for (const auto &s : prefix)
      g += s + ", ";
    g += filler();
    if (rng.chance(1, 3))
      g += ", " + filler();
    g += ")";
    const std::string text = "f(" + g + ", p(" + filler() + ", " + filler() + "), p(c" + std::to_string(rng.below(24)) +
                             ", n" + std::to_string(rng.below(12)) + "))";
    out.push_back(parse_term(text, sig));
  }
  return out;
}

std::vector<prop::Generated> prop_subjects(Rng &rng, const SignatureTable &sig, std::size_t n, unsigned depth) {
  std::vector<prop::Generated> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(prop::backward(rng, sig, {"a", "b", "c", "d"}, depth));
  return out;
}

SignatureTable workload_signature(const std::string &workload) {
  if (workload == "prop")
    return prop::signature();
  if (workload == "overlap")
    return overlap_signature();
  throw std::invalid_argument("unknown workload '" + workload + "'");
}

std::vector<Pattern> workload_patterns(const std::string &workload) {
  const SignatureTable sig = workload_signature(workload);
  if (workload == "overlap")
    return overlap_patterns(sig);
  const auto nr = build_rule_net(prop::rules(sig), sig);
  std::vector<Pattern> out;
  for (std::size_t id = 0; id < nr.net->pattern_count(); ++id)
    out.push_back(nr.net->pattern(id));
  return out;
}

// ---- runner ------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

template <class F> BenchRecord measure(unsigned reps, F &&run) {
  BenchRecord r;
  std::vector<double> times;
  for (unsigned k = 0; k < std::max(1u, reps); ++k) {
    MatchStats stats;
    const auto t0 = Clock::now();
    const std::uint64_t matches = run(&stats);
    times.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    if (k == 0) {
      r.comparisons = stats.comparisons;
      r.matches = matches;
    }
  }
  std::sort(times.begin(), times.end());
  r.wall_ms = times[times.size() / 2];
  return r;
}

const codegen::GeneratedMatcher &generated(const std::string &workload) {
  static std::map<std::string, std::unique_ptr<codegen::GeneratedMatcher>> cache;
  auto &slot = cache[workload];
  if (!slot) {
    const auto *cm = codegen::find_matcher(workload);
    if (!cm)
      throw std::invalid_argument("no generated matcher for workload '" + workload + "' in this build");
    slot = std::make_unique<codegen::GeneratedMatcher>(*cm);
    const auto want = workload_patterns(workload);
    bool same = slot->pattern_count() == want.size();
    for (std::size_t i = 0; same && i < want.size(); ++i)
      same = slot->net().pattern(i).to_string() == want[i].to_string();
    if (!same)
      throw std::invalid_argument("generated matcher for '" + workload + "' was built from other patterns");
  }
  return *slot;
}

std::vector<BenchRecord> run_overlap(const BenchConfig &cfg) {
  const auto sig = overlap_signature();
  const auto patterns = overlap_patterns(sig);
  Rng rng(cfg.seed);
  const auto subjects = overlap_subjects(rng, sig, cfg.size);
  DiscriminationNet net(sig);
  for (const auto &p : patterns)
    net.add(p);

  std::vector<BenchRecord> out;
  for (Engine e : cfg.engines) {
    const codegen::GeneratedMatcher *gen = e == Engine::codegen ? &generated("overlap") : nullptr;
    for (const Term &s : subjects) {
      BenchRecord r = measure(cfg.repetitions, [&](MatchStats *stats) -> std::uint64_t {
        std::uint64_t n = 0;
        switch (e) {
        case Engine::one2one:
          for (const auto &p : patterns)
            for ([[maybe_unused]] const auto &sigma : match(s, p, sig, stats))
              ++n;
          break;
        case Engine::net:
          for ([[maybe_unused]] const auto &m : net.match(s, stats))
            ++n;
          break;
        case Engine::codegen:
          n = gen->match(s, stats).size();
          break;
        }
        return n;
      });
      r.workload = "overlap";
      r.engine = e;
      r.subjects = 1;
      r.patterns = patterns.size();
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<BenchRecord> run_prop(const BenchConfig &cfg) {
  const auto sig = prop::signature();
  const auto rules = prop::rules(sig);
  Rng rng(cfg.seed);
  const auto subjects = prop_subjects(rng, sig, cfg.size);
  constexpr std::size_t max_steps = 100000;

  std::vector<BenchRecord> out;
  for (Engine e : cfg.engines) {
    std::unique_ptr<RuleMatcher> matcher;
    switch (e) {
    case Engine::one2one:
      matcher = std::make_unique<OneToOneRules>(rules, sig);
      break;
    case Engine::net:
      matcher = make_net_rules(rules, sig);
      break;
    case Engine::codegen: {
      const auto *gen = &generated("prop");
      ManyMatcher many = [gen](const Term &t, MatchStats *stats, NetMatchOptions opt, const MatchSink &sink) {
        gen->match(t, stats, opt, sink);
      };
      matcher = std::make_unique<ManyToOneRules>(rules, sig, std::move(many), build_rule_net(rules, sig).rule_of);
      break;
    }
    }
    for (const auto &g : subjects) {
      BenchRecord r = measure(cfg.repetitions, [&](MatchStats *stats) -> std::uint64_t {
        return replace_all(g.formula, rules, sig, max_steps, *matcher, false, stats).steps;
      });
      r.workload = "prop";
      r.engine = e;
      r.subjects = 1;
      r.patterns = rules.size();
      out.push_back(std::move(r));
    }
  }
  return out;
}

} // namespace

std::vector<BenchRecord> run_bench(const BenchConfig &cfg) {
  if (cfg.workload == "overlap")
    return run_overlap(cfg);
  if (cfg.workload == "prop")
    return run_prop(cfg);
  throw std::invalid_argument("unknown workload '" + cfg.workload + "'");
}

} // namespace termweave::bench
