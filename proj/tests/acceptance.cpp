// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any failed.
#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "support/brute_matcher.hpp"
#include "support/corpus.hpp"
#include "support/random_terms.hpp"
#include "support/small_oracles.hpp"
#include "termweave/bench.hpp"
#include "termweave/codegen.hpp"
#include "termweave/diophantine.hpp"
#include "termweave/match_one.hpp"
#include "termweave/net.hpp"
#include "termweave/parse.hpp"
#include "termweave/prop.hpp"
#include "termweave/rewrite.hpp"

using namespace termweave;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failures of one criterion; keeps the first few messages.
struct Check {
  std::size_t cases = 0, failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string &what) {
    ++cases;
    if (ok)
      return;
    ++failures;
    if (notes.size() < 5)
      notes.push_back(what);
  }
  void note(std::string s) { notes.push_back(std::move(s)); }
};

bool report(int n, const std::string &title, const Check &c, double secs, const std::string &extra = "") {
  const bool ok = c.failures == 0 && c.cases > 0;
  char t[32];
  std::snprintf(t, sizeof t, "%.2fs", secs);
  std::cout << (ok ? "PASS" : "FAIL") << "  " << n << ". " << title << ": " << c.cases << " checks, " << c.failures
            << " failed, " << t << (extra.empty() ? "" : ", " + extra) << "\n";
  for (const auto &s : c.notes)
    std::cout << "      " << s << "\n";
  std::cout.flush();
  return ok;
}

std::vector<std::string> strings(const std::vector<Substitution> &v) {
  std::vector<std::string> out;
  for (const auto &s : v)
    out.push_back(s.to_string());
  return out;
}

std::string join(const std::vector<std::string> &v) {
  std::string out;
  for (const auto &s : v)
    out += (out.empty() ? "" : " ") + s;
  return out;
}

std::vector<NetMatch> net_sorted(const DiscriminationNet &net, const Term &s) {
  std::vector<NetMatch> out;
  for (const auto &m : net.match(s))
    out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

DiscriminationNet net_of(const twtest::MatchCase &c) {
  DiscriminationNet net(c.sig);
  for (const auto &p : c.patterns)
    net.add(p);
  return net;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return in ? s.str() : std::string("<unreadable " + path + ">");
}

// ---- 1 ----------------------------------------------------------------------

bool worked_examples() {
  const auto t0 = Clock::now();
  Check c;
  const auto sig = twtest::example_corpus().front().sig;
  auto one = [&](const char *subject, const char *pattern) {
    return strings(match_sorted(parse_term(subject, sig), Pattern::parse(pattern, sig), sig));
  };
  using V = std::vector<std::string>;

  c.expect(one("ff(a)", "ff(x_)") == V{"{x -> a}"}, "ff(x_) vs ff(a)");
  {
    Substitution s;
    s.bind("x", Binding::single(Term::symbol("a")));
    c.expect(to_string(substitute(s, parse_term("ff(x_)", sig), sig)) == "ff(a)", "sigma(ff(x)) = ff(a)");
  }
  c.expect(one("a", "Times(x_:1, y_)") == V{"{x -> 1, y -> a}"}, "optional variable on a");
  c.expect(one("Times(a, b)", "Times(x_:1, y_)") == V{"{x -> a, y -> b}"}, "optional variable on a*b");
  {
    Substitution s;
    s.bind("x", Binding::sequence({Term::symbol("c"), Term::symbol("d")}));
    c.expect(to_string(substitute(s, parse_term("f(a, x___, b)", sig), sig)) == "f(a, c, d, b)", "splice");
  }
  c.expect(one("fc(a, b, b, b)", "fc(x___, y__, y__)") == V{"{x -> (a, b), y -> (b)}"}, "f(a, b, b, b)");

  const SignatureTable lists;
  {
    DiscriminationNet net(lists);
    for (const char *p : {"[1]", "[y_, 0]", "[1, x___]"})
      net.add(Pattern::parse(p, lists));
    V got;
    for (const auto &m : net.match_sorted(parse_term("[1, 0]", lists)))
      got.push_back(std::to_string(m.pattern) + " " + m.sigma.to_string());
    c.expect(got == V{"1 {y -> 1}", "2 {x -> (0)}"}, "list net on [1, 0]: " + join(got));
  }
  {
    std::vector<ReplacementRule> rules{
        ReplacementRule::parse("[h___, b_, a_, t___] -> [h___, a_, b_, t___] ; where a < b", lists)};
    const auto rep = replace_all(parse_term("[1, 4, 3, 2]", lists), rules, lists, 1000);
    c.expect(rep.normal_form && to_string(rep.result) == "[1, 2, 3, 4]", "bubble sort: " + to_string(rep.result));
  }
  {
    V got;
    for (const auto &s : match(parse_term("[1, 2, 3, 1, 1, 2]", lists),
                               Pattern::parse("[___, x__, ___] ; where sum(x) == 5", lists), lists))
      got.push_back(s.to_string());
    c.expect(got == V{"{x -> (2, 3)}", "{x -> (3, 1, 1)}"}, "sum to five: " + join(got));
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 1.0, "runtime over 1 s");
  return report(1, "worked examples", c, secs);
}

// ---- 2 ----------------------------------------------------------------------

bool oracle_one_to_one() {
  const auto t0 = Clock::now();
  Check c;
  std::size_t matches = 0;
  for (const auto &k : twtest::oracle_corpus()) {
    const auto &p = k.patterns.front();
    const auto &s = k.subjects.front();
    std::vector<Substitution> got;
    for (const auto &m : match(s, p, k.sig))
      got.push_back(m);
    const std::set<Substitution> got_set(got.begin(), got.end());
    const auto want = twtest::brute_match(s, p, k.sig);
    matches += got.size();
    c.expect(got_set.size() == got.size() && got_set == want,
             k.name + ": " + to_string(s) + " vs " + p.to_string() + " got " + std::to_string(got.size()) + " want " +
                 std::to_string(want.size()));
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 60, "runtime over 60 s");
  return report(2, "one-to-one vs brute-force oracle", c, secs, std::to_string(matches) + " matches");
}

// ---- 3 ----------------------------------------------------------------------

bool oracle_many_to_one() {
  const auto t0 = Clock::now();
  Check c;
  std::size_t subjects = 0, matches = 0;
  for (const auto &k : twtest::net_corpus()) {
    const auto net = net_of(k);
    for (const auto &s : k.subjects) {
      std::vector<NetMatch> want;
      for (std::size_t id = 0; id < k.patterns.size(); ++id)
        for (auto &sigma : match_sorted(s, k.patterns[id], k.sig))
          want.push_back({id, std::move(sigma)});
      std::sort(want.begin(), want.end());
      const auto got = net_sorted(net, s);
      ++subjects;
      matches += got.size();
      c.expect(got == want, k.name + ": " + to_string(s));
    }
  }
  return report(3, "many-to-one vs union of one-to-one", c, seconds_since(t0),
                std::to_string(subjects) + " subjects, " + std::to_string(matches) + " matches");
}

// ---- 4 ----------------------------------------------------------------------

bool diophantine_grid() {
  const auto t0 = Clock::now();
  Check c;
  std::vector<std::int64_t> coeffs;
  std::function<void()> rec = [&] {
    if (!coeffs.empty())
      for (std::int64_t k = 0; k <= 10; ++k) {
        const auto got = diophantine::solve_nonneg({coeffs, k});
        const std::set<std::vector<std::int64_t>> got_set(got.begin(), got.end());
        c.expect(got_set.size() == got.size() && got_set == twtest::diophantine_grid(coeffs, k), "coefficients");
      }
    if (coeffs.size() == 3)
      return;
    for (std::int64_t a = 1; a <= 4; ++a) {
      coeffs.push_back(a);
      rec();
      coeffs.pop_back();
    }
  };
  rec();
  return report(4, "diophantine vs grid enumeration", c, seconds_since(t0));
}

// ---- 5 ----------------------------------------------------------------------

bool bipartite_matchings() {
  const auto t0 = Clock::now();
  Check c;
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const auto g = twtest::random_graph(rng, 8, 8);
    c.expect(bipartite::hopcroft_karp(g).size() == twtest::maximum_matching_size(g), "hopcroft_karp size");
  }
  for (int i = 0; i < 500; ++i) {
    const auto g = twtest::random_graph(rng, 6, 6);
    std::vector<bipartite::Matching> got;
    for (const auto &m : bipartite::enumerate_maximum_matchings(g))
      got.push_back(m);
    const std::set<bipartite::Matching> got_set(got.begin(), got.end());
    c.expect(got_set.size() == got.size() && got_set == twtest::maximum_matchings(g), "enumeration");
  }
  return report(5, "bipartite matching vs exhaustive search", c, seconds_since(t0));
}

// ---- 6 ----------------------------------------------------------------------

bool prop_anf() {
  const auto t0 = Clock::now();
  Check c;
  const auto sig = prop::signature();
  const auto rules = prop::rules(sig);
  const std::vector<std::string> atoms{"a", "b", "c", "d"};
  Rng rng(6);
  std::size_t steps = 0;
  for (int i = 0; i < 200; ++i) {
    const Term f = prop::random_formula(rng, sig, atoms, 3);
    const auto rep = replace_all(f, rules, sig, 100000);
    steps += rep.steps;
    c.expect(rep.normal_form && prop::is_anf(rep.result) &&
                 prop::truth_table(rep.result, atoms) == prop::truth_table(f, atoms),
             "random formula " + to_string(f));
  }
  for (int i = 0; i < 200; ++i) {
    const auto g = prop::backward(rng, sig, atoms);
    const auto rep = replace_all(g.formula, rules, sig, 100000);
    steps += rep.steps;
    c.expect(rep.normal_form && to_string(rep.result) == (g.value ? "T" : "F"),
             "backward formula " + to_string(g.formula) + " -> " + to_string(rep.result));
  }
  return report(6, "prop rules reach algebraic normal form", c, seconds_since(t0),
                std::to_string(steps) + " rewrite steps");
}

// ---- 7 ----------------------------------------------------------------------

bool codegen_differential() {
  const auto t0 = Clock::now();
  Check c;
  std::size_t subjects = 0, states = 0;
  for (const auto &k : twtest::full_corpus()) {
    const auto *cm = codegen::find_matcher(k.name);
    if (!cm) {
      c.expect(false, "no generated matcher " + k.name);
      continue;
    }
    const auto net = net_of(k);
    std::optional<codegen::GeneratedMatcher> gen;
    try {
      gen.emplace(*cm);
    } catch (const std::exception &e) {
      c.expect(false, k.name + ": " + e.what());
      continue;
    }
    states += cm->state_count;
    for (const auto &s : k.subjects) {
      auto got = gen->match(s);
      std::sort(got.begin(), got.end());
      ++subjects;
      c.expect(got == net_sorted(net, s), k.name + ": " + to_string(s));
    }
    // regenerating from the same net gives the same text
    const auto a = codegen::generate_matcher_source(net, k.name);
    const auto b = codegen::generate_matcher_source(net_of(k), k.name);
    c.expect(a.units == b.units && a.manifest == b.manifest, k.name + ": regeneration differs");
  }
  // and the sources this binary was built from are exactly what the generator gives today
  for (const auto &[file, text] : twtest::corpus_sources(TERMWEAVE_CORPUS_BUNDLES))
    c.expect(slurp(std::string(TERMWEAVE_CORPUS_DIR) + "/" + file) == text, file + " differs from regeneration");
  for (const char *w : {"prop", "overlap"}) {
    DiscriminationNet net(bench::workload_signature(w));
    for (const auto &p : bench::workload_patterns(w))
      net.add(p);
    const auto spec = codegen::generate_matcher_source(net, w);
    const std::string dir = std::string(TERMWEAVE_GENERATED_DIR) + "/" + w + "/";
    for (const auto &[file, text] : spec.units)
      c.expect(slurp(dir + file) == text, std::string(w) + " workload source differs from regeneration");
    c.expect(slurp(dir + "manifest.tsv") == spec.manifest, std::string(w) + " manifest differs");
  }
  return report(7, "generated matchers agree with the net", c, seconds_since(t0),
                std::to_string(subjects) + " subjects, " + std::to_string(states) + " states");
}

// ---- 8 ----------------------------------------------------------------------

bool overlap_performance() {
  const auto t0 = Clock::now();
  Check c;
  bench::BenchConfig cfg;
  cfg.workload = "overlap";
  cfg.size = 100;
  cfg.seed = 1;
  const auto records = bench::run_bench(cfg);
  std::map<bench::Engine, std::vector<const bench::BenchRecord *>> by;
  for (const auto &r : records)
    by[r.engine].push_back(&r);
  const auto &one = by[bench::Engine::one2one], &net = by[bench::Engine::net], &gen = by[bench::Engine::codegen];
  std::uint64_t cmp_one = 0, cmp_net = 0, cmp_gen = 0;
  std::vector<double> speedups;
  for (std::size_t i = 0; i < one.size(); ++i) {
    cmp_one += one[i]->comparisons;
    cmp_net += net[i]->comparisons;
    cmp_gen += gen[i]->comparisons;
    c.expect(one[i]->matches == net[i]->matches && net[i]->matches == gen[i]->matches, "match counts differ");
    speedups.push_back(one[i]->wall_ms / std::max(net[i]->wall_ms, 1e-6));
  }
  std::sort(speedups.begin(), speedups.end());
  const double speedup = speedups.empty() ? 0 : speedups[speedups.size() / 2];
  c.expect(!one.empty() && one.front()->patterns == 200, "workload must have 200 patterns");
  c.expect(cmp_net * 2 < cmp_one, "net comparisons not below half of one-to-one");
  c.expect(speedup >= 2, "median speedup below 2x");
  c.expect(cmp_gen <= cmp_net, "codegen performs more comparisons than the net");
  char extra[160];
  std::snprintf(extra, sizeof extra, "comparisons one2one %llu net %llu codegen %llu, median speedup %.1fx",
                static_cast<unsigned long long>(cmp_one), static_cast<unsigned long long>(cmp_net),
                static_cast<unsigned long long>(cmp_gen), speedup);
  return report(8, "overlap workload performance", c, seconds_since(t0), extra);
}

// ---- 9 ----------------------------------------------------------------------

bool uniqueness() {
  const auto t0 = Clock::now();
  Check c;
  const auto sig = SignatureTable::parse("op Plus variadic:0 associative commutative\n"
                                         "op fc variadic:0 commutative\nop g fixed:1\n");
  {
    const auto got = match_sorted(parse_term("Plus(a, a)", sig), Pattern::parse("Plus(x_, x_)", sig), sig);
    c.expect(strings(got) == std::vector<std::string>{"{x -> a}"}, "Plus(a, a) vs Plus(x_, x_)");
  }
  const char *const atoms[] = {"a", "a", "b", "g(a)", "g(b)"};
  const char *const parts[] = {"x_", "x_", "y_", "y_", "z___", "w__", "a", "g(x_)", "g(v_)"};
  Rng rng(9);
  std::size_t with_repeats = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string head = rng.chance(1, 2) ? "Plus" : "fc";
    std::string subject = head + "(", pattern = head + "(";
    const std::size_t n = 2 + rng.below(5), m = 1 + rng.below(4);
    for (std::size_t k = 0; k < n; ++k)
      subject += std::string(k ? ", " : "") + atoms[rng.below(5)];
    bool seq = false;
    for (std::size_t k = 0; k < m; ++k) {
      std::string p = parts[rng.below(9)];
      // one sequence variable of each name per argument list
      if (p == "z___" || p == "w__") {
        if (seq)
          p = "x_";
        seq = true;
      }
      pattern += std::string(k ? ", " : "") + p;
    }
    const Term s = parse_term(subject + ")", sig);
    const Pattern p = Pattern::parse(pattern + ")", sig);
    std::vector<Substitution> got;
    for (const auto &x : match(s, p, sig))
      got.push_back(x);
    const std::set<Substitution> got_set(got.begin(), got.end());
    DiscriminationNet net(sig);
    net.add(p);
    std::vector<NetMatch> via_net;
    for (const auto &x : net.match(s))
      via_net.push_back(x);
    const std::set<NetMatch> net_set(via_net.begin(), via_net.end());
    with_repeats += got.size() > 0;
    c.expect(got_set.size() == got.size() && net_set.size() == via_net.size() && net_set.size() == got_set.size() &&
                 got_set == twtest::brute_match(s, p, sig),
             to_string(s) + " vs " + p.to_string());
  }
  return report(9, "no duplicate substitutions with repeated arguments", c, seconds_since(t0),
                std::to_string(with_repeats) + " cases with matches");
}

} // namespace

int main() {
  bool ok = true;
  ok &= worked_examples();
  ok &= oracle_one_to_one();
  ok &= oracle_many_to_one();
  ok &= diophantine_grid();
  ok &= bipartite_matchings();
  ok &= prop_anf();
  ok &= codegen_differential();
  ok &= overlap_performance();
  ok &= uniqueness();
  return ok ? 0 : 1;
}
