#include <doctest.h>

#include <map>

#include "support/random_terms.hpp"
#include "termweave/match_one.hpp"
#include "termweave/net.hpp"
#include "termweave/parse.hpp"

using namespace termweave;

namespace {

std::vector<std::string> show(const std::vector<NetMatch> &ms) {
  std::vector<std::string> out;
  for (const auto &m : ms)
    out.push_back(std::to_string(m.pattern) + " " + m.sigma.to_string());
  return out;
}

using V = std::vector<std::string>;

DiscriminationNet three_lists() {
  SignatureTable sig;
  DiscriminationNet net(sig);
  for (const char *p : {"[1]", "[y_, 0]", "[1, x___]"})
    net.add(Pattern::parse(p, sig));
  return net;
}

} // namespace

TEST_CASE("the three-pattern list net") {
  auto net = three_lists();
  const auto &sig = net.signature();
  CHECK(net.pattern_count() == 3);
  // root -List(-> {1, y}; 1 -> {), x}; one final per pattern
  CHECK(net.states().size() == 9);
  CHECK(net.states()[0].out.size() == 1);
  std::size_t finals = 0;
  for (const auto &s : net.states())
    finals += s.finals.size();
  CHECK(finals == 3);
  const auto &after_open = net.states()[net.states()[0].out[0].target];
  REQUIRE(after_open.out.size() == 2);
  CHECK(to_string(after_open.out[0].label) == "1"); // exact token before the wildcard
  CHECK(to_string(after_open.out[1].label) == "y_");

  CHECK(show(net.match_sorted(parse_term("[1, 0]", sig))) == V{"1 {y -> 1}", "2 {x -> (0)}"});
  CHECK(show(net.match_sorted(parse_term("[[2, 1], 0]", sig))) == V{"1 {y -> [2, 1]}"});
  CHECK(show(net.match_sorted(parse_term("[1]", sig))) == V{"0 {}", "2 {x -> ()}"});
  CHECK(net.match_sorted(parse_term("[2]", sig)).empty());
}

TEST_CASE("adding a pattern twice") {
  auto net = three_lists();
  const auto states = net.states().size();
  CHECK(net.add(Pattern::parse("[y_, 0]", net.signature())) == 1);
  CHECK(net.states().size() == states);
  CHECK(net.pattern_count() == 3);
  // different constraints make a different pattern on the same final state
  CHECK(net.add(Pattern::parse("[y_, 0] ; where y > 0", net.signature())) == 3);
  CHECK(net.states().size() == states);
}

TEST_CASE("prefix sharing") {
  auto sig = SignatureTable::parse("op F fixed:3\nop G variadic:0\nop H fixed:2\n");
  DiscriminationNet net(sig);
  std::size_t tokens = 0;
  for (int i = 0; i < 200; ++i) {
    auto p = Pattern::parse("F(G(a, b, c), H(n_, k" + std::to_string(i % 20) + "), u" + std::to_string(i / 20) + ")", sig);
    tokens = 12;
    net.add(p);
  }
  CHECK(net.pattern_count() == 200);
  CHECK(net.states().size() < 200 * tokens / 4);
}

TEST_CASE("commutative groups") {
  auto sig = SignatureTable::parse("op Plus variadic:2 associative commutative one_identity\n"
                                   "op fc variadic:0 commutative\nop g fixed:2\nclass K a b\n");
  DiscriminationNet net(sig);
  net.add(Pattern::parse("fc(x_, y_)", sig));
  net.add(Pattern::parse("fc(x_, x_)", sig));
  net.add(Pattern::parse("fc(g(x_, b), z___)", sig));
  net.add(Pattern::parse("Plus(a, x_)", sig));
  net.add(Pattern::parse("Plus(x_K, y_:0)", sig));
  CHECK(show(net.match_sorted(parse_term("fc(a, b)", sig))) == V{"0 {x -> a, y -> b}", "0 {x -> b, y -> a}"});
  CHECK(show(net.match_sorted(parse_term("fc(a, a)", sig))) == V{"0 {x -> a, y -> a}", "1 {x -> a}"});
  CHECK(show(net.match_sorted(parse_term("fc(c, g(a, b), g(c, b))", sig))) ==
        V{"2 {x -> a, z -> (c, g(c, b))}", "2 {x -> c, z -> (c, g(a, b))}"});
  CHECK(show(net.match_sorted(parse_term("Plus(a, b, c)", sig))) ==
        V{"3 {x -> Plus(b, c)}", "4 {x -> a, y -> Plus(b, c)}", "4 {x -> b, y -> Plus(a, c)}"});
  CHECK(show(net.match_sorted(parse_term("Plus(a, b)", sig))) ==
        V{"3 {x -> b}", "4 {x -> a, y -> b}", "4 {x -> b, y -> a}"});
  // one identity: b is Plus(b)
  CHECK(show(net.match_sorted(parse_term("b", sig))) == V{"4 {x -> b, y -> 0}"});
}

TEST_CASE("property: tokenize round-trips") {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    auto sig = twtest::random_signature(rng);
    Term t = twtest::random_ground(rng, sig, 3);
    REQUIRE(untokenize(tokenize(t)) == t);
  }
}

TEST_CASE("property: the net equals the union of one-to-one matches") {
  Rng rng(77);
  std::size_t total = 0;
  for (int round = 0; round < 150; ++round) {
    auto sig = twtest::random_signature(rng);
    std::vector<Term> subjects;
    for (int k = 0; k < 3; ++k)
      subjects.push_back(twtest::random_ground(rng, sig, 3));
    DiscriminationNet net(sig);
    std::vector<Pattern> patterns;
    const std::size_t n = 1 + rng.below(30);
    twtest::PatternOptions opt;
    for (std::size_t k = 0; k < n; ++k) {
      Term t = rng.chance(2, 3) ? twtest::pattern_from_subject(rng, sig, subjects[rng.below(subjects.size())], opt)
                                : twtest::random_pattern(rng, sig, opt);
      Pattern p = Pattern::make(t);
      if (net.add(p) == patterns.size())
        patterns.push_back(p);
    }
    for (const Term &s : subjects) {
      std::vector<NetMatch> want;
      for (std::size_t id = 0; id < patterns.size(); ++id)
        for (auto &sigma : match_sorted(s, patterns[id], sig))
          want.push_back({id, std::move(sigma)});
      std::sort(want.begin(), want.end());
      std::vector<NetMatch> got;
      for (const auto &m : net.match(s))
        got.push_back(m);
      std::sort(got.begin(), got.end());
      INFO(sig.to_text() << to_string(s));
      if (got != want) {
        for (const auto &m : want)
          if (!std::binary_search(got.begin(), got.end(), m))
            MESSAGE("missing " << to_string(patterns[m.pattern].term) << " " << m.sigma.to_string());
        for (const auto &m : got)
          if (!std::binary_search(want.begin(), want.end(), m))
            MESSAGE("extra " << to_string(patterns[m.pattern].term) << " " << m.sigma.to_string());
      }
      REQUIRE(got == want);
      total += got.size();
    }
  }
  CHECK(total > 100);
}
