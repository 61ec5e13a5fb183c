#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "support/small_oracles.hpp"
#include "termweave/diophantine.hpp"

using namespace termweave::diophantine;

namespace {
std::set<Solution> as_set(const SolutionSet &s) { return {s.begin(), s.end()}; }
} // namespace

TEST_CASE("extended_euclid") {
  for (auto [a, b] : std::vector<std::pair<std::int64_t, std::int64_t>>{{6, 4}, {1, 1}, {5, 3}, {4, 6}, {7, 7},
                                                                        {1, 9}, {12, 18}}) {
    auto e = extended_euclid(a, b);
    CHECK(a * e.x + b * e.y == e.gcd);
    CHECK(e.gcd == std::gcd(a, b));
  }
  CHECK(extended_euclid(1, 1).gcd == 1);
}

TEST_CASE("solve_two_var") {
  CHECK(solve_two_var(1, 2, 3) == SolutionSet{{3, 0}, {1, 1}});
  CHECK(solve_two_var(1, 2, 1) == SolutionSet{{1, 0}});
  CHECK(solve_two_var(2, 4, 3).empty());
  CHECK(solve_two_var(3, 5, 0) == SolutionSet{{0, 0}});
  CHECK(solve_two_var(3, 5, 7).empty());
  CHECK(solve_two_var(3, 5, 8) == SolutionSet{{1, 1}});
}

TEST_CASE("solve_nonneg") {
  CHECK(solve_nonneg({{1, 2}, 3}) == SolutionSet{{3, 0}, {1, 1}});
  CHECK(solve_nonneg({{4}, 0}) == SolutionSet{{0}});
  CHECK(solve_nonneg({{4}, 6}).empty());
  CHECK(as_set(solve_nonneg({{1, 2, 3}, 4})) == std::set<Solution>{{4, 0, 0}, {2, 1, 0}, {0, 2, 0}, {1, 0, 1}});
  // lexicographically descending
  CHECK(solve_nonneg({{1, 2, 3}, 4}) == SolutionSet{{4, 0, 0}, {2, 1, 0}, {1, 0, 1}, {0, 2, 0}});
  CHECK_THROWS_AS(solve_nonneg({{}, 1}), std::invalid_argument);
  CHECK_THROWS_AS(solve_nonneg({{0, 1}, 1}), std::invalid_argument);
  CHECK_THROWS_AS(solve_nonneg({{1}, -1}), std::invalid_argument);
}

TEST_CASE("exhaustive agreement with grid enumeration") {
  std::size_t checked = 0;
  std::vector<std::int64_t> c;
  auto rec = [&](auto &self, std::size_t n) -> void {
    if (!c.empty())
      for (std::int64_t k = 0; k <= 10; ++k) {
        auto got = solve_nonneg({c, k});
        for (const auto &v : got) {
          std::int64_t s = 0;
          for (std::size_t i = 0; i < v.size(); ++i)
            s += c[i] * v[i];
          REQUIRE(s == k);
        }
        REQUIRE(std::is_sorted(got.rbegin(), got.rend()));
        REQUIRE(std::adjacent_find(got.begin(), got.end()) == got.end());
        REQUIRE(as_set(got) == twtest::diophantine_grid(c, k));
        ++checked;
      }
    if (n == 3)
      return;
    for (std::int64_t a = 1; a <= 4; ++a) {
      c.push_back(a);
      self(self, n + 1);
      c.pop_back();
    }
  };
  rec(rec, 0);
  CHECK(checked == (4 + 16 + 64) * 11);
}

TEST_CASE("solution cache") {
  SolutionCache cache(4);
  auto a = cache.solve({{1, 2}, 3});
  CHECK(cache.misses() == 1);
  auto b = cache.solve({{1, 2}, 3});
  CHECK(cache.hits() == 1);
  CHECK(a == b);
  CHECK(*cache.solve({{1, 2}, 4}) == solve_nonneg({{1, 2}, 4}));
  CHECK(cache.size() == 2);
  // key is the ordered coefficient list
  cache.solve({{2, 1}, 3});
  CHECK(cache.size() == 3);
  for (int k = 5; k < 10; ++k)
    cache.solve({{1, 2}, k});
  CHECK(cache.size() == 4);
  // least recently used went first
  const auto misses = cache.misses();
  cache.solve({{1, 2}, 3});
  CHECK(cache.misses() == misses + 1);

  for (std::int64_t k = 0; k < 12; ++k)
    CHECK(*cache.solve({{1, 3, 2}, k}) == solve_nonneg({{1, 3, 2}, k}));
}
