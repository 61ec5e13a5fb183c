#pragma once

#include <cstdint>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace termweave::diophantine {

struct Bezout {
  std::int64_t gcd, x, y; // a*x + b*y == gcd
};

Bezout extended_euclid(std::int64_t a, std::int64_t b);

using Solution = std::vector<std::int64_t>;
using SolutionSet = std::vector<Solution>;

// sum(coefficients[i] * v[i]) == constant, v >= 0
struct Equation {
  std::vector<std::int64_t> coefficients;
  std::int64_t constant = 0;

  friend auto operator<=>(const Equation &, const Equation &) = default;
};

// Non-negative solutions of a*x + b*y == d, x descending.
SolutionSet solve_two_var(std::int64_t a, std::int64_t b, std::int64_t d);

// All non-negative solutions, lexicographically descending.
// Throws std::invalid_argument on empty/non-positive coefficients or negative constant.
SolutionSet solve_nonneg(const Equation &eq);

// Bounded LRU memo over solve_nonneg. Thread-safe.
class SolutionCache {
public:
  explicit SolutionCache(std::size_t capacity = 65536) : capacity_(capacity ? capacity : 1) {}

  std::shared_ptr<const SolutionSet> solve(const Equation &eq);

  std::uint64_t hits() const;
  std::uint64_t misses() const;
  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }
  void clear();

private:
  using Lru = std::list<std::pair<Equation, std::shared_ptr<const SolutionSet>>>;

  mutable std::mutex mu_;
  std::size_t capacity_;
  Lru lru_; // most recent first
  std::map<Equation, Lru::iterator> index_;
  std::uint64_t hits_ = 0, misses_ = 0;
};

// Process-wide cache used by the matchers unless told otherwise.
SolutionCache &default_cache();

std::shared_ptr<const SolutionSet> solve_cached(const Equation &eq);

} // namespace termweave::diophantine
