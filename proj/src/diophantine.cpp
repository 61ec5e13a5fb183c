#include "termweave/diophantine.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace termweave::diophantine {

Bezout extended_euclid(std::int64_t a, std::int64_t b) {
  // iterative form; (old_r, old_s, old_t) carries the answer
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0)
    return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

void solve_into(const std::int64_t *coeffs, std::size_t n, std::int64_t c, Solution &prefix, SolutionSet &out) {
  if (n == 1) {
    if (c % coeffs[0] == 0) {
      prefix.push_back(c / coeffs[0]);
      out.push_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  if (n == 2) {
    for (const auto &xy : solve_two_var(coeffs[0], coeffs[1], c)) {
      prefix.insert(prefix.end(), xy.begin(), xy.end());
      out.push_back(prefix);
      prefix.resize(prefix.size() - 2);
    }
    return;
  }
  // a*x + g*y == c with g = gcd(rest); then rest/g == y
  std::int64_t g = 0;
  for (std::size_t i = 1; i < n; ++i)
    g = std::gcd(g, coeffs[i]);
  std::vector<std::int64_t> reduced(coeffs + 1, coeffs + n);
  for (auto &r : reduced)
    r /= g;
  for (const auto &xy : solve_two_var(coeffs[0], g, c)) {
    prefix.push_back(xy[0]);
    solve_into(reduced.data(), reduced.size(), xy[1], prefix, out);
    prefix.pop_back();
  }
}

} // namespace

SolutionSet solve_two_var(std::int64_t a, std::int64_t b, std::int64_t d) {
  if (a < 1 || b < 1 || d < 0)
    throw std::invalid_argument("solve_two_var: need a, b >= 1 and d >= 0");
  const Bezout e = extended_euclid(a, b);
  SolutionSet out;
  if (d % e.gcd != 0)
    return out;
  const std::int64_t k = d / e.gcd;
  const std::int64_t x0 = e.x * k, y0 = e.y * k;
  const std::int64_t step_x = b / e.gcd, step_y = a / e.gcd;
  // x = x0 + t*step_x >= 0, y = y0 - t*step_y >= 0
  const std::int64_t t_lo = ceil_div(-x0, step_x);
  const std::int64_t t_hi = floor_div(y0, step_y);
  for (std::int64_t t = t_hi; t >= t_lo; --t)
    out.push_back({x0 + t * step_x, y0 - t * step_y});
  return out;
}

SolutionSet solve_nonneg(const Equation &eq) {
  if (eq.coefficients.empty() || eq.constant < 0)
    throw std::invalid_argument("diophantine equation needs coefficients and a non-negative constant");
  for (auto c : eq.coefficients)
    if (c < 1)
      throw std::invalid_argument("diophantine coefficients must be >= 1");
  SolutionSet out;
  Solution prefix;
  solve_into(eq.coefficients.data(), eq.coefficients.size(), eq.constant, prefix, out);
  return out;
}

std::shared_ptr<const SolutionSet> SolutionCache::solve(const Equation &eq) {
  {
    std::lock_guard lock(mu_);
    if (auto it = index_.find(eq); it != index_.end()) {
      ++hits_;
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second;
    }
    ++misses_;
  }
  // solved outside the lock; a racing duplicate insert is harmless
  auto set = std::make_shared<const SolutionSet>(solve_nonneg(eq));
  std::lock_guard lock(mu_);
  if (auto it = index_.find(eq); it != index_.end())
    return it->second->second;
  lru_.emplace_front(eq, set);
  index_.emplace(eq, lru_.begin());
  while (index_.size() > capacity_) {
    index_.erase(lru_.back().first);
    lru_.pop_back();
  }
  return set;
}

std::uint64_t SolutionCache::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

std::uint64_t SolutionCache::misses() const {
  std::lock_guard lock(mu_);
  return misses_;
}

std::size_t SolutionCache::size() const {
  std::lock_guard lock(mu_);
  return index_.size();
}

void SolutionCache::clear() {
  std::lock_guard lock(mu_);
  lru_.clear();
  index_.clear();
  hits_ = misses_ = 0;
}

SolutionCache &default_cache() {
  static SolutionCache cache;
  return cache;
}

std::shared_ptr<const SolutionSet> solve_cached(const Equation &eq) { return default_cache().solve(eq); }

} // namespace termweave::diophantine
