#pragma once

#include <cstdint>
#include <random>

namespace termweave {

// mt19937_64 plus a couple of helpers. Streams are reproducible across
// platforms, unlike the std distributions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  // uniform-ish in [0, n); modulo bias is irrelevant at these sizes
  std::size_t below(std::size_t n) { return n ? static_cast<std::size_t>(eng_() % n) : 0; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(unsigned num, unsigned den) { return below(den) < num; }

private:
  std::mt19937_64 eng_;
};

} // namespace termweave
