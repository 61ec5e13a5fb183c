#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termweave/codegen.hpp"
#include "termweave/prop.hpp"
#include "termweave/random.hpp"

namespace termweave::bench {

enum class Engine { one2one, net, codegen };
std::string to_string(Engine e);
std::optional<Engine> parse_engine(std::string_view s);
// "one2one,net,codegen"; throws std::invalid_argument on unknown names
std::vector<Engine> parse_engines(std::string_view list);

struct BenchRecord {
  std::string workload;
  Engine engine = Engine::one2one;
  std::size_t subjects = 0;
  std::size_t patterns = 0;
  double wall_ms = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t matches = 0; // overlap: reported matches; prop: rewrite steps
};

std::string csv_header();
std::string to_csv(const BenchRecord &r);

// A family of patterns that share long prefixes and differ near the end.
SignatureTable overlap_signature();
std::vector<Pattern> overlap_patterns(const SignatureTable &sig, std::size_t count = 200);
// Subjects that mostly follow the shared prefix, some perturbed.
std::vector<Term> overlap_subjects(Rng &rng, const SignatureTable &sig, std::size_t n);

std::vector<prop::Generated> prop_subjects(Rng &rng, const SignatureTable &sig, std::size_t n, unsigned depth = 12);

// Patterns handed to code generation for a workload, in net order.
std::vector<Pattern> workload_patterns(const std::string &workload);
SignatureTable workload_signature(const std::string &workload);

struct BenchConfig {
  std::string workload;
  std::size_t size = 50;
  std::uint64_t seed = 1;
  std::vector<Engine> engines{Engine::one2one, Engine::net, Engine::codegen};
  unsigned repetitions = 5;
};

// One record per (subject, engine). The codegen engine uses the generated
// matcher registered under the workload's name. Throws std::invalid_argument
// for an unknown workload or a missing generated matcher.
std::vector<BenchRecord> run_bench(const BenchConfig &cfg);

} // namespace termweave::bench
