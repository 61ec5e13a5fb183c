#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "termweave/net.hpp"

namespace termweave::codegen {

// ---- generation ------------------------------------------------------------

struct GeneratedMatcherSpec {
  std::vector<std::pair<std::string, std::string>> units; // file name, text
  std::string entry_point;                                // the exported CompiledMatcher
  std::string manifest;                                   // ID<TAB>PATTERN_TEXT lines
};

class CodegenError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// `name` must be an identifier; it prefixes every exported symbol. Throws
// CodegenError for nets that cannot be rebuilt from text (host constraints).
GeneratedMatcherSpec generate_matcher_source(const DiscriminationNet &net, const std::string &name = "matcher");

// Writes every unit plus manifest.tsv into dir, creating it. Throws
// std::filesystem::filesystem_error or CodegenError when that fails.
void write_spec(const GeneratedMatcherSpec &spec, const std::filesystem::path &dir);

// Hash of states, labels, targets and finals. Generated code records it so a
// rebuilt net with a different shape is refused.
std::uint64_t fingerprint(const DiscriminationNet &net);

// ---- runtime used by generated code ----------------------------------------

class Walker;
using StateFn = void (*)(Walker &, const WalkState &);

struct CompiledMatcher {
  const char *name;
  const char *signature_text;
  const char *const *patterns; // pattern text by id
  std::size_t pattern_count;
  const char *const *constants; // atom and ground labels, term text
  std::size_t constant_count;
  const StateFn *states; // one per net state
  std::size_t state_count;
  std::uint64_t fingerprint;
};

// Walk state shared by the generated functions of one match call.
class Walker {
public:
  Walker(const DiscriminationNet &net, const std::vector<Term> &constants, const StateFn *states,
         MatchStats *stats, NetMatchOptions options);

  void enter() { env_.ctx.node(); }
  // false once the sink asked to stop, or when first_per_pattern has nothing left below `state`
  bool live(std::size_t state) const { return !stopped_ && net_.live(state, env_); }

  const Term &constant(std::size_t i) const { return constants_[i]; }
  // Inline token tests. Each counts one comparison, like DiscriminationNet::step.
  std::optional<WalkState> atom(const WalkState &ws, const Term &t);
  std::optional<WalkState> open(const WalkState &ws, const char *head, bool one_identity);
  std::optional<WalkState> close(const WalkState &ws);
  // Everything else goes through the net.
  Generator<WalkState> step(std::size_t state, std::size_t transition, const WalkState &ws);

  void accept(std::size_t state, const WalkState &ws);

  std::vector<NetMatch> run(const Term &subject);
  void run(const Term &subject, const std::function<bool(const NetMatch &)> &sink);

private:
  const DiscriminationNet &net_;
  const std::vector<Term> &constants_;
  const StateFn *states_;
  NetEnv env_;
  std::vector<NetMatch> out_;
  const std::function<bool(const NetMatch &)> *sink_ = nullptr;
  bool stopped_ = false;
  std::vector<std::vector<std::pair<std::size_t, Substitution>> *> inner_; // collectors of running inner walks
};

// A compiled matcher plus the net rebuilt from its embedded pattern text.
class GeneratedMatcher {
public:
  explicit GeneratedMatcher(const CompiledMatcher &cm);

  const std::string &name() const { return name_; }
  const DiscriminationNet &net() const { return *net_; }
  std::size_t pattern_count() const { return net_->pattern_count(); }

  // Same set as DiscriminationNet::match, computed eagerly.
  std::vector<NetMatch> match(const Term &subject, MatchStats *stats = nullptr, NetMatchOptions options = {}) const;
  std::vector<NetMatch> match_sorted(const Term &subject, MatchStats *stats = nullptr) const;
  // Streams matches in walk order; the walk stops when `sink` returns false.
  void match(const Term &subject, MatchStats *stats, NetMatchOptions options,
             const std::function<bool(const NetMatch &)> &sink) const;

private:
  std::string name_;
  std::shared_ptr<DiscriminationNet> net_;
  std::vector<Term> constants_;
  const StateFn *states_;
};

// Generated units register themselves at static initialization.
struct Registrar {
  explicit Registrar(const CompiledMatcher *cm);
};
const CompiledMatcher *find_matcher(const std::string &name);
std::vector<const CompiledMatcher *> registered_matchers();

} // namespace termweave::codegen
