#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termweave/constraint.hpp"
#include "termweave/generator.hpp"
#include "termweave/match_one.hpp"
#include "termweave/net.hpp"
#include "termweave/signature.hpp"
#include "termweave/substitution.hpp"
#include "termweave/term.hpp"

namespace termweave {

class RuleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ReplacementRule {
  using Builder = std::function<Term(const Substitution &)>;

  Pattern pattern;
  std::optional<Term> replacement; // template, when there is no builder
  Builder builder;
  std::string builder_id;

  // Template variables must occur in the pattern.
  static ReplacementRule make(Pattern pattern, Term replacement);
  static ReplacementRule host(Pattern pattern, std::string id, Builder fn);
  // `PATTERN -> TEMPLATE [; where CONSTRAINT]`
  static ReplacementRule parse(std::string_view line, const SignatureTable &sig);

  Term instantiate(const Substitution &sigma, const SignatureTable &sig) const;
  std::string to_string() const;
};

// One rule per line; blank lines and lines starting with # are skipped.
std::vector<ReplacementRule> parse_rules(std::string_view text, const SignatureTable &sig);

// Argument indices from the root, in canonical argument order.
using Position = std::vector<std::size_t>;
// "/" for the root, "/0/2" below it
std::string to_string(const Position &p);

const Term &subterm_at(const Term &t, const Position &p);
// Replaces and re-canonicalizes every compound on the path.
Term replace_at(const Term &t, const Position &p, Term replacement, const SignatureTable &sig);

struct RuleMatch {
  std::size_t rule = 0;
  Substitution sigma;
};

// Picks the rule applied at one position: the lowest-numbered rule with a
// match, and its first match in the one-to-one search order. Engines differ
// only in how they find the rule, so traces agree across engines.
class RuleMatcher {
public:
  virtual ~RuleMatcher() = default;
  virtual std::optional<RuleMatch> first(const Term &t, MatchStats *stats) const = 0;
};

class OneToOneRules : public RuleMatcher {
public:
  OneToOneRules(const std::vector<ReplacementRule> &rules, const SignatureTable &sig);
  std::optional<RuleMatch> first(const Term &t, MatchStats *stats) const override;
  std::optional<Substitution> first_of(std::size_t rule, const Term &t, MatchStats *stats) const;

private:
  std::vector<Pattern> patterns_;
  SignatureTable sig_;
};

// Any many-to-one matcher reporting (pattern id, sigma) for the patterns
// given to it in rule order. It stops as soon as the sink returns false.
using MatchSink = std::function<bool(const NetMatch &)>;
using ManyMatcher = std::function<void(const Term &, MatchStats *, NetMatchOptions, const MatchSink &)>;

class ManyToOneRules : public RuleMatcher {
public:
  // rule_of[id] = lowest rule with pattern id `id`
  ManyToOneRules(const std::vector<ReplacementRule> &rules, const SignatureTable &sig, ManyMatcher many,
                 std::vector<std::size_t> rule_of);
  std::optional<RuleMatch> first(const Term &t, MatchStats *stats) const override;

private:
  OneToOneRules one_;
  ManyMatcher many_;
  std::vector<std::size_t> rule_of_;
};

// A net over the rule patterns, shared with the matcher.
struct NetRules {
  std::shared_ptr<DiscriminationNet> net;
  std::vector<std::size_t> rule_of;
};
NetRules build_rule_net(const std::vector<ReplacementRule> &rules, const SignatureTable &sig);
std::unique_ptr<RuleMatcher> make_net_rules(const std::vector<ReplacementRule> &rules, const SignatureTable &sig);

struct Rewrite {
  Term result;
  Position position;
  std::size_t rule = 0;
  Substitution sigma;
};

// Leftmost-outermost: the first position in preorder where some rule matches.
std::optional<Rewrite> apply_once(const Term &t, const std::vector<ReplacementRule> &rules,
                                  const SignatureTable &sig);
std::optional<Rewrite> apply_once(const Term &t, const std::vector<ReplacementRule> &rules,
                                  const SignatureTable &sig, const RuleMatcher &matcher,
                                  MatchStats *stats = nullptr);

struct TraceStep {
  Position position;
  std::size_t rule = 0;
  Substitution sigma;
};

struct RewriteReport {
  Term result = Term::integer(0);
  std::size_t steps = 0;
  bool normal_form = true; // false: stopped by the step limit with a redex left
  std::vector<TraceStep> trace;
};

RewriteReport replace_all(const Term &t, const std::vector<ReplacementRule> &rules, const SignatureTable &sig,
                          std::size_t max_steps, bool trace = false);
RewriteReport replace_all(const Term &t, const std::vector<ReplacementRule> &rules, const SignatureTable &sig,
                          std::size_t max_steps, const RuleMatcher &matcher, bool trace = false,
                          MatchStats *stats = nullptr);

// Matches at every position, preorder.
Generator<std::pair<Position, Substitution>> match_all_positions(Term t, Pattern p, const SignatureTable &sig);

} // namespace termweave
