#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "termweave/constraint.hpp"
#include "termweave/generator.hpp"
#include "termweave/match_one.hpp"
#include "termweave/signature.hpp"
#include "termweave/substitution.hpp"
#include "termweave/term.hpp"

namespace termweave {

// ---- token streams ---------------------------------------------------------

enum class TokenKind : std::uint8_t { open, symbol, integer, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string name; // head or symbol
  std::int64_t value = 0;
  friend bool operator==(const Token &, const Token &) = default;
};

// Preorder, with an end token closing every compound.
std::vector<Token> tokenize(const Term &ground);
Term untokenize(const std::vector<Token> &tokens); // throws std::invalid_argument when unbalanced
std::string to_string(const Token &t);

// ---- the net ---------------------------------------------------------------

struct NetMatch {
  std::size_t pattern = 0;
  Substitution sigma;
  friend bool operator==(const NetMatch &, const NetMatch &) = default;
  friend auto operator<=>(const NetMatch &, const NetMatch &) = default;
};

// Transition label. Declaration order of Kind is the exploration order.
struct Label {
  enum class Kind : std::uint8_t {
    atom,        // symbol or integer
    ground,      // whole ground subterm with a commutative head
    open,        // compound head, descends into its arguments
    close,       // end of the current argument list
    commutative, // whole subterm resolved by a commutative group
    symbol_class,
    regular,
    plus, // also regular variables under associative heads (wrap = true)
    star,
  };
  enum class Context : std::uint8_t { single, sequence };

  Kind kind = Kind::atom;
  Context context = Context::single; // variables: argument list of a variadic non-commutative head
  Term term = Term::integer(0);      // atom / ground / the wildcard itself
  std::string head;                  // open: its head; variables: the enclosing head
  std::size_t plan = 0;              // commutative: index into plans()
  bool wrap = false;

  friend bool operator==(const Label &a, const Label &b);
};
std::string to_string(const Label &l);

class DiscriminationNet;

struct NetMatchOptions {
  // stop searching for a pattern once it has matched, pruning subtrees
  // whose patterns have all matched
  bool first_per_pattern = false;
};

struct NetMatchHash {
  std::size_t operator()(const NetMatch &m) const noexcept { return m.sigma.hash() * 31 + m.pattern; }
};

// Per-entry substitutions of one inner root on one subject argument.
using InnerLabels = std::unordered_map<std::size_t, std::vector<Substitution>>;

// Everything a matcher over a net needs besides the walk itself. The
// interpreter and generated code share it.
struct NetEnv {
  const DiscriminationNet *net = nullptr;
  MatchContext ctx;
  // all (entry, sigma) reachable from an inner root on one subject argument
  std::function<std::vector<std::pair<std::size_t, Substitution>>(std::size_t root, const Term &, NetEnv &)> run_inner;
  std::unordered_map<std::size_t, std::vector<std::pair<Term, std::shared_ptr<const InnerLabels>>>>
      inner_memo; // root -> (subject argument, labels)
  std::unordered_set<NetMatch, NetMatchHash> seen;
  std::vector<std::pair<std::size_t, Term>> inner_active; // inner walks in progress
  NetMatchOptions options;
  std::vector<char> matched; // pattern id -> has matched, with first_per_pattern
};

// A position in the subject while walking: a stack of argument lists.
struct WalkFrame {
  Term owner;
  bool boxed = false; // the list is (owner) itself, for one-identity heads
  std::size_t pos = 0;
  std::span<const Term> items() const { return boxed ? std::span<const Term>(&owner, 1) : owner.args(); }
};

struct WalkState {
  std::vector<WalkFrame> frames;
  Substitution sigma;
};

WalkState initial_walk_state(const Term &subject);
// `ws` with the current argument list moved on by `by` items
WalkState advanced(const WalkState &ws, std::size_t by);

class DiscriminationNet {
public:
  struct Transition {
    Label label;
    std::size_t target = 0;
  };
  struct State {
    std::vector<Transition> out; // in exploration order
    std::vector<std::size_t> finals; // entry ids
  };
  // A registered term: a user pattern (outer) or a compound argument of a
  // commutative pattern, shared by its group's inner net.
  struct Entry {
    Pattern pattern;
    bool outer = true;
    std::size_t root = 0;
    std::size_t pattern_id = 0; // outer only
  };
  // One distinct commutative pattern subterm.
  struct CommutativePlan {
    Term term = Term::integer(0);
    OperationSignature op;
    std::size_t root = 0; // inner net of the head
    std::vector<Term> ground;
    std::vector<Term> nodes; // compounds and single variables, canonical order
    std::vector<std::size_t> node_entry; // inner entry for compounds, npos for variables
    std::vector<Term> wrapped;   // regular variables under an associative head
    std::vector<Term> sequences; // plus / star
  };

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit DiscriminationNet(SignatureTable sig);

  // Returns the id of an identical pattern (same term and constraints) if there is one.
  std::size_t add(const Pattern &p);

  std::size_t pattern_count() const { return patterns_.size(); }
  const Pattern &pattern(std::size_t id) const { return entries_[patterns_[id]].pattern; }
  const SignatureTable &signature() const { return *sig_; }

  // Every (pattern, sigma) with sigma a valid match, each once, lazily.
  Generator<NetMatch> match(Term subject, MatchStats *stats = nullptr, NetMatchOptions options = {}) const;
  // Same set, sorted.
  std::vector<NetMatch> match_sorted(const Term &subject, MatchStats *stats = nullptr) const;

  // structure
  const std::vector<State> &states() const { return states_; }
  const std::vector<Entry> &entries() const { return entries_; }
  const std::vector<CommutativePlan> &plans() const { return plans_; }
  std::size_t root() const { return 0; }
  std::size_t transition_count() const;

  // ---- shared by the interpreter and generated matchers ----

  // All successors of `ws` through one label.
  Generator<WalkState> step(const Label &label, WalkState ws, NetEnv &env) const;
  // Outer matches accepted at a final state, after constraints and dedup.
  std::vector<NetMatch> accept(const State &state, const WalkState &ws, NetEnv &env) const;
  // The matches of one commutative pattern subterm against the arguments
  // of a subject with the same head.
  Generator<Substitution> resolve_commutative(std::size_t plan, std::vector<Term> args, Substitution partial,
                                              NetEnv &env) const;
  // Interpreter over the states, from `from`. `outer` walks honour first_per_pattern.
  Generator<std::pair<std::size_t, WalkState>> walk(std::size_t from, WalkState ws, NetEnv &env,
                                                    bool outer = false) const;
  NetEnv make_env(MatchStats *stats, NetMatchOptions options = {}) const;
  // Whether some pattern below `state` may still be reported.
  bool live(std::size_t state, const NetEnv &env) const;

private:
  std::size_t insert_entry(Entry e, std::size_t root);
  std::vector<Label> labels_for(const Term &t);
  void labels_into(const Term &t, const OperationSignature *parent, std::vector<Label> &out);
  std::size_t plan_for(const Term &t);
  std::size_t group_root(const std::string &head);
  std::shared_ptr<const InnerLabels> inner_labels(std::size_t root, const Term &u, NetEnv &env) const;

  std::shared_ptr<const SignatureTable> sig_;
  std::vector<State> states_;
  std::vector<Entry> entries_;
  std::vector<std::size_t> patterns_; // pattern id -> entry
  std::vector<CommutativePlan> plans_;
  std::unordered_map<std::string, std::size_t> group_roots_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_hash_; // term hash -> entries
  std::vector<std::vector<std::uint32_t>> reach_; // state -> outer pattern ids at or below it
};

} // namespace termweave
