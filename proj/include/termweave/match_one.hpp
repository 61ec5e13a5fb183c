#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "termweave/constraint.hpp"
#include "termweave/diophantine.hpp"
#include "termweave/generator.hpp"
#include "termweave/signature.hpp"
#include "termweave/substitution.hpp"
#include "termweave/term.hpp"

namespace termweave {

// Work counters. `comparisons` counts atom/head/wildcard tests, `nodes`
// counts search nodes entered.
struct MatchStats {
  std::uint64_t comparisons = 0;
  std::uint64_t nodes = 0;
};

struct MatchContext {
  const SignatureTable *sig = nullptr;
  MatchStats *stats = nullptr;
  diophantine::SolutionCache *cache = nullptr; // null: the process-wide cache

  void compare(std::uint64_t n = 1) const {
    if (stats)
      stats->comparisons += n;
  }
  void node() const {
    if (stats)
      ++stats->nodes;
  }
};

// All matches of pattern against a ground canonical subject, lazily, without
// duplicates. Order is the search order; see match_sorted for a stable one.
Generator<Substitution> match(Term subject, Pattern pattern, const SignatureTable &sig,
                              MatchStats *stats = nullptr);

std::vector<Substitution> match_sorted(const Term &subject, const Pattern &pattern, const SignatureTable &sig);

// Argument-list matching for non-commutative variadic heads and list roots.
// Regular variables act as plus variables under associative heads.
Generator<Substitution> match_sequence(std::vector<Term> subjects, std::vector<Term> patterns, Substitution partial,
                                       OperationSignature head, MatchContext ctx);

struct CommutativeState {
  std::vector<Term> subject_args; // canonical order
  std::vector<Term> pattern_args;
  Substitution partial;
};

Generator<Substitution> match_commutative(CommutativeState state, OperationSignature head, MatchContext ctx);

struct SequenceVar {
  std::string name; // empty: anonymous
  WildcardKind kind = WildcardKind::star; // plus or star
  std::size_t multiplicity = 1;
  bool wrap = false; // regular variable under an associative head
};

// Splits a multiset (given as sorted terms) over sequence variables through
// one Diophantine equation per distinct term.
Generator<Substitution> distribute_sequence_vars(std::vector<Term> remainder, std::vector<SequenceVar> vars,
                                                 Substitution partial, OperationSignature head, MatchContext ctx);

} // namespace termweave
