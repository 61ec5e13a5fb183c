#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "termweave/random.hpp"
#include "termweave/rewrite.hpp"
#include "termweave/signature.hpp"
#include "termweave/term.hpp"

// Boolean formulas and their algebraic normal form: T and F are the
// constants, And/Xor are associative-commutative, the other connectives get
// rewritten away.
namespace termweave::prop {

extern const char *const signature_text;
extern const char *const rules_text;

SignatureTable signature();
std::vector<ReplacementRule> rules(const SignatureTable &sig);

// Atoms are the symbols other than T and F.
std::vector<std::string> atoms(const Term &t);
// nullopt when t uses something that is not a connective, constant or atom
std::optional<bool> evaluate(const Term &t, const std::map<std::string, bool> &assignment);
// Bit i is the value under the assignment where atom j is bit j of i.
std::optional<std::uint64_t> truth_table(const Term &t, const std::vector<std::string> &atoms);

// Only And, Xor, T, F and atoms.
bool is_anf(const Term &t);

// Random formula over `atoms` with every connective, canonical.
Term random_formula(Rng &rng, const SignatureTable &sig, const std::vector<std::string> &atoms, unsigned depth);

// Starts at T or F and applies inverse simplifications `depth` times at
// random positions. The result has the same value as the seed constant.
struct Generated {
  Term formula;
  bool value = false;
};
Generated backward(Rng &rng, const SignatureTable &sig, const std::vector<std::string> &atoms, unsigned depth = 12);

} // namespace termweave::prop
