#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "termweave/signature.hpp"
#include "termweave/term.hpp"

namespace termweave {

// Parses and canonicalizes. Throws ParseError / SignatureError.
Term parse_term(std::string_view text, const SignatureTable &sig);

// Same, but heads missing from `sig` get declared as fixed-arity on first use.
Term parse_term_declaring(std::string_view text, SignatureTable &sig);

Term canonicalize(const Term &t, const SignatureTable &sig);

// Builds head(args) from already-canonical args: flattens, sorts, collapses.
Term make_compound(const SignatureTable &sig, const std::string &head, std::vector<Term> args);

bool term_equal_aci(const Term &t, const Term &s, const SignatureTable &sig);

// Named variables of t, sorted and unique. Anonymous wildcards are skipped.
std::vector<std::string> variables(const Term &t);

} // namespace termweave
