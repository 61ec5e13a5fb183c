#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "termweave/constraint.hpp"
#include "termweave/signature.hpp"
#include "termweave/term.hpp"

namespace twtest {

// A signature, a pattern set (no duplicates, in net insertion order) and the
// subjects matched against it.
struct MatchCase {
  std::string name; // identifier, also used for the generated matcher
  termweave::SignatureTable sig;
  std::vector<termweave::Pattern> patterns;
  std::vector<termweave::Term> subjects;
};

// Hand-written examples: introduction, sequences, commutative, the list net,
// bubble sort and sum-to-five patterns.
std::vector<MatchCase> example_corpus();

// One random pattern and one random subject per case; up to 5 args per level,
// depth <= 3, random A/C/1 flags, at most 2 sequence variables.
std::vector<MatchCase> oracle_corpus(std::uint64_t seed = 2024, std::size_t count = 2000);

// Up to 30 random patterns and 3 subjects per case.
std::vector<MatchCase> net_corpus(std::uint64_t seed = 3033, std::size_t count = 500);

} // namespace twtest

namespace twtest {

// example, oracle and net corpora in that order
std::vector<MatchCase> full_corpus();

// Generated matcher source for every case of full_corpus(), concatenated into
// `bundles` files named corpus_NN.cpp. Deterministic.
std::vector<std::pair<std::string, std::string>> corpus_sources(std::size_t bundles);

} // namespace twtest
