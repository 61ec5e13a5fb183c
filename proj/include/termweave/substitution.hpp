#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termweave/signature.hpp"
#include "termweave/term.hpp"

namespace termweave {

// A variable's value: one term, or a (possibly empty) sequence of terms.
class Binding {
public:
  static Binding single(Term t) { return Binding(false, {std::move(t)}); }
  static Binding sequence(std::vector<Term> items) { return Binding(true, std::move(items)); }

  bool is_sequence() const noexcept { return sequence_; }
  const Term &term() const { return items_.front(); }
  std::span<const Term> items() const noexcept { return items_; }

  friend bool operator==(const Binding &, const Binding &) = default;
  friend std::strong_ordering operator<=>(const Binding &a, const Binding &b);

  // `a` or `(b, c)`
  std::string to_string() const;

private:
  Binding(bool seq, std::vector<Term> items) : sequence_(seq), items_(std::move(items)) {}
  bool sequence_ = false;
  std::vector<Term> items_;
};

class Substitution {
public:
  using Entry = std::pair<std::string, Binding>;

  const Binding *find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  // False if `name` is already bound to something else.
  bool bind(const std::string &name, Binding b);
  void erase(std::string_view name);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const Substitution &, const Substitution &) = default;
  friend std::strong_ordering operator<=>(const Substitution &a, const Substitution &b);

  // `{x -> a, y -> (b, c)}`
  std::string to_string() const;
  std::size_t hash() const noexcept;

private:
  std::vector<Entry> entries_; // sorted by name
};

struct SubstitutionHash {
  std::size_t operator()(const Substitution &s) const noexcept { return s.hash(); }
};

std::optional<Substitution> merge_substitutions(const Substitution &a, const Substitution &b);

// Replaces wildcards, splices sequences, canonicalizes. Unbound optional
// variables take their default; anything else unbound throws SubstitutionError.
Term substitute(const Substitution &sigma, const Term &t, const SignatureTable &sig);

} // namespace termweave
