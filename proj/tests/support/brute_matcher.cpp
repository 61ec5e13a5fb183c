#include "brute_matcher.hpp"

#include <algorithm>
#include <optional>

#include "termweave/parse.hpp"

namespace twtest {

using namespace termweave;

namespace {

using Subs = std::vector<Substitution>;

Subs term_matches(const Term &s, const Term &p, const Substitution &sigma, const SignatureTable &sig);

std::optional<Substitution> with(const Substitution &sigma, const WildcardSpec &w, Binding b) {
  Substitution out = sigma;
  if (!w.anonymous() && !out.bind(w.name, std::move(b)))
    return std::nullopt;
  return out;
}

// all ways p[i..] can consume s[j..]
void list_matches(const std::vector<Term> &s, std::size_t j, const std::vector<Term> &p, std::size_t i,
                  const Substitution &sigma, const OperationSignature *op, bool sorted_sequences,
                  const SignatureTable &sig, Subs &out) {
  if (i == p.size()) {
    if (j == s.size())
      out.push_back(sigma);
    return;
  }
  const Term &pi = p[i];
  const bool variadic = op && op->arity.variadic;
  if (pi.is_wildcard()) {
    const auto &w = pi.wildcard();
    const bool many = w.sequence() || (variadic && op->associative && w.kind == WildcardKind::regular &&
                                       w.symbol_class.empty());
    if (many) {
      const std::size_t lo = w.kind == WildcardKind::star ? 0 : 1;
      for (std::size_t len = lo; j + len <= s.size(); ++len) {
        std::vector<Term> slice(s.begin() + j, s.begin() + j + len);
        if (sorted_sequences)
          std::sort(slice.begin(), slice.end());
        Binding b = Binding::sequence(slice);
        if (w.kind == WildcardKind::regular)
          b = len == 1 ? Binding::single(slice[0]) : Binding::single(make_compound(sig, op->name, slice));
        if (auto next = with(sigma, w, std::move(b)))
          list_matches(s, j + len, p, i + 1, *next, op, sorted_sequences, sig, out);
      }
    }
    if (variadic && w.optional())
      if (auto next = with(sigma, w, Binding::single(*w.default_value)))
        list_matches(s, j, p, i + 1, *next, op, sorted_sequences, sig, out);
    if (many)
      return;
  }
  if (j < s.size())
    for (const auto &r : term_matches(s[j], pi, sigma, sig))
      list_matches(s, j + 1, p, i + 1, r, op, sorted_sequences, sig, out);
}

Subs term_matches(const Term &s, const Term &p, const Substitution &sigma, const SignatureTable &sig) {
  Subs out;
  if (p.is_wildcard()) {
    const auto &w = p.wildcard();
    if (!w.symbol_class.empty() && !(s.is_symbol() && sig.in_class(w.symbol_class, s.name())))
      return out;
    if (auto next = with(sigma, w, Binding::single(s)))
      out.push_back(*next);
    return out;
  }
  if (!p.is_compound()) {
    if (s == p)
      out.push_back(sigma);
    return out;
  }
  const OperationSignature *op = sig.find(p.name());
  std::vector<Term> args;
  if (s.is_compound() && s.name() == p.name())
    args.assign(s.args().begin(), s.args().end());
  else if (op && op->one_identity)
    args.push_back(s);
  else
    return out;
  const std::vector<Term> pargs(p.args().begin(), p.args().end());
  if (op && op->commutative) {
    std::sort(args.begin(), args.end());
    do
      list_matches(args, 0, pargs, 0, sigma, op, true, sig, out);
    while (std::next_permutation(args.begin(), args.end()));
  } else {
    list_matches(args, 0, pargs, 0, sigma, op, false, sig, out);
  }
  return out;
}

// Drops optional-variable occurrences (under variadic heads) whose binding
// equals the default, according to `mask` bits in preorder.
Term drop_optionals(const Term &t, const Substitution &sigma, const SignatureTable &sig, std::size_t mask,
                    std::size_t &bit) {
  if (!t.is_compound())
    return t;
  const OperationSignature *op = sig.find(t.name());
  std::vector<Term> args;
  for (const Term &a : t.args()) {
    if (op && op->arity.variadic && a.is_wildcard() && a.wildcard().optional()) {
      const auto &w = a.wildcard();
      const Binding *b = w.anonymous() ? nullptr : sigma.find(w.name);
      const bool droppable = w.anonymous() || (b && !b->is_sequence() && b->term() == *w.default_value);
      if (droppable && (mask >> bit++ & 1))
        continue;
    }
    args.push_back(drop_optionals(a, sigma, sig, mask, bit));
  }
  return Term::compound(t.name(), std::move(args));
}

// Gives every anonymous wildcard a fresh name so that it shows up in bindings.
Term name_anonymous(const Term &t, int &counter) {
  if (t.is_wildcard() && t.wildcard().anonymous()) {
    WildcardSpec w = t.wildcard();
    w.name = "anon#" + std::to_string(counter++);
    return Term::wildcard(std::move(w));
  }
  if (!t.is_compound() || t.ground())
    return t;
  std::vector<Term> args;
  for (const Term &a : t.args())
    args.push_back(name_anonymous(a, counter));
  return Term::compound(t.name(), std::move(args));
}

bool sound_named(const Term &subject, const Term &pattern, const Substitution &sigma, const SignatureTable &sig) {
  for (std::size_t mask = 0; mask < 256; ++mask) {
    std::size_t bit = 0;
    Term reduced = drop_optionals(pattern, sigma, sig, mask, bit);
    if (mask >= (std::size_t{1} << bit))
      break;
    try {
      if (term_equal_aci(substitute(sigma, reduced, sig), subject, sig))
        return true;
    } catch (const SubstitutionError &) {
    }
  }
  return false;
}

} // namespace

std::set<Substitution> brute_match(const Term &subject, const Pattern &pattern, const SignatureTable &sig) {
  std::set<Substitution> out;
  for (auto &s : term_matches(subject, pattern.term, {}, sig))
    if (constraints_hold(pattern.constraints, s))
      out.insert(std::move(s));
  return out;
}

bool sound_match(const Term &subject, const Term &pattern, const Substitution &sigma, const SignatureTable &sig) {
  int counter = 0;
  Term named = name_anonymous(pattern, counter);
  if (counter == 0)
    return sound_named(subject, pattern, sigma, sig);
  // some binding of the anonymous positions must extend sigma
  for (const auto &tau : term_matches(subject, named, sigma, sig))
    if (sound_named(subject, named, tau, sig))
      return true;
  return false;
}

} // namespace twtest
