#include "termweave/substitution.hpp"

#include <algorithm>
#include <functional>

#include "termweave/parse.hpp"

namespace termweave {

std::strong_ordering operator<=>(const Binding &a, const Binding &b) {
  if (auto c = a.sequence_ <=> b.sequence_; c != 0)
    return c;
  return std::lexicographical_compare_three_way(a.items_.begin(), a.items_.end(), b.items_.begin(),
                                                b.items_.end());
}

std::string Binding::to_string() const {
  if (!sequence_)
    return termweave::to_string(items_.front());
  std::string out = "(";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i)
      out += ", ";
    out += termweave::to_string(items_[i]);
  }
  return out + ")";
}

const Binding *Substitution::find(std::string_view name) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                             [](const Entry &e, std::string_view n) { return e.first < n; });
  return it != entries_.end() && it->first == name ? &it->second : nullptr;
}

bool Substitution::bind(const std::string &name, Binding b) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                             [](const Entry &e, const std::string &n) { return e.first < n; });
  if (it != entries_.end() && it->first == name)
    return it->second == b;
  entries_.emplace(it, name, std::move(b));
  return true;
}

void Substitution::erase(std::string_view name) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                             [](const Entry &e, std::string_view n) { return e.first < n; });
  if (it != entries_.end() && it->first == name)
    entries_.erase(it);
}

std::strong_ordering operator<=>(const Substitution &a, const Substitution &b) {
  return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                                b.entries_.end());
}

std::string Substitution::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i)
      out += ", ";
    out += entries_[i].first + " -> " + entries_[i].second.to_string();
  }
  return out + "}";
}

std::size_t Substitution::hash() const noexcept {
  std::size_t h = entries_.size();
  for (const auto &[name, b] : entries_) {
    h = h * 31 + std::hash<std::string>{}(name);
    h = h * 31 + (b.is_sequence() ? 7 : 3);
    for (const Term &t : b.items())
      h = h * 31 + t.hash();
  }
  return h;
}

std::optional<Substitution> merge_substitutions(const Substitution &a, const Substitution &b) {
  const Substitution &big = a.size() >= b.size() ? a : b;
  const Substitution &small = a.size() >= b.size() ? b : a;
  Substitution out = big;
  for (const auto &[name, binding] : small)
    if (!out.bind(name, binding))
      return std::nullopt;
  return out;
}

namespace {

void substitute_into(std::vector<Term> &out, const Substitution &sigma, const Term &t, const SignatureTable &sig);

Term substitute_one(const Substitution &sigma, const Term &t, const SignatureTable &sig) {
  std::vector<Term> items;
  substitute_into(items, sigma, t, sig);
  if (items.size() != 1)
    throw SubstitutionError("sequence of length " + std::to_string(items.size()) + " substituted for " +
                            to_string(t) + " outside an argument list");
  return std::move(items.front());
}

void substitute_into(std::vector<Term> &out, const Substitution &sigma, const Term &t,
                     const SignatureTable &sig) {
  if (t.ground()) {
    out.push_back(t);
    return;
  }
  if (t.is_wildcard()) {
    const auto &w = t.wildcard();
    const Binding *b = w.anonymous() ? nullptr : sigma.find(w.name);
    if (b) {
      out.insert(out.end(), b->items().begin(), b->items().end());
    } else if (w.default_value) {
      out.push_back(*w.default_value);
    } else {
      throw SubstitutionError("unbound wildcard " + to_string(t));
    }
    return;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term &a : t.args())
    substitute_into(args, sigma, a, sig);
  const OperationSignature *op = sig.find(t.name());
  if (op && !op->arity.variadic && !op->arity.admits(args.size()))
    throw SubstitutionError("'" + t.name() + "' receives " + std::to_string(args.size()) +
                            " arguments after substitution");
  out.push_back(make_compound(sig, t.name(), std::move(args)));
}

} // namespace

Term substitute(const Substitution &sigma, const Term &t, const SignatureTable &sig) {
  return substitute_one(sigma, t, sig);
}

} // namespace termweave
