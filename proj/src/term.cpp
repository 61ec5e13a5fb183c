#include "termweave/term.hpp"

#include <functional>

namespace termweave {

namespace detail {
struct TermNode {
  TermKind kind = TermKind::symbol;
  bool ground = true;
  std::size_t size = 1;
  std::size_t hash = 0;
  std::int64_t value = 0;
  std::string name;
  std::vector<Term> args;
  WildcardSpec wildcard;
};
} // namespace detail

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  // boost::hash_combine constant, widened
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const std::string kEmpty;

} // namespace

Term Term::integer(std::int64_t value) {
  auto n = std::make_shared<detail::TermNode>();
  n->kind = TermKind::integer;
  n->value = value;
  n->hash = mix(1, std::hash<std::int64_t>{}(value));
  return Term{std::move(n)};
}

Term Term::symbol(std::string name) {
  auto n = std::make_shared<detail::TermNode>();
  n->kind = TermKind::symbol;
  n->hash = mix(2, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Term{std::move(n)};
}

Term Term::compound(std::string head, std::vector<Term> args) {
  auto n = std::make_shared<detail::TermNode>();
  n->kind = TermKind::compound;
  std::size_t h = mix(3, std::hash<std::string>{}(head));
  for (const Term &a : args) {
    n->ground = n->ground && a.ground();
    n->size += a.size();
    h = mix(h, a.hash());
  }
  n->hash = mix(h, args.size());
  n->name = std::move(head);
  n->args = std::move(args);
  return Term{std::move(n)};
}

Term Term::wildcard(WildcardSpec spec) {
  auto n = std::make_shared<detail::TermNode>();
  n->kind = TermKind::wildcard;
  n->ground = false;
  std::size_t h = mix(4, static_cast<std::size_t>(spec.kind));
  h = mix(h, std::hash<std::string>{}(spec.name));
  h = mix(h, std::hash<std::string>{}(spec.symbol_class));
  if (spec.default_value)
    h = mix(h, spec.default_value->hash());
  n->hash = h;
  n->wildcard = std::move(spec);
  return Term{std::move(n)};
}

TermKind Term::kind() const noexcept { return node_->kind; }

bool Term::is_sequence_wildcard() const noexcept {
  return node_->kind == TermKind::wildcard && node_->wildcard.sequence();
}

std::int64_t Term::value() const {
  if (node_->kind != TermKind::integer)
    throw std::logic_error("not an integer term");
  return node_->value;
}

const std::string &Term::name() const {
  if (node_->kind == TermKind::wildcard)
    return node_->wildcard.name;
  if (node_->kind == TermKind::integer)
    return kEmpty;
  return node_->name;
}

std::span<const Term> Term::args() const { return node_->args; }

const WildcardSpec &Term::wildcard() const {
  if (node_->kind != TermKind::wildcard)
    throw std::logic_error("not a wildcard");
  return node_->wildcard;
}

bool Term::ground() const noexcept { return node_->ground; }
std::size_t Term::size() const noexcept { return node_->size; }
std::size_t Term::hash() const noexcept { return node_->hash; }

namespace {

std::strong_ordering compare(const detail::TermNode &a, const detail::TermNode &b);

std::strong_ordering compare_terms(const Term &a, const Term &b) {
  if (a.same_node(b))
    return std::strong_ordering::equal;
  return a <=> b;
}

std::strong_ordering compare(const detail::TermNode &a, const detail::TermNode &b) {
  if (a.kind != b.kind)
    return a.kind <=> b.kind;
  switch (a.kind) {
  case TermKind::integer:
    return a.value <=> b.value;
  case TermKind::symbol:
    return a.name.compare(b.name) <=> 0;
  case TermKind::compound: {
    if (auto c = a.name.compare(b.name) <=> 0; c != 0)
      return c;
    if (auto c = a.args.size() <=> b.args.size(); c != 0)
      return c;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (auto c = compare_terms(a.args[i], b.args[i]); c != 0)
        return c;
    return std::strong_ordering::equal;
  }
  case TermKind::wildcard: {
    const auto &x = a.wildcard, &y = b.wildcard;
    if (auto c = x.kind <=> y.kind; c != 0)
      return c;
    if (auto c = x.name.compare(y.name) <=> 0; c != 0)
      return c;
    if (auto c = x.symbol_class.compare(y.symbol_class) <=> 0; c != 0)
      return c;
    // defaults only break ties, absent first
    if (!x.default_value || !y.default_value)
      return (x.default_value != nullptr) <=> (y.default_value != nullptr);
    return compare_terms(*x.default_value, *y.default_value);
  }
  }
  return std::strong_ordering::equal;
}

} // namespace

bool operator==(const Term &a, const Term &b) {
  if (a.node_ == b.node_)
    return true;
  if (a.node_->hash != b.node_->hash)
    return false;
  return compare(*a.node_, *b.node_) == 0;
}

std::strong_ordering operator<=>(const Term &a, const Term &b) {
  if (a.node_ == b.node_)
    return std::strong_ordering::equal;
  return compare(*a.node_, *b.node_);
}

bool canonical_arg_less(const Term &a, const Term &b) {
  if (a.ground() != b.ground())
    return a.ground();
  return a < b;
}

namespace {

void print(std::string &out, const Term &t) {
  switch (t.kind()) {
  case TermKind::integer:
    out += std::to_string(t.value());
    return;
  case TermKind::symbol:
    out += t.name();
    return;
  case TermKind::wildcard: {
    const auto &w = t.wildcard();
    out += w.name;
    out += w.kind == WildcardKind::regular ? "_" : w.kind == WildcardKind::plus ? "__" : "___";
    out += w.symbol_class;
    if (w.default_value) {
      out += ':';
      print(out, *w.default_value);
    }
    return;
  }
  case TermKind::compound:
    break;
  }
  const bool list = t.name() == "List";
  if (!list)
    out += t.name();
  out += list ? '[' : '(';
  bool first = true;
  for (const Term &a : t.args()) {
    if (!first)
      out += ", ";
    first = false;
    print(out, a);
  }
  out += list ? ']' : ')';
}

} // namespace

std::string to_string(const Term &t) {
  std::string out;
  print(out, t);
  return out;
}

} // namespace termweave
