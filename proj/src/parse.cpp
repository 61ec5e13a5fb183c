#include "termweave/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

namespace termweave {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)); }

class Parser {
public:
  Parser(std::string_view text, const SignatureTable &sig, SignatureTable *declare)
      : s_(text), sig_(sig), declare_(declare) {}

  Term run() {
    Term t = term();
    skip();
    if (i_ != s_.size())
      fail("unexpected trailing input");
    if (t.is_sequence_wildcard())
      throw ParseError("misplaced sequence wildcard", 0);
    return t;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  std::string ident() {
    const std::size_t start = i_;
    while (i_ < s_.size() && ident_char(s_[i_]))
      ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  Term term() {
    skip();
    if (i_ >= s_.size())
      fail("unexpected end of input");
    const char c = s_[i_];
    const std::size_t at = i_;
    if (c == '[') {
      ++i_;
      return compound("List", arguments(']'), at);
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c)))
      return integer();
    if (c == '_')
      return wildcard(std::string());
    if (!ident_start(c))
      fail(std::string("unexpected character '") + c + "'");
    std::string name = ident();
    if (i_ < s_.size() && s_[i_] == '_')
      return wildcard(std::move(name));
    if (eat('('))
      return compound(std::move(name), arguments(')'), at);
    return Term::symbol(std::move(name));
  }

  Term integer() {
    const std::size_t start = i_;
    if (s_[i_] == '-')
      ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
      ++i_;
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + i_, v);
    if (ec != std::errc{} || p != s_.data() + i_) {
      i_ = start;
      fail("bad integer literal");
    }
    return Term::integer(v);
  }

  std::vector<Term> arguments(char close) {
    std::vector<Term> args;
    if (eat(close))
      return args;
    do
      args.push_back(term());
    while (eat(','));
    if (!eat(close))
      fail(std::string("expected '") + close + "'");
    return args;
  }

  Term wildcard(std::string name) {
    const std::size_t at = i_;
    std::size_t n = 0;
    while (i_ < s_.size() && s_[i_] == '_')
      ++i_, ++n;
    if (n > 3)
      fail("too many underscores in wildcard");
    WildcardSpec w;
    w.name = std::move(name);
    w.kind = n == 1 ? WildcardKind::regular : n == 2 ? WildcardKind::plus : WildcardKind::star;
    if (i_ < s_.size() && ident_start(s_[i_])) {
      const std::size_t cls_at = i_;
      w.symbol_class = ident();
      if (w.kind != WildcardKind::regular)
        throw ParseError("symbol class on a sequence wildcard", cls_at);
      if (!sig_.has_class(w.symbol_class))
        throw ParseError("unknown symbol class '" + w.symbol_class + "'", cls_at);
    }
    if (i_ < s_.size() && s_[i_] == ':') {
      ++i_;
      if (w.kind != WildcardKind::regular)
        throw ParseError("default on a sequence wildcard", at);
      Term d = term();
      if (!d.ground())
        throw ParseError("default value must be ground", at);
      w.default_value = std::make_shared<const Term>(std::move(d));
    }
    if (!w.name.empty()) {
      auto [it, fresh] = kinds_.emplace(w.name, std::make_pair(w.kind, w.symbol_class));
      if (!fresh && it->second != std::make_pair(w.kind, w.symbol_class))
        throw ParseError("variable '" + w.name + "' used with different kinds", at);
    }
    return Term::wildcard(std::move(w));
  }

  const OperationSignature &head(const std::string &name, std::size_t argc, std::size_t at) {
    if (auto *op = current().find(name))
      return *op;
    if (!declare_)
      throw ParseError("undeclared head '" + name + "'", at);
    return declare_->declare(OperationSignature{name, Arity::fixed(argc)});
  }

  const SignatureTable &current() const { return declare_ ? *declare_ : sig_; }

  Term compound(std::string name, std::vector<Term> args, std::size_t at) {
    const OperationSignature &op = head(name, args.size(), at);
    bool has_seq = false, has_optional = false;
    for (const Term &a : args) {
      has_seq = has_seq || a.is_sequence_wildcard();
      has_optional = has_optional || (a.is_wildcard() && a.wildcard().optional());
    }
    if (has_seq && !op.arity.variadic)
      throw ParseError("misplaced sequence wildcard under fixed-arity '" + name + "'", at);
    if (!op.arity.variadic && args.size() != op.arity.count)
      throw ParseError("'" + name + "' expects " + std::to_string(op.arity.count) + " arguments, got " +
                           std::to_string(args.size()),
                       at);
    if (op.arity.variadic && !has_seq && !has_optional && !op.one_identity && args.size() < op.arity.count)
      throw ParseError("'" + name + "' expects at least " + std::to_string(op.arity.count) + " arguments", at);
    return Term::compound(std::move(name), std::move(args));
  }

  std::string_view s_;
  std::size_t i_ = 0;
  const SignatureTable &sig_;
  SignatureTable *declare_;
  std::map<std::string, std::pair<WildcardKind, std::string>> kinds_;
};

Term canonical_wildcard(const Term &t, const SignatureTable &sig) {
  const auto &w = t.wildcard();
  if (!w.default_value)
    return t;
  Term d = canonicalize(*w.default_value, sig);
  if (d.same_node(*w.default_value))
    return t;
  WildcardSpec copy = w;
  copy.default_value = std::make_shared<const Term>(std::move(d));
  return Term::wildcard(std::move(copy));
}

} // namespace

Term parse_term(std::string_view text, const SignatureTable &sig) {
  return canonicalize(Parser(text, sig, nullptr).run(), sig);
}

Term parse_term_declaring(std::string_view text, SignatureTable &sig) {
  return canonicalize(Parser(text, sig, &sig).run(), sig);
}

Term make_compound(const SignatureTable &sig, const std::string &head, std::vector<Term> args) {
  const OperationSignature *op = sig.find(head);
  if (op && op->associative) {
    bool nested = false;
    for (const Term &a : args)
      nested = nested || (a.is_compound() && a.name() == head);
    if (nested) {
      std::vector<Term> flat;
      for (Term &a : args) {
        if (a.is_compound() && a.name() == head)
          flat.insert(flat.end(), a.args().begin(), a.args().end());
        else
          flat.push_back(std::move(a));
      }
      args = std::move(flat);
    }
  }
  if (op && op->commutative)
    std::stable_sort(args.begin(), args.end(), canonical_arg_less);
  if (op && op->one_identity && args.size() == 1 && !args[0].is_sequence_wildcard())
    return std::move(args[0]);
  return Term::compound(head, std::move(args));
}

Term canonicalize(const Term &t, const SignatureTable &sig) {
  if (t.is_wildcard())
    return canonical_wildcard(t, sig);
  if (!t.is_compound())
    return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term &a : t.args()) {
    args.push_back(canonicalize(a, sig));
    changed = changed || !args.back().same_node(a);
  }
  Term out = make_compound(sig, t.name(), std::move(args));
  if (!changed && out == t)
    return t;
  return out;
}

bool term_equal_aci(const Term &t, const Term &s, const SignatureTable &sig) {
  struct Eq {
    static bool same(const Term &a, const Term &b) {
      if (a.kind() != b.kind())
        return false;
      switch (a.kind()) {
      case TermKind::integer:
        return a.value() == b.value();
      case TermKind::symbol:
        return a.name() == b.name();
      case TermKind::wildcard: {
        // defaults are annotations, not structure
        const auto &x = a.wildcard(), &y = b.wildcard();
        return x.kind == y.kind && x.name == y.name && x.symbol_class == y.symbol_class;
      }
      case TermKind::compound:
        break;
      }
      if (a.name() != b.name() || a.args().size() != b.args().size())
        return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!same(a.args()[i], b.args()[i]))
          return false;
      return true;
    }
  };
  return Eq::same(canonicalize(t, sig), canonicalize(s, sig));
}

std::vector<std::string> variables(const Term &t) {
  std::set<std::string> names;
  struct Walk {
    static void go(const Term &t, std::set<std::string> &out) {
      if (t.is_wildcard()) {
        if (!t.wildcard().anonymous())
          out.insert(t.wildcard().name);
      } else if (t.is_compound()) {
        for (const Term &a : t.args())
          go(a, out);
      }
    }
  };
  Walk::go(t, names);
  return {names.begin(), names.end()};
}

} // namespace termweave
