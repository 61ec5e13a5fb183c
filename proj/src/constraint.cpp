#include "termweave/constraint.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

#include "termweave/parse.hpp"

namespace termweave {

struct Constraint::Expr {
  struct Operand {
    enum Kind { literal, variable, sum } kind = literal;
    std::int64_t value = 0;
    std::string name;
  };
  enum class Op { lt, le, gt, ge, eq, ne };
  struct Comparison {
    Operand lhs;
    Op op = Op::eq;
    Operand rhs;
  };
  std::vector<Comparison> all; // conjunction
};

namespace {

using Expr = Constraint::Expr;

class ExprParser {
public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  Expr run(std::vector<std::string> &vars) {
    Expr e;
    do
      e.all.push_back(comparison(vars));
    while (eat("&&"));
    skip();
    if (i_ != s_.size())
      throw ParseError("unexpected input in constraint", i_);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return e;
  }

private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }

  Expr::Comparison comparison(std::vector<std::string> &vars) {
    Expr::Comparison c;
    c.lhs = operand(vars);
    skip();
    // two-character operators first
    if (eat("<="))
      c.op = Expr::Op::le;
    else if (eat(">="))
      c.op = Expr::Op::ge;
    else if (eat("=="))
      c.op = Expr::Op::eq;
    else if (eat("!="))
      c.op = Expr::Op::ne;
    else if (eat("<"))
      c.op = Expr::Op::lt;
    else if (eat(">"))
      c.op = Expr::Op::gt;
    else
      throw ParseError("expected comparison operator", i_);
    c.rhs = operand(vars);
    return c;
  }

  Expr::Operand operand(std::vector<std::string> &vars) {
    skip();
    Expr::Operand o;
    if (i_ < s_.size() && (s_[i_] == '-' || std::isdigit(static_cast<unsigned char>(s_[i_])))) {
      const std::size_t start = i_;
      if (s_[i_] == '-')
        ++i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
        ++i_;
      auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + i_, o.value);
      if (ec != std::errc{} || p != s_.data() + i_)
        throw ParseError("bad integer in constraint", start);
      return o;
    }
    std::string id = ident();
    if (id == "sum" && eat("(")) {
      skip();
      o.kind = Expr::Operand::sum;
      o.name = ident();
      if (!eat(")"))
        throw ParseError("expected ')'", i_);
    } else {
      o.kind = Expr::Operand::variable;
      o.name = std::move(id);
    }
    vars.push_back(o.name);
    return o;
  }

  std::string ident() {
    const std::size_t start = i_;
    if (i_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[i_])))
      throw ParseError("expected variable name", i_);
    while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_])))
      ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

std::optional<std::int64_t> value_of(const Expr::Operand &o, const Substitution &sigma, std::string &why) {
  if (o.kind == Expr::Operand::literal)
    return o.value;
  const Binding &b = *sigma.find(o.name);
  if (o.kind == Expr::Operand::variable) {
    if (b.is_sequence() || !b.term().is_integer()) {
      why = "'" + o.name + "' is bound to " + b.to_string() + ", not an integer";
      return std::nullopt;
    }
    return b.term().value();
  }
  std::int64_t total = 0;
  for (const Term &t : b.items()) {
    if (!t.is_integer()) {
      why = "sum(" + o.name + ") over non-integer " + to_string(t);
      return std::nullopt;
    }
    if (__builtin_add_overflow(total, t.value(), &total)) {
      why = "sum(" + o.name + ") overflows";
      return std::nullopt;
    }
  }
  return total;
}

} // namespace

Constraint Constraint::parse(std::string_view text) {
  Constraint c;
  c.text_ = std::string(text);
  // trim for stable identity
  while (!c.text_.empty() && std::isspace(static_cast<unsigned char>(c.text_.back())))
    c.text_.pop_back();
  c.text_.erase(0, c.text_.find_first_not_of(" \t"));
  c.expr_ = std::make_shared<const Expr>(ExprParser(c.text_).run(c.vars_));
  return c;
}

Constraint Constraint::host(std::string id, std::vector<std::string> vars, Predicate fn) {
  Constraint c;
  c.text_ = "host:" + id;
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  c.vars_ = std::move(vars);
  c.fn_ = std::move(fn);
  return c;
}

ConstraintResult Constraint::evaluate(const Substitution &sigma) const {
  for (const auto &v : vars_)
    if (!sigma.contains(v))
      return {ConstraintStatus::not_ready, {}};
  if (fn_)
    return {fn_(sigma) ? ConstraintStatus::satisfied : ConstraintStatus::violated, {}};
  for (const auto &c : expr_->all) {
    std::string why;
    auto l = value_of(c.lhs, sigma, why);
    auto r = l ? value_of(c.rhs, sigma, why) : std::nullopt;
    if (!l || !r)
      return {ConstraintStatus::violated, "constraint '" + text_ + "': " + why};
    bool ok = false;
    switch (c.op) {
    case Expr::Op::lt: ok = *l < *r; break;
    case Expr::Op::le: ok = *l <= *r; break;
    case Expr::Op::gt: ok = *l > *r; break;
    case Expr::Op::ge: ok = *l >= *r; break;
    case Expr::Op::eq: ok = *l == *r; break;
    case Expr::Op::ne: ok = *l != *r; break;
    }
    if (!ok)
      return {ConstraintStatus::violated, {}};
  }
  return {ConstraintStatus::satisfied, {}};
}

bool constraints_hold(const std::vector<Constraint> &cs, const Substitution &sigma) {
  for (const auto &c : cs)
    if (c.evaluate(sigma).status == ConstraintStatus::violated)
      return false;
  return true;
}

std::pair<std::string_view, std::string_view> split_where(std::string_view line) {
  // the term grammar has no ';', so the first one starts the clause
  const auto semi = line.find(';');
  if (semi == std::string_view::npos)
    return {line, {}};
  std::string_view rest = line.substr(semi + 1);
  const auto at = rest.find_first_not_of(" \t");
  rest = at == std::string_view::npos ? std::string_view{} : rest.substr(at);
  if (rest.substr(0, 5) != "where")
    throw ParseError("expected 'where' after ';'", semi + 1);
  return {line.substr(0, semi), rest.substr(5)};
}

Pattern Pattern::make(Term term, std::vector<Constraint> constraints) {
  const auto vars = variables(term);
  for (const auto &c : constraints)
    for (const auto &v : c.required_variables())
      if (!std::binary_search(vars.begin(), vars.end(), v))
        throw ParseError("constraint variable '" + v + "' does not occur in the pattern", 0);
  return Pattern{std::move(term), std::move(constraints)};
}

namespace {
Pattern finish(Term term, std::string_view where) {
  std::vector<Constraint> cs;
  if (!where.empty())
    cs.push_back(Constraint::parse(where));
  return Pattern::make(std::move(term), std::move(cs));
}
} // namespace

Pattern Pattern::parse(std::string_view line, const SignatureTable &sig) {
  auto [head, where] = split_where(line);
  return finish(parse_term(head, sig), where);
}

Pattern Pattern::parse_declaring(std::string_view line, SignatureTable &sig) {
  auto [head, where] = split_where(line);
  return finish(parse_term_declaring(head, sig), where);
}

std::string Pattern::to_string() const {
  std::string out = termweave::to_string(term);
  for (std::size_t i = 0; i < constraints.size(); ++i)
    out += (i ? " && " : " ; where ") + constraints[i].text();
  return out;
}

} // namespace termweave
