#include "termweave/prop.hpp"

#include <algorithm>
#include <set>

#include "termweave/parse.hpp"

namespace termweave::prop {

const char *const signature_text = R"(op And variadic:2 associative commutative one_identity
op Xor variadic:2 associative commutative one_identity
op Or fixed:2
op Implies fixed:2
op Iff fixed:2
op Not fixed:1
)";

const char *const rules_text = R"(Xor(x_, F) -> x_
And(x_, T) -> x_
And(x_, F) -> F
Xor(x_, x_, y___) -> Xor(F, y___)
And(x_, x_, y___) -> And(x_, y___)
Not(x_) -> Xor(x_, T)
Implies(x_, y_) -> Or(Not(x_), y_)
Iff(x_, y_) -> Xor(x_, y_, T)
Or(x_, y_) -> Xor(And(x_, y_), x_, y_)
And(x_, Xor(y_, z_)) -> Xor(And(x_, y_), And(x_, z_))
)";

SignatureTable signature() { return SignatureTable::parse(signature_text); }

std::vector<ReplacementRule> rules(const SignatureTable &sig) { return parse_rules(rules_text, sig); }

namespace {

void collect_atoms(const Term &t, std::set<std::string> &out) {
  if (t.is_symbol() && t.name() != "T" && t.name() != "F")
    out.insert(t.name());
  else if (t.is_compound())
    for (const Term &a : t.args())
      collect_atoms(a, out);
}

} // namespace

std::vector<std::string> atoms(const Term &t) {
  std::set<std::string> s;
  collect_atoms(t, s);
  return {s.begin(), s.end()};
}

std::optional<bool> evaluate(const Term &t, const std::map<std::string, bool> &assignment) {
  if (t.is_symbol()) {
    if (t.name() == "T")
      return true;
    if (t.name() == "F")
      return false;
    auto it = assignment.find(t.name());
    if (it == assignment.end())
      return std::nullopt;
    return it->second;
  }
  if (!t.is_compound())
    return std::nullopt;
  std::vector<bool> v;
  for (const Term &a : t.args()) {
    auto r = evaluate(a, assignment);
    if (!r)
      return std::nullopt;
    v.push_back(*r);
  }
  const std::string &h = t.name();
  if (h == "And")
    return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
  if (h == "Xor")
    return std::count(v.begin(), v.end(), true) % 2 == 1;
  if (h == "Not" && v.size() == 1)
    return !v[0];
  if (v.size() != 2)
    return std::nullopt;
  if (h == "Or")
    return v[0] || v[1];
  if (h == "Implies")
    return !v[0] || v[1];
  if (h == "Iff")
    return v[0] == v[1];
  return std::nullopt;
}

std::optional<std::uint64_t> truth_table(const Term &t, const std::vector<std::string> &atom_list) {
  if (atom_list.size() > 6)
    throw std::invalid_argument("truth tables are limited to 6 atoms");
  std::uint64_t bits = 0;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << atom_list.size()); ++i) {
    std::map<std::string, bool> a;
    for (std::size_t j = 0; j < atom_list.size(); ++j)
      a[atom_list[j]] = (i >> j) & 1;
    auto r = evaluate(t, a);
    if (!r)
      return std::nullopt;
    if (*r)
      bits |= std::uint64_t{1} << i;
  }
  return bits;
}

bool is_anf(const Term &t) {
  if (t.is_symbol())
    return true;
  if (!t.is_compound() || (t.name() != "And" && t.name() != "Xor"))
    return false;
  return std::all_of(t.args().begin(), t.args().end(), [](const Term &a) { return is_anf(a); });
}

namespace {

Term sym(const char *s) { return Term::symbol(s); }

Term op(const SignatureTable &sig, const char *head, std::vector<Term> args) {
  return make_compound(sig, head, std::move(args));
}

void positions(const Term &t, Position &cur, std::vector<Position> &out) {
  out.push_back(cur);
  if (t.is_compound())
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      cur.push_back(i);
      positions(t.args()[i], cur, out);
      cur.pop_back();
    }
}

} // namespace

Term random_formula(Rng &rng, const SignatureTable &sig, const std::vector<std::string> &atom_list, unsigned depth) {
  if (depth == 0 || rng.chance(1, 4)) {
    const std::size_t k = rng.below(atom_list.size() + 2);
    if (k == atom_list.size())
      return sym("T");
    if (k == atom_list.size() + 1)
      return sym("F");
    return Term::symbol(atom_list[k]);
  }
  static const char *const heads[] = {"And", "Xor", "Or", "Implies", "Iff", "Not"};
  const char *h = heads[rng.below(6)];
  if (std::string(h) == "Not")
    return op(sig, h, {random_formula(rng, sig, atom_list, depth - 1)});
  std::size_t n = 2;
  if (std::string(h) == "And" || std::string(h) == "Xor")
    n += rng.below(2);
  std::vector<Term> args;
  for (std::size_t i = 0; i < n; ++i)
    args.push_back(random_formula(rng, sig, atom_list, depth - 1));
  return op(sig, h, std::move(args));
}

Generated backward(Rng &rng, const SignatureTable &sig, const std::vector<std::string> &atom_list, unsigned depth) {
  Generated g{rng.chance(1, 2) ? sym("T") : sym("F"), false};
  g.value = g.formula.name() == "T";
  for (unsigned step = 0; step < depth; ++step) {
    std::vector<Position> all;
    Position cur;
    positions(g.formula, cur, all);
    const Position &p = all[rng.below(all.size())];
    const Term t = subterm_at(g.formula, p);
    const bool is_false = t.is_symbol() && t.name() == "F";
    Term r = t;
    switch (rng.below(is_false ? 6 : 5)) {
    case 0:
      r = op(sig, "Not", {op(sig, "Not", {t})});
      break;
    case 1:
      r = op(sig, "And", {t, sym("T")});
      break;
    case 2:
      r = op(sig, "Xor", {t, sym("F")});
      break;
    case 3:
      r = op(sig, "Or", {t, t});
      break;
    case 4:
      r = op(sig, "Or", {t, sym("F")});
      break;
    default:
      r = op(sig, "And", {random_formula(rng, sig, atom_list, 2), sym("F")});
      break;
    }
    g.formula = replace_at(g.formula, p, r, sig);
  }
  return g;
}

} // namespace termweave::prop
