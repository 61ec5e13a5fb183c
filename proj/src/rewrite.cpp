#include "termweave/rewrite.hpp"

#include <algorithm>

#include "termweave/parse.hpp"

namespace termweave {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool has_anonymous(const Term &t) {
  if (t.is_wildcard())
    return t.wildcard().anonymous();
  for (const Term &a : t.args())
    if (has_anonymous(a))
      return true;
  return false;
}

} // namespace

ReplacementRule ReplacementRule::make(Pattern pattern, Term replacement) {
  if (has_anonymous(replacement))
    throw RuleError("anonymous wildcard in replacement " + termweave::to_string(replacement));
  const auto have = variables(pattern.term);
  for (const auto &v : variables(replacement))
    if (!std::binary_search(have.begin(), have.end(), v))
      throw RuleError("replacement variable '" + v + "' does not occur in the pattern");
  return ReplacementRule{std::move(pattern), std::move(replacement), {}, {}};
}

ReplacementRule ReplacementRule::host(Pattern pattern, std::string id, Builder fn) {
  return ReplacementRule{std::move(pattern), std::nullopt, std::move(fn), std::move(id)};
}

ReplacementRule ReplacementRule::parse(std::string_view line, const SignatureTable &sig) {
  auto [head, where] = split_where(line);
  const auto arrow = head.find("->");
  if (arrow == std::string_view::npos)
    throw ParseError("expected '->' in rule", head.size());
  std::string pattern_text(trim(head.substr(0, arrow)));
  if (!trim(where).empty())
    pattern_text += " ; where " + std::string(trim(where));
  Pattern p = Pattern::parse(pattern_text, sig);
  Term tmpl = parse_term(trim(head.substr(arrow + 2)), sig);
  return make(std::move(p), std::move(tmpl));
}

Term ReplacementRule::instantiate(const Substitution &sigma, const SignatureTable &sig) const {
  if (builder)
    return canonicalize(builder(sigma), sig);
  return substitute(sigma, *replacement, sig);
}

std::string ReplacementRule::to_string() const {
  const std::string text = pattern.to_string();
  auto [head, where] = split_where(text);
  std::string out(trim(head));
  out += " -> ";
  out += builder ? "host:" + builder_id : termweave::to_string(*replacement);
  if (!where.empty())
    out += " ; where" + std::string(where);
  return out;
}

std::vector<ReplacementRule> parse_rules(std::string_view text, const SignatureTable &sig) {
  std::vector<ReplacementRule> out;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (line.empty() || line.front() == '#')
      continue;
    try {
      out.push_back(ReplacementRule::parse(line, sig));
    } catch (const ParseError &e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), e.position);
    } catch (const RuleError &e) {
      throw RuleError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::string to_string(const Position &p) {
  if (p.empty())
    return "/";
  std::string out;
  for (std::size_t i : p)
    out += "/" + std::to_string(i);
  return out;
}

const Term &subterm_at(const Term &t, const Position &p) {
  const Term *cur = &t;
  for (std::size_t i : p) {
    if (!cur->is_compound() || i >= cur->args().size())
      throw std::out_of_range("no subterm at " + to_string(p));
    cur = &cur->args()[i];
  }
  return *cur;
}

namespace {

Term replace_rec(const Term &t, const Position &p, std::size_t depth, Term r, const SignatureTable &sig) {
  if (depth == p.size())
    return r;
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[p[depth]] = replace_rec(args[p[depth]], p, depth + 1, std::move(r), sig);
  return make_compound(sig, t.name(), std::move(args));
}

} // namespace

Term replace_at(const Term &t, const Position &p, Term replacement, const SignatureTable &sig) {
  subterm_at(t, p); // bounds check
  return replace_rec(t, p, 0, std::move(replacement), sig);
}

// ---- rule matchers -------------------------------------------------------

OneToOneRules::OneToOneRules(const std::vector<ReplacementRule> &rules, const SignatureTable &sig) : sig_(sig) {
  for (const auto &r : rules)
    patterns_.push_back(r.pattern);
}

std::optional<Substitution> OneToOneRules::first_of(std::size_t rule, const Term &t, MatchStats *stats) const {
  for (auto &sigma : match(t, patterns_.at(rule), sig_, stats))
    return std::move(sigma);
  return std::nullopt;
}

std::optional<RuleMatch> OneToOneRules::first(const Term &t, MatchStats *stats) const {
  for (std::size_t i = 0; i < patterns_.size(); ++i)
    if (auto sigma = first_of(i, t, stats))
      return RuleMatch{i, std::move(*sigma)};
  return std::nullopt;
}

ManyToOneRules::ManyToOneRules(const std::vector<ReplacementRule> &rules, const SignatureTable &sig,
                               ManyMatcher many, std::vector<std::size_t> rule_of)
    : one_(rules, sig), many_(std::move(many)), rule_of_(std::move(rule_of)) {}

std::optional<RuleMatch> ManyToOneRules::first(const Term &t, MatchStats *stats) const {
  std::size_t best = static_cast<std::size_t>(-1);
  many_(t, stats, NetMatchOptions{true}, [&](const NetMatch &m) {
    best = std::min(best, rule_of_.at(m.pattern));
    return best != 0;
  });
  if (best == static_cast<std::size_t>(-1))
    return std::nullopt;
  // sigma comes from the one-to-one search order, for that rule only
  auto sigma = one_.first_of(best, t, stats);
  if (!sigma)
    throw std::logic_error("many-to-one matcher reported a rule the one-to-one matcher rejects");
  return RuleMatch{best, std::move(*sigma)};
}

NetRules build_rule_net(const std::vector<ReplacementRule> &rules, const SignatureTable &sig) {
  NetRules out;
  out.net = std::make_shared<DiscriminationNet>(sig);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const std::size_t id = out.net->add(rules[i].pattern);
    if (id == out.rule_of.size())
      out.rule_of.push_back(i);
  }
  return out;
}

std::unique_ptr<RuleMatcher> make_net_rules(const std::vector<ReplacementRule> &rules, const SignatureTable &sig) {
  NetRules nr = build_rule_net(rules, sig);
  auto net = nr.net;
  ManyMatcher many = [net](const Term &t, MatchStats *stats, NetMatchOptions opt, const MatchSink &sink) {
    for (const auto &m : net->match(t, stats, opt))
      if (!sink(m))
        break;
  };
  return std::make_unique<ManyToOneRules>(rules, sig, std::move(many), std::move(nr.rule_of));
}

// ---- rewriting -----------------------------------------------------------

namespace {

std::optional<Rewrite> find_rec(const Term &root, const Term &t, Position &pos,
                                const std::vector<ReplacementRule> &rules, const SignatureTable &sig,
                                const RuleMatcher &m, MatchStats *stats) {
  if (auto hit = m.first(t, stats)) {
    Term r = rules[hit->rule].instantiate(hit->sigma, sig);
    return Rewrite{replace_at(root, pos, std::move(r), sig), pos, hit->rule, std::move(hit->sigma)};
  }
  if (t.is_compound())
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      pos.push_back(i);
      if (auto r = find_rec(root, t.args()[i], pos, rules, sig, m, stats))
        return r;
      pos.pop_back();
    }
  return std::nullopt;
}

} // namespace

std::optional<Rewrite> apply_once(const Term &t, const std::vector<ReplacementRule> &rules,
                                  const SignatureTable &sig, const RuleMatcher &matcher, MatchStats *stats) {
  Position pos;
  return find_rec(t, t, pos, rules, sig, matcher, stats);
}

std::optional<Rewrite> apply_once(const Term &t, const std::vector<ReplacementRule> &rules,
                                  const SignatureTable &sig) {
  return apply_once(t, rules, sig, OneToOneRules(rules, sig));
}

RewriteReport replace_all(const Term &t, const std::vector<ReplacementRule> &rules, const SignatureTable &sig,
                          std::size_t max_steps, const RuleMatcher &matcher, bool trace, MatchStats *stats) {
  RewriteReport rep;
  rep.result = t;
  while (true) {
    auto r = apply_once(rep.result, rules, sig, matcher, stats);
    if (!r)
      return rep;
    if (rep.steps == max_steps) {
      rep.normal_form = false;
      return rep;
    }
    ++rep.steps;
    if (trace)
      rep.trace.push_back({r->position, r->rule, r->sigma});
    rep.result = std::move(r->result);
  }
}

RewriteReport replace_all(const Term &t, const std::vector<ReplacementRule> &rules, const SignatureTable &sig,
                          std::size_t max_steps, bool trace) {
  return replace_all(t, rules, sig, max_steps, OneToOneRules(rules, sig), trace);
}

Generator<std::pair<Position, Substitution>> match_all_positions(Term t, Pattern p, const SignatureTable &sig) {
  // explicit preorder stack of (term, position)
  std::vector<std::pair<Term, Position>> todo{{t, {}}};
  while (!todo.empty()) {
    auto [cur, pos] = std::move(todo.back());
    todo.pop_back();
    for (auto &sigma : match(cur, p, sig))
      co_yield {pos, std::move(sigma)};
    if (cur.is_compound())
      for (std::size_t i = cur.args().size(); i-- > 0;) {
        Position child = pos;
        child.push_back(i);
        todo.emplace_back(cur.args()[i], std::move(child));
      }
  }
}

} // namespace termweave
