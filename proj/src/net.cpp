#include "termweave/net.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "termweave/bipartite.hpp"
#include "termweave/parse.hpp"

namespace termweave {

// ---- tokens ----------------------------------------------------------------

namespace {

void tokens_into(const Term &t, std::vector<Token> &out) {
  switch (t.kind()) {
  case TermKind::integer:
    out.push_back({TokenKind::integer, {}, t.value()});
    return;
  case TermKind::symbol:
    out.push_back({TokenKind::symbol, t.name(), 0});
    return;
  case TermKind::compound:
    out.push_back({TokenKind::open, t.name(), 0});
    for (const Term &a : t.args())
      tokens_into(a, out);
    out.push_back({TokenKind::end, {}, 0});
    return;
  case TermKind::wildcard:
    throw std::invalid_argument("tokenize: term is not ground");
  }
}

Term read_tokens(const std::vector<Token> &tokens, std::size_t &i) {
  if (i >= tokens.size())
    throw std::invalid_argument("untokenize: unexpected end of tokens");
  const Token &t = tokens[i++];
  switch (t.kind) {
  case TokenKind::integer:
    return Term::integer(t.value);
  case TokenKind::symbol:
    return Term::symbol(t.name);
  case TokenKind::open: {
    std::vector<Term> args;
    while (i < tokens.size() && tokens[i].kind != TokenKind::end)
      args.push_back(read_tokens(tokens, i));
    if (i == tokens.size())
      throw std::invalid_argument("untokenize: missing end token");
    ++i;
    return Term::compound(t.name, std::move(args));
  }
  case TokenKind::end:
    break;
  }
  throw std::invalid_argument("untokenize: stray end token");
}

} // namespace

std::vector<Token> tokenize(const Term &ground) {
  std::vector<Token> out;
  tokens_into(ground, out);
  return out;
}

Term untokenize(const std::vector<Token> &tokens) {
  std::size_t i = 0;
  Term t = read_tokens(tokens, i);
  if (i != tokens.size())
    throw std::invalid_argument("untokenize: trailing tokens");
  return t;
}

std::string to_string(const Token &t) {
  switch (t.kind) {
  case TokenKind::open:
    return t.name + "(";
  case TokenKind::symbol:
    return t.name;
  case TokenKind::integer:
    return std::to_string(t.value);
  case TokenKind::end:
    return ")";
  }
  return "?";
}

// ---- labels ----------------------------------------------------------------

bool operator==(const Label &a, const Label &b) {
  if (a.kind != b.kind || a.context != b.context || a.head != b.head || a.wrap != b.wrap)
    return false;
  switch (a.kind) {
  case Label::Kind::open:
  case Label::Kind::close:
    return true;
  case Label::Kind::commutative:
    return a.plan == b.plan;
  default:
    return a.term == b.term;
  }
}

std::string to_string(const Label &l) {
  switch (l.kind) {
  case Label::Kind::open:
    return l.head + "(";
  case Label::Kind::close:
    return ")";
  case Label::Kind::commutative:
    return "comm#" + std::to_string(l.plan);
  default:
    break;
  }
  std::string s = to_string(l.term);
  if (l.wrap)
    s += " in " + l.head;
  return s;
}

WalkState initial_walk_state(const Term &subject) {
  WalkState ws;
  ws.frames.push_back({subject, true, 0});
  return ws;
}

// ---- construction ----------------------------------------------------------

DiscriminationNet::DiscriminationNet(SignatureTable sig)
    : sig_(std::make_shared<const SignatureTable>(std::move(sig))) {
  states_.emplace_back();
}

std::size_t DiscriminationNet::transition_count() const {
  std::size_t n = 0;
  for (const auto &s : states_)
    n += s.out.size();
  return n;
}

std::size_t DiscriminationNet::group_root(const std::string &head) {
  auto it = group_roots_.find(head);
  if (it != group_roots_.end())
    return it->second;
  states_.emplace_back();
  group_roots_.emplace(head, states_.size() - 1);
  return states_.size() - 1;
}

std::size_t DiscriminationNet::plan_for(const Term &t) {
  for (std::size_t i = 0; i < plans_.size(); ++i)
    if (plans_[i].term == t)
      return i;
  CommutativePlan plan;
  plan.term = t;
  plan.op = sig_->at(t.name());
  plan.root = group_root(t.name());
  for (const Term &a : t.args()) {
    if (a.ground()) {
      plan.ground.push_back(a);
    } else if (a.is_compound()) {
      plan.nodes.push_back(a);
      plan.node_entry.push_back(insert_entry({Pattern{a, {}}, false, plan.root, 0}, plan.root));
    } else if (a.wildcard().sequence()) {
      plan.sequences.push_back(a);
    } else if (plan.op.associative && a.wildcard().symbol_class.empty()) {
      plan.wrapped.push_back(a);
    } else {
      plan.nodes.push_back(a);
      plan.node_entry.push_back(npos);
    }
  }
  // a nested plan of the same term may have been made meanwhile
  for (std::size_t i = 0; i < plans_.size(); ++i)
    if (plans_[i].term == t)
      return i;
  plans_.push_back(std::move(plan));
  return plans_.size() - 1;
}

void DiscriminationNet::labels_into(const Term &t, const OperationSignature *parent, std::vector<Label> &out) {
  const bool in_sequence = parent && parent->arity.variadic;
  const std::string head = parent ? parent->name : std::string();
  if (t.is_integer() || t.is_symbol()) {
    out.push_back({Label::Kind::atom, Label::Context::single, t, {}, 0, false});
    return;
  }
  if (t.is_wildcard()) {
    const auto &w = t.wildcard();
    Label l{Label::Kind::regular, in_sequence ? Label::Context::sequence : Label::Context::single, t, head, 0, false};
    if (w.kind == WildcardKind::plus)
      l.kind = Label::Kind::plus;
    else if (w.kind == WildcardKind::star)
      l.kind = Label::Kind::star;
    else if (!w.symbol_class.empty())
      l.kind = Label::Kind::symbol_class;
    else if (in_sequence && parent->associative) {
      l.kind = Label::Kind::plus;
      l.wrap = true;
    }
    out.push_back(std::move(l));
    return;
  }
  const OperationSignature &op = sig_->at(t.name());
  if (op.commutative) {
    if (t.ground())
      out.push_back({Label::Kind::ground, Label::Context::single, t, {}, 0, false});
    else
      out.push_back({Label::Kind::commutative, Label::Context::single, t, t.name(), plan_for(t), false});
    return;
  }
  out.push_back({Label::Kind::open, Label::Context::single, Term::integer(0), t.name(), 0, false});
  for (const Term &a : t.args())
    labels_into(a, &op, out);
  out.push_back({Label::Kind::close, Label::Context::single, Term::integer(0), {}, 0, false});
}

std::vector<Label> DiscriminationNet::labels_for(const Term &t) {
  std::vector<Label> out;
  labels_into(t, nullptr, out);
  return out;
}

std::size_t DiscriminationNet::insert_entry(Entry e, std::size_t root) {
  const std::size_t h = e.pattern.term.hash();
  if (auto it = by_hash_.find(h); it != by_hash_.end())
    for (std::size_t id : it->second) {
      const Entry &o = entries_[id];
      if (o.outer == e.outer && o.root == root && o.pattern.term == e.pattern.term &&
          o.pattern.constraints == e.pattern.constraints)
        return id;
    }
  const std::vector<Label> labels = labels_for(e.pattern.term);
  std::size_t s = root;
  for (const Label &l : labels) {
    std::size_t next = npos;
    for (const auto &tr : states_[s].out)
      if (tr.label == l) {
        next = tr.target;
        break;
      }
    if (next == npos) {
      states_.emplace_back();
      next = states_.size() - 1;
      auto &out = states_[s].out;
      auto pos = std::upper_bound(out.begin(), out.end(), l.kind,
                                  [](Label::Kind k, const Transition &tr) { return k < tr.label.kind; });
      out.insert(pos, Transition{l, next});
    }
    s = next;
  }
  e.root = root;
  entries_.push_back(std::move(e));
  const std::size_t id = entries_.size() - 1;
  states_[s].finals.push_back(id);
  by_hash_[h].push_back(id);
  return id;
}

std::size_t DiscriminationNet::add(const Pattern &p) {
  const std::size_t before = entries_.size();
  const std::size_t id = insert_entry({p, true, 0, patterns_.size()}, 0);
  if (id < before)
    return entries_[id].pattern_id;
  patterns_.push_back(id);
  const auto pid = static_cast<std::uint32_t>(entries_[id].pattern_id);
  reach_.resize(states_.size());
  std::size_t s = 0;
  reach_[s].push_back(pid);
  for (const Label &l : labels_for(p.term))
    for (const auto &tr : states_[s].out)
      if (tr.label == l) {
        s = tr.target;
        reach_[s].push_back(pid);
        break;
      }
  return entries_[id].pattern_id;
}

// ---- walking ---------------------------------------------------------------

namespace {

std::vector<Term> contents(const Binding &b, const std::string &head, bool wrapped) {
  if (b.is_sequence())
    return {b.items().begin(), b.items().end()};
  const Term &v = b.term();
  if (wrapped && v.is_compound() && v.name() == head && v.args().size() >= 2)
    return {v.args().begin(), v.args().end()};
  return {v};
}

bool is_default(const WildcardSpec &w, const Binding &b) {
  return w.default_value && !b.is_sequence() && b.term() == *w.default_value;
}

} // namespace

WalkState advanced(const WalkState &ws, std::size_t by) {
  WalkState n = ws;
  n.frames.back().pos += by;
  return n;
}

Generator<WalkState> DiscriminationNet::step(const Label &label, WalkState ws, NetEnv &env) const {
  const MatchContext &ctx = env.ctx;
  ctx.compare();
  const WalkFrame &f = ws.frames.back();
  const auto items = f.items();
  const std::size_t avail = items.size() - f.pos;

  switch (label.kind) {
  case Label::Kind::atom:
  case Label::Kind::ground:
    if (avail && items[f.pos] == label.term)
      co_yield advanced(ws, 1);
    co_return;

  case Label::Kind::close:
    if (!avail && ws.frames.size() > 1) {
      ws.frames.pop_back();
      co_yield ws;
    }
    co_return;

  case Label::Kind::open: {
    if (!avail)
      co_return;
    const Term s = items[f.pos];
    const bool same = s.is_compound() && s.name() == label.head;
    if (!same && !sig_->at(label.head).one_identity)
      co_return;
    ws.frames.back().pos += 1;
    ws.frames.push_back({s, !same, 0});
    co_yield ws;
    co_return;
  }

  case Label::Kind::commutative: {
    if (!avail)
      co_return;
    const CommutativePlan &plan = plans_[label.plan];
    const Term s = items[f.pos];
    std::vector<Term> args;
    if (s.is_compound() && s.name() == plan.op.name)
      args.assign(s.args().begin(), s.args().end());
    else if (plan.op.one_identity)
      args.push_back(s);
    else
      co_return;
    if (!plan.op.arity.variadic && args.size() != plan.term.args().size())
      co_return;
    for (const auto &sigma : resolve_commutative(label.plan, std::move(args), ws.sigma, env)) {
      WalkState n = advanced(ws, 1);
      n.sigma = sigma;
      co_yield n;
    }
    co_return;
  }

  default:
    break;
  }

  // variables
  const WildcardSpec &w = label.term.wildcard();
  if (w.sequence() || label.wrap) {
    const Binding *bound = w.anonymous() ? nullptr : ws.sigma.find(w.name);
    if (bound) {
      const auto want = contents(*bound, label.head, label.wrap);
      if (want.size() <= avail && std::equal(want.begin(), want.end(), items.begin() + f.pos))
        co_yield advanced(ws, want.size());
      if (is_default(w, *bound))
        co_yield ws;
      co_return;
    }
    const std::size_t lo = w.kind == WildcardKind::star ? 0 : 1;
    for (std::size_t len = lo; len <= avail; ++len) {
      WalkState n = advanced(ws, len);
      if (!w.anonymous()) {
        std::vector<Term> slice(items.begin() + f.pos, items.begin() + f.pos + len);
        Binding b = Binding::sequence({});
        if (w.sequence())
          b = Binding::sequence(std::move(slice));
        else if (len == 1)
          b = Binding::single(std::move(slice.front()));
        else
          b = Binding::single(make_compound(*sig_, label.head, std::move(slice)));
        n.sigma.bind(w.name, std::move(b));
      }
      co_yield n;
    }
    if (label.wrap && w.optional()) {
      if (w.anonymous() || ws.sigma.bind(w.name, Binding::single(*w.default_value)))
        co_yield ws;
    }
    co_return;
  }

  // one argument
  if (avail) {
    const Term &s = items[f.pos];
    const bool class_ok = w.symbol_class.empty() || (s.is_symbol() && sig_->in_class(w.symbol_class, s.name()));
    if (class_ok) {
      WalkState n = advanced(ws, 1);
      if (w.anonymous() || n.sigma.bind(w.name, Binding::single(s)))
        co_yield n;
    }
  }
  if (label.context == Label::Context::sequence && w.optional()) {
    if (w.anonymous() || ws.sigma.bind(w.name, Binding::single(*w.default_value)))
      co_yield ws;
  }
}

std::vector<NetMatch> DiscriminationNet::accept(const State &state, const WalkState &ws, NetEnv &env) const {
  std::vector<NetMatch> out;
  for (std::size_t id : state.finals) {
    const Entry &e = entries_[id];
    if (!e.outer)
      continue;
    if (env.options.first_per_pattern && env.matched[e.pattern_id])
      continue;
    if (!constraints_hold(e.pattern.constraints, ws.sigma))
      continue;
    if (env.options.first_per_pattern)
      env.matched[e.pattern_id] = 1;
    NetMatch m{e.pattern_id, ws.sigma};
    if (env.seen.insert(m).second)
      out.push_back(std::move(m));
  }
  return out;
}

bool DiscriminationNet::live(std::size_t state, const NetEnv &env) const {
  if (!env.options.first_per_pattern)
    return true;
  if (state >= reach_.size())
    return false;
  for (std::uint32_t id : reach_[state])
    if (!env.matched[id])
      return true;
  return false;
}

Generator<std::pair<std::size_t, WalkState>> DiscriminationNet::walk(std::size_t from, WalkState ws, NetEnv &env,
                                                                     bool outer) const {
  env.ctx.node();
  const State &st = states_[from];
  if (!st.finals.empty())
    co_yield {from, ws};
  for (const auto &tr : st.out) {
    if (outer && !live(tr.target, env))
      continue;
    for (const auto &next : step(tr.label, ws, env)) {
      for (const auto &r : walk(tr.target, next, env, outer))
        co_yield r;
      if (outer && !live(tr.target, env))
        break;
    }
  }
}

NetEnv DiscriminationNet::make_env(MatchStats *stats, NetMatchOptions options) const {
  NetEnv env;
  env.net = this;
  env.ctx = MatchContext{sig_.get(), stats, nullptr};
  env.options = options;
  env.matched.assign(patterns_.size(), 0);
  env.run_inner = [this](std::size_t root, const Term &u, NetEnv &e) {
    std::vector<std::pair<std::size_t, Substitution>> out;
    for (const auto &[s, ws] : walk(root, initial_walk_state(u), e))
      for (std::size_t id : states_[s].finals)
        out.emplace_back(id, ws.sigma);
    return out;
  };
  return env;
}

Generator<NetMatch> DiscriminationNet::match(Term subject, MatchStats *stats, NetMatchOptions options) const {
  NetEnv env = make_env(stats, options);
  for (const auto &[s, ws] : walk(0, initial_walk_state(subject), env, true))
    for (auto &m : accept(states_[s], ws, env))
      co_yield m;
}

std::vector<NetMatch> DiscriminationNet::match_sorted(const Term &subject, MatchStats *stats) const {
  std::vector<NetMatch> out;
  for (const auto &m : match(subject, stats))
    out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

// ---- commutative groups ----------------------------------------------------

std::shared_ptr<const InnerLabels> DiscriminationNet::inner_labels(std::size_t root, const Term &u,
                                                                   NetEnv &env) const {
  auto &bucket = env.inner_memo[root];
  for (const auto &[t, labels] : bucket)
    if (t == u)
      return labels;
  // A one-identity head can box u and ask for the same walk again.
  for (const auto &[r, t] : env.inner_active)
    if (r == root && t == u)
      return nullptr;
  env.inner_active.emplace_back(root, u);
  auto found = env.run_inner(root, u, env);
  env.inner_active.pop_back();
  auto labels = std::make_shared<InnerLabels>();
  for (auto &[id, sigma] : found) {
    auto &list = (*labels)[id];
    if (std::find(list.begin(), list.end(), sigma) == list.end())
      list.push_back(std::move(sigma));
  }
  env.inner_memo[root].emplace_back(u, labels);
  return labels;
}

namespace {

// Leftover arguments over wrapped and sequence variables.
Generator<Substitution> distribute_rest(const DiscriminationNet::CommutativePlan &plan, std::vector<Term> rest,
                                        Substitution sigma, MatchContext ctx) {
  std::vector<SequenceVar> seqs;
  auto add = [](std::vector<SequenceVar> &vars, const WildcardSpec &w, WildcardKind kind, bool wrap) {
    if (!w.anonymous())
      for (auto &v : vars)
        if (v.name == w.name) {
          ++v.multiplicity;
          return;
        }
    vars.push_back({w.name, kind, 1, wrap});
  };
  for (const Term &t : plan.sequences)
    add(seqs, t.wildcard(), t.wildcard().kind, false);
  std::vector<SequenceVar> wrapped;
  std::vector<const WildcardSpec *> specs;
  for (const Term &t : plan.wrapped) {
    const std::size_t before = wrapped.size();
    add(wrapped, t.wildcard(), WildcardKind::plus, true);
    if (wrapped.size() != before)
      specs.push_back(&t.wildcard());
  }
  std::vector<std::size_t> optional;
  for (std::size_t k = 0; k < specs.size(); ++k)
    if (specs[k]->optional())
      optional.push_back(k);
  for (std::size_t mask = 0; mask < (std::size_t{1} << optional.size()); ++mask) {
    std::vector<char> absent(specs.size(), 0);
    for (std::size_t b = 0; b < optional.size(); ++b)
      absent[optional[b]] = mask >> b & 1;
    Substitution s = sigma;
    auto vars = seqs;
    bool ok = true;
    for (std::size_t k = 0; k < specs.size() && ok; ++k) {
      if (!absent[k])
        vars.push_back(wrapped[k]);
      else if (!specs[k]->anonymous())
        ok = s.bind(specs[k]->name, Binding::single(*specs[k]->default_value));
    }
    if (!ok)
      continue;
    for (const auto &r : distribute_sequence_vars(rest, std::move(vars), std::move(s), plan.op, ctx))
      co_yield r;
  }
}

// Every way to pick one label per matched edge, merged into sigma.
void merge_labels(const std::vector<const std::vector<Substitution> *> &labels, std::size_t k,
                  const Substitution &sigma, std::vector<Substitution> &out) {
  if (k == labels.size()) {
    out.push_back(sigma);
    return;
  }
  for (const auto &l : *labels[k])
    if (auto m = merge_substitutions(sigma, l))
      merge_labels(labels, k + 1, *m, out);
}

} // namespace

Generator<Substitution> DiscriminationNet::resolve_commutative(std::size_t plan_id, std::vector<Term> args,
                                                               Substitution partial, NetEnv &env) const {
  const CommutativePlan &plan = plans_[plan_id];
  const MatchContext &ctx = env.ctx;
  ctx.node();
  std::sort(args.begin(), args.end());
  for (const Term &g : plan.ground) {
    ctx.compare();
    auto it = std::lower_bound(args.begin(), args.end(), g);
    if (it == args.end() || !(*it == g))
      co_return;
    args.erase(it);
  }
  const std::size_t L = args.size();
  // cheap size bound before computing any labels
  std::size_t needed = 0;
  for (std::size_t r = 0; r < plan.nodes.size(); ++r)
    needed += plan.node_entry[r] != npos || !plan.nodes[r].wildcard().optional();
  for (const Term &w : plan.wrapped)
    needed += !w.wildcard().optional();
  for (const Term &w : plan.sequences)
    needed += w.wildcard().kind == WildcardKind::plus;
  if (L < needed)
    co_return;
  std::vector<std::size_t> cls(L);
  for (std::size_t i = 1; i < L; ++i)
    cls[i] = cls[i - 1] + !(args[i] == args[i - 1]);

  // labels per (distinct subject, node), shared by equal subjects
  const std::size_t N = plan.nodes.size();
  std::vector<std::vector<std::vector<Substitution>>> labels(L ? cls.back() + 1 : 0,
                                                           std::vector<std::vector<Substitution>>(N));
  for (std::size_t i = 0; i < L; ++i) {
    if (i && cls[i] == cls[i - 1])
      continue;
    const Term &u = args[i];
    std::shared_ptr<const InnerLabels> inner;
    for (std::size_t r = 0; r < N; ++r) {
      ctx.compare();
      auto &dst = labels[cls[i]][r];
      if (plan.node_entry[r] != npos) {
        if (!inner)
          inner = inner_labels(plan.root, u, env);
        if (!inner) {
          // re-entrant: this one entry alone, which is strictly smaller
          for (const auto &s : termweave::match(u, entries_[plan.node_entry[r]].pattern, *sig_, ctx.stats))
            dst.push_back(s);
        } else if (auto it = inner->find(plan.node_entry[r]); it != inner->end()) {
          dst = it->second;
        }
        continue;
      }
      const auto &w = plan.nodes[r].wildcard();
      if (!w.symbol_class.empty() && !(u.is_symbol() && sig_->in_class(w.symbol_class, u.name())))
        continue;
      Substitution s;
      if (!w.anonymous())
        s.bind(w.name, Binding::single(u));
      dst.push_back(std::move(s));
    }
  }

  std::vector<std::size_t> optional;
  for (std::size_t r = 0; r < N; ++r)
    if (plan.node_entry[r] == npos && plan.nodes[r].wildcard().optional())
      optional.push_back(r);

  std::unordered_set<Substitution, SubstitutionHash> seen;
  for (std::size_t mask = 0; mask < (std::size_t{1} << optional.size()); ++mask) {
    Substitution sigma = partial;
    std::vector<char> present(N, 1);
    bool ok = true;
    for (std::size_t b = 0; b < optional.size() && ok; ++b) {
      if (!(mask >> b & 1))
        continue;
      present[optional[b]] = 0;
      const auto &w = plan.nodes[optional[b]].wildcard();
      ok = w.anonymous() || sigma.bind(w.name, Binding::single(*w.default_value));
    }
    if (!ok)
      continue;
    std::vector<std::size_t> right;
    for (std::size_t r = 0; r < N; ++r)
      if (present[r])
        right.push_back(r);
    if (right.size() > L)
      continue;

    bipartite::Graph g(L, right.size());
    g.set_subject_classes(cls);
    std::vector<const std::vector<Substitution> *> edge_labels;
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = 0; j < right.size(); ++j) {
        const auto &l = labels[cls[i]][right[j]];
        if (l.empty())
          continue;
        g.add_edge(i, j);
        edge_labels.push_back(&l);
      }

    auto finish = [&](const bipartite::Matching &m) {
      std::vector<const std::vector<Substitution> *> picked;
      std::vector<char> used(L, 0);
      for (const auto &e : m) {
        used[e.left] = 1;
        for (std::size_t k : g.adjacent(e.left))
          if (g.edges()[k].right == e.right)
            picked.push_back(edge_labels[k]);
      }
      std::vector<Term> rest;
      for (std::size_t i = 0; i < L; ++i)
        if (!used[i])
          rest.push_back(args[i]);
      std::vector<Substitution> merged;
      merge_labels(picked, 0, sigma, merged);
      return std::make_pair(std::move(rest), std::move(merged));
    };

    if (right.empty()) {
      auto [rest, merged] = finish({});
      for (auto &s : merged)
        for (const auto &r : distribute_rest(plan, rest, std::move(s), ctx))
          if (seen.insert(r).second)
            co_yield r;
      continue;
    }
    for (const auto &m : bipartite::enumerate_maximum_matchings(g)) {
      ctx.node();
      if (m.size() < right.size())
        break;
      if (!bipartite::is_order_preserving(m, g))
        continue;
      // equal subjects are interchangeable: only the lowest of each class may be used
      std::vector<char> used(L, 0);
      for (const auto &e : m)
        used[e.left] = 1;
      bool lowest = true;
      for (std::size_t i = 1; i < L && lowest; ++i)
        lowest = !(used[i] && !used[i - 1] && cls[i] == cls[i - 1]);
      if (!lowest)
        continue;
      auto [rest, merged] = finish(m);
      for (auto &s : merged)
        for (const auto &r : distribute_rest(plan, rest, std::move(s), ctx))
          if (seen.insert(r).second)
            co_yield r;
    }
  }
}

} // namespace termweave
