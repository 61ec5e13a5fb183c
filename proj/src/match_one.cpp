#include "termweave/match_one.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <unordered_set>

#include "termweave/parse.hpp"

namespace termweave {

namespace {

// Sorted (term, count) pairs. Copied freely while backtracking.
class Multiset {
public:
  Multiset() = default;
  explicit Multiset(std::vector<Term> items) {
    std::sort(items.begin(), items.end());
    for (auto &t : items) {
      if (!entries_.empty() && entries_.back().first == t)
        ++entries_.back().second;
      else
        entries_.emplace_back(std::move(t), 1);
    }
    total_ = items.size();
  }

  bool remove(const Term &t, std::size_t n = 1) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), t,
                               [](const auto &e, const Term &x) { return e.first < x; });
    if (it == entries_.end() || !(it->first == t) || it->second < n)
      return false;
    it->second -= n;
    total_ -= n;
    return true;
  }

  bool remove_all(std::span<const Term> ts) {
    for (const Term &t : ts)
      if (!remove(t))
        return false;
    return true;
  }

  std::size_t total() const { return total_; }
  const std::vector<std::pair<Term, std::size_t>> &entries() const { return entries_; }

private:
  std::vector<std::pair<Term, std::size_t>> entries_;
  std::size_t total_ = 0;
};

diophantine::SolutionCache &cache_of(const MatchContext &ctx) {
  return ctx.cache ? *ctx.cache : diophantine::default_cache();
}

// What a bound variable stands for inside an argument list of `op`.
std::vector<Term> contents(const Binding &b, const OperationSignature &op, bool wrapped) {
  if (b.is_sequence())
    return {b.items().begin(), b.items().end()};
  const Term &v = b.term();
  // only what wrapping a run could have produced
  if (wrapped && v.is_compound() && v.name() == op.name && v.args().size() >= 2)
    return {v.args().begin(), v.args().end()};
  return {v};
}

Binding wrap(const MatchContext &ctx, const OperationSignature &op, std::vector<Term> items) {
  if (items.size() == 1)
    return Binding::single(std::move(items.front()));
  return Binding::single(make_compound(*ctx.sig, op.name, std::move(items)));
}

bool is_default(const WildcardSpec &w, const Binding &b) {
  return w.default_value && !b.is_sequence() && b.term() == *w.default_value;
}

Generator<Substitution> match_term(Term s, Term p, Substitution sigma, MatchContext ctx);
Generator<Substitution> match_args(std::vector<Term> s, std::vector<Term> p, Substitution sigma,
                                   const OperationSignature *op, MatchContext ctx);

Generator<Substitution> match_term(Term s, Term p, Substitution sigma, MatchContext ctx) {
  ctx.node();
  ctx.compare();
  if (p.ground()) {
    if (s == p)
      co_yield sigma;
    co_return;
  }
  if (p.is_wildcard()) {
    const auto &w = p.wildcard();
    if (!w.symbol_class.empty() && !(s.is_symbol() && ctx.sig->in_class(w.symbol_class, s.name())))
      co_return;
    if (w.anonymous()) {
      co_yield sigma;
      co_return;
    }
    const Binding b = w.sequence() ? Binding::sequence({s}) : Binding::single(s);
    if (sigma.bind(w.name, b))
      co_yield sigma;
    co_return;
  }
  const OperationSignature *op = ctx.sig->find(p.name());
  std::vector<Term> sargs;
  if (s.is_compound() && s.name() == p.name())
    sargs.assign(s.args().begin(), s.args().end());
  else if (op && op->one_identity)
    sargs.push_back(s);
  else
    co_return;
  std::vector<Term> pargs(p.args().begin(), p.args().end());
  for (const auto &r : match_args(std::move(sargs), std::move(pargs), std::move(sigma), op, ctx))
    co_yield r;
}

Generator<Substitution> match_pairwise(std::vector<Term> s, std::vector<Term> p, std::size_t i,
                                       Substitution sigma, MatchContext ctx) {
  if (i == s.size()) {
    co_yield sigma;
    co_return;
  }
  for (const auto &r : match_term(s[i], p[i], sigma, ctx))
    for (const auto &q : match_pairwise(s, p, i + 1, r, ctx))
      co_yield q;
}

// ---- sequences -------------------------------------------------------------

struct SeqProblem {
  std::vector<Term> s, p;
  std::vector<std::size_t> min_suffix; // least number of subjects p[i..] can take
  OperationSignature op;
  MatchContext ctx;
};

std::size_t min_length(const Term &p, const OperationSignature &op) {
  if (!p.is_wildcard())
    return 1;
  const auto &w = p.wildcard();
  if (w.kind == WildcardKind::star || w.optional())
    return 0;
  (void)op;
  return 1;
}

Generator<Substitution> seq_step(std::shared_ptr<const SeqProblem> pr, std::size_t i, std::size_t j,
                                 Substitution sigma) {
  const MatchContext &ctx = pr->ctx;
  ctx.node();
  const std::size_t S = pr->s.size();
  if (i == pr->p.size()) {
    if (j == S)
      co_yield sigma;
    co_return;
  }
  const std::size_t avail = S - j;
  if (avail < pr->min_suffix[i])
    co_return;
  const std::size_t max_take = avail - pr->min_suffix[i + 1];
  const Term &p = pr->p[i];

  if (p.is_wildcard()) {
    const auto &w = p.wildcard();
    const bool wrapped = w.kind == WildcardKind::regular && pr->op.associative && w.symbol_class.empty();
    if (w.sequence() || wrapped) {
      const Binding *bound = w.anonymous() ? nullptr : sigma.find(w.name);
      if (bound) {
        const auto items = contents(*bound, pr->op, wrapped);
        ctx.compare();
        if (items.size() <= max_take && std::equal(items.begin(), items.end(), pr->s.begin() + j))
          for (const auto &r : seq_step(pr, i + 1, j + items.size(), sigma))
            co_yield r;
        if (is_default(w, *bound))
          for (const auto &r : seq_step(pr, i + 1, j, sigma))
            co_yield r;
        co_return;
      }
      const std::size_t lo = w.kind == WildcardKind::star ? 0 : 1;
      for (std::size_t len = lo; len <= max_take; ++len) {
        ctx.compare();
        std::vector<Term> slice(pr->s.begin() + j, pr->s.begin() + j + len);
        Substitution next = sigma;
        if (!w.anonymous()) {
          Binding b = w.sequence() ? Binding::sequence(std::move(slice)) : wrap(ctx, pr->op, std::move(slice));
          if (!next.bind(w.name, std::move(b)))
            continue;
        }
        for (const auto &r : seq_step(pr, i + 1, j + len, std::move(next)))
          co_yield r;
      }
      if (wrapped && w.optional()) {
        Substitution next = sigma;
        if (w.anonymous() || next.bind(w.name, Binding::single(*w.default_value)))
          for (const auto &r : seq_step(pr, i + 1, j, std::move(next)))
            co_yield r;
      }
      co_return;
    }
    if (max_take >= 1)
      for (const auto &r : match_term(pr->s[j], p, sigma, ctx))
        for (const auto &q : seq_step(pr, i + 1, j + 1, r))
          co_yield q;
    if (w.optional()) {
      // the variable consumes nothing and takes its default
      if (w.anonymous() || sigma.bind(w.name, Binding::single(*w.default_value)))
        for (const auto &r : seq_step(pr, i + 1, j, std::move(sigma)))
          co_yield r;
    }
    co_return;
  }
  if (max_take >= 1)
    for (const auto &r : match_term(pr->s[j], p, sigma, ctx))
      for (const auto &q : seq_step(pr, i + 1, j + 1, r))
        co_yield q;
}

Generator<Substitution> sequence_impl(std::vector<Term> s, std::vector<Term> p, Substitution sigma,
                                      OperationSignature op, MatchContext ctx) {
  auto pr = std::make_shared<SeqProblem>();
  pr->min_suffix.assign(p.size() + 1, 0);
  for (std::size_t i = p.size(); i-- > 0;)
    pr->min_suffix[i] = pr->min_suffix[i + 1] + min_length(p[i], op);
  pr->s = std::move(s);
  pr->p = std::move(p);
  pr->op = std::move(op);
  pr->ctx = ctx;
  for (const auto &r : seq_step(std::move(pr), 0, 0, std::move(sigma)))
    co_yield r;
}

// ---- distribution ----------------------------------------------------------

Generator<Substitution> distribute_impl(Multiset m, std::vector<SequenceVar> vars, Substitution sigma,
                                        OperationSignature op, MatchContext ctx) {
  if (vars.empty()) {
    if (m.total() == 0)
      co_yield sigma;
    co_return;
  }
  std::vector<const std::pair<Term, std::size_t> *> terms;
  std::vector<std::shared_ptr<const diophantine::SolutionSet>> sols;
  diophantine::Equation eq;
  for (const auto &v : vars)
    eq.coefficients.push_back(static_cast<std::int64_t>(v.multiplicity));
  for (const auto &e : m.entries()) {
    if (e.second == 0)
      continue;
    eq.constant = static_cast<std::int64_t>(e.second);
    auto s = cache_of(ctx).solve(eq);
    if (s->empty())
      co_return;
    terms.push_back(&e);
    sols.push_back(std::move(s));
  }
  std::vector<std::size_t> idx(terms.size(), 0);
  while (true) {
    ctx.node();
    bool ok = true;
    Substitution next = sigma;
    for (std::size_t v = 0; v < vars.size() && ok; ++v) {
      std::vector<Term> items;
      for (std::size_t u = 0; u < terms.size(); ++u)
        items.insert(items.end(), static_cast<std::size_t>((*sols[u])[idx[u]][v]), terms[u]->first);
      // the extra constraint for plus variables
      if (vars[v].kind == WildcardKind::plus && items.empty()) {
        ok = false;
        break;
      }
      if (vars[v].name.empty())
        continue;
      Binding b = vars[v].wrap ? wrap(ctx, op, std::move(items)) : Binding::sequence(std::move(items));
      ok = next.bind(vars[v].name, std::move(b));
    }
    if (ok)
      co_yield next;
    // odometer, last term fastest
    bool advanced = false;
    for (std::size_t k = terms.size(); k-- > 0;) {
      if (++idx[k] < sols[k]->size()) {
        advanced = true;
        break;
      }
      idx[k] = 0;
    }
    if (!advanced)
      co_return;
  }
}

// ---- commutative -----------------------------------------------------------

struct CommPlan {
  OperationSignature op;
  MatchContext ctx;
  std::vector<Term> ground;    // phase 1
  std::vector<Term> compounds; // phase 3
  std::vector<Term> singles;   // phase 5
  std::vector<Term> wrapped;   // regular variables under an associative head
  std::vector<Term> sequences; // plus / star
};

struct CommState {
  Multiset m;
  Substitution sigma;
  std::vector<char> done_single, done_wrapped, done_seq;
};

std::size_t ground_count(const Term &t) {
  if (t.ground())
    return t.size();
  std::size_t n = 0;
  for (const Term &a : t.args())
    n += ground_count(a);
  return n;
}

// Phases 2 and 4: arguments whose variable is already bound are forced.
Generator<CommState> forced(std::shared_ptr<const CommPlan> plan, CommState st) {
  plan->ctx.node();
  struct Pick {
    const Term *p = nullptr;
    bool wrapped = false;
  } pick;
  auto scan = [&](const std::vector<Term> &list, std::vector<char> &done, bool wrapped) {
    for (std::size_t k = 0; k < list.size() && !pick.p; ++k) {
      const auto &w = list[k].wildcard();
      if (!done[k] && !w.anonymous() && st.sigma.contains(w.name)) {
        done[k] = 1;
        pick = {&list[k], wrapped};
      }
    }
  };
  scan(plan->singles, st.done_single, false);
  scan(plan->wrapped, st.done_wrapped, true);
  scan(plan->sequences, st.done_seq, false);
  if (!pick.p) {
    co_yield st;
    co_return;
  }
  const auto &w = pick.p->wildcard();
  const Binding &b = *st.sigma.find(w.name);
  const auto items = contents(b, plan->op, pick.wrapped);
  CommState take = st;
  plan->ctx.compare();
  const bool class_ok = w.symbol_class.empty() ||
                        (!b.is_sequence() && b.term().is_symbol() && plan->ctx.sig->in_class(w.symbol_class, b.term().name()));
  // sequences bound outside a commutative head must already be in canonical order
  const bool order_ok = std::is_sorted(items.begin(), items.end());
  if (class_ok && order_ok && take.m.remove_all(items))
    for (const auto &r : forced(plan, std::move(take)))
      co_yield r;
  if (is_default(w, b))
    for (const auto &r : forced(plan, std::move(st)))
      co_yield r;
}

// Phase 3: compound arguments against distinct subject values.
Generator<CommState> compounds(std::shared_ptr<const CommPlan> plan, CommState st, std::size_t k) {
  if (k == plan->compounds.size()) {
    co_yield st;
    co_return;
  }
  const auto entries = st.m.entries();
  for (const auto &[u, count] : entries) {
    if (count == 0)
      continue;
    for (const auto &r : match_term(u, plan->compounds[k], st.sigma, plan->ctx)) {
      CommState next = st;
      next.m.remove(u);
      next.sigma = r;
      for (const auto &q : compounds(plan, std::move(next), k + 1))
        co_yield q;
    }
  }
}

// Phase 5: regular variables taking exactly one argument.
Generator<CommState> singles(std::shared_ptr<const CommPlan> plan, CommState st, std::size_t k) {
  if (k == plan->singles.size()) {
    co_yield st;
    co_return;
  }
  plan->ctx.node();
  const auto &w = plan->singles[k].wildcard();
  if (st.done_single[k]) {
    for (const auto &r : singles(plan, std::move(st), k + 1))
      co_yield r;
    co_return;
  }
  if (!w.anonymous() && st.sigma.contains(w.name)) {
    st.done_single[k] = 1;
    const Binding &b = *st.sigma.find(w.name);
    CommState take = st;
    plan->ctx.compare();
    if (take.m.remove(b.term()))
      for (const auto &r : singles(plan, std::move(take), k + 1))
        co_yield r;
    if (is_default(w, b))
      for (const auto &r : singles(plan, std::move(st), k + 1))
        co_yield r;
    co_return;
  }
  const auto entries = st.m.entries();
  for (const auto &[u, count] : entries) {
    if (count == 0)
      continue;
    plan->ctx.compare();
    if (!w.symbol_class.empty() && !(u.is_symbol() && plan->ctx.sig->in_class(w.symbol_class, u.name())))
      continue;
    CommState next = st;
    next.m.remove(u);
    next.done_single[k] = 1;
    if (!w.anonymous())
      next.sigma.bind(w.name, Binding::single(u));
    for (const auto &r : singles(plan, std::move(next), k + 1))
      co_yield r;
  }
  if (w.optional()) {
    st.done_single[k] = 1;
    if (w.anonymous() || st.sigma.bind(w.name, Binding::single(*w.default_value)))
      for (const auto &r : singles(plan, std::move(st), k + 1))
        co_yield r;
  }
}

// Phase 6.
Generator<Substitution> sequences(std::shared_ptr<const CommPlan> plan, CommState st) {
  std::vector<SequenceVar> vars;
  std::map<std::string, std::size_t> slot;
  auto add = [&](const WildcardSpec &w, WildcardKind kind, bool wrap) {
    if (!w.anonymous()) {
      auto [it, fresh] = slot.emplace(w.name, vars.size());
      if (!fresh) {
        ++vars[it->second].multiplicity;
        return;
      }
    }
    vars.push_back({w.name, kind, 1, wrap});
  };
  for (std::size_t k = 0; k < plan->sequences.size(); ++k)
    if (!st.done_seq[k])
      add(plan->sequences[k].wildcard(), plan->sequences[k].wildcard().kind, false);

  // wrapped regular variables; optional ones may instead take their default
  std::vector<const WildcardSpec *> wrapped;
  std::set<std::string> seen;
  for (std::size_t k = 0; k < plan->wrapped.size(); ++k) {
    if (st.done_wrapped[k])
      continue;
    const auto &w = plan->wrapped[k].wildcard();
    if (w.anonymous() || seen.insert(w.name).second)
      wrapped.push_back(&w);
  }
  std::size_t n_optional = 0;
  for (auto *w : wrapped)
    n_optional += w->optional();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n_optional); ++mask) {
    auto v = vars;
    auto s = slot;
    Substitution sigma = st.sigma;
    bool ok = true;
    std::size_t bit = 0;
    for (auto *w : wrapped) {
      const bool absent = w->optional() && (mask >> bit++ & 1);
      if (absent) {
        ok = ok && (w->anonymous() || sigma.bind(w->name, Binding::single(*w->default_value)));
        continue;
      }
      std::size_t mult = 0;
      for (const Term &t : plan->wrapped)
        mult += !w->anonymous() && t.wildcard().name == w->name;
      v.push_back({w->name, WildcardKind::plus, w->anonymous() ? 1 : mult, true});
    }
    if (!ok)
      continue;
    for (const auto &r : distribute_impl(st.m, std::move(v), std::move(sigma), plan->op, plan->ctx))
      co_yield r;
  }
}

Generator<Substitution> commutative_impl(std::vector<Term> s, std::vector<Term> p, Substitution sigma,
                                         OperationSignature op, MatchContext ctx) {
  auto plan = std::make_shared<CommPlan>();
  for (Term &a : p) {
    if (a.ground())
      plan->ground.push_back(std::move(a));
    else if (a.is_compound())
      plan->compounds.push_back(std::move(a));
    else if (a.wildcard().sequence())
      plan->sequences.push_back(std::move(a));
    else if (op.associative && a.wildcard().symbol_class.empty())
      plan->wrapped.push_back(std::move(a));
    else
      plan->singles.push_back(std::move(a));
  }
  // most selective first
  std::stable_sort(plan->compounds.begin(), plan->compounds.end(),
                   [](const Term &a, const Term &b) { return ground_count(a) > ground_count(b); });
  plan->op = std::move(op);
  plan->ctx = ctx;

  CommState st;
  st.m = Multiset(std::move(s));
  st.sigma = std::move(sigma);
  for (const Term &g : plan->ground) {
    ctx.compare();
    if (!st.m.remove(g))
      co_return;
  }
  // cheap size bound before any search
  std::size_t needed = plan->compounds.size();
  for (const Term &t : plan->singles)
    needed += !t.wildcard().optional();
  for (const Term &t : plan->wrapped)
    needed += !t.wildcard().optional();
  for (const Term &t : plan->sequences)
    needed += t.wildcard().kind == WildcardKind::plus;
  if (st.m.total() < needed)
    co_return;
  st.done_single.assign(plan->singles.size(), 0);
  st.done_wrapped.assign(plan->wrapped.size(), 0);
  st.done_seq.assign(plan->sequences.size(), 0);

  for (const auto &a : forced(plan, std::move(st)))
    for (const auto &b : compounds(plan, a, 0))
      for (const auto &c : forced(plan, b))
        for (const auto &d : singles(plan, c, 0))
          for (const auto &r : sequences(plan, d))
            co_yield r;
}

Generator<Substitution> match_args(std::vector<Term> s, std::vector<Term> p, Substitution sigma,
                                   const OperationSignature *op, MatchContext ctx) {
  if (!op || !op->arity.variadic) {
    if (s.size() != p.size())
      co_return;
    if (op && op->commutative) {
      for (const auto &r : commutative_impl(std::move(s), std::move(p), std::move(sigma), *op, ctx))
        co_yield r;
      co_return;
    }
    for (const auto &r : match_pairwise(std::move(s), std::move(p), 0, std::move(sigma), ctx))
      co_yield r;
  } else if (op->commutative) {
    for (const auto &r : commutative_impl(std::move(s), std::move(p), std::move(sigma), *op, ctx))
      co_yield r;
  } else {
    for (const auto &r : sequence_impl(std::move(s), std::move(p), std::move(sigma), *op, ctx))
      co_yield r;
  }
}

Generator<Substitution> unique(Generator<Substitution> in) {
  std::unordered_set<Substitution, SubstitutionHash> seen;
  for (const auto &s : in)
    if (seen.insert(s).second)
      co_yield s;
}

} // namespace

Generator<Substitution> match(Term subject, Pattern pattern, const SignatureTable &sig, MatchStats *stats) {
  MatchContext ctx{&sig, stats, nullptr};
  std::unordered_set<Substitution, SubstitutionHash> seen;
  for (const auto &s : match_term(subject, pattern.term, {}, ctx)) {
    if (!constraints_hold(pattern.constraints, s))
      continue;
    if (seen.insert(s).second)
      co_yield s;
  }
}

std::vector<Substitution> match_sorted(const Term &subject, const Pattern &pattern, const SignatureTable &sig) {
  std::vector<Substitution> out;
  for (const auto &s : match(subject, pattern, sig))
    out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

Generator<Substitution> match_sequence(std::vector<Term> subjects, std::vector<Term> patterns, Substitution partial,
                                       OperationSignature head, MatchContext ctx) {
  return unique(sequence_impl(std::move(subjects), std::move(patterns), std::move(partial), std::move(head), ctx));
}

Generator<Substitution> match_commutative(CommutativeState state, OperationSignature head, MatchContext ctx) {
  return unique(commutative_impl(std::move(state.subject_args), std::move(state.pattern_args),
                                 std::move(state.partial), std::move(head), ctx));
}

namespace {
Generator<Substitution> distribute_bound_first(std::vector<Term> remainder, std::vector<SequenceVar> vars,
                                               Substitution partial, OperationSignature head, MatchContext ctx) {
  Multiset m(std::move(remainder));
  std::vector<SequenceVar> open;
  for (auto &v : vars) {
    const Binding *b = v.name.empty() ? nullptr : partial.find(v.name);
    if (!b) {
      open.push_back(std::move(v));
      continue;
    }
    const auto items = contents(*b, head, v.wrap);
    if (!std::is_sorted(items.begin(), items.end()))
      co_return;
    for (std::size_t k = 0; k < v.multiplicity; ++k)
      if (!m.remove_all(items))
        co_return;
  }
  for (const auto &r : distribute_impl(std::move(m), std::move(open), std::move(partial), std::move(head), ctx))
    co_yield r;
}
} // namespace

Generator<Substitution> distribute_sequence_vars(std::vector<Term> remainder, std::vector<SequenceVar> vars,
                                                 Substitution partial, OperationSignature head, MatchContext ctx) {
  return unique(distribute_bound_first(std::move(remainder), std::move(vars), std::move(partial), std::move(head),
                                       ctx));
}

} // namespace termweave
