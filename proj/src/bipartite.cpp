#include "termweave/bipartite.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace termweave::bipartite {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
}

Graph::Graph(std::size_t left, std::size_t right) : left_(left), right_(right), adj_(left), classes_(left) {
  std::iota(classes_.begin(), classes_.end(), std::size_t{0});
}

std::size_t Graph::add_edge(std::size_t l, std::size_t r) {
  if (l >= left_ || r >= right_)
    throw std::out_of_range("bipartite edge endpoint out of range");
  for (std::size_t e : adj_[l])
    if (edges_[e].right == r)
      return e;
  edges_.push_back({l, r});
  adj_[l].push_back(edges_.size() - 1);
  return edges_.size() - 1;
}

void Graph::set_subject_classes(std::vector<std::size_t> classes) {
  if (classes.size() != left_)
    throw std::invalid_argument("one subject class per left node");
  classes_ = std::move(classes);
}

namespace {

Matching collect(const Graph &g, const std::vector<std::size_t> &mate_l) {
  Matching m;
  for (std::size_t l = 0; l < mate_l.size(); ++l)
    if (mate_l[l] != npos)
      m.push_back(g.edges()[mate_l[l]]);
  return m;
}

// mate_l / mate_r hold edge indices
void hk(const Graph &g, std::vector<std::size_t> &mate_l, std::vector<std::size_t> &mate_r) {
  const std::size_t L = g.left_count();
  mate_l.assign(L, npos);
  mate_r.assign(g.right_count(), npos);
  std::vector<std::size_t> dist(L);
  constexpr std::size_t inf = npos;

  auto bfs = [&] {
    std::queue<std::size_t> q;
    for (std::size_t l = 0; l < L; ++l) {
      dist[l] = mate_l[l] == npos ? 0 : inf;
      if (dist[l] == 0)
        q.push(l);
    }
    bool found = false;
    while (!q.empty()) {
      const std::size_t l = q.front();
      q.pop();
      for (std::size_t e : g.adjacent(l)) {
        const std::size_t m = mate_r[g.edges()[e].right];
        if (m == npos)
          found = true;
        else if (dist[g.edges()[m].left] == inf) {
          dist[g.edges()[m].left] = dist[l] + 1;
          q.push(g.edges()[m].left);
        }
      }
    }
    return found;
  };

  auto dfs = [&](auto &self, std::size_t l) -> bool {
    for (std::size_t e : g.adjacent(l)) {
      const std::size_t r = g.edges()[e].right;
      const std::size_t m = mate_r[r];
      if (m == npos || (dist[g.edges()[m].left] == dist[l] + 1 && self(self, g.edges()[m].left))) {
        mate_l[l] = e;
        mate_r[r] = e;
        return true;
      }
    }
    dist[l] = inf;
    return false;
  };

  while (bfs())
    for (std::size_t l = 0; l < L; ++l)
      if (mate_l[l] == npos)
        dfs(dfs, l);
}

struct State {
  std::vector<char> alive, lock_l, lock_r;
  std::vector<std::size_t> mate_l, mate_r;
};

bool usable(const Graph &g, const State &s, std::size_t e) {
  const Edge &ed = g.edges()[e];
  return s.alive[e] && !s.lock_l[ed.left] && !s.lock_r[ed.right];
}

void unmatch(const Graph &g, State &s, std::size_t e) {
  s.mate_l[g.edges()[e].left] = npos;
  s.mate_r[g.edges()[e].right] = npos;
}

void match(const Graph &g, State &s, std::size_t e) {
  s.mate_l[g.edges()[e].left] = e;
  s.mate_r[g.edges()[e].right] = e;
}

// Another maximum matching M' of the unlocked part, and an edge of M \ M'.
// Either an even alternating path starting at a free vertex (length two is
// enough) or an alternating cycle in the directed exchange graph.
bool find_exchange(const Graph &g, const State &s, State &next, std::size_t &removed) {
  const auto &E = g.edges();
  for (std::size_t e = 0; e < E.size(); ++e) {
    if (!usable(g, s, e) || s.mate_l[E[e].left] == e)
      continue;
    const std::size_t ml = s.mate_l[E[e].left], mr = s.mate_r[E[e].right];
    if ((ml == npos) == (mr == npos))
      continue;
    removed = ml == npos ? mr : ml;
    next = s;
    unmatch(g, next, removed);
    match(g, next, e);
    return true;
  }

  // nodes: left l -> l, right r -> L + r. matched edges go L->R, others R->L
  const std::size_t L = g.left_count(), N = L + g.right_count();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(N); // (target, edge)
  for (std::size_t e = 0; e < E.size(); ++e) {
    if (!usable(g, s, e))
      continue;
    if (s.mate_l[E[e].left] == e)
      out[E[e].left].push_back({L + E[e].right, e});
    else
      out[L + E[e].right].push_back({E[e].left, e});
  }
  std::vector<char> colour(N, 0);
  std::vector<std::size_t> via(N, npos), parent(N, npos);
  for (std::size_t root = 0; root < N; ++root) {
    if (colour[root])
      continue;
    // iterative dfs keeping (node, next arc) frames
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    colour[root] = 1;
    while (!stack.empty()) {
      auto &[v, i] = stack.back();
      if (i == out[v].size()) {
        colour[v] = 2;
        stack.pop_back();
        continue;
      }
      const auto [w, e] = out[v][i++];
      if (colour[w] == 0) {
        colour[w] = 1;
        parent[w] = v;
        via[w] = e;
        stack.push_back({w, 0});
      } else if (colour[w] == 1) {
        // cycle w -> ... -> v -> w
        std::vector<std::size_t> cycle{e};
        for (std::size_t u = v; u != w; u = parent[u])
          cycle.push_back(via[u]);
        next = s;
        removed = npos;
        for (std::size_t c : cycle)
          if (s.mate_l[E[c].left] == c) {
            unmatch(g, next, c);
            if (removed == npos)
              removed = c;
          }
        for (std::size_t c : cycle)
          if (s.mate_l[E[c].left] != c)
            match(g, next, c);
        return true;
      }
    }
  }
  return false;
}

// Yields every maximum matching of the current subproblem except s itself.
Generator<Matching> enumerate_rest(const Graph *g, State s) {
  State other;
  std::size_t e = npos;
  if (!find_exchange(*g, s, other, e))
    co_return;
  co_yield collect(*g, other.mate_l);

  State with = s; // keep e: its endpoints leave the problem
  with.lock_l[g->edges()[e].left] = 1;
  with.lock_r[g->edges()[e].right] = 1;
  for (const Matching &m : enumerate_rest(g, std::move(with)))
    co_yield m;

  other.alive[e] = 0; // drop e, continue from the matching without it
  for (const Matching &m : enumerate_rest(g, std::move(other)))
    co_yield m;
}

Generator<Matching> enumerate_all(const Graph *g) {
  State s;
  hk(*g, s.mate_l, s.mate_r);
  co_yield collect(*g, s.mate_l);
  s.alive.assign(g->edges().size(), 1);
  s.lock_l.assign(g->left_count(), 0);
  s.lock_r.assign(g->right_count(), 0);
  for (const Matching &m : enumerate_rest(g, std::move(s)))
    co_yield m;
}

} // namespace

Matching hopcroft_karp(const Graph &g) {
  std::vector<std::size_t> mate_l, mate_r;
  hk(g, mate_l, mate_r);
  return collect(g, mate_l);
}

Generator<Matching> enumerate_maximum_matchings(const Graph &g) { return enumerate_all(&g); }

bool is_order_preserving(const Matching &m, const Graph &g) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      const Edge &a = m[i], &b = m[j];
      if (g.subject_class(a.left) == g.subject_class(b.left) && a.right > b.right && !(a.left > b.left))
        return false;
    }
  return true;
}

} // namespace termweave::bipartite
