#pragma once

#include <cstddef>
#include <vector>

#include "termweave/generator.hpp"

namespace termweave::bipartite {

struct Edge {
  std::size_t left, right;
  friend auto operator<=>(const Edge &, const Edge &) = default;
};

// Left nodes are subject positions, right nodes pattern positions; both are
// numbered in their canonical order. Edge labels live with the caller, keyed
// by edge index.
class Graph {
public:
  Graph(std::size_t left, std::size_t right);

  std::size_t add_edge(std::size_t l, std::size_t r);
  // left nodes with equal class ids hold equal subjects
  void set_subject_classes(std::vector<std::size_t> classes);

  std::size_t left_count() const { return left_; }
  std::size_t right_count() const { return right_; }
  const std::vector<Edge> &edges() const { return edges_; }
  const std::vector<std::size_t> &adjacent(std::size_t l) const { return adj_[l]; } // edge indices
  std::size_t subject_class(std::size_t l) const { return classes_[l]; }

private:
  std::size_t left_, right_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> classes_;
};

// Edges sorted by (left, right).
using Matching = std::vector<Edge>;

Matching hopcroft_karp(const Graph &g);

// Every maximum matching exactly once, hopcroft_karp's first. The graph must
// outlive the generator.
Generator<Matching> enumerate_maximum_matchings(const Graph &g);

// No two matched edges between equivalent subjects cross.
bool is_order_preserving(const Matching &m, const Graph &g);

} // namespace termweave::bipartite
