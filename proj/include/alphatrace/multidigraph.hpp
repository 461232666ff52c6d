#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "alphatrace/alpha_poly.hpp"
#include "alphatrace/hypergraph.hpp"

namespace alphatrace {

// One tensor index i_j alpha_j: a root and the k-1 trailing indices.
struct IndexRow {
  Vertex root = 0;
  std::vector<Vertex> rest;

  bool is_diagonal() const;
  friend auto operator<=>(const IndexRow&, const IndexRow&) = default;
};

// A d-tuple of rows with non-decreasing roots.
using Assignment = std::vector<IndexRow>;

// Arc-multiset digraph. Vertex set is exactly the set of arc endpoints.
class MultiDigraph {
 public:
  using Arc = std::pair<Vertex, Vertex>;

  MultiDigraph() = default;

  void add_arc(Vertex tail, Vertex head, unsigned count = 1);

  const std::map<Arc, unsigned>& arcs() const { return arcs_; }
  std::vector<Vertex> vertices() const;
  std::size_t vertex_count() const { return out_.size(); }
  std::size_t arc_count() const { return arc_total_; }
  unsigned out_degree(Vertex v) const;
  unsigned in_degree(Vertex v) const;
  bool has_vertex(Vertex v) const { return out_.count(v) > 0; }

  MultiDigraph without_loops() const;
  bool is_balanced() const;
  bool is_weakly_connected() const;

  // "v: w*mult w*mult ..." one line per vertex, for golden tests.
  std::string dump() const;

  friend bool operator==(const MultiDigraph& a, const MultiDigraph& b) {
    return a.arcs_ == b.arcs_;
  }

 private:
  std::map<Arc, unsigned> arcs_;
  // every endpoint has an entry in both maps, possibly zero
  std::map<Vertex, unsigned> out_;
  std::map<Vertex, unsigned> in_;
  std::size_t arc_total_ = 0;
};

MultiDigraph from_assignment(const Assignment& f);

// Product of factorials of arc multiplicities.
Integer b_factor(const MultiDigraph& g);
// Product of factorials of out-degrees.
Integer c_factor(const MultiDigraph& g);

// Spanning arborescences in which every vertex has a directed path to
// `root` (one outgoing tree arc per non-root vertex). Loops are ignored.
// Throws PreconditionError on an empty digraph or a root not in the graph.
Integer arborescence_count(const MultiDigraph& g, Vertex root);

// Eulerian circuits with parallel arcs treated as distinguishable, up to
// cyclic rotation (BEST theorem). Zero unless balanced and connected.
// The arc-less digraph has exactly one (empty) circuit.
Integer euler_tour_count(const MultiDigraph& g);

// Closed walks through every arc exactly once, as vertex sequences with a
// distinguished starting position: |E| * euler_tour_count / b_factor. This is
// the tour count entering the trace formula.
Integer closed_walk_count(const MultiDigraph& g);

// Fraction-free Gaussian elimination. Square matrix, row-major.
Integer bareiss_determinant(std::vector<std::vector<Integer>> m);

Integer factorial(unsigned n);

}  // namespace alphatrace
