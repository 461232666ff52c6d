#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "alphatrace/alpha_poly.hpp"
#include "alphatrace/hypergraph.hpp"

namespace alphatrace {

// Limits on brute-force work. Defaults: order <= 2k+2, at most 6 hyperedges
// (counted with multiplicity); ALPHATRACE_MAX_ORDER / ALPHATRACE_MAX_EDGES
// override them.
struct Budget {
  unsigned max_order = 0;
  std::size_t max_edges = 6;
  // Cap on raw tuples visited by the exhaustive method.
  std::size_t max_tuples = 20'000'000;
};

Budget default_budget(unsigned k);

struct TraceOptions {
  enum class Method {
    // rows grouped by arc-star, only balanced connected configurations
    Grouped,
    // every tuple of nonzero rows, one by one (small inputs only)
    Exhaustive,
  };
  Method method = Method::Grouped;
  unsigned threads = 1;
  std::optional<Budget> budget;
};

// Unscaled partition of the trace sum by row kinds: all diagonal, all edge,
// mixed. trace = (k-1)^(n-1) * (omega1 + omega2 + omega3).
struct TraceParts {
  AlphaPoly omega1;
  AlphaPoly omega2;
  AlphaPoly omega3;
};

// (k-1)^(n-1) * alpha^s * sum_i d_i^s
AlphaPoly phi(const Hypergraph& h, unsigned s);

// Tr_d of the A_alpha tensor by summing the trace formula over assignments.
AlphaPoly trace_bruteforce(const Hypergraph& h, unsigned d, const TraceOptions& opts = {});
TraceParts trace_decomposed(const Hypergraph& h, unsigned d, const TraceOptions& opts = {});

// Tr_d of the adjacency tensor, summing over edge-only assignments.
Rational adjacency_moment(const Hypergraph& h, unsigned d, const TraceOptions& opts = {});

// Closed forms for 0 <= d <= k+2 on simple hypergraphs. Throws
// UnsupportedClosedForm outside that range, and at d = k+1 when k >= 3 and
// the hypergraph contains a complete (k+1)-edge subhypergraph.
AlphaPoly trace_closed(const Hypergraph& h, unsigned d);
bool closed_form_available(const Hypergraph& h, unsigned d);

// The order k+2 closed form; the adjacency part comes from adjacency_moment.
AlphaPoly trace_k_plus_2(const Hypergraph& h);

// Constant of the complete-subhypergraph term at order k+1. Known only for
// k = 2, where it is solved from brute force on the triangle on first use.
Rational complete_constant(unsigned k);

// Sum of arborescence counts over the loop-free digraphs of the complete
// k-uniform hypergraph on k+1 vertices (one digraph per way of rooting each
// edge at a distinct vertex of it).
Integer complete_tree_sum(unsigned k);

// Connected k-valent multi-subhypergraph of a host, on the host's labels.
struct VeblenInfragraph {
  std::vector<unsigned> multiplicity;  // per host edge, 0 if unused
  Hypergraph graph;                    // support edges only
  std::size_t total_edges() const;
};

// All connected Veblen infragraphs with 1..max_edges hyperedges (counted with
// multiplicity), ordered by multiplicity vector.
std::vector<VeblenInfragraph> enumerate_veblen(const Hypergraph& h, std::size_t max_edges);

}  // namespace alphatrace
