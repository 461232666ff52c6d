#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace alphatrace {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;

// A k-uniform multi-hypergraph on vertices 0..n-1. Edges are stored sorted
// and deduplicated; repeated hyperedges are expressed by multiplicity.
// Values are immutable once constructed.
class Hypergraph {
 public:
  // Throws ParameterError on a malformed edge list (wrong cardinality,
  // repeated vertex, vertex out of range, zero multiplicity).
  // Identical edges given twice are merged and their multiplicities added.
  Hypergraph(unsigned k, std::size_t n, std::vector<Edge> edges,
             std::vector<unsigned> multiplicity = {});

  unsigned k() const { return k_; }
  std::size_t n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  unsigned multiplicity(std::size_t e) const { return mult_[e]; }
  const std::vector<unsigned>& multiplicities() const { return mult_; }
  // Number of distinct hyperedges.
  std::size_t edge_count() const { return edges_.size(); }
  // Number of hyperedges counted with multiplicity.
  std::size_t total_edges() const;
  bool is_simple() const;

  unsigned degree(Vertex v) const { return degree_[v]; }
  const std::vector<unsigned>& degrees() const { return degree_; }
  // Edge indices incident to v, ascending.
  const std::vector<std::size_t>& incident(Vertex v) const { return incidence_[v]; }
  bool contains(std::size_t e, Vertex v) const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.edges_ == b.edges_ && a.mult_ == b.mult_;
  }

 private:
  unsigned k_;
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<unsigned> mult_;
  std::vector<unsigned> degree_;
  std::vector<std::vector<std::size_t>> incidence_;
};

// Re-labels vertices: vertex v of h becomes perm[v].
Hypergraph relabel(const Hypergraph& h, const std::vector<Vertex>& perm);

std::vector<unsigned> degree_sequence(const Hypergraph& h);
// Non-increasing.
std::vector<unsigned> sorted_degree_sequence(const Hypergraph& h);

bool is_connected(const Hypergraph& h);
bool is_linear(const Hypergraph& h);

// Length (in edges) of the shortest Berge cycle; nullopt when acyclic.
// Repeated edges and pairs of edges sharing two vertices form 2-cycles.
std::optional<std::size_t> girth(const Hypergraph& h);

// Largest Berge distance between two vertices, in edges.
// Throws PreconditionError on a disconnected hypergraph.
std::size_t diameter(const Hypergraph& h);

struct Classification {
  enum class Kind { Hypertree, LinearUnicyclic, Other };
  Kind kind = Kind::Other;
  std::size_t girth = 0;  // set for LinearUnicyclic

  bool is_hypertree() const { return kind == Kind::Hypertree; }
  bool is_linear_unicyclic() const { return kind == Kind::LinearUnicyclic; }
  friend bool operator==(const Classification&, const Classification&) = default;
};

Classification classify(const Hypergraph& h);
std::string to_string(const Classification& c);

// An edge is pendant iff exactly one of its vertices has degree >= 2; that
// vertex is its attachment vertex.
std::optional<Vertex> pendant_attachment(const Hypergraph& h, std::size_t e);
// Edge indices of the pendant edges whose attachment vertex is u.
std::vector<std::size_t> pendant_edges_at(const Hypergraph& h, Vertex u);

// Moves every pendant edge attached at u over to v. Requires at least one
// such edge, u != v, v outside the moved edges and d(u) < d(v) + s.
Hypergraph sigma_transform(const Hypergraph& h, Vertex u, Vertex v);

enum class SlideKind { First, Second, Third };

// A hyperpath e_1..e_r hanging off the rest of the hypergraph (H0) at a
// single vertex `attach`. For First, `target` names the cored path vertex
// H0 is moved to; Second and Third derive their target from the path.
struct PathSite {
  std::vector<std::size_t> path;  // edge indices in path order
  Vertex attach = 0;
  std::optional<Vertex> target;
};

// Spine vertices u_0..u_r of a hyperpath given as ordered edge indices.
// Throws PreconditionError if the edges do not form a hyperpath.
std::vector<Vertex> path_spine(const Hypergraph& h, const std::vector<std::size_t>& path);

Hypergraph path_slide(const Hypergraph& h, SlideKind kind, const PathSite& site);

// Joins `path` (a hyperpath) and h0 by identifying path vertex `at` with
// h0 vertex `v0`. Vertices of h0 keep their labels; the remaining path
// vertices follow. Returned alongside the edge indices of the path copy in
// path order.
struct Coalescence {
  Hypergraph graph;
  std::vector<std::size_t> path_edges;
  Vertex joined;
};
Coalescence coalesce_path(const Hypergraph& h0, Vertex v0, std::size_t path_length,
                          Vertex path_vertex);

// Isomorphism-class key. Equal strings iff the hypergraphs are isomorphic.
// Optional vertex/edge marks are treated as colors that isomorphisms
// must preserve (used by canonical augmentation).
std::string canonical_form(const Hypergraph& h);
std::string canonical_form_marked(const Hypergraph& h, std::optional<Vertex> marked_vertex,
                                  std::optional<std::size_t> marked_edge);

// Canonical-form search gives up on hypergraphs with more vertices than this.
inline constexpr std::size_t kCanonicalMaxVertices = 40;

}  // namespace alphatrace
