#include "alphatrace/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "alphatrace/errors.hpp"

namespace alphatrace {

Hypergraph::Hypergraph(unsigned k, std::size_t n, std::vector<Edge> edges,
                       std::vector<unsigned> multiplicity)
    : k_(k), n_(n) {
  if (k < 2) throw ParameterError("edge cardinality k must be at least 2");
  if (!multiplicity.empty() && multiplicity.size() != edges.size()) {
    throw ParameterError("multiplicity list length does not match edge count");
  }
  if (multiplicity.empty()) multiplicity.assign(edges.size(), 1);

  std::map<Edge, std::size_t> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge e = std::move(edges[i]);
    if (e.size() != k) {
      throw ParameterError("hyperedge " + std::to_string(i) + " has " +
                           std::to_string(e.size()) + " vertices, expected " +
                           std::to_string(k));
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw ParameterError("hyperedge " + std::to_string(i) + " repeats a vertex");
    }
    if (e.back() >= n) {
      throw ParameterError("hyperedge " + std::to_string(i) + " uses vertex " +
                           std::to_string(e.back()) + " >= n");
    }
    if (multiplicity[i] == 0) {
      throw ParameterError("hyperedge multiplicity must be positive");
    }
    auto [it, inserted] = seen.emplace(e, edges_.size());
    if (inserted) {
      edges_.push_back(std::move(e));
      mult_.push_back(multiplicity[i]);
    } else {
      mult_[it->second] += multiplicity[i];
    }
  }

  degree_.assign(n_, 0);
  incidence_.assign(n_, {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    for (Vertex v : edges_[e]) {
      degree_[v] += mult_[e];
      incidence_[v].push_back(e);
    }
  }
}

std::size_t Hypergraph::total_edges() const {
  return std::accumulate(mult_.begin(), mult_.end(), std::size_t{0});
}

bool Hypergraph::is_simple() const {
  return std::all_of(mult_.begin(), mult_.end(), [](unsigned m) { return m == 1; });
}

bool Hypergraph::contains(std::size_t e, Vertex v) const {
  return std::binary_search(edges_[e].begin(), edges_[e].end(), v);
}

Hypergraph relabel(const Hypergraph& h, const std::vector<Vertex>& perm) {
  if (perm.size() != h.n()) throw ParameterError("relabel: permutation size mismatch");
  std::vector<Edge> edges;
  edges.reserve(h.edge_count());
  for (const auto& e : h.edges()) {
    Edge mapped;
    for (Vertex v : e) mapped.push_back(perm[v]);
    edges.push_back(std::move(mapped));
  }
  return Hypergraph(h.k(), h.n(), std::move(edges), h.multiplicities());
}

std::vector<unsigned> degree_sequence(const Hypergraph& h) { return h.degrees(); }

std::vector<unsigned> sorted_degree_sequence(const Hypergraph& h) {
  auto d = h.degrees();
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

namespace {

// Bipartite incidence graph: vertex nodes 0..n-1, edge-copy nodes after.
// Each copy of a repeated hyperedge is its own node.
struct Incidence {
  std::size_t vertex_nodes = 0;
  std::vector<std::vector<std::size_t>> adj;
};

Incidence incidence_graph(const Hypergraph& h) {
  Incidence g;
  g.vertex_nodes = h.n();
  g.adj.assign(h.n(), {});
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    for (unsigned c = 0; c < h.multiplicity(e); ++c) {
      std::size_t node = g.adj.size();
      g.adj.emplace_back();
      for (Vertex v : h.edge(e)) {
        g.adj[node].push_back(v);
        g.adj[v].push_back(node);
      }
    }
  }
  return g;
}

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> bfs(const Incidence& g, std::size_t src) {
  std::vector<std::size_t> dist(g.adj.size(), kUnreached);
  std::deque<std::size_t> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t y : g.adj[x]) {
      if (dist[y] == kUnreached) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

}  // namespace

bool is_connected(const Hypergraph& h) {
  if (h.n() == 0) return true;
  auto g = incidence_graph(h);
  auto dist = bfs(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::size_t d) { return d == kUnreached; });
}

bool is_linear(const Hypergraph& h) {
  if (!h.is_simple()) return false;
  for (std::size_t a = 0; a < h.edge_count(); ++a) {
    for (std::size_t b = a + 1; b < h.edge_count(); ++b) {
      std::vector<Vertex> common;
      std::set_intersection(h.edge(a).begin(), h.edge(a).end(), h.edge(b).begin(),
                            h.edge(b).end(), std::back_inserter(common));
      if (common.size() > 1) return false;
    }
  }
  return true;
}

std::optional<std::size_t> girth(const Hypergraph& h) {
  auto g = incidence_graph(h);
  std::size_t best = kUnreached;
  // Shortest cycle via BFS from every node; the incidence graph is bipartite
  // so every cycle has even length 2L, L being the Berge cycle length.
  for (std::size_t s = 0; s < g.adj.size(); ++s) {
    std::vector<std::size_t> dist(g.adj.size(), kUnreached);
    std::vector<std::size_t> parent(g.adj.size(), kUnreached);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y : g.adj[x]) {
        if (dist[y] == kUnreached) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (parent[x] != y) {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  if (best == kUnreached) return std::nullopt;
  return best / 2;
}

std::size_t diameter(const Hypergraph& h) {
  if (!is_connected(h)) throw PreconditionError("diameter: hypergraph is disconnected");
  auto g = incidence_graph(h);
  std::size_t best = 0;
  for (Vertex v = 0; v < h.n(); ++v) {
    auto dist = bfs(g, v);
    for (Vertex w = 0; w < h.n(); ++w) best = std::max(best, dist[w] / 2);
  }
  return best;
}

Classification classify(const Hypergraph& h) {
  Classification c;
  if (!h.is_simple() || !is_connected(h)) return c;
  const std::size_t m = h.edge_count();
  const std::size_t k = h.k();
  if (h.n() == m * (k - 1) + 1) {
    c.kind = Classification::Kind::Hypertree;
    return c;
  }
  if (m > 0 && h.n() == m * (k - 1) && is_linear(h)) {
    c.kind = Classification::Kind::LinearUnicyclic;
    c.girth = girth(h).value_or(0);
  }
  return c;
}

std::string to_string(const Classification& c) {
  switch (c.kind) {
    case Classification::Kind::Hypertree:
      return "Hypertree";
    case Classification::Kind::LinearUnicyclic:
      return "LinearUnicyclic(" + std::to_string(c.girth) + ")";
    case Classification::Kind::Other:
      break;
  }
  return "Other";
}

std::optional<Vertex> pendant_attachment(const Hypergraph& h, std::size_t e) {
  if (h.multiplicity(e) != 1) return std::nullopt;
  std::optional<Vertex> anchor;
  for (Vertex v : h.edge(e)) {
    if (h.degree(v) >= 2) {
      if (anchor) return std::nullopt;
      anchor = v;
    }
  }
  return anchor;
}

std::vector<std::size_t> pendant_edges_at(const Hypergraph& h, Vertex u) {
  std::vector<std::size_t> out;
  for (std::size_t e : h.incident(u)) {
    if (pendant_attachment(h, e) == u) out.push_back(e);
  }
  return out;
}

namespace {

// Replaces `from` by `to` in the listed edges.
Hypergraph move_edges(const Hypergraph& h, const std::vector<std::size_t>& which,
                      Vertex from, Vertex to) {
  std::vector<Edge> edges = h.edges();
  for (std::size_t e : which) {
    for (Vertex& x : edges[e]) {
      if (x == from) x = to;
    }
  }
  return Hypergraph(h.k(), h.n(), std::move(edges), h.multiplicities());
}

void check_vertex(const Hypergraph& h, Vertex v, const char* what) {
  if (v >= h.n()) {
    throw ParameterError(std::string(what) + ": vertex " + std::to_string(v) +
                         " out of range");
  }
}

}  // namespace

Hypergraph sigma_transform(const Hypergraph& h, Vertex u, Vertex v) {
  check_vertex(h, u, "sigma_transform");
  check_vertex(h, v, "sigma_transform");
  if (u == v) throw PreconditionError("sigma_transform: u and v coincide");
  auto moved = pendant_edges_at(h, u);
  if (moved.empty()) {
    throw PreconditionError("sigma_transform: no pendant hyperedge attached at u");
  }
  for (std::size_t e : moved) {
    if (h.contains(e, v)) {
      throw PreconditionError("sigma_transform: v lies in a moved pendant hyperedge");
    }
  }
  const std::size_t s = moved.size();
  if (!(h.degree(u) < h.degree(v) + s)) {
    throw PreconditionError("sigma_transform: requires d(u) < d(v) + s");
  }
  return move_edges(h, moved, u, v);
}

std::vector<Vertex> path_spine(const Hypergraph& h, const std::vector<std::size_t>& path) {
  if (path.empty()) throw PreconditionError("hyperpath must contain an edge");
  for (std::size_t e : path) {
    if (e >= h.edge_count()) throw ParameterError("path edge index out of range");
    if (h.multiplicity(e) != 1) throw PreconditionError("path edge is repeated");
  }
  const std::size_t r = path.size();
  auto shared = [&](std::size_t a, std::size_t b) {
    std::vector<Vertex> common;
    std::set_intersection(h.edge(a).begin(), h.edge(a).end(), h.edge(b).begin(),
                          h.edge(b).end(), std::back_inserter(common));
    return common;
  };
  std::vector<Vertex> spine(r + 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      auto common = shared(path[i], path[j]);
      if (j == i + 1 ? common.size() != 1 : !common.empty()) {
        throw PreconditionError("edges do not form a hyperpath");
      }
      if (j == i + 1) spine[i + 1] = common[0];
    }
  }
  auto pick_end = [&](std::size_t e, std::optional<Vertex> avoid_a,
                      std::optional<Vertex> avoid_b) {
    for (Vertex x : h.edge(e)) {
      if (x != avoid_a && x != avoid_b) return x;
    }
    throw PreconditionError("edges do not form a hyperpath");
  };
  if (r == 1) {
    spine[0] = h.edge(path[0])[0];
    spine[1] = h.edge(path[0])[1];
  } else {
    spine[0] = pick_end(path[0], spine[1], std::nullopt);
    spine[r] = pick_end(path[r - 1], spine[r - 1], std::nullopt);
  }
  return spine;
}

namespace {

struct PathView {
  std::vector<Vertex> spine;
  std::map<Vertex, unsigned> path_degree;
  std::map<Vertex, std::size_t> first_edge;  // position in path, 0-based
  std::set<std::size_t> path_edges;
  unsigned d0 = 0;
};

PathView inspect_path(const Hypergraph& h, const PathSite& site) {
  PathView view;
  view.spine = path_spine(h, site.path);
  for (std::size_t i = 0; i < site.path.size(); ++i) {
    view.path_edges.insert(site.path[i]);
    for (Vertex x : h.edge(site.path[i])) {
      ++view.path_degree[x];
      view.first_edge.emplace(x, i);
    }
  }
  if (view.path_edges.size() != site.path.size()) {
    throw PreconditionError("path lists an edge twice");
  }
  auto at = view.path_degree.find(site.attach);
  if (at == view.path_degree.end()) {
    throw PreconditionError("attachment vertex is not on the hyperpath");
  }
  for (const auto& [x, pd] : view.path_degree) {
    if (x != site.attach && h.degree(x) != pd) {
      throw PreconditionError("hyperpath meets the rest of the hypergraph away from "
                              "the attachment vertex");
    }
  }
  view.d0 = h.degree(site.attach) - at->second;
  if (view.d0 == 0) throw PreconditionError("nothing is attached at the attachment vertex");
  return view;
}

// Cored (path-degree 1) vertices of path edge i, ascending.
std::vector<Vertex> cored_on(const Hypergraph& h, const PathSite& site, const PathView& view,
                             std::size_t i) {
  std::vector<Vertex> out;
  for (Vertex x : h.edge(site.path[i])) {
    if (view.path_degree.at(x) == 1) out.push_back(x);
  }
  return out;
}

}  // namespace

Hypergraph path_slide(const Hypergraph& h, SlideKind kind, const PathSite& site) {
  const PathView view = inspect_path(h, site);
  const std::size_t r = site.path.size();
  const Vertex attach = site.attach;
  Vertex target = 0;

  switch (kind) {
    case SlideKind::First: {
      if (view.path_degree.at(attach) != 2) {
        throw PreconditionError("first slide: attachment must be a non-cored path vertex");
      }
      if (site.target) {
        auto it = view.path_degree.find(*site.target);
        if (it == view.path_degree.end() || it->second != 1) {
          throw PreconditionError("first slide: target must be a cored path vertex");
        }
        target = *site.target;
      } else {
        target = view.spine[0];
      }
      break;
    }
    case SlideKind::Second: {
      if (h.k() < 3) throw PreconditionError("second slide: requires k >= 3");
      if (r < 3) throw PreconditionError("second slide: requires r >= 3");
      if (view.path_degree.at(attach) != 1) {
        throw PreconditionError("second slide: attachment must be a cored path vertex");
      }
      const std::size_t l = view.first_edge.at(attach) + 1;
      if (l < 2 || l > (r + 1) / 2) {
        throw PreconditionError("second slide: attachment edge index out of range");
      }
      auto cored = cored_on(h, site, view, l - 2);
      target = cored.front();
      break;
    }
    case SlideKind::Third: {
      if (r < 2) throw PreconditionError("third slide: requires r >= 2");
      auto pos = std::find(view.spine.begin() + 1, view.spine.end() - 1, attach);
      if (pos == view.spine.end() - 1) {
        throw PreconditionError("third slide: attachment must be a joint of the hyperpath");
      }
      const std::size_t l = static_cast<std::size_t>(pos - view.spine.begin());
      if (l < 1 || l > r / 2) {
        throw PreconditionError("third slide: joint index out of range");
      }
      target = view.spine[l - 1];
      break;
    }
  }

  std::vector<std::size_t> rest;
  for (std::size_t e : h.incident(attach)) {
    if (!view.path_edges.count(e)) rest.push_back(e);
  }
  return move_edges(h, rest, attach, target);
}

Coalescence coalesce_path(const Hypergraph& h0, Vertex v0, std::size_t r,
                          Vertex path_vertex) {
  const unsigned k = h0.k();
  check_vertex(h0, v0, "coalesce_path");
  if (r == 0) throw ParameterError("coalesce_path: path must have an edge");
  const std::size_t path_n = r * (k - 1) + 1;
  if (path_vertex >= path_n) throw ParameterError("coalesce_path: path vertex out of range");
  // Local path labels: spine 0..r, then k-2 cored vertices per edge.
  std::vector<Vertex> map(path_n);
  Vertex next = static_cast<Vertex>(h0.n());
  for (Vertex x = 0; x < path_n; ++x) map[x] = (x == path_vertex) ? v0 : next++;
  std::vector<Edge> edges = h0.edges();
  Coalescence out{Hypergraph(k, 1, {}), {}, v0};
  for (std::size_t i = 0; i < r; ++i) {
    Edge e{map[i], map[i + 1]};
    for (unsigned j = 0; j + 2 < k; ++j) {
      e.push_back(map[r + 1 + i * (k - 2) + j]);
    }
    out.path_edges.push_back(edges.size());
    edges.push_back(std::move(e));
  }
  std::vector<unsigned> mult = h0.multiplicities();
  mult.resize(edges.size(), 1);
  out.graph = Hypergraph(k, next, std::move(edges), std::move(mult));
  return out;
}

}  // namespace alphatrace
