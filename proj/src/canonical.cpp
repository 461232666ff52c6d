// Canonical form of a hypergraph via its vertex/edge incidence graph.
//
// The incidence graph is first stripped of degree-one nodes round by round,
// each absorbed leaf folding its color into its neighbour's color (for
// hypertrees this is the classical rooted-tree encoding). What remains is
// canonically labeled by individualization-refinement, keeping the smallest
// encoding over all leaves of the search tree.

#include <algorithm>
#include <map>
#include <sstream>

#include "alphatrace/errors.hpp"
#include "alphatrace/hypergraph.hpp"

namespace alphatrace {

namespace {

struct ColoredGraph {
  std::vector<std::string> color;
  std::vector<std::vector<std::size_t>> adj;
};

ColoredGraph build(const Hypergraph& h, std::optional<Vertex> marked_vertex,
                   std::optional<std::size_t> marked_edge) {
  ColoredGraph g;
  const std::size_t n = h.n();
  g.color.assign(n, "v");
  g.adj.assign(n, {});
  if (marked_vertex) g.color[*marked_vertex] = "v*";
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    std::size_t node = g.color.size();
    std::string c = "e" + std::to_string(h.multiplicity(e));
    if (marked_edge == e) c += "*";
    g.color.push_back(c);
    g.adj.emplace_back();
    for (Vertex v : h.edge(e)) {
      g.adj[node].push_back(v);
      g.adj[v].push_back(node);
    }
  }
  return g;
}

// Repeatedly absorbs degree-one nodes into their neighbours.
ColoredGraph strip_leaves(ColoredGraph g) {
  std::vector<bool> alive(g.color.size(), true);
  std::vector<std::size_t> degree(g.color.size());
  for (std::size_t x = 0; x < g.adj.size(); ++x) degree[x] = g.adj[x].size();

  while (true) {
    std::map<std::size_t, std::vector<std::string>> absorbed;
    std::vector<std::size_t> removed;
    for (std::size_t x = 0; x < g.adj.size(); ++x) {
      if (!alive[x] || degree[x] != 1) continue;
      std::size_t y = 0;
      for (std::size_t z : g.adj[x]) {
        if (alive[z]) y = z;
      }
      // two leaves joined to each other: the component is done
      if (degree[y] == 1) continue;
      absorbed[y].push_back(g.color[x]);
      removed.push_back(x);
    }
    if (removed.empty()) break;
    for (std::size_t x : removed) alive[x] = false;
    for (auto& [y, leaves] : absorbed) {
      std::sort(leaves.begin(), leaves.end());
      std::string c = "(" + g.color[y];
      for (const auto& l : leaves) c += "|" + l;
      g.color[y] = c + ")";
      degree[y] -= leaves.size();
    }
  }

  ColoredGraph out;
  std::vector<std::size_t> index(g.color.size(), 0);
  for (std::size_t x = 0; x < g.color.size(); ++x) {
    if (!alive[x]) continue;
    index[x] = out.color.size();
    out.color.push_back(g.color[x]);
  }
  out.adj.assign(out.color.size(), {});
  for (std::size_t x = 0; x < g.adj.size(); ++x) {
    if (!alive[x]) continue;
    for (std::size_t y : g.adj[x]) {
      if (alive[y]) out.adj[index[x]].push_back(index[y]);
    }
  }
  return out;
}

using Coloring = std::vector<std::size_t>;

// Equitable refinement; colors are re-ranked by sorted signature so the
// result depends only on the isomorphism type of (graph, coloring).
Coloring refine(const std::vector<std::vector<std::size_t>>& adj, Coloring col) {
  std::size_t classes = 0;
  {
    auto tmp = col;
    std::sort(tmp.begin(), tmp.end());
    classes = static_cast<std::size_t>(std::unique(tmp.begin(), tmp.end()) - tmp.begin());
  }
  while (true) {
    std::vector<std::vector<std::size_t>> sig(col.size());
    for (std::size_t x = 0; x < col.size(); ++x) {
      sig[x].push_back(col[x]);
      std::vector<std::size_t> nb;
      for (std::size_t y : adj[x]) nb.push_back(col[y]);
      std::sort(nb.begin(), nb.end());
      sig[x].insert(sig[x].end(), nb.begin(), nb.end());
    }
    auto distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t x = 0; x < col.size(); ++x) {
      col[x] = static_cast<std::size_t>(
          std::lower_bound(distinct.begin(), distinct.end(), sig[x]) - distinct.begin());
    }
    if (distinct.size() == classes) return col;
    classes = distinct.size();
  }
}

struct Search {
  const std::vector<std::vector<std::size_t>>& adj;
  const Coloring& base;  // initial color rank of each node
  std::vector<std::size_t> best;
  bool have_best = false;
  std::size_t leaves = 0;

  static constexpr std::size_t kMaxLeaves = 2'000'000;

  std::vector<std::size_t> encode(const Coloring& label) const {
    std::vector<std::size_t> node_at(label.size());
    for (std::size_t x = 0; x < label.size(); ++x) node_at[label[x]] = x;
    std::vector<std::size_t> code;
    for (std::size_t i = 0; i < label.size(); ++i) code.push_back(base[node_at[i]]);
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (std::size_t x = 0; x < adj.size(); ++x) {
      for (std::size_t y : adj[x]) {
        if (label[x] < label[y]) arcs.emplace_back(label[x], label[y]);
      }
    }
    std::sort(arcs.begin(), arcs.end());
    for (auto [a, b] : arcs) {
      code.push_back(a);
      code.push_back(b);
    }
    return code;
  }

  void run(Coloring col) {
    col = refine(adj, std::move(col));
    // first non-singleton cell
    std::vector<std::size_t> count(col.size(), 0);
    for (auto c : col) ++count[c];
    std::size_t target = col.size();
    for (std::size_t c = 0; c < col.size(); ++c) {
      if (count[c] > 1) {
        target = c;
        break;
      }
    }
    if (target == col.size()) {
      if (++leaves > kMaxLeaves) {
        throw BudgetExceeded("canonical_form: search tree too large");
      }
      auto code = encode(col);
      if (!have_best || code < best) {
        best = std::move(code);
        have_best = true;
      }
      return;
    }
    for (std::size_t x = 0; x < col.size(); ++x) {
      if (col[x] != target) continue;
      Coloring next(col.size());
      for (std::size_t y = 0; y < col.size(); ++y) {
        next[y] = 2 * col[y] + ((col[y] == target && y != x) ? 1 : 0);
      }
      run(std::move(next));
    }
  }
};

}  // namespace

std::string canonical_form_marked(const Hypergraph& h, std::optional<Vertex> marked_vertex,
                                  std::optional<std::size_t> marked_edge) {
  if (h.n() > kCanonicalMaxVertices) {
    throw BudgetExceeded("canonical_form: more than " +
                         std::to_string(kCanonicalMaxVertices) + " vertices");
  }
  ColoredGraph g = strip_leaves(build(h, marked_vertex, marked_edge));

  std::vector<std::string> palette = g.color;
  std::sort(palette.begin(), palette.end());
  palette.erase(std::unique(palette.begin(), palette.end()), palette.end());
  Coloring base(g.color.size());
  for (std::size_t x = 0; x < base.size(); ++x) {
    base[x] = static_cast<std::size_t>(
        std::lower_bound(palette.begin(), palette.end(), g.color[x]) - palette.begin());
  }

  Search search{g.adj, base, {}, false, 0};
  if (!base.empty()) search.run(base);

  std::ostringstream os;
  os << "k" << h.k() << ";n" << h.n() << ";m" << h.total_edges() << ";[";
  for (std::size_t i = 0; i < palette.size(); ++i) os << (i ? "," : "") << palette[i];
  os << "];";
  for (std::size_t i = 0; i < search.best.size(); ++i) os << (i ? "." : "") << search.best[i];
  return os.str();
}

std::string canonical_form(const Hypergraph& h) {
  return canonical_form_marked(h, std::nullopt, std::nullopt);
}

}  // namespace alphatrace
