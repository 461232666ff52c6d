#include "alphatrace/multidigraph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "alphatrace/errors.hpp"

namespace alphatrace {

bool IndexRow::is_diagonal() const {
  return std::all_of(rest.begin(), rest.end(), [&](Vertex v) { return v == root; });
}

void MultiDigraph::add_arc(Vertex tail, Vertex head, unsigned count) {
  if (count == 0) return;
  arcs_[{tail, head}] += count;
  out_[tail] += count;
  out_.try_emplace(head, 0);
  in_[head] += count;
  in_.try_emplace(tail, 0);
  arc_total_ += count;
}

std::vector<Vertex> MultiDigraph::vertices() const {
  std::vector<Vertex> out;
  out.reserve(out_.size());
  for (const auto& [v, d] : out_) out.push_back(v);
  return out;
}

unsigned MultiDigraph::out_degree(Vertex v) const {
  auto it = out_.find(v);
  return it == out_.end() ? 0 : it->second;
}

unsigned MultiDigraph::in_degree(Vertex v) const {
  auto it = in_.find(v);
  return it == in_.end() ? 0 : it->second;
}

MultiDigraph MultiDigraph::without_loops() const {
  MultiDigraph g;
  for (const auto& [arc, mult] : arcs_) {
    if (arc.first != arc.second) g.add_arc(arc.first, arc.second, mult);
  }
  // keep vertices that only carried loops
  for (const auto& [v, d] : out_) {
    g.out_.try_emplace(v, 0);
    g.in_.try_emplace(v, 0);
  }
  return g;
}

bool MultiDigraph::is_balanced() const {
  for (const auto& [v, d] : out_) {
    if (in_degree(v) != d) return false;
  }
  return true;
}

bool MultiDigraph::is_weakly_connected() const {
  if (out_.empty()) return true;
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const auto& [arc, mult] : arcs_) {
    adj[arc.first].push_back(arc.second);
    adj[arc.second].push_back(arc.first);
  }
  std::set<Vertex> seen{out_.begin()->first};
  std::deque<Vertex> queue{out_.begin()->first};
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : adj[x]) {
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return seen.size() == out_.size();
}

std::string MultiDigraph::dump() const {
  std::ostringstream os;
  for (const auto& [v, d] : out_) {
    os << v << ":";
    for (auto it = arcs_.lower_bound({v, 0}); it != arcs_.end() && it->first.first == v; ++it) {
      os << " " << it->first.second;
      if (it->second > 1) os << "*" << it->second;
    }
    os << "\n";
  }
  return os.str();
}

MultiDigraph from_assignment(const Assignment& f) {
  MultiDigraph g;
  for (const auto& row : f) {
    for (Vertex x : row.rest) g.add_arc(row.root, x);
  }
  return g;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer b_factor(const MultiDigraph& g) {
  Integer r = 1;
  for (const auto& [arc, mult] : g.arcs()) r *= factorial(mult);
  return r;
}

Integer c_factor(const MultiDigraph& g) {
  Integer r = 1;
  for (Vertex v : g.vertices()) r *= factorial(g.out_degree(v));
  return r;
}

Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Integer arborescence_count(const MultiDigraph& g, Vertex root) {
  if (g.vertex_count() == 0) throw PreconditionError("arborescence_count: empty digraph");
  if (!g.has_vertex(root)) throw PreconditionError("arborescence_count: root not in digraph");
  auto verts = g.vertices();
  std::vector<Vertex> others;
  for (Vertex v : verts) {
    if (v != root) others.push_back(v);
  }
  auto index_of = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(others.begin(), others.end(), v) -
                                    others.begin());
  };
  // reduced out-degree Laplacian, loops dropped
  std::vector<std::vector<Integer>> lap(others.size(),
                                        std::vector<Integer>(others.size(), 0));
  for (const auto& [arc, mult] : g.arcs()) {
    auto [t, h] = arc;
    if (t == h || t == root) continue;
    std::size_t ti = index_of(t);
    lap[ti][ti] += mult;
    if (h != root) lap[ti][index_of(h)] -= mult;
  }
  return bareiss_determinant(std::move(lap));
}

Integer euler_tour_count(const MultiDigraph& g) {
  if (g.arc_count() == 0) return 1;
  if (!g.is_balanced() || !g.is_weakly_connected()) return 0;
  auto verts = g.vertices();
  Integer count = arborescence_count(g, verts.front());
  for (Vertex v : verts) count *= factorial(g.out_degree(v) - 1);
  return count;
}

Integer closed_walk_count(const MultiDigraph& g) {
  if (g.arc_count() == 0) return 1;
  Integer tours = euler_tour_count(g);
  if (tours == 0) return 0;
  Integer walks = tours * static_cast<unsigned long>(g.arc_count());
  Integer b = b_factor(g);
  return walks / b;
}

}  // namespace alphatrace
