// Isomorph-free generation by canonical augmentation: a hypergraph is grown
// one pendant edge at a time and kept only when the edge just added lies in
// the orbit of its canonical pendant edge.

#include "alphatrace/enumeration.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "alphatrace/errors.hpp"
#include "alphatrace/families.hpp"

namespace alphatrace {

namespace {

std::size_t edge_budget() {
  const char* raw = std::getenv("ALPHATRACE_MAX_EDGES");
  if (!raw || !*raw) return 6;
  char* end = nullptr;
  unsigned long v = std::strtoul(raw, &end, 10);
  if (*end != '\0' || v == 0) throw ParameterError("ALPHATRACE_MAX_EDGES must be a positive integer");
  return v;
}

Hypergraph add_pendant(const Hypergraph& h, Vertex at) {
  auto edges = h.edges();
  Edge e{at};
  for (unsigned i = 0; i + 1 < h.k(); ++i) e.push_back(static_cast<Vertex>(h.n() + i));
  edges.push_back(e);
  return Hypergraph(h.k(), h.n() + h.k() - 1, edges);
}

// Children of h obtained by one accepted pendant-edge augmentation.
std::vector<Hypergraph> children(const Hypergraph& h) {
  std::vector<Hypergraph> out;
  std::set<std::string> orbits;
  for (Vertex v = 0; v < h.n(); ++v) {
    if (!orbits.insert(canonical_form_marked(h, v, std::nullopt)).second) continue;
    Hypergraph child = add_pendant(h, v);
    const std::size_t added = child.edge_count() - 1;
    // edges are kept in insertion order, so the new edge is the last one
    std::string mine = canonical_form_marked(child, std::nullopt, added);
    std::string best = mine;
    for (std::size_t e = 0; e + 1 < child.edge_count(); ++e) {
      if (!pendant_attachment(child, e)) continue;
      best = std::min(best, canonical_form_marked(child, std::nullopt, e));
    }
    if (mine == best) out.push_back(std::move(child));
  }
  return out;
}

std::vector<Hypergraph> grow(std::vector<Hypergraph> level, std::size_t steps) {
  for (std::size_t s = 0; s < steps; ++s) {
    std::vector<Hypergraph> next;
    for (const auto& h : level) {
      auto kids = children(h);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    level = std::move(next);
  }
  return level;
}

bool max_degree_at_most_two(const Hypergraph& h) {
  return std::all_of(h.degrees().begin(), h.degrees().end(), [](unsigned d) { return d <= 2; });
}

}  // namespace

std::string to_string(FamilyClass c) {
  return c == FamilyClass::Hypertree ? "hypertree" : "linear-unicyclic";
}

void validate(const FamilyFilter& f) {
  if (f.k < 2) throw ParameterError("k must be at least 2");
  if (f.family == FamilyClass::Hypertree) {
    if (f.girth) throw ParameterError("a girth filter applies to unicyclic families only");
    if (f.diameter && (*f.diameter < 2 || *f.diameter > f.m)) {
      throw ParameterError("diameter filter must satisfy 2 <= D <= m");
    }
  } else {
    if (f.diameter) throw ParameterError("a diameter filter applies to hypertrees only");
    if (f.m < 3) throw ParameterError("a linear unicyclic hypergraph needs m >= 3");
    if (f.girth && (*f.girth < 3 || *f.girth > f.m)) {
      throw ParameterError("girth filter must satisfy 3 <= g <= m");
    }
  }
}

std::string describe(const FamilyFilter& f) {
  std::string s = to_string(f.family) + " k=" + std::to_string(f.k) + " m=" + std::to_string(f.m);
  if (f.girth) s += " g=" + std::to_string(*f.girth);
  if (f.diameter) s += " D=" + std::to_string(*f.diameter);
  if (f.max_degree_two) s += " maxdeg<=2";
  return s;
}

std::vector<Hypergraph> enumerate_family(const FamilyFilter& filter) {
  validate(filter);
  if (filter.k > 4) throw BudgetExceeded("enumeration supports k <= 4");
  if (filter.m > edge_budget()) {
    throw BudgetExceeded("m = " + std::to_string(filter.m) + " exceeds the edge budget " +
                         std::to_string(edge_budget()));
  }
  const unsigned k = filter.k;
  std::vector<Hypergraph> found;
  if (filter.family == FamilyClass::Hypertree) {
    if (filter.m == 0) {
      found.emplace_back(k, 1, std::vector<Edge>{});
    } else {
      found = grow({build_family(k, family::Hyperpath{1})}, filter.m - 1);
    }
  } else {
    std::size_t lo = filter.girth ? *filter.girth : 3;
    std::size_t hi = filter.girth ? *filter.girth : filter.m;
    for (std::size_t g = lo; g <= hi; ++g) {
      auto part = grow({build_family(k, family::Hypercycle{g})}, filter.m - g);
      found.insert(found.end(), part.begin(), part.end());
    }
  }

  std::vector<std::pair<std::string, Hypergraph>> keyed;
  for (auto& h : found) {
    if (filter.diameter && diameter(h) != *filter.diameter) continue;
    if (filter.max_degree_two && !max_degree_at_most_two(h)) continue;
    keyed.emplace_back(canonical_form(h), std::move(h));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Hypergraph> out;
  for (auto& [key, h] : keyed) out.push_back(std::move(h));
  return out;
}

std::vector<std::vector<Vertex>> complete_subhypergraphs(const Hypergraph& h) {
  std::set<Edge> edges(h.edges().begin(), h.edges().end());
  std::set<std::vector<Vertex>> found;
  for (const auto& e : h.edges()) {
    for (Vertex x = 0; x < h.n(); ++x) {
      if (std::binary_search(e.begin(), e.end(), x)) continue;
      std::vector<Vertex> s = e;
      s.insert(std::upper_bound(s.begin(), s.end(), x), x);
      bool complete = true;
      for (std::size_t drop = 0; drop < s.size() && complete; ++drop) {
        Edge face;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i != drop) face.push_back(s[i]);
        }
        complete = edges.count(face) > 0;
      }
      if (complete) found.insert(s);
    }
  }
  return {found.begin(), found.end()};
}

std::size_t count_complete_subhypergraphs(const Hypergraph& h) {
  return complete_subhypergraphs(h).size();
}

}  // namespace alphatrace
