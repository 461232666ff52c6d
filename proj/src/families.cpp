#include "alphatrace/families.hpp"

#include <numeric>
#include <sstream>

#include "alphatrace/errors.hpp"

namespace alphatrace {

namespace {

// Accumulates vertices and edges in construction order.
class Builder {
 public:
  explicit Builder(unsigned k) : k_(k) {}

  Vertex add_vertex() { return next_++; }

  std::vector<Vertex> add_vertices(std::size_t count) {
    std::vector<Vertex> out(count);
    for (auto& v : out) v = add_vertex();
    return out;
  }

  // Adds an edge through the given vertices, filling it up with fresh
  // cored vertices.
  void add_edge(std::vector<Vertex> through) {
    while (through.size() < k_) through.push_back(add_vertex());
    edges_.push_back(std::move(through));
  }

  // Hyperpath of `length` edges starting at `start`; returns its spine.
  std::vector<Vertex> add_path(Vertex start, std::size_t length) {
    std::vector<Vertex> spine{start};
    auto rest = add_vertices(length);
    spine.insert(spine.end(), rest.begin(), rest.end());
    for (std::size_t i = 0; i < length; ++i) add_edge({spine[i], spine[i + 1]});
    return spine;
  }

  // Hypercycle on `g` edges; returns its joints u_0..u_{g-1}. Edge i joins
  // u_i and u_{i+1}.
  std::vector<Vertex> add_cycle(std::size_t g) {
    auto joints = add_vertices(g);
    for (std::size_t i = 0; i < g; ++i) add_edge({joints[i], joints[(i + 1) % g]});
    return joints;
  }

  const std::vector<Edge>& edges() const { return edges_; }
  Hypergraph finish() const { return Hypergraph(k_, next_, edges_); }
  unsigned k() const { return k_; }

 private:
  unsigned k_;
  Vertex next_ = 0;
  std::vector<Edge> edges_;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw ParameterError(msg);
}

// First cored vertex (beyond the two spine slots) of edge `e`.
Vertex first_cored(const Builder& b, std::size_t e) { return b.edges()[e][2]; }

}  // namespace

Hypergraph build_family(unsigned k, const FamilySpec& spec) {
  require(k >= 2, "k must be at least 2");
  Builder b(k);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, family::Hyperpath>) {
          require(s.m >= 1, "hyperpath needs m >= 1");
          // spine u_0..u_m first, then the cored vertices edge by edge
          auto spine = b.add_vertices(s.m + 1);
          for (std::size_t i = 0; i < s.m; ++i) b.add_edge({spine[i], spine[i + 1]});
        } else if constexpr (std::is_same_v<T, family::Hyperstar>) {
          require(s.m >= 1, "hyperstar needs m >= 1");
          Vertex c = b.add_vertex();
          for (std::size_t i = 0; i < s.m; ++i) b.add_edge({c});
        } else if constexpr (std::is_same_v<T, family::Hypercycle>) {
          require(s.m >= 3, "hypercycle needs m >= 3");
          b.add_cycle(s.m);
        } else if constexpr (std::is_same_v<T, family::CycleWithStar>) {
          require(s.g >= 3, "girth must be at least 3");
          require(s.g <= s.m, "girth must not exceed m");
          auto joints = b.add_cycle(s.g);
          for (std::size_t i = s.g; i < s.m; ++i) b.add_edge({joints[0]});
        } else if constexpr (std::is_same_v<T, family::TriangleSplit>) {
          auto joints = b.add_cycle(3);
          for (std::size_t i = 0; i < s.n1; ++i) b.add_edge({joints[0]});
          for (std::size_t i = 0; i < s.n2; ++i) b.add_edge({joints[1]});
          for (std::size_t i = 0; i < s.n3; ++i) b.add_edge({joints[2]});
        } else if constexpr (std::is_same_v<T, family::CycleWithPath>) {
          require(s.g >= 3, "girth must be at least 3");
          require(s.g <= s.m, "girth must not exceed m");
          require(k >= 3 || s.g == s.m,
                  "a hypercycle has no cored vertex to hang a path from when k = 2");
          b.add_cycle(s.g);
          if (s.m > s.g) b.add_path(first_cored(b, 0), s.m - s.g);
        } else if constexpr (std::is_same_v<T, family::Starlike>) {
          require(!s.branches.empty(), "starlike hypertree needs a branch");
          for (auto len : s.branches) require(len >= 1, "starlike branch lengths must be >= 1");
          Vertex c = b.add_vertex();
          for (auto len : s.branches) b.add_path(c, len);
        } else if constexpr (std::is_same_v<T, family::PathWithTwig>) {
          require(k >= 3, "the twig construction needs cored vertices inside edges (k >= 3)");
          require(s.m >= 3, "the twig construction needs m >= 3");
          auto spine = b.add_vertices(s.m);
          for (std::size_t i = 0; i + 1 < s.m; ++i) b.add_edge({spine[i], spine[i + 1]});
          b.add_edge({first_cored(b, 1)});
        }
      },
      spec);
  return b.finish();
}

std::string family_name(const FamilySpec& spec) {
  std::ostringstream os;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, family::Hyperpath>) {
          os << "P_" << s.m;
        } else if constexpr (std::is_same_v<T, family::Hyperstar>) {
          os << "S_" << s.m;
        } else if constexpr (std::is_same_v<T, family::Hypercycle>) {
          os << "C_" << s.m;
        } else if constexpr (std::is_same_v<T, family::CycleWithStar>) {
          os << "C_" << s.g << "(.)S_" << s.m - s.g;
        } else if constexpr (std::is_same_v<T, family::TriangleSplit>) {
          os << "C_3;" << s.n1 << "," << s.n2 << "," << s.n3;
        } else if constexpr (std::is_same_v<T, family::CycleWithPath>) {
          os << "C_" << s.g << ".P_" << s.m - s.g;
        } else if constexpr (std::is_same_v<T, family::Starlike>) {
          os << "S_";
          for (std::size_t i = 0; i < s.branches.size(); ++i) {
            os << (i ? "," : "") << s.branches[i];
          }
        } else if constexpr (std::is_same_v<T, family::PathWithTwig>) {
          os << "F_" << s.m;
        }
      },
      spec);
  return os.str();
}

std::size_t family_edge_count(const FamilySpec& spec) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, family::TriangleSplit>) {
          return 3 + s.n1 + s.n2 + s.n3;
        } else if constexpr (std::is_same_v<T, family::Starlike>) {
          return std::accumulate(s.branches.begin(), s.branches.end(), std::size_t{0});
        } else {
          return s.m;
        }
      },
      spec);
}

}  // namespace alphatrace
