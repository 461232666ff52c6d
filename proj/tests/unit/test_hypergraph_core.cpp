#include <doctest.h>

#include <algorithm>
#include <random>

#include "alphatrace/enumeration.hpp"
#include "alphatrace/errors.hpp"
#include "alphatrace/families.hpp"
#include "alphatrace/hypergraph.hpp"
#include "oracles.hpp"

using namespace alphatrace;

namespace {

std::vector<unsigned> sorted_desc(std::vector<unsigned> v) {
  std::sort(v.rbegin(), v.rend());
  return v;
}

std::size_t handshake(const Hypergraph& h) {
  std::size_t s = 0;
  for (unsigned d : h.degrees()) s += d;
  return s;
}

std::vector<std::pair<FamilySpec, unsigned>> sample_families() {
  std::vector<std::pair<FamilySpec, unsigned>> out;
  for (unsigned k : {2u, 3u, 4u}) {
    for (std::size_t m = 1; m <= 5; ++m) {
      out.push_back({family::Hyperpath{m}, k});
      out.push_back({family::Hyperstar{m}, k});
    }
    for (std::size_t m = 3; m <= 6; ++m) {
      out.push_back({family::Hypercycle{m}, k});
      for (std::size_t g = 3; g <= m; ++g) {
        out.push_back({family::CycleWithStar{g, m}, k});
        if (k >= 3) out.push_back({family::CycleWithPath{g, m}, k});
      }
      if (k >= 3) out.push_back({family::PathWithTwig{m}, k});
    }
    out.push_back({family::TriangleSplit{1, 2, 0}, k});
    out.push_back({family::Starlike{{2, 1, 3}}, k});
  }
  return out;
}

}  // namespace

TEST_CASE("family constructions") {
  Hypergraph e = build_family(3, family::Hyperpath{1});
  CHECK(e.n() == 3);
  CHECK(e.edges() == std::vector<Edge>{{0, 1, 2}});

  Hypergraph s3 = build_family(3, family::Hyperstar{3});
  CHECK(s3.n() == 7);
  CHECK(sorted_degree_sequence(s3) == std::vector<unsigned>{3, 1, 1, 1, 1, 1, 1});

  Hypergraph c = build_family(3, family::CycleWithStar{3, 4});
  CHECK(c.n() == 8);
  CHECK(handshake(c) == 12);
  CHECK(sorted_degree_sequence(c) == std::vector<unsigned>{3, 2, 2, 1, 1, 1, 1, 1});

  Hypergraph f3 = build_family(3, family::PathWithTwig{3});
  CHECK(std::count(f3.degrees().begin(), f3.degrees().end(), 2u) == 2);
  // F_3 is the hyperpath P_3
  CHECK(canonical_form(f3) == canonical_form(build_family(3, family::Hyperpath{3})));
}

TEST_CASE("vertex counts of tree and cycle families") {
  for (const auto& [spec, k] : sample_families()) {
    Hypergraph h = build_family(k, spec);
    std::size_t m = family_edge_count(spec);
    CHECK(handshake(h) == k * h.total_edges());
    CHECK(h.total_edges() == m);
    Classification c = classify(h);
    if (std::holds_alternative<family::Hyperpath>(spec) ||
        std::holds_alternative<family::Hyperstar>(spec) ||
        std::holds_alternative<family::Starlike>(spec) ||
        std::holds_alternative<family::PathWithTwig>(spec)) {
      CHECK(c.is_hypertree());
      CHECK(h.n() == m * (k - 1) + 1);
    } else {
      CHECK(c.is_linear_unicyclic());
      CHECK(h.n() == m * (k - 1));
      CHECK(c.girth == *girth(h));
    }
  }
}

TEST_CASE("deterministic labels") {
  for (const auto& [spec, k] : sample_families()) {
    CHECK(build_family(k, spec) == build_family(k, spec));
  }
}

TEST_CASE("degree sequences") {
  CHECK(degree_sequence(build_family(3, family::Hyperpath{1})) == std::vector<unsigned>{1, 1, 1});
  CHECK(sorted_desc(degree_sequence(build_family(3, family::Hyperpath{2}))) ==
        std::vector<unsigned>{2, 1, 1, 1, 1});
  for (unsigned k : {2u, 3u, 4u}) {
    for (std::size_t m = 3; m <= 6; ++m) {
      std::vector<unsigned> want{static_cast<unsigned>(m - 3 + 2), 2, 2};
      Hypergraph h = build_family(k, family::CycleWithStar{3, m});
      want.resize(h.n(), 1);
      CHECK(sorted_degree_sequence(h) == want);
    }
  }
}

TEST_CASE("girth") {
  CHECK(girth(build_family(3, family::Hypercycle{4})) == 4u);
  CHECK_FALSE(girth(build_family(3, family::Hyperpath{3})).has_value());
  CHECK(girth(build_family(3, family::CycleWithStar{3, 5})) == 3u);
  for (std::size_t m = 3; m <= 8; ++m) {
    CHECK(girth(build_family(3, family::Hypercycle{m})) == m);
  }
  Hypergraph doubled(3, 3, {{0, 1, 2}, {0, 1, 2}});
  CHECK(girth(doubled) == 2u);
  Hypergraph two_shared(3, 4, {{0, 1, 2}, {0, 1, 3}});
  CHECK(girth(two_shared) == 2u);
}

TEST_CASE("diameter") {
  CHECK(diameter(build_family(3, family::Hyperpath{1})) == 1);
  for (std::size_t m = 1; m <= 8; ++m) {
    CHECK(diameter(build_family(3, family::Hyperpath{m})) == m);
    if (m >= 2) CHECK(diameter(build_family(4, family::Hyperstar{m})) == 2);
  }
  for (unsigned k : {2u, 3u}) {
    for (std::size_t m = 1; m <= 5; ++m) {
      for (const auto& h : enumerate_family({FamilyClass::Hypertree, k, m})) {
        CHECK(diameter(h) == oracle::diameter_bfs(h));
      }
    }
  }
  Hypergraph split(3, 6, {{0, 1, 2}, {3, 4, 5}});
  CHECK_THROWS_AS(diameter(split), PreconditionError);
}

TEST_CASE("classify") {
  CHECK(classify(build_family(3, family::Hyperpath{3})).is_hypertree());
  Classification c = classify(build_family(3, family::Hypercycle{3}));
  CHECK(c.is_linear_unicyclic());
  CHECK(c.girth == 3);
  CHECK(classify(Hypergraph(3, 4, {{0, 1, 2}, {0, 1, 3}})).kind == Classification::Kind::Other);
  CHECK(classify(Hypergraph(3, 6, {{0, 1, 2}, {3, 4, 5}})).kind == Classification::Kind::Other);
  CHECK(classify(Hypergraph(3, 3, {{0, 1, 2}}, {2})).kind == Classification::Kind::Other);
}

TEST_CASE("malformed hypergraphs") {
  CHECK_THROWS_AS(Hypergraph(3, 3, {{0, 1}}), ParameterError);
  CHECK_THROWS_AS(Hypergraph(3, 3, {{0, 1, 1}}), ParameterError);
  CHECK_THROWS_AS(Hypergraph(3, 3, {{0, 1, 3}}), ParameterError);
  CHECK_THROWS_AS(Hypergraph(3, 3, {{0, 1, 2}}, {0}), ParameterError);
  CHECK_THROWS_AS(build_family(3, family::Hypercycle{2}), ParameterError);
  CHECK_THROWS_AS(build_family(3, family::CycleWithStar{5, 4}), ParameterError);
  CHECK_THROWS_AS(build_family(3, family::CycleWithStar{2, 4}), ParameterError);
  CHECK_THROWS_AS(build_family(3, family::Starlike{{2, 0}}), ParameterError);
  CHECK_THROWS_AS(build_family(3, family::PathWithTwig{2}), ParameterError);
  CHECK_THROWS_AS(build_family(1, family::Hyperpath{2}), ParameterError);
}

TEST_CASE("repeated edges merge into multiplicity") {
  Hypergraph h(3, 3, {{2, 0, 1}, {0, 1, 2}});
  CHECK(h.edge_count() == 1);
  CHECK(h.multiplicity(0) == 2);
  CHECK(h.degree(0) == 2);
  CHECK_FALSE(h.is_simple());
}

TEST_CASE("sigma transform") {
  // P_3: pendant edge e_1 hangs at joint u_1; move it to u_2.
  Hypergraph p3 = build_family(3, family::Hyperpath{3});
  Hypergraph moved = sigma_transform(p3, 1, 2);
  CHECK(moved.n() == p3.n());
  CHECK(moved.total_edges() == p3.total_edges());
  CHECK(moved.degree(1) == 1);
  CHECK(moved.degree(2) == 3);
  CHECK(oracle::degree_square_sum(moved) > oracle::degree_square_sum(p3));

  Hypergraph s4 = build_family(3, family::Hyperstar{4});
  for (Vertex v = 1; v < s4.n(); ++v) CHECK_THROWS_AS(sigma_transform(s4, 0, v), PreconditionError);
  CHECK_THROWS_AS(sigma_transform(p3, 0, 2), PreconditionError);  // no pendant edge at a cored vertex
  CHECK_THROWS_AS(sigma_transform(p3, 1, 1), PreconditionError);
}

TEST_CASE("sigma transform raises the degree square sum") {
  for (unsigned k : {2u, 3u}) {
    for (std::size_t m = 2; m <= 5; ++m) {
      for (const auto& h : enumerate_family({FamilyClass::Hypertree, k, m})) {
        for (Vertex u = 0; u < h.n(); ++u) {
          for (Vertex v = 0; v < h.n(); ++v) {
            Hypergraph out(k, 1, {});
            try {
              out = sigma_transform(h, u, v);
            } catch (const PreconditionError&) {
              continue;
            }
            CHECK(oracle::degree_square_sum(out) > oracle::degree_square_sum(h));
            CHECK(handshake(out) == handshake(h));
            CHECK(classify(out).is_hypertree());
          }
        }
      }
    }
  }
}

TEST_CASE("sigma transform to a fixpoint reaches the hyperstar") {
  std::mt19937 rng(7);
  for (std::size_t m = 2; m <= 5; ++m) {
    Hypergraph star = build_family(3, family::Hyperstar{m});
    for (auto h : enumerate_family({FamilyClass::Hypertree, 3, m})) {
      for (int guard = 0; guard < 100; ++guard) {
        std::vector<std::pair<Vertex, Vertex>> moves;
        for (Vertex u = 0; u < h.n(); ++u) {
          if (pendant_edges_at(h, u).empty()) continue;
          for (Vertex v = 0; v < h.n(); ++v) {
            try {
              (void)sigma_transform(h, u, v);
              moves.push_back({u, v});
            } catch (const PreconditionError&) {
            }
          }
        }
        if (moves.empty()) break;
        auto [u, v] = moves[rng() % moves.size()];
        h = sigma_transform(h, u, v);
      }
      CHECK(canonical_form(h) == canonical_form(star));
    }
  }
}

TEST_CASE("path slides") {
  Hypergraph h0 = build_family(3, family::Hyperpath{1});

  SUBCASE("first slide lowers the degree square sum") {
    for (std::size_t r = 2; r <= 4; ++r) {
      for (Vertex joint = 1; joint < r; ++joint) {
        Coalescence c = coalesce_path(h0, 0, r, joint);
        PathSite site{c.path_edges, c.joined, std::nullopt};
        Hypergraph out = path_slide(c.graph, SlideKind::First, site);
        CHECK(oracle::degree_square_sum(out) < oracle::degree_square_sum(c.graph));
        CHECK(out.n() == c.graph.n());
      }
    }
  }

  SUBCASE("second slide keeps the degree multiset") {
    // cored vertex of e_2 on a 3-edge path, k = 3
    Coalescence c = coalesce_path(h0, 0, 3, 3 + 1 + 1);
    PathSite site{c.path_edges, c.joined, std::nullopt};
    Hypergraph out = path_slide(c.graph, SlideKind::Second, site);
    CHECK(sorted_degree_sequence(out) == sorted_degree_sequence(c.graph));
    CHECK(canonical_form(out) != canonical_form(c.graph));
  }

  SUBCASE("third slide with l = 1 lowers the square sum by 2 d0") {
    for (std::size_t m0 = 1; m0 <= 3; ++m0) {
      Hypergraph star = build_family(3, family::Hyperstar{m0});
      Coalescence c = coalesce_path(star, 0, 2, 1);
      PathSite site{c.path_edges, c.joined, std::nullopt};
      Hypergraph out = path_slide(c.graph, SlideKind::Third, site);
      CHECK(oracle::degree_square_sum(c.graph) - oracle::degree_square_sum(out) == 2 * m0);
    }
  }

  SUBCASE("third slide with l = 2 keeps the degree multiset") {
    Coalescence c = coalesce_path(h0, 0, 4, 2);
    PathSite site{c.path_edges, c.joined, std::nullopt};
    Hypergraph out = path_slide(c.graph, SlideKind::Third, site);
    CHECK(sorted_degree_sequence(out) == sorted_degree_sequence(c.graph));
  }

  SUBCASE("sites outside the allowed ranges") {
    Coalescence c = coalesce_path(h0, 0, 3, 1);
    PathSite site{c.path_edges, c.joined, std::nullopt};
    CHECK_THROWS_AS(path_slide(c.graph, SlideKind::Second, site), PreconditionError);
    Coalescence end = coalesce_path(h0, 0, 3, 0);
    PathSite at_end{end.path_edges, end.joined, std::nullopt};
    CHECK_THROWS_AS(path_slide(end.graph, SlideKind::First, at_end), PreconditionError);
    CHECK_THROWS_AS(path_slide(end.graph, SlideKind::Third, at_end), PreconditionError);
    Coalescence far = coalesce_path(h0, 0, 4, 3);
    PathSite beyond{far.path_edges, far.joined, std::nullopt};
    CHECK_THROWS_AS(path_slide(far.graph, SlideKind::Third, beyond), PreconditionError);
    Hypergraph k2 = build_family(2, family::Hyperpath{1});
    Coalescence two = coalesce_path(k2, 0, 3, 1);
    PathSite s2{two.path_edges, two.joined, std::nullopt};
    CHECK_THROWS_AS(path_slide(two.graph, SlideKind::Second, s2), PreconditionError);
  }
}

TEST_CASE("canonical form") {
  std::mt19937 rng(12345);
  for (const auto& [spec, k] : sample_families()) {
    Hypergraph h = build_family(k, spec);
    std::string key = canonical_form(h);
    for (int i = 0; i < 5; ++i) CHECK(canonical_form(oracle::random_relabel(h, rng)) == key);
  }
  CHECK(canonical_form(build_family(3, family::Hyperpath{3})) !=
        canonical_form(build_family(3, family::Hyperstar{3})));
  Hypergraph s211 = build_family(3, family::Starlike{{2, 1, 1}});
  Hypergraph f4 = build_family(3, family::PathWithTwig{4});
  CHECK(canonical_form(s211) != canonical_form(f4));
  CHECK_FALSE(oracle::isomorphic(s211, f4));
}

TEST_CASE("canonical form agrees with backtracking isomorphism") {
  std::vector<Hypergraph> pool;
  for (std::size_t m = 3; m <= 5; ++m) {
    auto t = enumerate_family({FamilyClass::Hypertree, 3, m});
    pool.insert(pool.end(), t.begin(), t.end());
  }
  std::mt19937 rng(99);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    Hypergraph a = oracle::random_relabel(pool[i], rng);
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (pool[i].n() != pool[j].n()) continue;
      CHECK((canonical_form(a) == canonical_form(pool[j])) == oracle::isomorphic(a, pool[j]));
    }
  }
}

TEST_CASE("the twig may hang from any cored vertex of the second edge") {
  for (unsigned k : {3u, 4u, 5u}) {
    for (std::size_t m = 3; m <= 5; ++m) {
      Hypergraph f = build_family(k, family::PathWithTwig{m});
      // rebuild with the twig on each cored vertex of e_2
      Hypergraph path = build_family(k, family::Hyperpath{m - 1});
      Edge e2 = path.edge(1);
      for (Vertex v : e2) {
        if (path.degree(v) != 1) continue;
        auto edges = path.edges();
        Edge twig{v};
        for (unsigned i = 1; i < k; ++i) twig.push_back(static_cast<Vertex>(path.n() + i - 1));
        edges.push_back(twig);
        Hypergraph alt(k, path.n() + k - 1, edges);
        CHECK(canonical_form(alt) == canonical_form(f));
      }
    }
  }
}
