// Acceptance gate. One line per criterion; run with a criterion number to
// execute only that one. Every comparison is exact.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "alphatrace/enumeration.hpp"
#include "alphatrace/errors.hpp"
#include "alphatrace/families.hpp"
#include "alphatrace/multidigraph.hpp"
#include "alphatrace/order.hpp"
#include "alphatrace/trace.hpp"
#include "oracles.hpp"

using namespace alphatrace;

namespace {

// runtime ceilings in seconds, per criterion
constexpr double kLimit1 = 60, kLimit2 = 600, kLimit3 = 600, kLimit4 = 60, kLimit5 = 300,
                 kLimit6 = 1800, kLimit7 = 60, kLimit8 = 600;
constexpr unsigned kMaxOrderOracle = 6;
constexpr std::size_t kOracleMaxEdges = 5;
constexpr std::size_t kClosedMaxEdges = 4;
constexpr std::size_t kInstancesPerTransform = 50;
constexpr unsigned kSeed = 20240611;
const Rational kHalf(1, 2);

struct Outcome {
  bool pass = true;
  std::string detail;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      pass = false;
      ++failed;
      if (failures.size() < 6) failures.push_back(what);
    }
  }
};

Rational pow_q(long base, long e) {
  Rational r(1);
  Rational b(base);
  if (e < 0) {
    b = 1 / b;
    e = -e;
  }
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<Hypergraph> corpus(unsigned k, std::size_t max_m, std::size_t min_tree_m) {
  std::vector<Hypergraph> out;
  for (std::size_t m = min_tree_m; m <= max_m; ++m) {
    for (auto& h : enumerate_family({FamilyClass::Hypertree, k, m})) out.push_back(std::move(h));
    if (m >= 3)
      for (auto& h : enumerate_family({FamilyClass::LinearUnicyclic, k, m}))
        out.push_back(std::move(h));
  }
  return out;
}

std::string label(const Hypergraph& h) {
  std::ostringstream os;
  os << "k=" << h.k() << " n=" << h.n() << " m=" << h.total_edges() << " deg=";
  auto d = sorted_degree_sequence(h);
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  return os.str();
}

Outcome oracle_equivalence() {
  Outcome o;
  auto graphs = corpus(2, kOracleMaxEdges, 0);
  for (const auto& h : graphs)
    for (unsigned d = 0; d <= kMaxOrderOracle; ++d)
      o.expect(trace_bruteforce(h, d) == oracle::matrix_trace(h, d),
               label(h) + " d=" + std::to_string(d));
  o.detail = std::to_string(graphs.size()) + " graphs, d=0.." + std::to_string(kMaxOrderOracle);
  return o;
}

Outcome closed_equivalence() {
  Outcome o;
  std::size_t graphs = 0;
  for (unsigned k : {2u, 3u}) {
    for (const auto& h : corpus(k, kClosedMaxEdges, 1)) {
      ++graphs;
      for (unsigned d = 1; d <= k + 2; ++d)
        o.expect(trace_closed(h, d) == trace_bruteforce(h, d), label(h) + " d=" + std::to_string(d));
    }
  }
  o.detail = std::to_string(graphs) + " hypergraphs, k=2,3, d=1..k+2";
  return o;
}

Outcome decomposition() {
  Outcome o;
  std::size_t graphs = 0;
  for (unsigned k : {2u, 3u}) {
    for (const auto& h : corpus(k, kClosedMaxEdges, 1)) {
      ++graphs;
      Rational unscale = pow_q(k - 1, 1 - static_cast<long>(h.n()));
      for (unsigned d = 1; d <= k + 2; ++d) {
        TraceParts parts = trace_decomposed(h, d);
        AlphaPoly full = trace_bruteforce(h, d);
        Rational adjacency = full.evaluate(0);
        std::string where = label(h) + " d=" + std::to_string(d);
        o.expect(parts.omega1 == phi(h, d) * unscale, where + " omega1");
        o.expect(parts.omega2 == AlphaPoly::alpha_beta(0, d) * (adjacency * unscale),
                 where + " omega2");
        o.expect(adjacency == adjacency_moment(h, d), where + " adjacency");
        o.expect((parts.omega1 + parts.omega2 + parts.omega3) * (1 / unscale) == full,
                 where + " sum");
      }
    }
  }
  o.detail = std::to_string(graphs) + " hypergraphs";
  return o;
}

Outcome family_tr2() {
  Outcome o;
  for (unsigned k : {2u, 3u}) {
    for (std::size_t m = 3; m <= 5; ++m) {
      for (std::size_t g = 3; g <= m; ++g) {
        Hypergraph h = build_family(k, family::CycleWithStar{g, m});
        long poly = static_cast<long>(g * g) - static_cast<long>((2 * m + 1) * g) +
                    static_cast<long>(m * (m + k + 3));
        Rational want = pow_q(k - 1, static_cast<long>(m * (k - 1)) - 1) * poly;
        o.expect(trace_closed(h, 2) == AlphaPoly::monomial(want, 2),
                 "C_g(.)S k=" + std::to_string(k) + " g=" + std::to_string(g) +
                     " m=" + std::to_string(m));
      }
      for (std::size_t D = 3; D <= m; ++D) {
        std::vector<std::size_t> br{D / 2, D - D / 2};
        while (br[0] + br[1] + br.size() - 2 < m) br.push_back(1);
        Hypergraph h = build_family(k, family::Starlike{br});
        long poly = static_cast<long>(D * D) - static_cast<long>((2 * m + 1) * D) +
                    static_cast<long>((m + 2) * (m + 2) + m * (k - 1)) - 6;
        Rational want = pow_q(k - 1, static_cast<long>(m * (k - 1)) - 2) * poly;
        o.expect(trace_closed(h, 2) == AlphaPoly::monomial(want, 2),
                 "starlike k=" + std::to_string(k) + " D=" + std::to_string(D) +
                     " m=" + std::to_string(m));
      }
    }
  }
  o.detail = "cycle-with-star and starlike diameter families, k=2,3, m<=5";
  return o;
}

Outcome cycle_vs_path() {
  Outcome o;
  const unsigned k = 3;
  for (std::size_t m = 4; m <= 5; ++m) {
    Hypergraph cm = build_family(k, family::Hypercycle{m});
    AlphaPoly tc = trace_bruteforce(cm, k + 2);
    for (std::size_t g = 3; g < m; ++g) {
      AlphaPoly tp = trace_bruteforce(build_family(k, family::CycleWithPath{g, m}), k + 2);
      Rational c = -Rational(k + 2) * pow_q(k - 1, static_cast<long>(m * (k - 1) - k)) *
                   pow_q(k, k - 2);
      o.expect(tc - tp == AlphaPoly::alpha_beta(2, k) * c,
               "m=" + std::to_string(m) + " g=" + std::to_string(g));
    }
  }
  o.detail = "k=3, m=4,5";
  return o;
}

Outcome extremal() {
  Outcome o;
  const std::vector<std::string> ids = {
      "tree-first",          "tree-second",          "tree-last",
      "tree-second-last",    "unicyclic-last",       "unicyclic-second-last",
      "unicyclic-first",     "unicyclic-second",     "unicyclic-girth-last",
      "unicyclic-girth-first", "tree-diameter-last"};
  const Rational alphas[] = {Rational(1, 10), Rational(1, 2), Rational(9, 10)};
  TraceCache cache;
  for (const auto& id : ids) {
    for (const auto& a : alphas) {
      TheoremReport r = verify_theorem(id, 3, 4, a, std::nullopt, cache);
      std::string where = id + "@" + a.get_str();
      for (const auto& c : r.checks) {
        if (c.holds) continue;
        where += " [" + c.scope + " " + c.claim + " " + c.target;
        if (c.target_position)
          where += " at " + std::to_string(*c.target_position + 1) + "/" +
                   std::to_string(c.family_size);
        where += "]";
      }
      o.expect(r.holds, where);
    }
  }
  o.detail = std::to_string(ids.size()) + " claims x 3 alphas, k=3 m=4";
  return o;
}

// Eulerian multidigraphs with exactly `arcs` arcs on vertices 0..v-1, each
// vertex used. Arc multisets are built in nondecreasing arc-index order.
void eulerian_multidigraphs(unsigned v, unsigned arcs,
                            const std::function<void(const MultiDigraph&)>& visit) {
  std::vector<unsigned> pick;
  std::vector<int> balance(v, 0);
  std::vector<unsigned> touched(v, 0);
  std::function<void(unsigned)> rec = [&](unsigned from) {
    const unsigned left = arcs - static_cast<unsigned>(pick.size());
    unsigned unused = 0;
    for (unsigned x = 0; x < v; ++x) unused += touched[x] == 0;
    if (unused > 2 * left) return;
    if (left == 0) {
      for (int b : balance)
        if (b != 0) return;
      MultiDigraph g;
      for (unsigned a : pick) g.add_arc(a / v, a % v);
      if (g.is_weakly_connected()) visit(g);
      return;
    }
    for (unsigned a = from; a < v * v; ++a) {
      unsigned s = a / v, t = a % v;
      pick.push_back(a);
      --balance[s];
      ++balance[t];
      ++touched[s];
      ++touched[t];
      rec(a);
      --touched[s];
      --touched[t];
      ++balance[s];
      --balance[t];
      pick.pop_back();
    }
  };
  rec(0);
}

MultiDigraph complete_digraph(unsigned n) {
  MultiDigraph g;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j)
      if (i != j) g.add_arc(i, j);
  return g;
}

Outcome counting_kernels() {
  Outcome o;
  std::size_t eulerian = 0;
  auto root_free = [&](const MultiDigraph& g, const std::string& what) {
    auto verts = g.vertices();
    Integer first = arborescence_count(g, verts.front());
    for (Vertex r : verts) o.expect(arborescence_count(g, r) == first, what + " root independence");
  };
  for (unsigned v = 1; v <= 6; ++v) {
    for (unsigned arcs = 1; arcs <= 6; ++arcs) {
      eulerian_multidigraphs(v, arcs, [&](const MultiDigraph& g) {
        ++eulerian;
        std::string what = g.dump();
        o.expect(euler_tour_count(g) == oracle::euler_circuits_backtrack(g), what + " tours");
        root_free(g, what);
      });
    }
  }
  for (unsigned k = 2; k <= 6; ++k) {
    Integer want;
    mpz_ui_pow_ui(want.get_mpz_t(), k, k - 2);
    o.expect(arborescence_count(complete_digraph(k), 0) == want,
             "complete digraph k=" + std::to_string(k));
  }
  // denser Eulerian digraphs on 6 vertices: unions of random cycles
  std::mt19937 rng(kSeed);
  for (int round = 0; round < 40; ++round) {
    MultiDigraph g;
    std::vector<Vertex> all{0, 1, 2, 3, 4, 5};
    std::shuffle(all.begin(), all.end(), rng);
    for (std::size_t i = 0; i < all.size(); ++i) g.add_arc(all[i], all[(i + 1) % all.size()]);
    for (int extra = 0; extra < 3; ++extra) {
      std::shuffle(all.begin(), all.end(), rng);
      std::size_t len = 1 + rng() % 6;
      for (std::size_t i = 0; i < len; ++i) g.add_arc(all[i], all[(i + 1) % len]);
    }
    root_free(g, "random cycle union " + std::to_string(round));
  }
  o.detail = std::to_string(eulerian) + " eulerian multidigraphs with <= 6 arcs";
  return o;
}

struct Transform {
  std::string name;
  // returns (before, after) with after expected to come first, or nothing
  std::function<std::optional<std::pair<Hypergraph, Hypergraph>>(std::mt19937&)> draw;
};

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937& rng) {
  return v[rng() % v.size()];
}

Outcome monotonicity() {
  Outcome o;
  const unsigned k = 3;
  std::vector<std::vector<Hypergraph>> bases(6);
  for (std::size_t m = 1; m <= 5; ++m) {
    bases[m] = enumerate_family({FamilyClass::Hypertree, k, m});
    if (m >= 3)
      for (auto& h : enumerate_family({FamilyClass::LinearUnicyclic, k, m}))
        bases[m].push_back(std::move(h));
  }
  auto base = [&](std::size_t m, std::mt19937& rng) {
    return oracle::random_relabel(pick(bases[m], rng), rng);
  };

  std::vector<Transform> transforms;
  transforms.push_back({"sigma", [&](std::mt19937& rng) -> std::optional<std::pair<Hypergraph, Hypergraph>> {
    Hypergraph h = base(2 + rng() % 4, rng);
    Vertex u = rng() % h.n(), v = rng() % h.n();
    try {
      // sigma moves toward the end of the order
      return std::make_pair(sigma_transform(h, u, v), h);
    } catch (const PreconditionError&) {
      return std::nullopt;
    }
  }});
  auto slide = [&](SlideKind kind, std::size_t min_r) {
    return [&, kind, min_r](std::mt19937& rng) -> std::optional<std::pair<Hypergraph, Hypergraph>> {
      std::size_t r = min_r + rng() % (5 - min_r);
      std::size_t m0 = 1 + rng() % (5 - r);
      Hypergraph h0 = base(m0, rng);
      Vertex v0 = rng() % h0.n();
      Vertex at = 0;
      std::optional<Vertex> target;
      if (kind == SlideKind::First) {
        at = 1 + rng() % (r - 1);
      } else if (kind == SlideKind::Second) {
        std::size_t l = 2 + rng() % ((r + 1) / 2 - 1);
        at = static_cast<Vertex>(r + 1 + (l - 1) * (k - 2) + rng() % (k - 2));
      } else {
        at = 1 + rng() % (r / 2);
      }
      Coalescence c = coalesce_path(h0, v0, r, at);
      if (kind == SlideKind::First) {
        std::vector<Vertex> cored;
        for (std::size_t e : c.path_edges)
          for (Vertex x : c.graph.edge(e))
            if (c.graph.degree(x) == 1) cored.push_back(x);
        target = pick(cored, rng);
      }
      try {
        PathSite site{c.path_edges, c.joined, target};
        return std::make_pair(c.graph, path_slide(c.graph, kind, site));
      } catch (const PreconditionError&) {
        return std::nullopt;
      }
    };
  };
  transforms.push_back({"first slide", slide(SlideKind::First, 2)});
  transforms.push_back({"second slide", slide(SlideKind::Second, 3)});
  transforms.push_back({"third slide", slide(SlideKind::Third, 2)});

  std::mt19937 rng(kSeed);
  TraceCache cache;
  const unsigned d_max = 2 * k + 2;
  for (const auto& t : transforms) {
    std::size_t done = 0;
    for (int attempt = 0; done < kInstancesPerTransform && attempt < 100000; ++attempt) {
      auto pair = t.draw(rng);
      if (!pair) continue;
      ++done;
      const auto& [later, earlier] = *pair;
      OrderVerdict v = compare_at_alpha(earlier, later, kHalf, d_max, cache);
      o.expect(v.relation == Relation::Less && v.first_diff_order && *v.first_diff_order <= d_max,
               t.name + ": " + label(later) + " -> " + label(earlier) + " gave " +
                   to_string(v.relation));
    }
    o.expect(done == kInstancesPerTransform, t.name + ": only " + std::to_string(done) + " instances");
  }
  o.detail = std::to_string(kInstancesPerTransform) + " instances x 4 transformations, k=3, m<=5";
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "k=2 trace vs matrix power", kLimit1, oracle_equivalence},
    {2, "closed forms vs brute force", kLimit2, closed_equivalence},
    {3, "decomposition into omega parts", kLimit3, decomposition},
    {4, "Tr_2 family polynomials", kLimit4, family_tr2},
    {5, "C_m vs C_g.P order k+2 difference", kLimit5, cycle_vs_path},
    {6, "extremal orderings by enumeration", kLimit6, extremal},
    {7, "euler tours and arborescences", kLimit7, counting_kernels},
    {8, "transformations move in S_alpha-order", kLimit8, monotonicity},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  bool all_pass = true;
  for (const auto& c : kCriteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit) {
      o.pass = false;
      o.failures.push_back("took " + std::to_string(secs) + "s");
    }
    std::printf("[%s] %d %s: %zu/%zu checks, %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id,
                c.title, o.checked - o.failed, o.checked, o.detail.c_str(), secs);
    for (const auto& f : o.failures) std::printf("       %s\n", f.c_str());
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
