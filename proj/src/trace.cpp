#include "alphatrace/trace.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "alphatrace/enumeration.hpp"
#include "alphatrace/errors.hpp"
#include "alphatrace/multidigraph.hpp"

namespace alphatrace {

namespace {

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// (k-1)^e for possibly negative e.
Rational km1_pow(unsigned k, long e) {
  Integer p = ipow(k - 1, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(1, 1) / Rational(p) : Rational(p);
}

Integer scale(const Hypergraph& h) { return ipow(h.k() - 1, h.n() - 1); }

std::optional<unsigned long> env_number(const char* name) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  unsigned long v = std::strtoul(raw, &end, 10);
  if (*end != '\0' || v == 0) {
    throw ParameterError(std::string(name) + " must be a positive integer");
  }
  return v;
}

// Sum of contributions keyed by (#diagonal rows, #edge rows).
using Terms = std::map<std::pair<unsigned, unsigned>, Rational>;

void merge_into(Terms& into, const Terms& from) {
  for (const auto& [key, q] : from) into[key] += q;
}

Budget resolve(const Hypergraph& h, const TraceOptions& opts) {
  return opts.budget ? *opts.budget : default_budget(h.k());
}

void check_budget(const Hypergraph& h, unsigned d, const Budget& b) {
  if (d > b.max_order) {
    throw BudgetExceeded("order " + std::to_string(d) + " exceeds budget " +
                         std::to_string(b.max_order));
  }
  if (h.total_edges() > b.max_edges) {
    throw BudgetExceeded(std::to_string(h.total_edges()) + " hyperedges exceed budget " +
                         std::to_string(b.max_edges));
  }
}

// Calls fn(M, total) for each edge-multiplicity vector with
// min_total <= total <= max_total whose support is connected and whose
// degrees are all multiples of k.
void for_each_veblen(const Hypergraph& h, std::size_t min_total, std::size_t max_total,
                     const std::function<void(const std::vector<unsigned>&, std::size_t)>& fn) {
  const std::size_t m = h.edge_count();
  const unsigned k = h.k();
  // vertices whose incident edges are all decided once edge i is
  std::vector<std::vector<Vertex>> closes(m);
  for (Vertex v = 0; v < h.n(); ++v) {
    if (!h.incident(v).empty()) closes[h.incident(v).back()].push_back(v);
  }
  std::vector<unsigned> mult(m, 0);
  std::vector<unsigned> deg(h.n(), 0);

  auto connected_support = [&]() {
    std::vector<Vertex> parent(h.n());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<Vertex(Vertex)> find = [&](Vertex x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::optional<Vertex> any;
    for (std::size_t e = 0; e < m; ++e) {
      if (!mult[e]) continue;
      const auto& ed = h.edge(e);
      any = ed[0];
      for (std::size_t i = 1; i < ed.size(); ++i) parent[find(ed[i])] = find(ed[0]);
    }
    if (!any) return false;
    Vertex root = find(*any);
    for (std::size_t e = 0; e < m; ++e) {
      if (mult[e] && find(h.edge(e)[0]) != root) return false;
    }
    return true;
  };

  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t e, std::size_t total) {
    if (e == m) {
      if (total >= min_total && total > 0 && connected_support()) fn(mult, total);
      return;
    }
    for (unsigned c = 0; total + c <= max_total; ++c) {
      mult[e] = c;
      for (Vertex v : h.edge(e)) deg[v] += c;
      bool ok = true;
      for (Vertex v : closes[e]) {
        if (deg[v] % k != 0) ok = false;
      }
      if (ok) rec(e + 1, total + c);
      for (Vertex v : h.edge(e)) deg[v] -= c;
    }
    mult[e] = 0;
  };
  rec(0, 0);
}

// Grouped evaluation: all configurations over one Veblen support.
struct SupportSummer {
  const Hypergraph& h;
  unsigned d;
  bool edge_only;
  Terms terms;

  void run(const std::vector<unsigned>& mult, std::size_t total) {
    const unsigned k = h.k();
    std::vector<std::size_t> support;
    std::vector<unsigned> quota(h.n(), 0);
    std::vector<Vertex> verts;
    for (std::size_t e = 0; e < mult.size(); ++e) {
      if (!mult[e]) continue;
      support.push_back(e);
      for (Vertex v : h.edge(e)) quota[v] += mult[e];
    }
    for (Vertex v = 0; v < h.n(); ++v) {
      if (quota[v]) {
        quota[v] /= k;
        verts.push_back(v);
      }
    }
    const unsigned diag = d - static_cast<unsigned>(total);
    if (edge_only && diag) return;

    // split[i][p]: rows of edge support[i] rooted at its p-th vertex
    std::vector<std::vector<unsigned>> split(support.size(), std::vector<unsigned>(k, 0));
    std::vector<unsigned> diag_rows(h.n(), 0);

    std::function<void(std::size_t, std::size_t)> place_diag = [&](std::size_t i,
                                                                   unsigned left) {
      if (i + 1 == verts.size()) {
        diag_rows[verts[i]] = left;
        evaluate(mult, support, split, diag_rows, total);
        diag_rows[verts[i]] = 0;
        return;
      }
      for (unsigned a = 0; a <= left; ++a) {
        diag_rows[verts[i]] = a;
        place_diag(i + 1, left - a);
      }
      diag_rows[verts[i]] = 0;
    };

    std::function<void(std::size_t, std::size_t, unsigned)> split_edge =
        [&](std::size_t i, std::size_t p, unsigned left) {
          if (i == support.size()) {
            place_diag(0, diag);
            return;
          }
          const auto& ed = h.edge(support[i]);
          if (p + 1 == k) {
            if (left > quota[ed[p]]) return;
            split[i][p] = left;
            quota[ed[p]] -= left;
            split_edge(i + 1, 0, i + 1 < support.size() ? mult[support[i + 1]] : 0);
            quota[ed[p]] += left;
            split[i][p] = 0;
            return;
          }
          for (unsigned c = 0; c <= std::min(left, quota[ed[p]]); ++c) {
            split[i][p] = c;
            quota[ed[p]] -= c;
            split_edge(i, p + 1, left - c);
            quota[ed[p]] += c;
          }
          split[i][p] = 0;
        };
    split_edge(0, 0, mult[support[0]]);
  }

  void evaluate(const std::vector<unsigned>& mult, const std::vector<std::size_t>& support,
                const std::vector<std::vector<unsigned>>& split,
                const std::vector<unsigned>& diag_rows, std::size_t total) {
    const unsigned k = h.k();
    MultiDigraph g;
    std::map<Vertex, unsigned> rows;
    Integer weight = 1;
    Integer denom = 1;
    unsigned diag = 0;
    for (Vertex v = 0; v < h.n(); ++v) {
      unsigned a = diag_rows[v];
      if (!a) continue;
      if (h.degree(v) == 0) return;
      diag += a;
      g.add_arc(v, v, (k - 1) * a);
      rows[v] += a;
      denom *= factorial(a);
      weight *= ipow(h.degree(v), a);
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
      const auto& ed = h.edge(support[i]);
      weight *= ipow(h.multiplicity(support[i]), mult[support[i]]);
      for (unsigned p = 0; p < k; ++p) {
        unsigned c = split[i][p];
        if (!c) continue;
        rows[ed[p]] += c;
        denom *= factorial(c);
        for (unsigned q = 0; q < k; ++q) {
          if (q != p) g.add_arc(ed[p], ed[q], c);
        }
      }
    }
    for (const auto& [v, r] : rows) weight *= factorial(r);
    Integer walks = closed_walk_count(g);
    if (walks == 0) return;
    Rational term(Integer(weight * b_factor(g) * walks), Integer(denom * c_factor(g)));
    term.canonicalize();
    terms[{diag, static_cast<unsigned>(total)}] += term;
  }
};

Terms sum_grouped(const Hypergraph& h, unsigned d, bool edge_only, unsigned threads) {
  Terms terms;
  // all rows diagonal on a single vertex
  if (!edge_only) {
    SupportSummer diag_only{h, d, false, {}};
    for (Vertex v = 0; v < h.n(); ++v) {
      if (h.degree(v) == 0) continue;
      std::vector<unsigned> rows(h.n(), 0);
      rows[v] = d;
      diag_only.evaluate({}, {}, {}, rows, 0);
    }
    merge_into(terms, diag_only.terms);
  }

  std::vector<std::vector<unsigned>> supports;
  std::vector<std::size_t> totals;
  for_each_veblen(h, edge_only ? d : 1, d, [&](const std::vector<unsigned>& m, std::size_t t) {
    supports.push_back(m);
    totals.push_back(t);
  });

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(supports.size())));
  std::vector<Terms> partial(threads);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&](unsigned id) {
    try {
      SupportSummer summer{h, d, edge_only, {}};
      for (std::size_t i = next++; i < supports.size(); i = next++) {
        summer.run(supports[i], totals[i]);
      }
      partial[id] = std::move(summer.terms);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (const auto& p : partial) merge_into(terms, p);
  return terms;
}

// Every tuple of nonzero rows with non-decreasing roots, one at a time.
Terms sum_exhaustive(const Hypergraph& h, unsigned d, bool edge_only, std::size_t max_tuples) {
  const unsigned k = h.k();
  struct Row {
    IndexRow index;
    bool diagonal;
    Rational entry;  // without the alpha / (1 - alpha) factor
  };
  std::vector<Row> rows;
  Integer perms = factorial(k - 1);
  for (Vertex v = 0; v < h.n(); ++v) {
    if (!edge_only && h.degree(v) > 0) {
      rows.push_back({{v, std::vector<Vertex>(k - 1, v)}, true, Rational(h.degree(v))});
    }
    for (std::size_t e : h.incident(v)) {
      std::vector<Vertex> rest;
      for (Vertex x : h.edge(e)) {
        if (x != v) rest.push_back(x);
      }
      do {
        rows.push_back({{v, rest}, false, Rational(h.multiplicity(e)) / Rational(perms)});
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
  }

  Terms terms;
  Assignment f;
  std::size_t visited = 0;
  // rows are sorted by root; any row whose root is >= the previous root may follow
  std::vector<std::size_t> first_of_root(h.n() + 1, rows.size());
  for (std::size_t i = rows.size(); i-- > 0;) first_of_root[rows[i].index.root] = i;
  for (Vertex v = static_cast<Vertex>(h.n()); v-- > 0;) {
    first_of_root[v] = std::min(first_of_root[v], first_of_root[v + 1]);
  }
  std::function<void(std::size_t, unsigned, Rational)> rec = [&](std::size_t from, unsigned diag,
                                                                 Rational entry) {
    if (f.size() == d) {
      if (++visited > max_tuples) {
        throw BudgetExceeded("exhaustive trace: more than " + std::to_string(max_tuples) +
                             " tuples");
      }
      MultiDigraph g = from_assignment(f);
      Integer walks = closed_walk_count(g);
      if (walks == 0) return;
      Rational term = entry * Rational(b_factor(g) * walks) / Rational(c_factor(g));
      terms[{diag, d - diag}] += term;
      return;
    }
    for (std::size_t i = from; i < rows.size(); ++i) {
      f.push_back(rows[i].index);
      rec(first_of_root[rows[i].index.root], diag + (rows[i].diagonal ? 1 : 0),
          entry * rows[i].entry);
      f.pop_back();
    }
  };
  rec(0, 0, Rational(1));
  return terms;
}

Terms collect(const Hypergraph& h, unsigned d, bool edge_only, const TraceOptions& opts) {
  Budget budget = resolve(h, opts);
  check_budget(h, d, budget);
  if (opts.method == TraceOptions::Method::Exhaustive) {
    return sum_exhaustive(h, d, edge_only, budget.max_tuples);
  }
  return sum_grouped(h, d, edge_only, opts.threads);
}

AlphaPoly to_poly(const Terms& terms, bool (*keep)(unsigned, unsigned)) {
  AlphaPoly p;
  for (const auto& [key, q] : terms) {
    if (keep(key.first, key.second)) p += AlphaPoly::alpha_beta(key.first, key.second) * q;
  }
  return p;
}

AlphaPoly weighted_degree_term(const Hypergraph& h) {
  // sum over edges of (sum_{pairs} d_i d_j + sum d_i^2)
  Integer total = 0;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    const auto& ed = h.edge(e);
    for (std::size_t i = 0; i < ed.size(); ++i) {
      total += Integer(h.degree(ed[i])) * h.degree(ed[i]);
      for (std::size_t j = i + 1; j < ed.size(); ++j) {
        total += Integer(h.degree(ed[i])) * h.degree(ed[j]);
      }
    }
  }
  return AlphaPoly::constant(Rational(total));
}

}  // namespace

Budget default_budget(unsigned k) {
  Budget b;
  b.max_order = 2 * k + 2;
  if (auto v = env_number("ALPHATRACE_MAX_ORDER")) b.max_order = static_cast<unsigned>(*v);
  if (auto v = env_number("ALPHATRACE_MAX_EDGES")) b.max_edges = *v;
  return b;
}

AlphaPoly phi(const Hypergraph& h, unsigned s) {
  Integer sum = 0;
  for (unsigned deg : h.degrees()) sum += ipow(deg, s);
  return AlphaPoly::monomial(Rational(scale(h) * sum), s);
}

TraceParts trace_decomposed(const Hypergraph& h, unsigned d, const TraceOptions& opts) {
  if (d == 0) return {AlphaPoly::constant(Rational(h.n())), {}, {}};
  Terms terms = collect(h, d, false, opts);
  TraceParts parts;
  parts.omega1 = to_poly(terms, [](unsigned, unsigned t) { return t == 0; });
  parts.omega2 = to_poly(terms, [](unsigned s, unsigned) { return s == 0; });
  parts.omega3 = to_poly(terms, [](unsigned s, unsigned t) { return s > 0 && t > 0; });
  return parts;
}

AlphaPoly trace_bruteforce(const Hypergraph& h, unsigned d, const TraceOptions& opts) {
  TraceParts parts = trace_decomposed(h, d, opts);
  return (parts.omega1 + parts.omega2 + parts.omega3) * Rational(scale(h));
}

Rational adjacency_moment(const Hypergraph& h, unsigned d, const TraceOptions& opts) {
  if (d == 0) return Rational(scale(h) * h.n());
  Terms terms = collect(h, d, true, opts);
  Rational sum = 0;
  for (const auto& [key, q] : terms) sum += q;
  return sum * Rational(scale(h));
}

Integer complete_tree_sum(unsigned k) {
  if (k < 2) throw ParameterError("k must be at least 2");
  const unsigned n = k + 1;
  // vertex i roots the edge that omits vertex sigma(i), sigma a derangement
  std::vector<unsigned> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0u);
  Integer sum = 0;
  do {
    bool derangement = true;
    for (unsigned i = 0; i < n; ++i) {
      if (sigma[i] == i) derangement = false;
    }
    if (!derangement) continue;
    MultiDigraph g;
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = 0; j < n; ++j) {
        if (j != i && j != sigma[i]) g.add_arc(i, j);
      }
    }
    sum += arborescence_count(g, 0);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return sum;
}

Rational complete_constant(unsigned k) {
  if (k != 2) {
    throw UnsupportedClosedForm("the complete-subhypergraph constant is only known for k = 2");
  }
  static const Rational value = []() -> Rational {
    Hypergraph triangle(2, 3, {{0, 1}, {1, 2}, {0, 2}});
    TraceOptions opts;
    opts.budget = Budget{3, 3, 1'000'000};
    AlphaPoly rest = trace_bruteforce(triangle, 3, opts) - phi(triangle, 3);
    // (k+1)(k-1)^(n-k) k^(k-2) alpha (1-alpha)^k sum d^2 with k = 2, n = 3
    rest -= AlphaPoly::alpha_beta(1, 2) * Rational(3 * 12);
    AlphaPoly q, r;
    rest.divmod(AlphaPoly::alpha_beta(0, 3), q, r);
    if (!r.is_zero() || q.degree() > 0) {
      throw std::logic_error("calibration: order-3 remainder is not a multiple of (1-a)^3");
    }
    return q.coeff(0) / Rational(3);
  }();
  return value;
}

bool closed_form_available(const Hypergraph& h, unsigned d) {
  if (!h.is_simple() || d > h.k() + 2) return false;
  if (d == h.k() + 1 && h.k() >= 3) return count_complete_subhypergraphs(h) == 0;
  return true;
}

AlphaPoly trace_k_plus_2(const Hypergraph& h) {
  const unsigned k = h.k();
  const long n = static_cast<long>(h.n());
  AlphaPoly out = phi(h, k + 2);
  out += AlphaPoly::alpha_beta(0, k + 2) * adjacency_moment(h, k + 2);
  if (h.edge_count() > 0) {
    Rational c = Rational(k + 2) * km1_pow(k, n - k) * Rational(ipow(k, k - 2));
    out += AlphaPoly::alpha_beta(2, k) * weighted_degree_term(h) * c;
  }
  auto complete = complete_subhypergraphs(h);
  if (!complete.empty()) {
    Integer trees = complete_tree_sum(k);
    Integer deg_sum = 0;
    for (const auto& vs : complete) {
      for (Vertex v : vs) deg_sum += h.degree(v);
    }
    Rational c = Rational(k + 2) * km1_pow(k, n - k - 1) * Rational(trees * deg_sum);
    out += AlphaPoly::alpha_beta(1, k + 1) * c;
  }
  return out;
}

AlphaPoly trace_closed(const Hypergraph& h, unsigned d) {
  const unsigned k = h.k();
  const long n = static_cast<long>(h.n());
  if (!h.is_simple()) {
    throw UnsupportedClosedForm("closed forms are stated for simple hypergraphs");
  }
  if (d > k + 2) {
    throw UnsupportedClosedForm("no closed form above order k+2 = " + std::to_string(k + 2));
  }
  if (d == 0) return AlphaPoly::constant(Rational(scale(h) * h.n()));
  if (d < k) return phi(h, d);
  if (d == k + 2) return trace_k_plus_2(h);
  AlphaPoly out = phi(h, d);
  if (h.edge_count() == 0) return out;
  if (d == k) {
    Rational c = km1_pow(k, n - k) * Rational(ipow(k, k - 1) * h.edge_count());
    return out + AlphaPoly::alpha_beta(0, k) * c;
  }
  std::size_t complete = count_complete_subhypergraphs(h);
  Integer sq = 0;
  for (unsigned deg : h.degrees()) sq += Integer(deg) * deg;
  Rational outer = Rational(k + 1) * km1_pow(k, n - k);
  AlphaPoly inner = AlphaPoly::alpha_beta(1, k) * Rational(ipow(k, k - 2) * sq);
  if (complete > 0) {
    if (k >= 3) {
      throw UnsupportedClosedForm(
          "order k+1 with a complete subhypergraph needs a constant unknown for k >= 3");
    }
    inner += AlphaPoly::alpha_beta(0, k + 1) * (complete_constant(k) * Rational(complete));
  }
  return out + inner * outer;
}

std::size_t VeblenInfragraph::total_edges() const {
  return std::accumulate(multiplicity.begin(), multiplicity.end(), std::size_t{0});
}

std::vector<VeblenInfragraph> enumerate_veblen(const Hypergraph& h, std::size_t max_edges) {
  Budget b = default_budget(h.k());
  if (max_edges > b.max_order) {
    throw BudgetExceeded("Veblen enumeration up to " + std::to_string(max_edges) +
                         " edges exceeds budget " + std::to_string(b.max_order));
  }
  std::vector<VeblenInfragraph> out;
  for_each_veblen(h, 1, max_edges, [&](const std::vector<unsigned>& mult, std::size_t) {
    std::vector<Edge> edges;
    std::vector<unsigned> ms;
    for (std::size_t e = 0; e < mult.size(); ++e) {
      if (!mult[e]) continue;
      edges.push_back(h.edge(e));
      ms.push_back(mult[e]);
    }
    out.push_back({mult, Hypergraph(h.k(), h.n(), edges, ms)});
  });
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

}  // namespace alphatrace
