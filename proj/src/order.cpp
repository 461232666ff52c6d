#include "alphatrace/order.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <thread>

#include "alphatrace/enumeration.hpp"
#include "alphatrace/errors.hpp"
#include "alphatrace/families.hpp"

namespace alphatrace {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Less:
      return "Less";
    case Relation::Greater:
      return "Greater";
    case Relation::EqualUpTo:
      return "EqualUpTo";
  }
  return "?";
}

std::string to_string(SymbolicVerdict::Kind k) {
  switch (k) {
    case SymbolicVerdict::Kind::LessOn:
      return "LessOn(0,1)";
    case SymbolicVerdict::Kind::GreaterOn:
      return "GreaterOn(0,1)";
    case SymbolicVerdict::Kind::SignChanges:
      return "SignChanges";
    case SymbolicVerdict::Kind::EqualUpTo:
      return "EqualUpTo";
  }
  return "?";
}

AlphaPoly TraceCache::compute(const Hypergraph& h, unsigned d) const {
  if (opts_.use_closed_forms && closed_form_available(h, d)) {
    AlphaPoly closed = trace_closed(h, d);
    if (opts_.cross_check) {
      AlphaPoly brute = trace_bruteforce(h, d, opts_.trace);
      if (!(brute == closed)) {
        throw MethodMismatch("closed form and brute force disagree at order " +
                                 std::to_string(d) + " on " + canonical_form(h),
                             closed, brute);
      }
    }
    return closed;
  }
  return trace_bruteforce(h, d, opts_.trace);
}

AlphaPoly TraceCache::trace(const Hypergraph& h, unsigned d) {
  auto key = std::make_pair(canonical_form(h), d);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  // computed outside the lock; a racing duplicate yields the same value
  AlphaPoly value = compute(h, d);
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.emplace(std::move(key), std::move(value)).first->second;
}

std::size_t TraceCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.size();
}

namespace {

unsigned resolve_dmax(const Hypergraph& h, std::optional<unsigned> d_max) {
  return d_max ? *d_max : 2 * h.k() + 2;
}

void check_comparable(const Hypergraph& h1, const Hypergraph& h2) {
  if (h1.k() != h2.k() || h1.n() != h2.n()) {
    throw ParameterError("S_alpha comparison needs equal k and n (got k=" +
                         std::to_string(h1.k()) + ",n=" + std::to_string(h1.n()) + " vs k=" +
                         std::to_string(h2.k()) + ",n=" + std::to_string(h2.n()) + ")");
  }
}

void check_alpha(const Rational& alpha) {
  if (alpha <= 0 || alpha >= 1) throw ParameterError("alpha must lie strictly between 0 and 1");
}

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

OrderVerdict compare_at_alpha(const Hypergraph& h1, const Hypergraph& h2, const Rational& alpha,
                              std::optional<unsigned> d_max, TraceCache& cache) {
  check_comparable(h1, h2);
  check_alpha(alpha);
  OrderVerdict v;
  v.d_max = resolve_dmax(h1, d_max);
  for (unsigned d = 0; d <= v.d_max; ++d) {
    Rational diff = cache.trace(h1, d).evaluate(alpha) - cache.trace(h2, d).evaluate(alpha);
    if (diff != 0) {
      v.relation = diff < 0 ? Relation::Less : Relation::Greater;
      v.first_diff_order = d;
      v.difference = diff;
      return v;
    }
  }
  return v;
}

OrderVerdict compare_at_alpha(const Hypergraph& h1, const Hypergraph& h2, const Rational& alpha,
                              std::optional<unsigned> d_max) {
  TraceCache cache;
  return compare_at_alpha(h1, h2, alpha, d_max, cache);
}

SymbolicVerdict compare_symbolic(const Hypergraph& h1, const Hypergraph& h2,
                                 std::optional<unsigned> d_max, TraceCache& cache) {
  check_comparable(h1, h2);
  SymbolicVerdict v;
  v.d_max = resolve_dmax(h1, d_max);
  for (unsigned d = 0; d <= v.d_max; ++d) {
    AlphaPoly diff = cache.trace(h1, d) - cache.trace(h2, d);
    if (diff.is_zero()) continue;
    v.first_diff_order = d;
    v.difference = diff;
    SignReport sign = sign_on_unit_interval(diff);
    switch (sign.sign) {
      case IntervalSign::Negative:
        v.kind = SymbolicVerdict::Kind::LessOn;
        break;
      case IntervalSign::Positive:
        v.kind = SymbolicVerdict::Kind::GreaterOn;
        break;
      default:
        v.kind = SymbolicVerdict::Kind::SignChanges;
        v.witnesses = sign.roots;
        break;
    }
    return v;
  }
  return v;
}

SymbolicVerdict compare_symbolic(const Hypergraph& h1, const Hypergraph& h2,
                                 std::optional<unsigned> d_max) {
  TraceCache cache;
  return compare_symbolic(h1, h2, d_max, cache);
}

SortedFamily sort_family(const std::vector<Hypergraph>& family, const Rational& alpha,
                         std::optional<unsigned> d_max, TraceCache& cache, unsigned threads) {
  SortedFamily out;
  const std::size_t n = family.size();
  if (n == 0) return out;
  check_alpha(alpha);
  for (const auto& h : family) check_comparable(family.front(), h);
  out.d_max = resolve_dmax(family.front(), d_max);
  out.verdict.assign(n, std::vector<OrderVerdict>(n));

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    out.verdict[a][a].d_max = out.d_max;
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    auto [a, b] = pairs[i];
    out.verdict[a][b] = compare_at_alpha(family[a], family[b], alpha, out.d_max, cache);
  });
  for (auto [a, b] : pairs) {
    OrderVerdict mirrored = out.verdict[a][b];
    if (mirrored.relation == Relation::Less) {
      mirrored.relation = Relation::Greater;
    } else if (mirrored.relation == Relation::Greater) {
      mirrored.relation = Relation::Less;
    }
    mirrored.difference = -mirrored.difference;
    out.verdict[b][a] = mirrored;
  }

  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
    return out.verdict[a][b].relation == Relation::Less;
  });
  out.tie_class.assign(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    bool tied = out.verdict[out.order[i - 1]][out.order[i]].relation == Relation::EqualUpTo;
    out.tie_class[i] = out.tie_class[i - 1] + (tied ? 0 : 1);
  }
  return out;
}

// theorem verification

namespace {

enum class Claim { First, Second, Last, SecondLast, MaxMoment, SecondMaxMoment, MinMoment,
                   SecondMinMoment };

std::string claim_name(Claim c) {
  switch (c) {
    case Claim::First:
      return "first";
    case Claim::Second:
      return "second";
    case Claim::Last:
      return "last";
    case Claim::SecondLast:
      return "second-last";
    case Claim::MaxMoment:
      return "largest-moment";
    case Claim::SecondMaxMoment:
      return "second-largest-moment";
    case Claim::MinMoment:
      return "smallest-moment";
    case Claim::SecondMinMoment:
      return "second-smallest-moment";
  }
  return "?";
}

struct Context {
  unsigned k;
  std::size_t m;
  Rational alpha;
  unsigned d_max;
  TraceCache& cache;
  unsigned threads;
};

PositionCheck check_order_claim(const Context& ctx, const std::string& scope, Claim claim,
                                const FamilySpec& target_spec,
                                const std::vector<Hypergraph>& family) {
  PositionCheck pc;
  pc.scope = scope;
  pc.claim = claim_name(claim);
  pc.target = family_name(target_spec);
  pc.family_size = family.size();
  const std::string target_key = canonical_form(build_family(ctx.k, target_spec));

  SortedFamily sorted = sort_family(family, ctx.alpha, ctx.d_max, ctx.cache, ctx.threads);
  std::optional<std::size_t> t;
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::string key = canonical_form(family[sorted.order[i]]);
    if (key == target_key) {
      t = sorted.order[i];
      pc.target_position = i;
    }
    pc.member_keys.push_back(key);
    pc.member_degrees.push_back(sorted_degree_sequence(family[sorted.order[i]]));
  }
  if (!t) {
    pc.note = "target is not a member of the enumerated family";
    return pc;
  }
  std::size_t before = 0, after = 0, ties = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::size_t j = sorted.order[i];
    pc.target_vs_member.push_back(sorted.verdict[*t][j]);
    if (j == *t) continue;
    switch (sorted.verdict[*t][j].relation) {
      case Relation::Less:
        ++after;
        break;
      case Relation::Greater:
        ++before;
        break;
      case Relation::EqualUpTo:
        ++ties;
        break;
    }
  }
  switch (claim) {
    case Claim::First:
      pc.holds = before == 0 && ties == 0;
      break;
    case Claim::Second:
      pc.holds = before == 1 && ties == 0;
      break;
    case Claim::Last:
      pc.holds = after == 0 && ties == 0;
      break;
    case Claim::SecondLast:
      pc.holds = after == 1 && ties == 0;
      break;
    default:
      break;
  }
  pc.note = std::to_string(before) + " before, " + std::to_string(after) + " after, " +
            std::to_string(ties) + " tied up to order " + std::to_string(ctx.d_max);
  return pc;
}

PositionCheck check_moment_claim(const Context& ctx, const std::string& scope, Claim claim,
                                 unsigned order, const FamilySpec& target_spec,
                                 const std::vector<Hypergraph>& family) {
  PositionCheck pc;
  pc.scope = scope;
  pc.claim = claim_name(claim);
  pc.target = family_name(target_spec);
  pc.family_size = family.size();
  pc.moment_order = order;
  const std::string target_key = canonical_form(build_family(ctx.k, target_spec));

  std::vector<Rational> values(family.size());
  parallel_for(family.size(), ctx.threads, [&](std::size_t i) {
    values[i] = ctx.cache.trace(family[i], order).evaluate(ctx.alpha);
  });
  std::optional<std::size_t> t;
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::string key = canonical_form(family[i]);
    if (key == target_key) {
      t = i;
      pc.target_position = i;
    }
    pc.member_keys.push_back(key);
    pc.member_degrees.push_back(sorted_degree_sequence(family[i]));
    pc.moments.push_back(values[i]);
  }
  if (!t) {
    pc.note = "target is not a member of the enumerated family";
    return pc;
  }
  std::size_t larger = 0, smaller = 0, ties = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i == *t) continue;
    if (values[i] > values[*t]) {
      ++larger;
    } else if (values[i] < values[*t]) {
      ++smaller;
    } else {
      ++ties;
    }
  }
  switch (claim) {
    case Claim::MaxMoment:
      pc.holds = larger == 0 && ties == 0;
      break;
    case Claim::SecondMaxMoment:
      pc.holds = larger == 1 && ties == 0;
      break;
    case Claim::MinMoment:
      pc.holds = smaller == 0 && ties == 0;
      break;
    case Claim::SecondMinMoment:
      pc.holds = smaller == 1 && ties == 0;
      break;
    default:
      break;
  }
  pc.note = std::to_string(larger) + " larger, " + std::to_string(smaller) + " smaller, " +
            std::to_string(ties) + " equal";
  return pc;
}

std::vector<Hypergraph> unicyclic(unsigned k, std::size_t m, std::optional<std::size_t> g = {}) {
  return enumerate_family({FamilyClass::LinearUnicyclic, k, m, g, std::nullopt, false});
}

std::vector<Hypergraph> hypertrees(unsigned k, std::size_t m, std::optional<std::size_t> D = {}) {
  return enumerate_family({FamilyClass::Hypertree, k, m, std::nullopt, D, false});
}

void need_m(std::size_t m, std::size_t lo, const std::string& why) {
  if (m < lo) throw ParameterError(why + " needs m >= " + std::to_string(lo));
}

family::Starlike starlike_with_ones(std::vector<std::size_t> head, std::size_t m) {
  std::size_t used = std::accumulate(head.begin(), head.end(), std::size_t{0});
  while (used < m) {
    head.push_back(1);
    ++used;
  }
  return family::Starlike{head};
}

std::string girth_scope(std::size_t g) { return "g=" + std::to_string(g); }

}  // namespace

const std::vector<TheoremInfo>& theorem_catalog() {
  static const std::vector<TheoremInfo> catalog = {
      {"unicyclic-girth-last", "5.1", 2,
       "for each girth g, C_g(.)S_{m-g} is last among linear unicyclic hypergraphs of girth g"},
      {"unicyclic-last", "5.2", 2, "C_3(.)S_{m-3} is last among linear unicyclic hypergraphs"},
      {"unicyclic-second-last", "5.3", 2,
       "C_3;{m-4,1,0} is second last among linear unicyclic hypergraphs"},
      {"unicyclic-girth-first", "5.5", 3,
       "for each girth g, C_g.P_{m-g} is first among linear unicyclic hypergraphs of girth g"},
      {"unicyclic-first", "5.6", 3, "the hypercycle C_m is first among linear unicyclic hypergraphs"},
      {"unicyclic-second", "5.7", 3, "C_{m-1}.P_1 is second among linear unicyclic hypergraphs"},
      {"tree-first", "6.2", 3, "the hyperpath P_m is first among hypertrees"},
      {"tree-second", "6.3", 3, "F_{m,k} is second among hypertrees"},
      {"tree-last", "6.4", 2, "the hyperstar S_m is last among hypertrees"},
      {"tree-diameter-last", "6.5", 2,
       "for each diameter D, S_{t,D-t,1,...,1} (t = floor(D/2)) is last among hypertrees of "
       "diameter D"},
      {"tree-second-last", "6.6", 2, "S_{1,2,1,...,1} is second last among hypertrees"},
      {"unicyclic-moment-max", "7.1", 2,
       "C_g(.)S_{m-g} has the largest order-2 moment for each girth; C_3(.)S_{m-3} the largest "
       "and C_3;{m-4,1,0} the second largest overall"},
      {"unicyclic-moment-min", "7.2", 3,
       "C_g.P_{m-g} has the smallest order-(k+2) moment for each girth; C_m the smallest overall"},
      {"tree-moment", "7.3", 2,
       "S_m and S_{1,2,1,...,1} have the largest and second largest order-2 moments; for k >= 3, "
       "P_m and F_{m,k} have the smallest and second smallest order-(k+2) moments"},
  };
  return catalog;
}

const TheoremInfo& find_theorem(const std::string& id_or_alias) {
  for (const auto& t : theorem_catalog()) {
    if (t.id == id_or_alias || t.alias == id_or_alias) return t;
  }
  throw ParameterError("unknown theorem '" + id_or_alias + "'");
}

TheoremReport verify_theorem(const std::string& id_or_alias, unsigned k, std::size_t m,
                             const Rational& alpha, std::optional<unsigned> d_max,
                             TraceCache& cache, unsigned threads) {
  const TheoremInfo& info = find_theorem(id_or_alias);
  check_alpha(alpha);
  if (k < info.min_k) {
    throw ParameterError(info.id + " is stated for k >= " + std::to_string(info.min_k));
  }
  TheoremReport r;
  r.id = info.id;
  r.alias = info.alias;
  r.statement = info.statement;
  r.k = k;
  r.m = m;
  r.alpha = alpha;
  r.d_max = d_max ? *d_max : 2 * k + 2;
  Context ctx{k, m, alpha, r.d_max, cache, threads};
  const std::string& id = info.id;

  if (id.rfind("unicyclic", 0) == 0) need_m(m, 3, "a linear unicyclic family");

  if (id == "unicyclic-girth-last") {
    for (std::size_t g = 3; g <= m; ++g) {
      r.checks.push_back(check_order_claim(ctx, girth_scope(g), Claim::Last,
                                           family::CycleWithStar{g, m}, unicyclic(k, m, g)));
    }
  } else if (id == "unicyclic-last") {
    r.checks.push_back(
        check_order_claim(ctx, "all", Claim::Last, family::CycleWithStar{3, m}, unicyclic(k, m)));
  } else if (id == "unicyclic-second-last") {
    need_m(m, 4, id);
    r.checks.push_back(check_order_claim(ctx, "all", Claim::SecondLast,
                                         family::TriangleSplit{m - 4, 1, 0}, unicyclic(k, m)));
  } else if (id == "unicyclic-girth-first") {
    for (std::size_t g = 3; g <= m; ++g) {
      r.checks.push_back(check_order_claim(ctx, girth_scope(g), Claim::First,
                                           family::CycleWithPath{g, m}, unicyclic(k, m, g)));
    }
  } else if (id == "unicyclic-first") {
    r.checks.push_back(
        check_order_claim(ctx, "all", Claim::First, family::Hypercycle{m}, unicyclic(k, m)));
  } else if (id == "unicyclic-second") {
    need_m(m, 4, id);
    r.checks.push_back(check_order_claim(ctx, "all", Claim::Second,
                                         family::CycleWithPath{m - 1, m}, unicyclic(k, m)));
  } else if (id == "tree-first") {
    need_m(m, 1, id);
    r.checks.push_back(
        check_order_claim(ctx, "all", Claim::First, family::Hyperpath{m}, hypertrees(k, m)));
  } else if (id == "tree-second") {
    need_m(m, 4, id);
    r.checks.push_back(
        check_order_claim(ctx, "all", Claim::Second, family::PathWithTwig{m}, hypertrees(k, m)));
  } else if (id == "tree-last") {
    need_m(m, 1, id);
    r.checks.push_back(
        check_order_claim(ctx, "all", Claim::Last, family::Hyperstar{m}, hypertrees(k, m)));
  } else if (id == "tree-diameter-last") {
    need_m(m, 2, id);
    for (std::size_t D = 2; D <= m; ++D) {
      std::size_t t = D / 2;
      r.checks.push_back(check_order_claim(ctx, "D=" + std::to_string(D), Claim::Last,
                                           starlike_with_ones({t, D - t}, m),
                                           hypertrees(k, m, D)));
    }
  } else if (id == "tree-second-last") {
    need_m(m, 3, id);
    r.checks.push_back(check_order_claim(ctx, "all", Claim::SecondLast,
                                         starlike_with_ones({1, 2}, m), hypertrees(k, m)));
  } else if (id == "unicyclic-moment-max") {
    for (std::size_t g = 3; g <= m; ++g) {
      r.checks.push_back(check_moment_claim(ctx, girth_scope(g), Claim::MaxMoment, 2,
                                            family::CycleWithStar{g, m}, unicyclic(k, m, g)));
    }
    auto all = unicyclic(k, m);
    r.checks.push_back(
        check_moment_claim(ctx, "all", Claim::MaxMoment, 2, family::CycleWithStar{3, m}, all));
    if (m >= 4) {
      r.checks.push_back(check_moment_claim(ctx, "all", Claim::SecondMaxMoment, 2,
                                            family::TriangleSplit{m - 4, 1, 0}, all));
    }
  } else if (id == "unicyclic-moment-min") {
    for (std::size_t g = 3; g <= m; ++g) {
      r.checks.push_back(check_moment_claim(ctx, girth_scope(g), Claim::MinMoment, k + 2,
                                            family::CycleWithPath{g, m}, unicyclic(k, m, g)));
    }
    r.checks.push_back(check_moment_claim(ctx, "all", Claim::MinMoment, k + 2,
                                          family::Hypercycle{m}, unicyclic(k, m)));
  } else if (id == "tree-moment") {
    need_m(m, 3, id);
    auto all = hypertrees(k, m);
    r.checks.push_back(
        check_moment_claim(ctx, "all", Claim::MaxMoment, 2, family::Hyperstar{m}, all));
    r.checks.push_back(check_moment_claim(ctx, "all", Claim::SecondMaxMoment, 2,
                                          starlike_with_ones({1, 2}, m), all));
    if (k >= 3) {
      r.checks.push_back(
          check_moment_claim(ctx, "all", Claim::MinMoment, k + 2, family::Hyperpath{m}, all));
      if (m >= 4) {
        r.checks.push_back(check_moment_claim(ctx, "all", Claim::SecondMinMoment, k + 2,
                                              family::PathWithTwig{m}, all));
      }
    }
  }
  r.holds = !r.checks.empty() &&
            std::all_of(r.checks.begin(), r.checks.end(), [](const auto& c) { return c.holds; });
  return r;
}

}  // namespace alphatrace
