#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alphatrace/alpha_poly.hpp"
#include "alphatrace/hypergraph.hpp"
#include "alphatrace/trace.hpp"

namespace alphatrace {

enum class Relation { Less, Greater, EqualUpTo };
std::string to_string(Relation r);

struct OrderVerdict {
  Relation relation = Relation::EqualUpTo;
  std::optional<unsigned> first_diff_order;
  unsigned d_max = 0;
  // Tr(h1) - Tr(h2) at first_diff_order, evaluated at alpha
  Rational difference;
};

// Raised by --cross-check style runs when closed form and brute force differ.
class MethodMismatch : public std::logic_error {
 public:
  MethodMismatch(const std::string& what, AlphaPoly closed, AlphaPoly brute)
      : std::logic_error(what), closed(std::move(closed)), brute(std::move(brute)) {}
  AlphaPoly closed;
  AlphaPoly brute;
};

struct OrderOptions {
  TraceOptions trace;
  bool use_closed_forms = true;
  bool cross_check = false;
};

// Memo of trace polynomials keyed by (canonical form, order). Safe to share
// between threads; results never depend on what is cached.
class TraceCache {
 public:
  explicit TraceCache(OrderOptions opts = {}) : opts_(std::move(opts)) {}
  TraceCache(const TraceCache&) = delete;
  TraceCache& operator=(const TraceCache&) = delete;

  AlphaPoly trace(const Hypergraph& h, unsigned d);
  const OrderOptions& options() const { return opts_; }
  std::size_t size() const;

 private:
  AlphaPoly compute(const Hypergraph& h, unsigned d) const;

  OrderOptions opts_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, unsigned>, AlphaPoly> memo_;
};

// d_max defaults to 2k+2. alpha must lie strictly between 0 and 1, and
// both hypergraphs must share k and n.
OrderVerdict compare_at_alpha(const Hypergraph& h1, const Hypergraph& h2, const Rational& alpha,
                              std::optional<unsigned> d_max, TraceCache& cache);
OrderVerdict compare_at_alpha(const Hypergraph& h1, const Hypergraph& h2, const Rational& alpha,
                              std::optional<unsigned> d_max = std::nullopt);

struct SymbolicVerdict {
  enum class Kind { LessOn, GreaterOn, SignChanges, EqualUpTo };
  Kind kind = Kind::EqualUpTo;
  std::optional<unsigned> first_diff_order;
  unsigned d_max = 0;
  AlphaPoly difference;              // Tr(h1) - Tr(h2) at first_diff_order
  std::vector<RootInterval> witnesses;  // roots in (0,1) for SignChanges
};
std::string to_string(SymbolicVerdict::Kind k);

SymbolicVerdict compare_symbolic(const Hypergraph& h1, const Hypergraph& h2,
                                 std::optional<unsigned> d_max, TraceCache& cache);
SymbolicVerdict compare_symbolic(const Hypergraph& h1, const Hypergraph& h2,
                                 std::optional<unsigned> d_max = std::nullopt);

struct SortedFamily {
  // order[i] is the input index of the i-th member in S_alpha-order
  std::vector<std::size_t> order;
  // tie_class[i] for position i; equal classes are EqualUpTo(d_max)
  std::vector<std::size_t> tie_class;
  // verdict[a][b] compares input members a and b
  std::vector<std::vector<OrderVerdict>> verdict;
  unsigned d_max = 0;
};

SortedFamily sort_family(const std::vector<Hypergraph>& family, const Rational& alpha,
                         std::optional<unsigned> d_max, TraceCache& cache, unsigned threads = 1);

// One positional claim checked against one enumerated family.
struct PositionCheck {
  std::string scope;   // e.g. "all", "g=3", "D=2"
  std::string claim;   // first, second, last, second-last, max-moment, ...
  std::string target;  // family name of the claimed hypergraph
  std::size_t family_size = 0;
  std::optional<std::size_t> target_position;  // 0-based, after sorting
  std::optional<unsigned> moment_order;        // for moment claims
  bool holds = false;
  std::string note;
  // members in sorted order, with the comparison against the target
  std::vector<std::string> member_keys;
  std::vector<std::vector<unsigned>> member_degrees;
  std::vector<OrderVerdict> target_vs_member;
  std::vector<Rational> moments;  // for moment claims
};

struct TheoremReport {
  std::string id;
  std::string alias;
  std::string statement;
  unsigned k = 0;
  std::size_t m = 0;
  Rational alpha;
  unsigned d_max = 0;
  bool holds = false;
  std::vector<PositionCheck> checks;
};

struct TheoremInfo {
  std::string id;
  std::string alias;
  unsigned min_k;
  std::string statement;
};
const std::vector<TheoremInfo>& theorem_catalog();
// Accepts an id or an alias; throws ParameterError otherwise.
const TheoremInfo& find_theorem(const std::string& id_or_alias);

TheoremReport verify_theorem(const std::string& id_or_alias, unsigned k, std::size_t m,
                             const Rational& alpha, std::optional<unsigned> d_max,
                             TraceCache& cache, unsigned threads = 1);

}  // namespace alphatrace
