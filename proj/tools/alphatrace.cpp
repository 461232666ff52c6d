#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "alphatrace/enumeration.hpp"
#include "alphatrace/errors.hpp"
#include "alphatrace/families.hpp"
#include "alphatrace/json_io.hpp"
#include "alphatrace/order.hpp"
#include "alphatrace/trace.hpp"

using namespace alphatrace;

namespace {

enum Exit { kOk = 0, kViolated = 1, kUsage = 2, kBudget = 3 };

struct Source {
  std::string family;
  std::string input;
  unsigned k = 3;
  std::size_t m = 0;
  std::size_t g = 0;
  std::size_t n1 = 0, n2 = 0, n3 = 0;
  std::vector<std::size_t> branches;
};

struct Output {
  std::string format = "table";
  std::string path;
};

void add_source(CLI::App* cmd, Source& s) {
  cmd->add_option("--family", s.family,
                  "hyperpath, hyperstar, hypercycle, cg-odot-s, c3-split, cg-dot-p, starlike, fmk");
  cmd->add_option("--input", s.input, "hypergraph JSON file");
  cmd->add_option("--k", s.k, "edge size")->check(CLI::Range(2u, 16u));
  cmd->add_option("--m", s.m, "number of edges");
  cmd->add_option("--g", s.g, "girth for cycle families");
  cmd->add_option("--n1", s.n1);
  cmd->add_option("--n2", s.n2);
  cmd->add_option("--n3", s.n3);
  cmd->add_option("--branches", s.branches, "starlike branch lengths")->delimiter(',');
}

void add_output(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv", "table"}));
  cmd->add_option("--output,-o", o.path, "write to file instead of stdout");
}

FamilySpec parse_spec(const Source& s) {
  const std::string& f = s.family;
  if (f == "hyperpath") return family::Hyperpath{s.m};
  if (f == "hyperstar") return family::Hyperstar{s.m};
  if (f == "hypercycle") return family::Hypercycle{s.m};
  if (f == "cg-odot-s") return family::CycleWithStar{s.g, s.m};
  if (f == "c3-split") return family::TriangleSplit{s.n1, s.n2, s.n3};
  if (f == "cg-dot-p") return family::CycleWithPath{s.g, s.m};
  if (f == "starlike") return family::Starlike{s.branches};
  if (f == "fmk") return family::PathWithTwig{s.m};
  throw ParameterError("unknown family '" + f + "'");
}

std::pair<Hypergraph, std::string> load(const Source& s) {
  if (!s.input.empty() && !s.family.empty()) {
    throw ParameterError("give either --family or --input, not both");
  }
  if (!s.input.empty()) {
    return {read_hypergraph(s.input), std::filesystem::path(s.input).stem().string()};
  }
  if (s.family.empty()) throw ParameterError("one of --family or --input is required");
  FamilySpec spec = parse_spec(s);
  return {build_family(s.k, spec), family_name(spec)};
}

Rational parse_alpha(const std::string& text) {
  Rational a = parse_rational(text);
  if (a <= 0 || a >= 1) throw ParameterError("alpha must satisfy 0 < alpha < 1");
  return a;
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

void emit(const Output& o, const std::string& text) {
  if (o.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.path);
  if (!out) throw ParameterError("cannot write " + o.path);
  out << text;
}

std::string join(const std::vector<unsigned>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

// trace ----------------------------------------------------------------------

struct TraceArgs {
  Source src;
  Output out;
  std::optional<unsigned> d;
  std::optional<unsigned> d_max;
  std::string method = "auto";
  bool cross_check = false;
  unsigned jobs = 1;
};

int run_trace(const TraceArgs& a) {
  auto [h, label] = load(a.src);
  if (a.d && a.d_max) throw ParameterError("give either --d or --d-max");
  unsigned lo = a.d ? *a.d : 0;
  unsigned hi = a.d ? *a.d : (a.d_max ? *a.d_max : h.k() + 2);

  TraceOptions opts;
  opts.threads = resolve_jobs(a.jobs);
  if (a.method == "exhaustive") opts.method = TraceOptions::Method::Exhaustive;

  std::vector<std::pair<unsigned, AlphaPoly>> rows;
  for (unsigned d = lo; d <= hi; ++d) {
    AlphaPoly p;
    bool closed_ok = closed_form_available(h, d);
    if (a.method == "closed") {
      p = trace_closed(h, d);
    } else if (a.method == "auto" && closed_ok && !a.cross_check) {
      p = trace_closed(h, d);
    } else {
      p = trace_bruteforce(h, d, opts);
    }
    if (a.cross_check && closed_ok) {
      AlphaPoly closed = trace_closed(h, d);
      if (!(closed == p)) {
        json dump{{"error", "closed form and brute force disagree"},
                  {"hypergraph", hypergraph_to_json(h)},
                  {"closed", trace_to_json(d, closed)},
                  {"brute", trace_to_json(d, p)}};
        std::cerr << dump.dump(2) << "\n";
        return kViolated;
      }
    }
    rows.emplace_back(d, std::move(p));
  }

  std::ostringstream os;
  if (a.out.format == "json") {
    json j;
    j["label"] = label;
    j["hypergraph"] = hypergraph_to_json(h);
    j["traces"] = json::array();
    for (const auto& [d, p] : rows) j["traces"].push_back(trace_to_json(d, p));
    os << j.dump(2) << "\n";
  } else if (a.out.format == "csv") {
    os << "label,d,power,num,den\n";
    for (const auto& [d, p] : rows) {
      for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        const auto& c = p.coeffs()[i];
        if (c == 0) continue;
        os << label << "," << d << "," << i << "," << c.get_num().get_str() << ","
           << c.get_den().get_str() << "\n";
      }
    }
  } else {
    os << label << "  k=" << h.k() << " n=" << h.n() << " m=" << h.total_edges() << "\n";
    for (const auto& [d, p] : rows) os << "Tr_" << d << " = " << p.to_string() << "\n";
  }
  emit(a.out, os.str());
  return kOk;
}

// compare --------------------------------------------------------------------

struct CompareArgs {
  std::string a, b;
  std::string alpha = "1/2";
  std::optional<unsigned> d_max;
  bool symbolic = false;
  bool cross_check = false;
  Output out;
};

int run_compare(const CompareArgs& a) {
  Hypergraph h1 = read_hypergraph(a.a);
  Hypergraph h2 = read_hypergraph(a.b);
  OrderOptions oo;
  oo.cross_check = a.cross_check;
  TraceCache cache(oo);
  std::ostringstream os;
  if (a.symbolic) {
    SymbolicVerdict v = compare_symbolic(h1, h2, a.d_max, cache);
    if (a.out.format == "table") {
      os << to_string(v.kind);
      if (v.first_diff_order) {
        os << " at d=" << *v.first_diff_order << ", difference " << v.difference.to_string();
      } else {
        os << " up to d=" << v.d_max;
      }
      os << "\n";
      for (const auto& w : v.witnesses) {
        os << "  root in [" << rational_string(w.lo) << ", " << rational_string(w.hi) << "]\n";
      }
    } else {
      os << symbolic_to_json(v).dump(2) << "\n";
    }
  } else {
    Rational alpha = parse_alpha(a.alpha);
    OrderVerdict v = compare_at_alpha(h1, h2, alpha, a.d_max, cache);
    if (a.out.format == "table") {
      os << to_string(v.relation);
      if (v.first_diff_order) {
        os << " at d=" << *v.first_diff_order << ", Tr(A)-Tr(B) = " << rational_string(v.difference);
      } else {
        os << " up to d=" << v.d_max;
      }
      os << "  (alpha=" << rational_string(alpha) << ")\n";
    } else {
      json j = verdict_to_json(v);
      j["alpha"] = rational_string(alpha);
      os << j.dump(2) << "\n";
    }
  }
  emit(a.out, os.str());
  return kOk;
}

// families -------------------------------------------------------------------

struct FamilyArgs {
  std::string cls;
  unsigned k = 3;
  std::size_t m = 0;
  std::optional<std::size_t> g;
  std::optional<std::size_t> diameter;
  bool max_degree_two = false;
};

void add_family_filter(CLI::App* cmd, FamilyArgs& f) {
  cmd->add_option("--class", f.cls)->check(CLI::IsMember({"hypertree", "unicyclic"}));
  cmd->add_option("--k", f.k)->check(CLI::Range(2u, 16u));
  cmd->add_option("--m", f.m);
  cmd->add_option("--g", f.g, "girth filter (unicyclic)");
  cmd->add_option("--diameter,-D", f.diameter, "diameter filter (hypertree)");
  cmd->add_flag("--max-degree-two", f.max_degree_two);
}

FamilyFilter to_filter(const FamilyArgs& f) {
  if (f.cls.empty()) throw ParameterError("--class is required");
  FamilyFilter filter;
  filter.family = f.cls == "hypertree" ? FamilyClass::Hypertree : FamilyClass::LinearUnicyclic;
  filter.k = f.k;
  filter.m = f.m;
  filter.girth = f.g;
  filter.diameter = f.diameter;
  filter.max_degree_two = f.max_degree_two;
  validate(filter);
  return filter;
}

struct EnumerateArgs {
  FamilyArgs fam;
  std::string dump;
  Output out;
};

int run_enumerate(const EnumerateArgs& a) {
  FamilyFilter filter = to_filter(a.fam);
  auto members = enumerate_family(filter);
  if (!a.dump.empty()) write_family_dump(a.dump, filter, members);
  std::ostringstream os;
  if (a.out.format == "json") {
    json j;
    j["filter"] = describe(filter);
    j["count"] = members.size();
    j["members"] = json::array();
    for (const auto& h : members) j["members"].push_back(hypergraph_to_json(h));
    os << j.dump(2) << "\n";
  } else if (a.out.format == "csv") {
    os << "index,n,degrees\n";
    for (std::size_t i = 0; i < members.size(); ++i) {
      os << i << "," << members[i].n() << ",\"" << join(sorted_degree_sequence(members[i]))
         << "\"\n";
    }
  } else {
    os << describe(filter) << ": " << members.size() << " classes\n";
    for (std::size_t i = 0; i < members.size(); ++i) {
      os << "  " << pad(std::to_string(i), 4) << "degrees " << join(sorted_degree_sequence(members[i]))
         << "\n";
    }
  }
  emit(a.out, os.str());
  return kOk;
}

struct SortArgs {
  FamilyArgs fam;
  std::string input_dir;
  std::string alpha = "1/2";
  std::optional<unsigned> d_max;
  unsigned jobs = 1;
  Output out;
};

int run_sort(const SortArgs& a) {
  std::vector<Hypergraph> members;
  std::string what;
  if (!a.input_dir.empty()) {
    members = read_family_dump(a.input_dir);
    what = a.input_dir;
  } else {
    FamilyFilter filter = to_filter(a.fam);
    members = enumerate_family(filter);
    what = describe(filter);
  }
  if (members.empty()) throw ParameterError("empty family");
  Rational alpha = parse_alpha(a.alpha);
  TraceCache cache;
  SortedFamily sorted = sort_family(members, alpha, a.d_max, cache, resolve_jobs(a.jobs));

  std::ostringstream os;
  if (a.out.format == "json") {
    json j;
    j["family"] = what;
    j["alpha"] = rational_string(alpha);
    j["d_max"] = sorted.d_max;
    j["ranking"] = json::array();
    for (std::size_t i = 0; i < sorted.order.size(); ++i) {
      std::size_t idx = sorted.order[i];
      json r{{"position", i},
             {"index", idx},
             {"tie_class", sorted.tie_class[i]},
             {"degrees", sorted_degree_sequence(members[idx])},
             {"hypergraph", hypergraph_to_json(members[idx])}};
      if (i + 1 < sorted.order.size()) {
        r["vs_next"] = verdict_to_json(sorted.verdict[idx][sorted.order[i + 1]]);
      }
      j["ranking"].push_back(std::move(r));
    }
    os << j.dump(2) << "\n";
  } else if (a.out.format == "csv") {
    os << "position,index,tie_class,first_diff_vs_next,degrees\n";
    for (std::size_t i = 0; i < sorted.order.size(); ++i) {
      std::size_t idx = sorted.order[i];
      std::string fd;
      if (i + 1 < sorted.order.size()) {
        auto v = sorted.verdict[idx][sorted.order[i + 1]];
        if (v.first_diff_order) fd = std::to_string(*v.first_diff_order);
      }
      os << i << "," << idx << "," << sorted.tie_class[i] << "," << fd << ",\""
         << join(sorted_degree_sequence(members[idx])) << "\"\n";
    }
  } else {
    os << what << ", alpha=" << rational_string(alpha) << ", d_max=" << sorted.d_max << "\n";
    os << "  pos  idx  tie  next   degrees\n";
    for (std::size_t i = 0; i < sorted.order.size(); ++i) {
      std::size_t idx = sorted.order[i];
      std::string next = "-";
      if (i + 1 < sorted.order.size()) {
        auto v = sorted.verdict[idx][sorted.order[i + 1]];
        next = v.first_diff_order ? "d=" + std::to_string(*v.first_diff_order) : "tie";
      }
      os << "  " << pad(std::to_string(i), 5) << pad(std::to_string(idx), 5)
         << pad(std::to_string(sorted.tie_class[i]), 5) << pad(next, 7)
         << join(sorted_degree_sequence(members[idx])) << "\n";
    }
  }
  emit(a.out, os.str());
  return kOk;
}

// verify ---------------------------------------------------------------------

struct VerifyArgs {
  std::string theorem;
  bool list = false;
  unsigned k = 3;
  std::size_t m = 4;
  std::string alpha = "1/2";
  std::optional<unsigned> d_max;
  bool cross_check = false;
  unsigned jobs = 1;
  Output out;
};

int run_verify(const VerifyArgs& a) {
  if (a.list) {
    std::ostringstream os;
    for (const auto& t : theorem_catalog()) {
      os << pad(t.id, 24) << pad(t.alias, 6) << "k>=" << t.min_k << "  " << t.statement << "\n";
    }
    emit(a.out, os.str());
    return kOk;
  }
  if (a.theorem.empty()) throw ParameterError("--theorem is required");
  Rational alpha = parse_alpha(a.alpha);
  OrderOptions oo;
  oo.cross_check = a.cross_check;
  TraceCache cache(oo);
  TheoremReport r = verify_theorem(a.theorem, a.k, a.m, alpha, a.d_max, cache, resolve_jobs(a.jobs));

  std::ostringstream os;
  if (a.out.format == "json") {
    os << report_to_json(r).dump(2) << "\n";
  } else if (a.out.format == "csv") {
    os << "theorem,scope,claim,target,family_size,position,moment_order,holds\n";
    for (const auto& c : r.checks) {
      os << r.id << "," << c.scope << "," << c.claim << "," << c.target << "," << c.family_size
         << "," << (c.target_position ? std::to_string(*c.target_position) : "") << ","
         << (c.moment_order ? std::to_string(*c.moment_order) : "") << ","
         << (c.holds ? "true" : "false") << "\n";
    }
  } else {
    os << r.id << " (" << r.alias << ")  k=" << r.k << " m=" << r.m
       << " alpha=" << rational_string(r.alpha) << " d_max=" << r.d_max << "\n";
    os << "  " << r.statement << "\n";
    for (const auto& c : r.checks) {
      os << "  [" << (c.holds ? "ok" : "FAIL") << "] " << pad(c.scope, 6) << pad(c.claim, 24)
         << pad(c.target, 12) << "pos "
         << (c.target_position ? std::to_string(*c.target_position) : "-") << "/" << c.family_size;
      if (c.moment_order) os << "  Tr_" << *c.moment_order;
      os << "  " << c.note << "\n";
    }
    os << "holds=" << (r.holds ? "true" : "false") << "\n";
  }
  emit(a.out, os.str());
  return r.holds ? kOk : kViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact A_alpha spectral moments of uniform hypergraphs"};
  app.require_subcommand(1);

  TraceArgs ta;
  auto* trace = app.add_subcommand("trace", "trace polynomials Tr_d(A_alpha)");
  add_source(trace, ta.src);
  add_output(trace, ta.out);
  trace->add_option("--d", ta.d, "single order");
  trace->add_option("--d-max", ta.d_max, "orders 0..d_max (default k+2)");
  trace->add_option("--method", ta.method)
      ->check(CLI::IsMember({"auto", "closed", "brute", "exhaustive"}));
  trace->add_flag("--cross-check", ta.cross_check, "compare closed forms with brute force");
  trace->add_option("--jobs,-j", ta.jobs, "threads, 0 = all cores");

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare", "S_alpha comparison of two hypergraphs");
  compare->add_option("a", ca.a)->required()->check(CLI::ExistingFile);
  compare->add_option("b", ca.b)->required()->check(CLI::ExistingFile);
  compare->add_option("--alpha", ca.alpha, "exact rational p/q");
  compare->add_option("--d-max", ca.d_max);
  compare->add_flag("--symbolic", ca.symbolic, "decide the sign on all of (0,1)");
  compare->add_flag("--cross-check", ca.cross_check);
  add_output(compare, ca.out);

  SortArgs sa;
  auto* sort = app.add_subcommand("sort", "rank a family in S_alpha-order");
  add_family_filter(sort, sa.fam);
  sort->add_option("--input-dir", sa.input_dir, "family dump written by enumerate --dump");
  sort->add_option("--alpha", sa.alpha);
  sort->add_option("--d-max", sa.d_max);
  sort->add_option("--jobs,-j", sa.jobs);
  add_output(sort, sa.out);

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand("enumerate", "hypertrees or linear unicyclic hypergraphs");
  add_family_filter(enumerate, ea.fam);
  enumerate->add_option("--dump", ea.dump, "write one JSON file per member plus manifest.json");
  add_output(enumerate, ea.out);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check an extremal ordering claim");
  verify->add_option("--theorem", va.theorem, "id or alias, see --list");
  verify->add_flag("--list", va.list);
  verify->add_option("--k", va.k)->check(CLI::Range(2u, 16u));
  verify->add_option("--m", va.m);
  verify->add_option("--alpha", va.alpha);
  verify->add_option("--d-max", va.d_max);
  verify->add_flag("--cross-check", va.cross_check);
  verify->add_option("--jobs,-j", va.jobs);
  add_output(verify, va.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*trace) return run_trace(ta);
    if (*compare) return run_compare(ca);
    if (*sort) return run_sort(sa);
    if (*enumerate) return run_enumerate(ea);
    if (*verify) return run_verify(va);
  } catch (const MethodMismatch& e) {
    std::cerr << "error: " << e.what() << "\n  closed: " << e.closed.to_string()
              << "\n  brute:  " << e.brute.to_string() << "\n";
    return kViolated;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedClosedForm& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
