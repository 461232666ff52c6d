#include "alphatrace/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <regex>

#include "alphatrace/errors.hpp"

namespace alphatrace {

json hypergraph_to_json(const Hypergraph& h) {
  json j;
  j["k"] = h.k();
  j["n"] = h.n();
  j["edges"] = h.edges();
  if (!h.is_simple()) j["mult"] = h.multiplicities();
  return j;
}

Hypergraph hypergraph_from_json(const json& j) {
  try {
    auto k = j.at("k").get<unsigned>();
    auto n = j.at("n").get<std::size_t>();
    auto edges = j.at("edges").get<std::vector<Edge>>();
    for (auto& e : edges) std::sort(e.begin(), e.end());
    std::vector<unsigned> mult;
    if (j.contains("mult")) mult = j.at("mult").get<std::vector<unsigned>>();
    return Hypergraph(k, n, std::move(edges), std::move(mult));
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed hypergraph JSON: ") + e.what());
  }
}

Hypergraph read_hypergraph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParameterError(path.string() + ": " + e.what());
  }
  return hypergraph_from_json(j);
}

std::string rational_string(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

Rational parse_rational(const std::string& text) {
  static const std::regex exact(R"(\s*(-?\d+)(?:\s*/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, exact)) {
    if (text.find('.') != std::string::npos || text.find('e') != std::string::npos) {
      throw ParameterError("'" + text + "' is not an exact rational; write it as p/q (e.g. 1/2)");
    }
    throw ParameterError("'" + text + "' is not a rational of the form p/q");
  }
  Integer num(m[1].str());
  Integer den(m[2].matched ? m[2].str() : std::string("1"));
  if (den == 0) throw ParameterError("zero denominator in '" + text + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

json trace_to_json(unsigned d, const AlphaPoly& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) {
    coeffs.push_back({c.get_num().get_str(), c.get_den().get_str()});
  }
  return json{{"d", d}, {"poly", coeffs}};
}

AlphaPoly poly_from_json(const json& poly) {
  std::vector<Rational> coeffs;
  try {
    for (const auto& pair : poly) {
      Integer num(pair.at(0).get<std::string>()), den(pair.at(1).get<std::string>());
      if (den == 0) throw ParameterError("zero denominator in polynomial coefficient");
      Rational q(num, den);
      q.canonicalize();
      coeffs.push_back(q);
    }
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed polynomial JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParameterError(std::string("malformed polynomial coefficient: ") + e.what());
  }
  return AlphaPoly(std::move(coeffs));
}

json verdict_to_json(const OrderVerdict& v) {
  json j{{"relation", to_string(v.relation)}, {"d_max", v.d_max}};
  if (v.first_diff_order) {
    j["first_diff_order"] = *v.first_diff_order;
    j["difference"] = rational_string(v.difference);
  } else {
    j["first_diff_order"] = nullptr;
  }
  return j;
}

json symbolic_to_json(const SymbolicVerdict& v) {
  json j{{"verdict", to_string(v.kind)}, {"d_max", v.d_max}};
  if (v.first_diff_order) {
    j["first_diff_order"] = *v.first_diff_order;
    j["difference"] = trace_to_json(*v.first_diff_order, v.difference)["poly"];
  } else {
    j["first_diff_order"] = nullptr;
  }
  json w = json::array();
  for (const auto& r : v.witnesses) w.push_back({rational_string(r.lo), rational_string(r.hi)});
  j["witnesses"] = w;
  return j;
}

json report_to_json(const TheoremReport& r) {
  json j;
  j["theorem"] = r.id;
  j["alias"] = r.alias;
  j["statement"] = r.statement;
  j["k"] = r.k;
  j["m"] = r.m;
  j["alpha"] = rational_string(r.alpha);
  j["d_max"] = r.d_max;
  j["holds"] = r.holds;
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj;
    cj["scope"] = c.scope;
    cj["claim"] = c.claim;
    cj["target"] = c.target;
    cj["family_size"] = c.family_size;
    cj["target_position"] = c.target_position ? json(*c.target_position) : json(nullptr);
    if (c.moment_order) cj["moment_order"] = *c.moment_order;
    cj["holds"] = c.holds;
    cj["note"] = c.note;
    json members = json::array();
    for (std::size_t i = 0; i < c.member_keys.size(); ++i) {
      json mj{{"key", c.member_keys[i]}, {"degrees", c.member_degrees[i]}};
      if (i < c.target_vs_member.size()) mj["target_vs_member"] = verdict_to_json(c.target_vs_member[i]);
      if (i < c.moments.size()) mj["moment"] = rational_string(c.moments[i]);
      members.push_back(std::move(mj));
    }
    cj["members"] = std::move(members);
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

namespace {

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace

void write_family_dump(const std::filesystem::path& dir, const FamilyFilter& filter,
                       const std::vector<Hypergraph>& members) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["class"] = to_string(filter.family);
  manifest["k"] = filter.k;
  manifest["m"] = filter.m;
  manifest["girth"] = filter.girth ? json(*filter.girth) : json(nullptr);
  manifest["diameter"] = filter.diameter ? json(*filter.diameter) : json(nullptr);
  manifest["max_degree_two"] = filter.max_degree_two;
  json files = json::array();
  for (std::size_t i = 0; i < members.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "%04zu.json", i);
    write_json(dir / name, hypergraph_to_json(members[i]));
    files.push_back({{"file", name}, {"canonical_key", canonical_form(members[i])}});
  }
  manifest["members"] = std::move(files);
  write_json(dir / "manifest.json", manifest);
}

std::vector<Hypergraph> read_family_dump(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw ParameterError("no manifest.json in " + dir.string());
  json manifest;
  in >> manifest;
  std::vector<Hypergraph> out;
  for (const auto& entry : manifest.at("members")) {
    out.push_back(read_hypergraph(dir / entry.at("file").get<std::string>()));
  }
  return out;
}

}  // namespace alphatrace
