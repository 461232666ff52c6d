#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "alphatrace/alpha_poly.hpp"
#include "alphatrace/enumeration.hpp"
#include "alphatrace/hypergraph.hpp"
#include "alphatrace/order.hpp"

namespace alphatrace {

using json = nlohmann::ordered_json;

// {"k": int, "n": int, "edges": [[v, ...], ...], "mult": [int, ...]}
// "mult" is written only for multi-hypergraphs and defaults to all ones.
json hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const json& j);
Hypergraph read_hypergraph(const std::filesystem::path& path);

// {"d": int, "poly": [["num", "den"], ...]}, lowest power first.
json trace_to_json(unsigned d, const AlphaPoly& p);
AlphaPoly poly_from_json(const json& poly);

// Exact "p/q" or integer; decimals are rejected.
Rational parse_rational(const std::string& text);
std::string rational_string(const Rational& q);

json verdict_to_json(const OrderVerdict& v);
json symbolic_to_json(const SymbolicVerdict& v);
json report_to_json(const TheoremReport& r);

// Writes <dir>/NNNN.json per member plus <dir>/manifest.json listing class,
// k, m, filters and the canonical key of every file.
void write_family_dump(const std::filesystem::path& dir, const FamilyFilter& filter,
                       const std::vector<Hypergraph>& members);
std::vector<Hypergraph> read_family_dump(const std::filesystem::path& dir);

}  // namespace alphatrace
