#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "alphatrace/hypergraph.hpp"

namespace alphatrace {

enum class FamilyClass { Hypertree, LinearUnicyclic };

struct FamilyFilter {
  FamilyClass family = FamilyClass::Hypertree;
  unsigned k = 2;
  std::size_t m = 1;
  std::optional<std::size_t> girth;     // LinearUnicyclic only, 3 <= g <= m
  std::optional<std::size_t> diameter;  // Hypertree only, 2 <= D <= m
  bool max_degree_two = false;          // every vertex degree <= 2
};

// Throws ParameterError if the filter is inconsistent.
void validate(const FamilyFilter& f);
std::string to_string(FamilyClass c);
std::string describe(const FamilyFilter& f);

// One representative per isomorphism class, sorted by canonical form.
// Throws BudgetExceeded when m exceeds ALPHATRACE_MAX_EDGES (default 6) or k
// is outside 2..4.
std::vector<Hypergraph> enumerate_family(const FamilyFilter& filter);

// Vertex sets (sorted) of the complete k-uniform subhypergraphs with k+1
// hyperedges, in lexicographic order.
std::vector<std::vector<Vertex>> complete_subhypergraphs(const Hypergraph& h);
std::size_t count_complete_subhypergraphs(const Hypergraph& h);

}  // namespace alphatrace
