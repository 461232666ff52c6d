#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "alphatrace/hypergraph.hpp"

namespace alphatrace {

namespace family {
struct Hyperpath { std::size_t m; };
struct Hyperstar { std::size_t m; };
struct Hypercycle { std::size_t m; };
// Hypercycle C_g plus m-g pendant edges at one joint vertex.
struct CycleWithStar { std::size_t g; std::size_t m; };
// Triangle hypercycle with n1, n2, n3 pendant edges at its three joints.
struct TriangleSplit { std::size_t n1; std::size_t n2; std::size_t n3; };
// Hypercycle C_g with a hyperpath of m-g edges hanging at a cored vertex.
struct CycleWithPath { std::size_t g; std::size_t m; };
// Hyperpaths of the given lengths sharing one end vertex.
struct Starlike { std::vector<std::size_t> branches; };
// Hyperpath P_{m-1} plus a pendant edge at a cored vertex of its second edge.
struct PathWithTwig { std::size_t m; };
}  // namespace family

using FamilySpec =
    std::variant<family::Hyperpath, family::Hyperstar, family::Hypercycle,
                 family::CycleWithStar, family::TriangleSplit, family::CycleWithPath,
                 family::Starlike, family::PathWithTwig>;

// Deterministic labeling: joint/spine vertices first, then cored vertices
// in edge order, then attachments. Throws ParameterError on invalid
// parameters.
Hypergraph build_family(unsigned k, const FamilySpec& spec);

std::string family_name(const FamilySpec& spec);

// Number of hyperedges the spec describes.
std::size_t family_edge_count(const FamilySpec& spec);

}  // namespace alphatrace
