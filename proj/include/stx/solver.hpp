#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stx/ball.hpp"

namespace stx {

struct TransversalCertificate {
  std::vector<Vertex> vertices;  // sorted
  bool optimal = false;
  int size() const { return static_cast<int>(vertices.size()); }
};

struct SolveStats {
  std::uint64_t nodes_explored = 0;
  std::uint64_t reductions_applied = 0;
  double wall_time = 0.0;  // seconds
  bool node_cap_hit = false;
};

struct SolveOptions {
  std::optional<std::uint64_t> node_cap;  // stop branching after this many nodes
  int threads = 1;                        // >1 splits the search frontier
};

struct SolveResult {
  TransversalCertificate certificate;
  SolveStats stats;
};

// Exact minimum facet transversal (hitting set) by branch and bound.
// Reductions: unit-edge forcing, dominated-vertex deletion, superset-edge
// deletion. Branches on a maximum-degree vertex (ties: smallest id), with a
// greedy incumbent and a disjoint-edge matching lower bound for pruning.
// Single-threaded runs are fully deterministic, certificate included.
// When the node cap is hit the best incumbent is returned with optimal=false.
// Errors: empty_edge.
SolveResult min_transversal(const FacetHypergraph& h, const SolveOptions& opts = {});

// Independent oracle: enumerate vertex subsets by increasing size (lexicographic
// within a size) and return the smallest transversal size, or nullopt if none
// has size <= max_size.
std::optional<int> brute_force_tau(const FacetHypergraph& h, int max_size);

// Max-degree-first greedy (ties: smallest id). Always optimal = false.
// Errors: empty_edge.
TransversalCertificate greedy_transversal(const FacetHypergraph& h);

bool is_transversal(const FacetHypergraph& h, const std::vector<Vertex>& t);

// Size of a greedily built pairwise-disjoint edge set (first fit in edge
// order); a lower bound for the transversal number.
int matching_lower_bound(const FacetHypergraph& h);

}  // namespace stx
