#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stx/ball.hpp"

namespace stx {

// Linear ball on consecutive integer labels: simplex i is {i, ..., d+i+1},
// i = 1..m, vertex set [d+m+1].
StackedBall path_ball(int d, int m);

struct GlueResult {
  StackedBall ball;             // K = (S's simplices, bridge, rerooted T)
  std::vector<Simplex> bridge;  // the d+1 connector simplices, in order
  Simplex distinguished_facet;  // h, a facet of the boundary of K
  Vertex t_offset = 0;          // applied to T's labels when they collided with S's
};

// Joins two stacked balls along boundary facets f (of S's boundary) and g (of
// T's boundary) through a path of d+1 bridge simplices: with f = {v_1 < ... <
// v_{d+1}} and g = {w_1 < ... < w_{d+1}}, bridge i is {v_i..v_{d+1}, w_1..w_i}.
// The boundary of the result keeps every facet of both spheres except f and g.
// h = bridge_1 minus v_2. T is relabeled if its vertex set meets S's.
// Errors: dimension_mismatch, not_a_boundary_facet.
GlueResult glue(const StackedBall& s_ball, const Simplex& f, const StackedBall& t_ball,
                const Simplex& g);

struct FamilyInstance {
  std::string family;
  int d = 0;
  int k = 1;
  StackedBall ball;
  StackedSphere sphere;  // boundary of ball with `removed_facets` marked removed
  std::vector<Simplex> removed_facets;
  std::optional<int> claimed_tau_lower;  // lower bound on tau of the sphere minus removed
  int claimed_n = 0;
};

// Chains k copies of one ball, each glued at the previous distinguished facet;
// copy j's labels are offset to stay disjoint. The result's removed facet is
// the last distinguished facet (for k=1, f itself).
FamilyInstance chain_glue_general(const StackedBall& ball, const Simplex& f, int k,
                                  std::optional<int> tau_per_copy = std::nullopt);

// Chains k copies of a linear ball end to end: copy j's g-facet glued to copy
// j+1's f-facet. f must be a boundary facet inside the first simplex in path
// order, g inside the last. The result is linear; removed facets are copy 1's
// f and copy k's g. Errors: not_linear, not_end_facet.
FamilyInstance chain_glue_linear(const StackedBall& ball, const Simplex& f, const Simplex& g,
                                 int k, std::optional<int> tau_per_copy = std::nullopt);

// Linear family on (3d+8)k vertices with tau >= 6k after removing the two end
// facets: base is path_ball(d, 2d+7) with f = first simplex minus d+1 and
// g = last simplex minus 2d+8.
FamilyInstance linear_lower_bound(int d, int k);

// Branched families: a root simplex with branches of leaf blocks hanging off
// it. Exposes the per-branch structure for the invariant tests.
struct BranchedBase {
  StackedBall ball;
  Simplex removed;                                // the facet named by the construction
  std::vector<std::vector<Vertex>> root_perm;     // per branch: images of 1..d+2
  std::vector<std::vector<Vertex>> leaf_block;    // per branch: its private vertices
};

// (d+2)^2 vertices, d+1 branches of d+2 simplices; tau >= 2d+3 per copy.
BranchedBase general_lower_bound_base(int d);
FamilyInstance general_lower_bound(int d, int k);

// 13 vertices, three branches of three simplices; tau >= 6 per copy.
BranchedBase general_lower_bound_2_base();
FamilyInstance general_lower_bound_2(int k);

// Random linear ball: first simplex {1..d+2}, each next simplex attached on a
// uniformly chosen free face of the previous one. Deterministic per seed.
StackedBall random_linear_ball(int d, int m, std::uint64_t seed);

// All labeled linear balls with the fixed labeling (first simplex {1..d+2},
// new vertex of step i labeled d+1+i), one per attachment-choice sequence.
void for_each_linear_ball(int d, int m, const std::function<void(const StackedBall&)>& fn);
std::vector<StackedBall> enumerate_linear_balls(int d, int m);

}  // namespace stx
