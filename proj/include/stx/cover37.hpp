#pragma once

#include <optional>
#include <vector>

#include "stx/ball.hpp"

namespace stx {

// Two transversals of a linear stacked 2-sphere, each of size at most
// ceil(3n/7), jointly hitting at least 3 vertices of the last simplex in
// path order. Every producer re-verifies its output before returning.
struct TransversalPair {
  std::vector<Vertex> t1;
  std::vector<Vertex> t2;
  int last_facet_hits = 0;  // |(t1 cup t2) cap last simplex|
};

// A canonically labeled 10-vertex linear block: 7 tetrahedra, first simplex
// {1,2,3,4}, the i-th simplex's unique new vertex labeled i+3; plus a 2-subset
// L of {1,2,3} both output transversals must touch.
struct BlockInput {
  StackedBall ball10;
  Simplex L;
};

inline int bound_3n7(int n) { return (3 * n + 6) / 7; }

// Constructive two-transversal cover for linear stacked 2-spheres. Reorders
// the input into path order, solves spheres with up to 10 vertices directly,
// and otherwise strips the last 7 simplices as a canonical block, recursing
// on the rest. Errors: wrong_dimension, not_linear, internal_contradiction.
TransversalPair transversal_3n7(const StackedBall& ball);

// Exhaustive pair search for 4 <= n <= 10: both transversals of size at most
// floor(n/2), scanned by increasing (|T1|, |T2|), lexicographic within.
// Errors: wrong_dimension, not_linear, too_small, internal_contradiction.
TransversalPair base_case(const StackedBall& ball);

// Exhaustive pair search on a canonical block: sizes at most 4, both sets
// meet L, and together they hit at least 3 vertices of the 7th simplex.
// Errors: bad_argument, internal_contradiction.
TransversalPair block_pair(const BlockInput& in);

// Candidate fast path for block_pair: both transversals of the shape
// (middle shared edge) + one vertex near each end. Returns nothing when no
// such pair works; when it returns, the pair passes the same validation.
std::optional<TransversalPair> block_pair_fast(const BlockInput& in);

struct SplitResult {
  StackedBall prefix;       // first m-7 simplices in path order
  BlockLabeling block;      // last 7 simplices, canonicalized
  Simplex shared_triangle;  // prefix's last simplex cap block's first, original labels
};

// Splits a linear 2-ball with more than 10 vertices into prefix + canonical
// last block; the shared triangle is pinned into {1,2,3}.
// Errors: wrong_dimension, not_linear, too_small.
SplitResult split_last_block(const StackedBall& ball);

}  // namespace stx
