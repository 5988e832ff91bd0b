#pragma once

#include <map>
#include <vector>

#include "stx/simplex.hpp"

namespace stx {

// A stacked (d+1)-ball, stored as its construction sequence: top simplices
// with d+2 vertices each, every simplex after the first glued onto a free
// d-face of the union built so far, introducing exactly one new vertex.
struct StackedBall {
  int d = 0;  // boundary dimension; top simplices have d+2 vertices
  std::vector<Simplex> simplices;
  std::vector<int> parent;          // parent[i] < i is the simplex it attaches to; parent[0] = -1
  std::vector<Simplex> attach_face; // attach_face[i] = simplices[i] cap simplices[parent[i]]

  int size() const { return static_cast<int>(simplices.size()); }
  std::vector<Vertex> vertices() const;
  int vertex_count() const { return static_cast<int>(vertices().size()); }
};

// The boundary d-sphere of a stacked (d+1)-ball: the d-faces lying in exactly
// one top simplex. `facets` always holds the full set; `removed` marks facets
// excluded from transversal instances without forgetting them.
struct StackedSphere {
  int d = 0;
  std::vector<Simplex> facets;   // sorted lexicographically
  std::vector<Simplex> removed;  // subset of facets, sorted

  std::vector<Simplex> active() const;  // facets minus removed
  std::vector<Vertex> vertices() const;
  int vertex_count() const { return static_cast<int>(vertices().size()); }
};

// Adjacency of top simplices: an edge when two of them share d+1 vertices.
// For a valid stacked ball this is always a tree.
struct DualTree {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, sorted

  std::vector<std::vector<int>> adjacency() const;
  int degree(int i) const;
};

// Plain hypergraph view for the solver: explicit vertex labels, edge list.
struct FacetHypergraph {
  std::vector<Vertex> vertices;  // sorted, distinct
  std::vector<Simplex> edges;
};

// Validates a construction sequence and resolves attachments.
// Errors: wrong_simplex_size, attachment_not_found, face_not_free, no_new_vertex.
StackedBall make_ball(int d, const std::vector<Simplex>& simplices);

StackedSphere boundary(const StackedBall& ball);
DualTree dual_graph(const StackedBall& ball);

bool is_linear(const StackedBall& ball);

// End-to-end order of the dual path, starting from the endpoint with the
// smaller index. Positions are 0-based indices into ball.simplices.
// Errors: not_linear.
std::vector<int> path_order(const StackedBall& ball);

// Rebuilds the ball with construction order = depth-first search of the dual
// tree from `root` (children in ascending index). Boundary is unchanged.
StackedBall reroot(const StackedBall& ball, int root);

// Reorders a linear ball's sequence into path order. Errors: not_linear.
StackedBall to_path_order(const StackedBall& ball);

FacetHypergraph to_hypergraph(const StackedSphere& sphere);

// Marks facets as removed. Idempotent on already-removed facets.
// Errors: facet_not_present.
StackedSphere remove_facets(const StackedSphere& sphere, const std::vector<Simplex>& facets);

struct BlockLabeling {
  StackedBall block;                   // the relabeled sub-ball
  std::map<Vertex, Vertex> to_canonical;  // original label -> canonical label
};

// Extracts `length` consecutive simplices (in path order) starting at path
// position `start` and relabels: the first simplex becomes {1..d+2} with the
// pinned vertices mapped into {1..d+1} (order-preserving within pinned and
// non-pinned), and the new vertex of the i-th block simplex becomes d+1+i.
// Errors: not_linear, not_consecutive, pinned_too_large, bad_argument.
BlockLabeling canonical_block_labeling(const StackedBall& ball, int start, int length,
                                       const Simplex& pinned);

// Recovers a construction sequence from a stacked sphere's full facet set by
// reverse stacking: repeatedly peel a vertex lying in exactly d+1 facets whose
// union has d+2 vertices. Errors: not_stacked.
StackedBall ball_from_sphere(const StackedSphere& sphere);

}  // namespace stx
