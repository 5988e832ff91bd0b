#include "stx/constructions.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "stx/error.hpp"

namespace stx {

namespace {

bool is_boundary_facet(const StackedSphere& sphere, const Simplex& f) {
  return std::binary_search(sphere.facets.begin(), sphere.facets.end(), f);
}

// Offset that keeps j-th copies of a label set disjoint. For contiguous
// 1-based labels this is exactly the vertex count.
Vertex disjoint_stride(const StackedBall& ball) {
  auto vs = ball.vertices();
  return vs.front() >= 1 ? vs.back() : vs.back() + 1;
}

StackedBall offset_ball(const StackedBall& ball, Vertex offset) {
  std::vector<Simplex> seq;
  seq.reserve(ball.simplices.size());
  for (const auto& s : ball.simplices) {
    std::vector<Vertex> vs;
    vs.reserve(static_cast<std::size_t>(s.size()));
    for (Vertex v : s) vs.push_back(v + offset);
    seq.emplace_back(std::move(vs));
  }
  return make_ball(ball.d, seq);
}

Simplex offset_simplex(const Simplex& s, Vertex offset) {
  std::vector<Vertex> vs;
  vs.reserve(static_cast<std::size_t>(s.size()));
  for (Vertex v : s) vs.push_back(v + offset);
  return Simplex(std::move(vs));
}

// Index of the unique top simplex containing a boundary facet.
int facet_home(const StackedBall& ball, const Simplex& f) {
  for (int i = 0; i < ball.size(); ++i)
    if (ball.simplices[static_cast<std::size_t>(i)].contains_all(f)) return i;
  return -1;
}

FamilyInstance finish_instance(std::string family, int d, int k, StackedBall ball,
                               std::vector<Simplex> removed, std::optional<int> tau_lower) {
  FamilyInstance inst;
  inst.family = std::move(family);
  inst.d = d;
  inst.k = k;
  inst.sphere = remove_facets(boundary(ball), removed);
  inst.ball = std::move(ball);
  inst.removed_facets = inst.sphere.removed;
  inst.claimed_tau_lower = tau_lower;
  inst.claimed_n = inst.sphere.vertex_count();
  return inst;
}

}  // namespace

StackedBall path_ball(int d, int m) {
  if (d < 2) fail(Errc::bad_argument, "dimension must be at least 2");
  if (m < 1) fail(Errc::bad_argument, "need at least one simplex");
  std::vector<Simplex> seq;
  seq.reserve(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    std::vector<Vertex> s;
    for (int v = i; v <= d + i + 1; ++v) s.push_back(v);
    seq.emplace_back(std::move(s));
  }
  return make_ball(d, seq);
}

GlueResult glue(const StackedBall& s_ball, const Simplex& f, const StackedBall& t_ball,
                const Simplex& g) {
  if (s_ball.d != t_ball.d)
    fail(Errc::dimension_mismatch, "cannot glue balls of different dimensions");
  const int d = s_ball.d;

  if (!is_boundary_facet(boundary(s_ball), f))
    fail(Errc::not_a_boundary_facet, "f is not a boundary facet of the first ball");
  if (!is_boundary_facet(boundary(t_ball), g))
    fail(Errc::not_a_boundary_facet, "g is not a boundary facet of the second ball");

  // Relabel T away from S when the vertex sets meet.
  StackedBall t = t_ball;
  Simplex g2 = g;
  Vertex offset = 0;
  {
    auto sv = s_ball.vertices();
    auto tv = t_ball.vertices();
    std::vector<Vertex> common;
    std::set_intersection(sv.begin(), sv.end(), tv.begin(), tv.end(),
                          std::back_inserter(common));
    if (!common.empty()) {
      offset = (tv.front() >= 1 ? sv.back() : sv.back() + 1);
      t = offset_ball(t_ball, offset);
      g2 = offset_simplex(g, offset);
    }
  }

  // T's construction must start at the simplex holding g.
  t = reroot(t, facet_home(t, g2));

  // Bridge i spans {v_i..v_{d+1}} and {w_1..w_i}; each one introduces w_i.
  std::vector<Simplex> bridge;
  bridge.reserve(static_cast<std::size_t>(d + 1));
  for (int i = 1; i <= d + 1; ++i) {
    std::vector<Vertex> vs;
    for (int a = i; a <= d + 1; ++a) vs.push_back(f[a - 1]);
    for (int b = 1; b <= i; ++b) vs.push_back(g2[b - 1]);
    bridge.emplace_back(std::move(vs));
  }

  std::vector<Simplex> seq = s_ball.simplices;
  seq.insert(seq.end(), bridge.begin(), bridge.end());
  seq.insert(seq.end(), t.simplices.begin(), t.simplices.end());

  GlueResult res;
  res.ball = make_ball(d, seq);
  res.bridge = bridge;
  res.distinguished_facet = bridge.front().without(f[1]);
  res.t_offset = offset;
  return res;
}

FamilyInstance chain_glue_general(const StackedBall& ball, const Simplex& f, int k,
                                  std::optional<int> tau_per_copy) {
  if (k < 1) fail(Errc::bad_argument, "need at least one copy");
  if (!is_boundary_facet(boundary(ball), f))
    fail(Errc::not_a_boundary_facet, "f is not a boundary facet");

  const Vertex stride = disjoint_stride(ball);
  StackedBall acc = ball;
  Simplex h = f;
  for (int j = 1; j < k; ++j) {
    StackedBall copy = offset_ball(ball, stride * j);
    Simplex fj = offset_simplex(f, stride * j);
    GlueResult glued = glue(acc, h, copy, fj);
    acc = std::move(glued.ball);
    h = glued.distinguished_facet;
  }

  std::optional<int> claim;
  if (tau_per_copy) claim = *tau_per_copy * k;
  return finish_instance("chain-general", ball.d, k, std::move(acc), {h}, claim);
}

FamilyInstance chain_glue_linear(const StackedBall& ball, const Simplex& f, const Simplex& g,
                                 int k, std::optional<int> tau_per_copy) {
  if (k < 1) fail(Errc::bad_argument, "need at least one copy");
  StackedBall base = to_path_order(ball);  // not_linear if the dual tree branches

  StackedSphere sphere = boundary(base);
  if (!is_boundary_facet(sphere, f) || !base.simplices.front().contains_all(f))
    fail(Errc::not_end_facet, "f must be a boundary facet inside the first simplex");
  if (!is_boundary_facet(sphere, g) || !base.simplices.back().contains_all(g))
    fail(Errc::not_end_facet, "g must be a boundary facet inside the last simplex");

  const Vertex stride = disjoint_stride(base);
  StackedBall acc = base;
  Simplex tail_g = g;  // copy j's g in the accumulated labels
  for (int j = 1; j < k; ++j) {
    StackedBall copy = offset_ball(base, stride * j);
    Simplex fj = offset_simplex(f, stride * j);
    GlueResult glued = glue(acc, tail_g, copy, fj);
    acc = std::move(glued.ball);
    tail_g = offset_simplex(g, stride * j);
  }
  if (!is_linear(acc))
    fail(Errc::internal_contradiction, "chained result is not linear");

  std::optional<int> claim;
  if (tau_per_copy) claim = *tau_per_copy * k;
  return finish_instance("chain-linear", ball.d, k, std::move(acc), {f, tail_g}, claim);
}

FamilyInstance linear_lower_bound(int d, int k) {
  if (d < 2) fail(Errc::bad_argument, "dimension must be at least 2");
  if (k < 1) fail(Errc::bad_argument, "need at least one copy");
  StackedBall base = path_ball(d, 2 * d + 7);
  Simplex f = base.simplices.front().without(d + 1);
  Simplex g = base.simplices.back().without(2 * d + 8);
  FamilyInstance inst = chain_glue_linear(base, f, g, k, 6);
  inst.family = "linear-lb";
  return inst;
}

BranchedBase general_lower_bound_base(int d) {
  if (d < 2) fail(Errc::bad_argument, "dimension must be at least 2");

  // Root simplex [d+2]; branch i of d+2 simplices walks away from the root
  // along the cyclically shifted vertex order phi_i(j) = ((i+j-1) mod (d+2))+1,
  // introducing private vertices a(i,1..d+2).
  auto phi = [d](int i, int j) { return (i + j - 1) % (d + 2) + 1; };
  auto priv = [d](int i, int j) { return (d + 2) + (i - 1) * (d + 2) + j; };

  std::vector<Simplex> seq;
  std::vector<Vertex> root;
  for (int v = 1; v <= d + 2; ++v) root.push_back(v);
  seq.emplace_back(root);

  // The faces along which the branches attach to the root must be distinct.
  std::set<Simplex> attach_faces;

  BranchedBase base;
  for (int i = 1; i <= d + 1; ++i) {
    std::vector<Vertex> perm, block;
    for (int j = 1; j <= d + 2; ++j) perm.push_back(phi(i, j));
    for (int j = 1; j <= d + 2; ++j) block.push_back(priv(i, j));
    base.root_perm.push_back(perm);
    base.leaf_block.push_back(block);

    std::vector<Vertex> first_face;
    for (int j = 2; j <= d + 2; ++j) first_face.push_back(phi(i, j));
    attach_faces.insert(Simplex(first_face));

    for (int j = 1; j <= d + 2; ++j) {
      std::vector<Vertex> s;
      for (int a = j + 1; a <= d + 2; ++a) s.push_back(phi(i, a));
      for (int b = 1; b <= j; ++b) s.push_back(priv(i, b));
      seq.emplace_back(std::move(s));
    }
  }
  if (static_cast<int>(attach_faces.size()) != d + 1)
    fail(Errc::internal_contradiction, "branch attachment faces are not distinct");

  base.ball = make_ball(d, seq);

  // f = {phi_1(d+1), phi_1(d+2), a(1,2), ..., a(1,d)}
  std::vector<Vertex> fv{phi(1, d + 1), phi(1, d + 2)};
  for (int j = 2; j <= d; ++j) fv.push_back(priv(1, j));
  base.removed = Simplex(std::move(fv));
  return base;
}

FamilyInstance general_lower_bound(int d, int k) {
  BranchedBase base = general_lower_bound_base(d);
  FamilyInstance inst = chain_glue_general(base.ball, base.removed, k, 2 * d + 3);
  inst.family = "general-lb";
  return inst;
}

BranchedBase general_lower_bound_2_base() {
  // Three branches of three simplices on 13 vertices, with hand-picked vertex
  // orders at the root: 1234, 4123, 3421.
  const std::vector<std::vector<Vertex>> perms = {{1, 2, 3, 4}, {4, 1, 2, 3}, {3, 4, 2, 1}};
  auto priv = [](int i, int j) { return 4 + (i - 1) * 3 + j; };

  std::vector<Simplex> seq{{1, 2, 3, 4}};
  BranchedBase base;
  for (int i = 1; i <= 3; ++i) {
    const auto& phi = perms[static_cast<std::size_t>(i - 1)];
    std::vector<Vertex> block;
    for (int j = 1; j <= 3; ++j) block.push_back(priv(i, j));
    base.root_perm.push_back(phi);
    base.leaf_block.push_back(block);
    for (int j = 1; j <= 3; ++j) {
      std::vector<Vertex> s;
      for (int a = j + 1; a <= 4; ++a) s.push_back(phi[static_cast<std::size_t>(a - 1)]);
      for (int b = 1; b <= j; ++b) s.push_back(priv(i, b));
      seq.emplace_back(std::move(s));
    }
  }
  base.ball = make_ball(2, seq);
  base.removed = Simplex{1, 3, 4};
  return base;
}

FamilyInstance general_lower_bound_2(int k) {
  BranchedBase base = general_lower_bound_2_base();
  FamilyInstance inst = chain_glue_general(base.ball, base.removed, k, 6);
  inst.family = "general-lb-2";
  return inst;
}

StackedBall random_linear_ball(int d, int m, std::uint64_t seed) {
  if (d < 2) fail(Errc::bad_argument, "dimension must be at least 2");
  if (m < 1) fail(Errc::bad_argument, "need at least one simplex");
  std::mt19937_64 rng(seed);

  std::vector<Simplex> seq;
  std::vector<Vertex> first;
  for (int v = 1; v <= d + 2; ++v) first.push_back(v);
  seq.emplace_back(first);

  for (int i = 2; i <= m; ++i) {
    const Simplex prev = seq.back();
    std::vector<Simplex> free_faces;
    for (Vertex v : prev) free_faces.push_back(prev.without(v));
    if (i > 2) {
      const Simplex shared = intersection(prev, seq[seq.size() - 2]);
      std::erase(free_faces, shared);
    }
    std::sort(free_faces.begin(), free_faces.end());
    std::size_t pick = static_cast<std::size_t>(rng() % free_faces.size());
    seq.push_back(free_faces[pick].with(d + 1 + i));
  }
  return make_ball(d, seq);
}

void for_each_linear_ball(int d, int m, const std::function<void(const StackedBall&)>& fn) {
  if (d < 2) fail(Errc::bad_argument, "dimension must be at least 2");
  if (m < 1) fail(Errc::bad_argument, "need at least one simplex");

  std::vector<Simplex> seq;
  std::vector<Vertex> first;
  for (int v = 1; v <= d + 2; ++v) first.push_back(v);
  seq.emplace_back(first);

  // Depth-first over attachment choices: each step extends on one of the free
  // faces of the previous simplex (all d+2 faces at step 2, d+1 afterwards).
  auto recurse = [&](auto&& self, int step) -> void {
    if (step > m) {
      fn(make_ball(d, seq));
      return;
    }
    const Simplex prev = seq.back();
    std::vector<Simplex> free_faces;
    for (Vertex v : prev) free_faces.push_back(prev.without(v));
    if (step > 2) {
      const Simplex shared = intersection(prev, seq[seq.size() - 2]);
      std::erase(free_faces, shared);
    }
    std::sort(free_faces.begin(), free_faces.end());
    for (const auto& face : free_faces) {
      seq.push_back(face.with(d + 1 + step));
      self(self, step + 1);
      seq.pop_back();
    }
  };
  recurse(recurse, 2);
}

std::vector<StackedBall> enumerate_linear_balls(int d, int m) {
  std::vector<StackedBall> out;
  for_each_linear_ball(d, m, [&](const StackedBall& b) { out.push_back(b); });
  return out;
}

}  // namespace stx
