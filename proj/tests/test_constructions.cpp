#include <doctest.h>

#include <algorithm>
#include <set>

#include "stx/constructions.hpp"
#include "stx/error.hpp"
#include "stx/solver.hpp"

using namespace stx;

namespace {

template <class Fn>
Errc code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::internal_contradiction;
}

std::set<Simplex> facet_set(const StackedBall& b) {
  const auto fs = boundary(b).facets;
  return {fs.begin(), fs.end()};
}

int tau(const StackedSphere& s) { return min_transversal(to_hypergraph(s)).certificate.size(); }

}  // namespace

TEST_CASE("path_ball") {
  CHECK(path_ball(2, 1).simplices == std::vector<Simplex>{{1, 2, 3, 4}});

  StackedBall base = path_ball(2, 11);
  CHECK(base.vertex_count() == 14);
  CHECK(base.size() == 11);
  CHECK(is_linear(base));
  CHECK(boundary(base).facets.size() == 24);
  CHECK(base.simplices[4] == Simplex{5, 6, 7, 8});

  StackedBall d3 = path_ball(3, 13);
  CHECK(d3.vertex_count() == 17);
  CHECK(is_linear(d3));
}

TEST_CASE("glue bridges two balls") {
  StackedBall s = make_ball(2, {{1, 2, 3, 4}});
  StackedBall t = make_ball(2, {{5, 6, 7, 8}});
  GlueResult g = glue(s, Simplex{1, 2, 3}, t, Simplex{5, 6, 7});

  CHECK(g.bridge == std::vector<Simplex>{{1, 2, 3, 5}, {2, 3, 5, 6}, {3, 5, 6, 7}});
  CHECK(g.distinguished_facet == Simplex{1, 3, 5});
  CHECK(g.ball.vertex_count() == 8);
  CHECK(g.ball.size() == 5);
  CHECK(g.t_offset == 0);

  auto bd = facet_set(g.ball);
  CHECK(bd.count(Simplex{1, 3, 5}) == 1);
  CHECK(bd.count(Simplex{1, 2, 3}) == 0);
  CHECK(bd.count(Simplex{5, 6, 7}) == 0);
  // every surviving facet of either piece is still on the boundary
  for (const Simplex& f : boundary(s).facets)
    if (f != Simplex{1, 2, 3}) CHECK(bd.count(f) == 1);
  for (const Simplex& f : boundary(t).facets)
    if (f != Simplex{5, 6, 7}) CHECK(bd.count(f) == 1);
}

TEST_CASE("glue relabels overlapping vertex sets") {
  StackedBall s = make_ball(2, {{1, 2, 3, 4}});
  GlueResult g = glue(s, Simplex{1, 2, 3}, s, Simplex{1, 2, 3});
  CHECK(g.t_offset == 4);
  CHECK(g.ball.vertex_count() == 8);
  CHECK(g.ball.simplices.back() == Simplex{5, 6, 7, 8});
}

TEST_CASE("glue rejects bad inputs") {
  StackedBall s = make_ball(2, {{1, 2, 3, 4}});
  StackedBall t3 = make_ball(3, {{1, 2, 3, 4, 5}});
  CHECK(code_of([&] { glue(s, Simplex{1, 2, 3}, t3, Simplex{1, 2, 3, 4}); }) ==
        Errc::dimension_mismatch);

  StackedBall two = make_ball(2, {{1, 2, 3, 4}, {2, 3, 4, 5}});
  CHECK(code_of([&] { glue(two, Simplex{2, 3, 4}, s, Simplex{1, 2, 3}); }) ==
        Errc::not_a_boundary_facet);
}

TEST_CASE("glue transversal inequality on a small pair") {
  StackedBall five = make_ball(2, {{1, 2, 3, 4}, {2, 3, 4, 5}});
  Simplex f = boundary(five).facets.front();
  int part = tau(remove_facets(boundary(five), {f}));
  CHECK(part == 2);
  GlueResult g = glue(five, f, five, f);
  int whole = tau(remove_facets(boundary(g.ball), {g.distinguished_facet}));
  CHECK(whole >= 2 * part);
}

TEST_CASE("chain_glue_general") {
  BranchedBase base = general_lower_bound_2_base();
  FamilyInstance k1 = chain_glue_general(base.ball, base.removed, 1, 6);
  CHECK(k1.sphere.vertex_count() == 13);
  CHECK(k1.removed_facets == std::vector<Simplex>{base.removed});
  CHECK(k1.claimed_tau_lower == 6);

  FamilyInstance k2 = chain_glue_general(base.ball, base.removed, 2, 6);
  CHECK(k2.sphere.vertex_count() == 26);
  CHECK(k2.ball.size() == 23);  // two copies of 10 plus one bridge
  CHECK(k2.claimed_tau_lower == 12);
  CHECK(k2.removed_facets.size() == 1);

  FamilyInstance k3 = chain_glue_general(general_lower_bound_base(2).ball,
                                         general_lower_bound_base(2).removed, 3, 7);
  CHECK(k3.sphere.vertex_count() == 48);
  CHECK(dual_graph(k3.ball).edges.size() == static_cast<std::size_t>(k3.ball.size() - 1));
}

TEST_CASE("chain_glue_linear") {
  StackedBall base = path_ball(2, 11);
  Simplex f{1, 2, 4};
  Simplex g{11, 13, 14};

  FamilyInstance k2 = chain_glue_linear(base, f, g, 2, 6);
  CHECK(k2.sphere.vertex_count() == 28);
  CHECK(is_linear(k2.ball));
  CHECK(k2.removed_facets == std::vector<Simplex>{{1, 2, 4}, {25, 27, 28}});
  CHECK(k2.claimed_tau_lower == 12);

  CHECK(code_of([&] { chain_glue_linear(base, Simplex{2, 3, 4}, g, 2); }) ==
        Errc::not_end_facet);
  CHECK(code_of([&] { chain_glue_linear(base, Simplex{2, 3, 5}, g, 2); }) ==
        Errc::not_end_facet);

  StackedBall star = make_ball(2, {{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 6}, {1, 3, 4, 7}});
  CHECK(code_of([&] { chain_glue_linear(star, Simplex{2, 3, 5}, Simplex{2, 4, 6}, 2); }) ==
        Errc::not_linear);
}

TEST_CASE("linear_lower_bound family") {
  for (int d = 2; d <= 6; ++d) {
    for (int k = 1; k <= 3; ++k) {
      FamilyInstance fam = linear_lower_bound(d, k);
      CHECK(fam.sphere.vertex_count() == (3 * d + 8) * k);
      CHECK(fam.claimed_n == (3 * d + 8) * k);
      CHECK(fam.claimed_tau_lower == 6 * k);
      CHECK(is_linear(fam.ball));
      CHECK(fam.removed_facets.size() == 2);
      CHECK(fam.sphere.removed.size() == 2);
    }
  }
  FamilyInstance f2 = linear_lower_bound(2, 1);
  CHECK(f2.removed_facets[0] == Simplex{1, 2, 4});
  CHECK(f2.removed_facets[1] == Simplex{11, 13, 14});
}

TEST_CASE("general_lower_bound family") {
  for (int d = 2; d <= 5; ++d) {
    BranchedBase base = general_lower_bound_base(d);
    CHECK(base.ball.vertex_count() == (d + 2) * (d + 2));
    CHECK(base.ball.size() == 1 + (d + 1) * (d + 2));
    CHECK(dual_graph(base.ball).degree(0) == d + 1);
    CHECK_FALSE(is_linear(base.ball));
    CHECK(static_cast<int>(base.root_perm.size()) == d + 1);
    CHECK(static_cast<int>(base.leaf_block.size()) == d + 1);
  }

  FamilyInstance fam = general_lower_bound(2, 1);
  CHECK(fam.removed_facets == std::vector<Simplex>{{1, 4, 6}});
  CHECK(fam.claimed_tau_lower == 7);
  CHECK(general_lower_bound(2, 2).sphere.vertex_count() == 32);
  CHECK(general_lower_bound(2, 2).claimed_tau_lower == 14);
}

TEST_CASE("general_lower_bound_2 family") {
  BranchedBase base = general_lower_bound_2_base();
  CHECK(base.ball.size() == 10);
  CHECK(base.ball.vertex_count() == 13);
  CHECK(base.removed == Simplex{1, 3, 4});
  CHECK(base.root_perm == std::vector<std::vector<Vertex>>{{1, 2, 3, 4}, {4, 1, 2, 3}, {3, 4, 2, 1}});
  CHECK(base.leaf_block == std::vector<std::vector<Vertex>>{{5, 6, 7}, {8, 9, 10}, {11, 12, 13}});

  FamilyInstance fam = general_lower_bound_2(1);
  CHECK(fam.claimed_n == 13);
  CHECK(fam.claimed_tau_lower == 6);
  CHECK(general_lower_bound_2(2).sphere.vertex_count() == 26);
}

TEST_CASE("minimum transversals respect the leaf structure") {
  for (int d : {2, 3}) {
    BranchedBase base = general_lower_bound_base(d);
    StackedSphere sphere = remove_facets(boundary(base.ball), {base.removed});
    auto cert = min_transversal(to_hypergraph(sphere)).certificate;
    std::set<Vertex> t(cert.vertices.begin(), cert.vertices.end());
    for (std::size_t i = 0; i < base.leaf_block.size(); ++i) {
      int hits = 0;
      for (Vertex v : base.leaf_block[i]) hits += t.count(v) ? 1 : 0;
      CHECK(hits >= 1);
      if (hits == 1) {
        const auto& perm = base.root_perm[i];
        CHECK(t.count(perm[static_cast<std::size_t>(d)]) == 1);
        CHECK(t.count(perm[static_cast<std::size_t>(d) + 1]) == 1);
      }
    }
  }

  BranchedBase b2 = general_lower_bound_2_base();
  StackedSphere sphere = remove_facets(boundary(b2.ball), {b2.removed});
  auto cert = min_transversal(to_hypergraph(sphere)).certificate;
  std::set<Vertex> t(cert.vertices.begin(), cert.vertices.end());
  for (std::size_t i = 0; i < 3; ++i) {
    int hits = 0;
    for (Vertex v : b2.leaf_block[i]) hits += t.count(v) ? 1 : 0;
    CHECK(hits >= 1);
    if (hits == 1) {
      const auto& perm = b2.root_perm[i];
      bool forced = t.count(perm[3]) == 1 || (t.count(perm[1]) == 1 && t.count(perm[2]) == 1);
      CHECK(forced);
    }
  }
}

TEST_CASE("random_linear_ball is deterministic per seed") {
  StackedBall a = random_linear_ball(2, 50, 11);
  StackedBall b = random_linear_ball(2, 50, 11);
  CHECK(a.simplices == b.simplices);
  CHECK(is_linear(a));
  CHECK(a.vertex_count() == 53);

  bool differs = false;
  for (std::uint64_t seed = 1; seed <= 5 && !differs; ++seed)
    differs = random_linear_ball(2, 50, seed).simplices != a.simplices;
  CHECK(differs);

  for (std::uint64_t seed : {3u, 77u, 901u}) CHECK(is_linear(random_linear_ball(2, 30, seed)));
}

TEST_CASE("enumerate_linear_balls") {
  CHECK(enumerate_linear_balls(2, 1).size() == 1);
  CHECK(enumerate_linear_balls(2, 2).size() == 4);
  CHECK(enumerate_linear_balls(2, 3).size() == 12);
  CHECK(enumerate_linear_balls(3, 2).size() == 5);

  long long count = 0;
  std::set<std::vector<Simplex>> seen;
  for_each_linear_ball(2, 7, [&](const StackedBall& b) {
    ++count;
    seen.insert(b.simplices);
    CHECK(b.simplices[0] == Simplex{1, 2, 3, 4});
    for (int i = 0; i < b.size(); ++i)
      CHECK(b.simplices[static_cast<std::size_t>(i)].verts().back() == i + 4);
  });
  CHECK(count == 972);
  CHECK(static_cast<long long>(seen.size()) == count);
}
