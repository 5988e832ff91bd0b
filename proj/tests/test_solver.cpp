#include <doctest.h>

#include <random>

#include "stx/constructions.hpp"
#include "stx/error.hpp"
#include "stx/solver.hpp"

using namespace stx;

namespace {

FacetHypergraph reduced(const FamilyInstance& fam) { return to_hypergraph(fam.sphere); }

int tau(const FacetHypergraph& h, SolveOptions opts = {}) {
  SolveResult r = min_transversal(h, opts);
  REQUIRE(r.certificate.optimal);
  REQUIRE(is_transversal(h, r.certificate.vertices));
  return r.certificate.size();
}

}  // namespace

TEST_CASE("tiny instances") {
  FacetHypergraph tetra = to_hypergraph(boundary(make_ball(2, {{1, 2, 3, 4}})));
  SolveResult r = min_transversal(tetra);
  CHECK(r.certificate.vertices == std::vector<Vertex>{1, 2});
  CHECK(r.certificate.optimal);

  FacetHypergraph edge{{5, 7}, {Simplex{5, 7}}};
  CHECK(greedy_transversal(edge).vertices == std::vector<Vertex>{5});
  CHECK(tau(edge) == 1);

  FacetHypergraph no_edges{{1, 2, 3}, {}};
  CHECK(tau(no_edges) == 0);
  CHECK(min_transversal(no_edges).certificate.vertices.empty());

  FacetHypergraph bad{{1, 2}, {Simplex{}}};
  CHECK_THROWS_AS(min_transversal(bad), Error);
  CHECK_THROWS_AS(greedy_transversal(bad), Error);
}

TEST_CASE("family fixtures") {
  CHECK(tau(reduced(general_lower_bound_2(1))) == 6);
  CHECK(tau(reduced(general_lower_bound(2, 1))) == 7);
  CHECK(tau(reduced(linear_lower_bound(2, 1))) == 6);
  CHECK(tau(to_hypergraph(boundary(linear_lower_bound(2, 1).ball))) == 6);
  CHECK(tau(to_hypergraph(boundary(path_ball(2, 18)))) == 8);
  CHECK(matching_lower_bound(reduced(general_lower_bound(2, 1))) == 5);
}

TEST_CASE("exact solver agrees with brute force on small balls") {
  for (int d : {2, 3}) {
    for (int m = 1; m <= 5 - (d - 2); ++m) {
      for (const StackedBall& b : enumerate_linear_balls(d, m)) {
        FacetHypergraph h = to_hypergraph(boundary(b));
        int t = tau(h);
        int match = matching_lower_bound(h);
        TransversalCertificate g = greedy_transversal(h);
        CHECK(is_transversal(h, g.vertices));
        CHECK(match <= t);
        CHECK(t <= g.size());
        CHECK(brute_force_tau(h, t) == t);
        if (t > 0) CHECK_FALSE(brute_force_tau(h, t - 1).has_value());
      }
    }
  }
}

TEST_CASE("single-threaded runs are reproducible") {
  FacetHypergraph h = reduced(general_lower_bound_2(2));
  SolveResult a = min_transversal(h);
  SolveResult b = min_transversal(h);
  CHECK(a.certificate.vertices == b.certificate.vertices);
  CHECK(a.stats.nodes_explored == b.stats.nodes_explored);
}

TEST_CASE("node cap returns a valid incumbent") {
  FacetHypergraph h = reduced(general_lower_bound(3, 1));
  SolveOptions opts;
  opts.node_cap = 1;
  SolveResult r = min_transversal(h, opts);
  CHECK(r.stats.node_cap_hit);
  CHECK_FALSE(r.certificate.optimal);
  CHECK(is_transversal(h, r.certificate.vertices));
  CHECK(r.certificate.size() >= 9);  // can't beat the optimum
}

TEST_CASE("multithreaded search finds the same size") {
  FacetHypergraph h = reduced(linear_lower_bound(2, 2));
  SolveOptions two;
  two.threads = 2;
  SolveResult r = min_transversal(h, two);
  CHECK(r.certificate.optimal);
  CHECK(is_transversal(h, r.certificate.vertices));
  CHECK(r.certificate.size() == tau(h));
}

TEST_CASE("removing facets never increases tau") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 25; ++trial) {
    StackedBall b = random_linear_ball(2, 2 + static_cast<int>(rng() % 9), rng());
    StackedSphere s = boundary(b);
    int base = tau(to_hypergraph(s));
    std::size_t pick = rng() % s.facets.size();
    int cut = tau(to_hypergraph(remove_facets(s, {s.facets[pick]})));
    CHECK(cut <= base);
    CHECK(cut >= base - 1);
  }
}
