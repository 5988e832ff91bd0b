#include "stx/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <sstream>

#include "stx/constructions.hpp"
#include "stx/cover37.hpp"
#include "stx/error.hpp"
#include "stx/solver.hpp"

namespace stx {

const char* claim_status_name(ClaimStatus s) noexcept {
  switch (s) {
    case ClaimStatus::certified: return "CERTIFIED";
    case ClaimStatus::violated: return "VIOLATED";
    case ClaimStatus::skipped: return "SKIPPED-too-large";
  }
  return "?";
}

bool CriterionReport::violated() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const ClaimReport& r) { return r.status == ClaimStatus::violated; });
}

bool CriterionReport::skipped() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const ClaimReport& r) { return r.status == ClaimStatus::skipped; });
}

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

template <class... Ts>
std::string cat(Ts&&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

struct TauOutcome {
  int tau = 0;
  bool capped = false;
  std::uint64_t nodes = 0;
};

TauOutcome exact_tau(const StackedSphere& sphere, const VerifyOptions& opt,
                     bool allow_cap = false) {
  SolveOptions so;
  so.threads = opt.threads;
  if (allow_cap) so.node_cap = opt.node_cap.value_or(2'000'000);
  SolveResult res = min_transversal(to_hypergraph(sphere), so);
  return {res.certificate.size(), res.stats.node_cap_hit, res.stats.nodes_explored};
}

ClaimReport bound_row(const std::string& claim, const std::string& instance,
                      const StackedSphere& sphere, int lower, const VerifyOptions& opt,
                      bool allow_cap = false) {
  Timer t;
  ClaimReport r;
  r.claim = claim;
  r.instance = instance;
  r.claimed = cat("tau >= ", lower);
  TauOutcome out = exact_tau(sphere, opt, allow_cap);
  if (out.capped) {
    r.status = ClaimStatus::skipped;
    r.computed = cat("node cap hit after ", out.nodes, " nodes; incumbent ", out.tau);
  } else {
    r.status = out.tau >= lower ? ClaimStatus::certified : ClaimStatus::violated;
    r.computed = cat("tau = ", out.tau, " (", out.nodes, " nodes)");
  }
  r.seconds = t.seconds();
  return r;
}

Simplex last_in_path_order(const StackedBall& ball) {
  std::vector<int> order = path_order(ball);
  return ball.simplices[static_cast<std::size_t>(order.back())];
}

// Independent re-check of a cover pair against the full boundary.
bool pair_ok(const StackedBall& ball, const TransversalPair& pair, int size_cap) {
  FacetHypergraph h = to_hypergraph(boundary(ball));
  if (static_cast<int>(pair.t1.size()) > size_cap) return false;
  if (static_cast<int>(pair.t2.size()) > size_cap) return false;
  if (!is_transversal(h, pair.t1) || !is_transversal(h, pair.t2)) return false;
  Simplex last = last_in_path_order(ball);
  std::set<Vertex> joint(pair.t1.begin(), pair.t1.end());
  joint.insert(pair.t2.begin(), pair.t2.end());
  int hits = 0;
  for (Vertex v : last) hits += joint.count(v) ? 1 : 0;
  return hits >= 3 && pair.last_facet_hits >= 3;
}

CriterionReport c1(const VerifyOptions& opt) {
  CriterionReport rep{1, {}};
  FamilyInstance fam = general_lower_bound_2(1);
  ClaimReport r = bound_row("C1", "general-lb-2 k=1, 13 vertices, named facet removed",
                            fam.sphere, 6, opt);
  if (fam.sphere.vertex_count() != 13 && r.status == ClaimStatus::certified) {
    r.status = ClaimStatus::violated;
    r.computed += cat("; vertex count ", fam.sphere.vertex_count(), " != 13");
  }
  rep.rows.push_back(r);
  return rep;
}

CriterionReport c2(const VerifyOptions& opt) {
  CriterionReport rep{2, {}};
  for (int d : {2, 3, 4}) {
    FamilyInstance fam = general_lower_bound(d, 1);
    int n = (d + 2) * (d + 2);
    rep.rows.push_back(bound_row(cat("C2/d=", d),
                                 cat("general-lb d=", d, " k=1, ", n,
                                     " vertices, named facet removed"),
                                 fam.sphere, 2 * d + 3, opt, /*allow_cap=*/d == 4));
  }
  return rep;
}

CriterionReport c3(const VerifyOptions& opt) {
  CriterionReport rep{3, {}};
  for (int d : {2, 3, 4}) {
    FamilyInstance fam = linear_lower_bound(d, 1);
    rep.rows.push_back(bound_row(cat("C3/d=", d),
                                 cat("linear-lb d=", d, " k=1, ", 3 * d + 8,
                                     " vertices, both end facets removed"),
                                 fam.sphere, 6, opt));
  }
  return rep;
}

CriterionReport c4(const VerifyOptions& opt) {
  CriterionReport rep{4, {}};
  Timer t;
  struct Piece {
    StackedBall ball;
    Simplex f;
    int tau_minus_f = 0;
  };
  std::vector<Piece> pieces;
  for (int m = 1; m <= 5; ++m) {
    for_each_linear_ball(2, m, [&](const StackedBall& ball) {
      StackedSphere sphere = boundary(ball);
      Simplex f = sphere.facets.front();
      int tau = exact_tau(remove_facets(sphere, {f}), opt).tau;
      pieces.push_back({ball, f, tau});
    });
  }

  long long pairs = 0;
  int min_slack = -1;
  std::string first_bad;
  for (const Piece& s : pieces) {
    for (const Piece& u : pieces) {
      GlueResult g = glue(s.ball, s.f, u.ball, u.f);
      StackedSphere joined = remove_facets(boundary(g.ball), {g.distinguished_facet});
      int tau = exact_tau(joined, opt).tau;
      int slack = tau - s.tau_minus_f - u.tau_minus_f;
      if (min_slack < 0 || slack < min_slack) min_slack = slack;
      if (slack < 0 && first_bad.empty())
        first_bad = cat("pair with ", s.ball.vertex_count(), "+", u.ball.vertex_count(),
                        " vertices: ", tau, " < ", s.tau_minus_f, " + ", u.tau_minus_f);
      ++pairs;
    }
  }

  ClaimReport r;
  r.claim = "C4";
  r.instance = cat(pieces.size(), " enumerated spheres (d=2, at most 8 vertices), ", pairs,
                   " ordered glue pairs");
  r.claimed = "tau(joined minus h) >= tau(S minus f) + tau(T minus g), every pair";
  r.status = first_bad.empty() ? ClaimStatus::certified : ClaimStatus::violated;
  r.computed = first_bad.empty() ? cat("all pairs hold; minimum slack ", min_slack) : first_bad;
  r.seconds = t.seconds();
  rep.rows.push_back(r);
  return rep;
}

CriterionReport c5(const VerifyOptions& opt) {
  CriterionReport rep{5, {}};
  FamilyInstance fam = linear_lower_bound(2, 2);
  rep.rows.push_back(bound_row("C5/reduced",
                               "linear-lb d=2 k=2, 28 vertices, both end facets removed",
                               fam.sphere, 12, opt));

  Timer t;
  ClaimReport r;
  r.claim = "C5/ratio";
  r.instance = "linear-lb d=2 k=2, full 28-vertex sphere";
  r.claimed = "tau = 12 and 12/28 = 3/7";
  StackedSphere full = fam.sphere;
  full.removed.clear();
  TauOutcome out = exact_tau(full, opt);
  bool ratio = out.tau * 7 == 3 * full.vertex_count();
  r.status = (out.tau == 12 && ratio) ? ClaimStatus::certified : ClaimStatus::violated;
  r.computed = cat("tau = ", out.tau, ", ratio ", out.tau, "/", full.vertex_count(),
                   ratio ? " = 3/7" : " != 3/7");
  r.seconds = t.seconds();
  rep.rows.push_back(r);
  return rep;
}

CriterionReport c6(const VerifyOptions&) {
  CriterionReport rep{6, {}};
  {
    Timer t;
    long long checked = 0, bad = 0;
    for (int m = 1; m <= 8; ++m) {
      for_each_linear_ball(2, m, [&](const StackedBall& ball) {
        TransversalPair pair = transversal_3n7(ball);
        ++checked;
        if (!pair_ok(ball, pair, bound_3n7(ball.vertex_count()))) ++bad;
      });
    }
    ClaimReport r;
    r.claim = "C6/enumerated";
    r.instance = cat("all ", checked, " labeled linear 2-balls with at most 8 simplices");
    r.claimed = "two verified transversals, sizes <= ceil(3n/7), last simplex hit >= 3";
    r.status = bad == 0 ? ClaimStatus::certified : ClaimStatus::violated;
    r.computed = cat(bad, " failures out of ", checked);
    r.seconds = t.seconds();
    rep.rows.push_back(r);
  }
  {
    Timer t;
    std::mt19937_64 rng(20250807);
    long long bad = 0;
    int max_n = 0;
    for (int i = 0; i < 300; ++i) {
      int n = 4 + static_cast<int>(rng() % 297);
      max_n = std::max(max_n, n);
      StackedBall ball = random_linear_ball(2, n - 3, rng());
      TransversalPair pair = transversal_3n7(ball);
      if (!pair_ok(ball, pair, bound_3n7(n))) ++bad;
    }
    ClaimReport r;
    r.claim = "C6/random";
    r.instance = cat("300 seeded random linear 2-balls, n up to ", max_n);
    r.claimed = "two verified transversals, sizes <= ceil(3n/7), last simplex hit >= 3";
    r.status = bad == 0 ? ClaimStatus::certified : ClaimStatus::violated;
    r.computed = cat(bad, " failures out of 300");
    r.seconds = t.seconds();
    rep.rows.push_back(r);
  }
  return rep;
}

CriterionReport c7(const VerifyOptions&) {
  CriterionReport rep{7, {}};
  Timer t;
  long long blocks = 0, searches = 0, bad = 0, fast_hits = 0, fast_bad = 0;
  const std::vector<Simplex> subsets = {{1, 2}, {1, 3}, {2, 3}};
  for_each_linear_ball(2, 7, [&](const StackedBall& ball) {
    ++blocks;
    FacetHypergraph h = to_hypergraph(boundary(ball));
    Simplex last = ball.simplices.back();
    auto valid = [&](const TransversalPair& pair, const Simplex& L) {
      auto touches = [&](const std::vector<Vertex>& tv) {
        return std::any_of(tv.begin(), tv.end(), [&](Vertex v) { return L.contains(v); });
      };
      if (pair.t1.size() > 4 || pair.t2.size() > 4) return false;
      if (!touches(pair.t1) || !touches(pair.t2)) return false;
      if (!is_transversal(h, pair.t1) || !is_transversal(h, pair.t2)) return false;
      std::set<Vertex> joint(pair.t1.begin(), pair.t1.end());
      joint.insert(pair.t2.begin(), pair.t2.end());
      int hits = 0;
      for (Vertex v : last) hits += joint.count(v) ? 1 : 0;
      return hits >= 3;
    };
    for (const Simplex& L : subsets) {
      ++searches;
      BlockInput in{ball, L};
      if (!valid(block_pair(in), L)) ++bad;
      if (auto fast = block_pair_fast(in)) {
        ++fast_hits;
        if (!valid(*fast, L)) ++fast_bad;
      }
    }
  });
  ClaimReport r;
  r.claim = "C7";
  r.instance = cat(blocks, " canonical 10-vertex blocks, 3 two-subsets each (", searches,
                   " searches)");
  r.claimed = "pair search succeeds: sizes <= 4, both sets meet L, last simplex hit >= 3";
  r.status = (bad == 0 && fast_bad == 0) ? ClaimStatus::certified : ClaimStatus::violated;
  r.computed = cat(bad, " search failures; fast path applied ", fast_hits, " times, ",
                   fast_bad, " disagreements");
  r.seconds = t.seconds();
  rep.rows.push_back(r);
  return rep;
}

struct OracleTally {
  long long instances = 0;
  long long mismatches = 0;
  long long sandwich_bad = 0;
  long long monotone_bad = 0;
};

void oracle_check(const StackedSphere& sphere, std::mt19937_64& rng, OracleTally& tally) {
  FacetHypergraph h = to_hypergraph(sphere);
  int n = static_cast<int>(h.vertices.size());
  SolveResult res = min_transversal(h);
  std::optional<int> brute = brute_force_tau(h, n);
  ++tally.instances;
  if (!brute || *brute != res.certificate.size()) ++tally.mismatches;
  int greedy = greedy_transversal(h).size();
  if (!(matching_lower_bound(h) <= res.certificate.size() &&
        res.certificate.size() <= greedy && greedy <= n))
    ++tally.sandwich_bad;

  std::size_t pick = rng() % sphere.facets.size();
  StackedSphere reduced = remove_facets(sphere, {sphere.facets[pick]});
  if (reduced.active().empty()) return;
  FacetHypergraph hr = to_hypergraph(reduced);
  SolveResult res2 = min_transversal(hr);
  std::optional<int> brute2 = brute_force_tau(hr, n);
  ++tally.instances;
  if (!brute2 || *brute2 != res2.certificate.size()) ++tally.mismatches;
  if (res2.certificate.size() > res.certificate.size()) ++tally.monotone_bad;
}

ClaimReport oracle_row(const std::string& claim, const std::string& instance,
                       const OracleTally& tally, double secs) {
  ClaimReport r;
  r.claim = claim;
  r.instance = instance;
  r.claimed = "solver size == brute-force size on every instance";
  bool ok = tally.mismatches == 0 && tally.sandwich_bad == 0 && tally.monotone_bad == 0;
  r.status = ok ? ClaimStatus::certified : ClaimStatus::violated;
  r.computed = cat(tally.mismatches, " mismatches, ", tally.sandwich_bad,
                   " bound-order faults, ", tally.monotone_bad, " monotonicity faults over ",
                   tally.instances, " instances");
  r.seconds = secs;
  return r;
}

CriterionReport c8(const VerifyOptions&) {
  CriterionReport rep{8, {}};
  {
    Timer t;
    std::mt19937_64 rng(99991);
    OracleTally tally;
    for (int m = 1; m <= 8; ++m)
      for_each_linear_ball(2, m,
                           [&](const StackedBall& ball) { oracle_check(boundary(ball), rng, tally); });
    rep.rows.push_back(oracle_row("C8/enumerated",
                                  "boundaries of all labeled linear 2-balls with m <= 8, "
                                  "plus one random facet removed from each",
                                  tally, t.seconds()));
  }
  {
    Timer t;
    std::mt19937_64 rng(171717);
    OracleTally tally;
    for (int i = 0; i < 500; ++i) {
      int d = 2 + static_cast<int>(rng() % 3);
      int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(11 - d));
      StackedBall ball = random_linear_ball(d, m, rng());
      oracle_check(boundary(ball), rng, tally);
    }
    rep.rows.push_back(oracle_row("C8/random",
                                  "500 seeded random balls with at most 12 vertices, "
                                  "plus one random facet removed from each",
                                  tally, t.seconds()));
  }
  return rep;
}

CriterionReport c9(const VerifyOptions&) {
  CriterionReport rep{9, {}};
  Timer t;
  std::mt19937_64 rng(4242);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    int d = 2 + i % 3;
    int m = 1 + static_cast<int>(rng() % 60);
    StackedBall ball = random_linear_ball(d, m, rng());
    StackedSphere sphere = boundary(ball);
    if (static_cast<int>(sphere.facets.size()) != d * m + 2) ++bad;
    if (ball.vertex_count() != m + d + 1) ++bad;
    if (sphere.vertex_count() != m + d + 1) ++bad;
  }
  ClaimReport r;
  r.claim = "C9";
  r.instance = "1000 seeded random balls, d in {2,3,4}, m up to 60";
  r.claimed = "facet count d*m + 2 and vertex count m + d + 1";
  r.status = bad == 0 ? ClaimStatus::certified : ClaimStatus::violated;
  r.computed = cat(bad, " count faults");
  r.seconds = t.seconds();
  rep.rows.push_back(r);
  return rep;
}

CriterionReport c10(const VerifyOptions& opt) {
  CriterionReport rep{10, {}};
  for (int k : {1, 2}) {
    Timer t;
    FamilyInstance fam = linear_lower_bound(2, k);
    int n = fam.sphere.vertex_count();
    ClaimReport r;
    r.claim = cat("C10/k=", k);
    r.instance = cat("linear-lb d=2 k=", k, ", full ", n, "-vertex sphere");
    r.claimed = cat("cover sizes exactly ", 6 * k, " = ceil(3n/7) = exact tau");
    TransversalPair pair = transversal_3n7(fam.ball);
    StackedSphere full = fam.sphere;
    full.removed.clear();
    TauOutcome out = exact_tau(full, opt);
    bool ok = static_cast<int>(pair.t1.size()) == 6 * k &&
              static_cast<int>(pair.t2.size()) == 6 * k && bound_3n7(n) == 6 * k &&
              out.tau == 6 * k && pair_ok(fam.ball, pair, 6 * k);
    r.status = ok ? ClaimStatus::certified : ClaimStatus::violated;
    r.computed = cat("sizes ", pair.t1.size(), "/", pair.t2.size(), ", ceil(3n/7) = ",
                     bound_3n7(n), ", exact tau = ", out.tau);
    r.seconds = t.seconds();
    rep.rows.push_back(r);
  }
  return rep;
}

}  // namespace

CriterionReport run_criterion(int number, const VerifyOptions& opt) {
  try {
    switch (number) {
      case 1: return c1(opt);
      case 2: return c2(opt);
      case 3: return c3(opt);
      case 4: return c4(opt);
      case 5: return c5(opt);
      case 6: return c6(opt);
      case 7: return c7(opt);
      case 8: return c8(opt);
      case 9: return c9(opt);
      case 10: return c10(opt);
      default: fail(Errc::bad_argument, cat("no criterion ", number));
    }
  } catch (const Error& e) {
    CriterionReport rep{number, {}};
    ClaimReport r;
    r.claim = cat("C", number);
    r.instance = "criterion aborted";
    r.claimed = "no library error";
    r.computed = e.what();
    r.status = ClaimStatus::violated;
    rep.rows.push_back(r);
    return rep;
  }
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "paper" || suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  if (suite == "oracle") return {8};
  fail(Errc::bad_argument, "unknown suite '" + suite + "'");
}

std::vector<ClaimReport> verify_instance_claims(const Instance& inst, const VerifyOptions& opt) {
  std::vector<ClaimReport> rows;

  {
    Timer t;
    ClaimReport r;
    r.claim = "structure";
    r.instance = inst.kind == Instance::Kind::ball ? "construction sequence" : "facet list";
    r.claimed = inst.kind == Instance::Kind::ball ? "valid stacking" : "boundary of some stacking";
    try {
      if (inst.kind == Instance::Kind::ball) {
        StackedBall b = to_ball(inst);
        r.computed = cat("valid, m = ", b.size(), ", n = ", b.vertex_count());
      } else {
        StackedSphere full;
        full.d = inst.d;
        full.facets = inst.simplices;
        std::sort(full.facets.begin(), full.facets.end());
        StackedBall b = ball_from_sphere(full);
        r.computed = cat("reverse stacking found, m = ", b.size());
      }
      r.status = ClaimStatus::certified;
    } catch (const Error& e) {
      r.status = ClaimStatus::violated;
      r.computed = e.what();
    }
    r.seconds = t.seconds();
    rows.push_back(r);
    if (r.status == ClaimStatus::violated) return rows;
  }

  StackedSphere sphere = to_sphere(inst);

  if (inst.meta.claimed_n) {
    ClaimReport r;
    r.claim = "vertex-count";
    r.instance = "recorded claim";
    r.claimed = cat("n = ", *inst.meta.claimed_n);
    r.computed = cat("n = ", sphere.vertex_count());
    r.status = sphere.vertex_count() == *inst.meta.claimed_n ? ClaimStatus::certified
                                                             : ClaimStatus::violated;
    rows.push_back(r);
  }

  if (inst.meta.claimed_tau_lower) {
    Timer t;
    ClaimReport r;
    r.claim = "tau-bound";
    r.instance = "recorded claim";
    r.claimed = cat("tau >= ", *inst.meta.claimed_tau_lower);
    TauOutcome out = exact_tau(sphere, opt, /*allow_cap=*/opt.node_cap.has_value());
    if (out.capped) {
      r.status = ClaimStatus::skipped;
      r.computed = cat("node cap hit after ", out.nodes, " nodes; incumbent ", out.tau);
    } else {
      r.status = out.tau >= *inst.meta.claimed_tau_lower ? ClaimStatus::certified
                                                         : ClaimStatus::violated;
      r.computed = cat("tau = ", out.tau);
    }
    r.seconds = t.seconds();
    rows.push_back(r);
  }

  return rows;
}

}  // namespace stx
