#include "stx/cover37.hpp"

#include <algorithm>
#include <map>

#include "stx/bitset.hpp"
#include "stx/error.hpp"
#include "stx/solver.hpp"

namespace stx {

namespace {

// Shared scaffolding for the small exhaustive searches: vertices of the
// sphere mapped to bit positions, facets as masks.
struct MaskedSphere {
  std::vector<Vertex> verts;  // sorted; bit i <-> verts[i]
  std::vector<Bits> facets;
  Bits last;  // mask of the last path-order simplex

  int bit_of(Vertex v) const {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    return static_cast<int>(it - verts.begin());
  }
  Bits mask_of(const Simplex& s) const {
    Bits b(static_cast<int>(verts.size()));
    for (Vertex v : s) b.set(bit_of(v));
    return b;
  }
  std::vector<Vertex> unmask(const Bits& b) const {
    std::vector<Vertex> out;
    b.for_each([&](int i) { out.push_back(verts[static_cast<std::size_t>(i)]); });
    return out;
  }
  bool covers(const Bits& t) const {
    for (const auto& f : facets)
      if (!f.intersects(t)) return false;
    return true;
  }
};

MaskedSphere masked_sphere(const StackedBall& ball) {
  MaskedSphere ms;
  ms.verts = ball.vertices();
  for (const auto& f : boundary(ball).facets) ms.facets.push_back(ms.mask_of(f));
  ms.last = ms.mask_of(ball.simplices.back());
  return ms;
}

// All transversals of size <= cap as masks, ordered by (size, lexicographic
// on the sorted vertex list). An optional `must_hit` mask filters candidates.
std::vector<Bits> transversal_candidates(const MaskedSphere& ms, int cap,
                                         const Bits* must_hit = nullptr) {
  const int n = static_cast<int>(ms.verts.size());
  std::vector<Bits> out;
  std::vector<int> idx;
  for (int size = 1; size <= std::min(cap, n); ++size) {
    idx.assign(static_cast<std::size_t>(size), 0);
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      Bits t(n);
      for (int i : idx) t.set(i);
      if ((!must_hit || must_hit->intersects(t)) && ms.covers(t)) out.push_back(t);
      int k = size - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - size + k) --k;
      if (k < 0) break;
      ++idx[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < size; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

// First pair (by increasing size pair, then lexicographic) whose union hits
// at least `min_last` bits of ms.last.
std::optional<std::pair<Bits, Bits>> first_admissible_pair(const MaskedSphere& ms,
                                                           const std::vector<Bits>& c1,
                                                           const std::vector<Bits>& c2,
                                                           int min_last) {
  for (const Bits& t1 : c1) {
    for (const Bits& t2 : c2) {
      Bits u = t1;
      u |= t2;
      if (u.intersection_count(ms.last) >= min_last) return std::make_pair(t1, t2);
    }
  }
  return std::nullopt;
}

TransversalPair to_pair(const MaskedSphere& ms, const Bits& t1, const Bits& t2) {
  TransversalPair p;
  p.t1 = ms.unmask(t1);
  p.t2 = ms.unmask(t2);
  Bits u = t1;
  u |= t2;
  p.last_facet_hits = u.intersection_count(ms.last);
  return p;
}

void check_pair(const StackedBall& ball, const TransversalPair& p, int size_cap) {
  FacetHypergraph h = to_hypergraph(boundary(ball));
  if (static_cast<int>(p.t1.size()) > size_cap || static_cast<int>(p.t2.size()) > size_cap)
    fail(Errc::internal_contradiction, "transversal exceeds the size bound");
  if (!is_transversal(h, p.t1) || !is_transversal(h, p.t2))
    fail(Errc::internal_contradiction, "claimed transversal misses a facet");
  if (p.last_facet_hits < 3)
    fail(Errc::internal_contradiction, "pair hits fewer than 3 vertices of the last simplex");
}

void require_linear_2ball(const StackedBall& ball) {
  if (ball.d != 2) fail(Errc::wrong_dimension, "only 2-spheres are supported");
  if (!is_linear(ball)) fail(Errc::not_linear, "dual tree is not a path");
}

// Candidates grouped by size so pairs come out in (|T1|,|T2|) order. The
// candidate lists are already size-sorted; split points per size.
std::vector<std::vector<Bits>> by_size(const std::vector<Bits>& cands, int cap) {
  std::vector<std::vector<Bits>> g(static_cast<std::size_t>(cap + 1));
  for (const auto& b : cands) g[static_cast<std::size_t>(b.count())].push_back(b);
  return g;
}

std::optional<std::pair<Bits, Bits>> scan_pairs_by_size(const MaskedSphere& ms,
                                                        const std::vector<Bits>& c1,
                                                        const std::vector<Bits>& c2, int cap,
                                                        int min_last) {
  auto g1 = by_size(c1, cap);
  auto g2 = by_size(c2, cap);
  for (int s1 = 1; s1 <= cap; ++s1)
    for (int s2 = 1; s2 <= cap; ++s2) {
      auto found = first_admissible_pair(ms, g1[static_cast<std::size_t>(s1)],
                                         g2[static_cast<std::size_t>(s2)], min_last);
      if (found) return found;
    }
  return std::nullopt;
}

}  // namespace

TransversalPair base_case(const StackedBall& input) {
  require_linear_2ball(input);
  StackedBall ball = to_path_order(input);
  const int n = ball.vertex_count();
  if (n < 4 || n > 10) fail(Errc::too_small, "base case handles 4 <= n <= 10");

  MaskedSphere ms = masked_sphere(ball);
  const int cap = n / 2;
  auto cands = transversal_candidates(ms, cap);
  auto found = scan_pairs_by_size(ms, cands, cands, cap, 3);
  if (!found)
    fail(Errc::internal_contradiction, "no admissible pair on a small sphere");
  TransversalPair p = to_pair(ms, found->first, found->second);
  check_pair(ball, p, cap);
  return p;
}

namespace {

void require_canonical_block(const BlockInput& in) {
  const StackedBall& b = in.ball10;
  if (b.d != 2 || b.size() != 7 || b.vertex_count() != 10)
    fail(Errc::bad_argument, "block must be 7 tetrahedra on 10 vertices");
  if (!is_linear(b)) fail(Errc::bad_argument, "block must be linear");
  if (b.simplices.front() != Simplex{1, 2, 3, 4})
    fail(Errc::bad_argument, "block's first simplex must be {1,2,3,4}");
  for (int i = 1; i < 7; ++i) {
    const Simplex& s = b.simplices[static_cast<std::size_t>(i)];
    if (!s.contains(i + 4) || s[3] != i + 4)
      fail(Errc::bad_argument, "block simplex " + std::to_string(i + 1) +
                                   " must introduce vertex " + std::to_string(i + 4));
  }
  if (in.L.size() != 2 || !Simplex{1, 2, 3}.contains_all(in.L))
    fail(Errc::bad_argument, "L must be a 2-subset of {1,2,3}");
}

}  // namespace

TransversalPair block_pair(const BlockInput& in) {
  require_canonical_block(in);
  const StackedBall& ball = in.ball10;

  MaskedSphere ms = masked_sphere(ball);
  Bits lmask = ms.mask_of(in.L);
  auto cands = transversal_candidates(ms, 4, &lmask);
  auto found = scan_pairs_by_size(ms, cands, cands, 4, 3);
  if (!found)
    fail(Errc::internal_contradiction, "no admissible pair for a canonical block");
  TransversalPair p = to_pair(ms, found->first, found->second);
  check_pair(ball, p, 4);
  return p;
}

std::optional<TransversalPair> block_pair_fast(const BlockInput& in) {
  require_canonical_block(in);
  const StackedBall& ball = in.ball10;
  const auto& s = ball.simplices;

  // The edge shared by the middle three tetrahedra covers every facet they
  // contribute; one extra vertex near each end usually finishes the job.
  Simplex e0 = intersection(intersection(s[2], s[3]), s[4]);
  if (e0.size() != 2) return std::nullopt;

  MaskedSphere ms = masked_sphere(ball);
  Bits lmask = ms.mask_of(in.L);
  Simplex head = unite(s[0], s[1]);
  Simplex tail = unite(s[5], s[6]);

  std::vector<Bits> cands;
  for (Vertex u : head)
    for (Vertex v : tail) {
      Bits t = ms.mask_of(e0.with(u).with(v));
      if (t.count() > 4) continue;
      if (!lmask.intersects(t)) continue;
      if (ms.covers(t)) cands.push_back(t);
    }
  std::sort(cands.begin(), cands.end(), [](const Bits& a, const Bits& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    Bits x = a, y = b;  // compare as vertex lists via lowest set bits
    while (true) {
      int fa = x.first(), fb = y.first();
      if (fa != fb) return fa < fb;
      if (fa < 0) return false;
      x.reset(fa);
      y.reset(fb);
    }
  });
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  auto found = scan_pairs_by_size(ms, cands, cands, 4, 3);
  if (!found) return std::nullopt;
  TransversalPair p = to_pair(ms, found->first, found->second);
  check_pair(ball, p, 4);
  return p;
}

SplitResult split_last_block(const StackedBall& input) {
  require_linear_2ball(input);
  StackedBall ball = to_path_order(input);
  const int m = ball.size();
  if (ball.vertex_count() <= 10) fail(Errc::too_small, "nothing to split at 10 or fewer vertices");

  SplitResult out;
  std::vector<Simplex> head(ball.simplices.begin(), ball.simplices.end() - 7);
  out.prefix = make_ball(2, head);
  out.shared_triangle = intersection(ball.simplices[static_cast<std::size_t>(m - 8)],
                                     ball.simplices[static_cast<std::size_t>(m - 7)]);
  out.block = canonical_block_labeling(ball, m - 7, 7, out.shared_triangle);
  return out;
}

TransversalPair transversal_3n7(const StackedBall& input) {
  require_linear_2ball(input);
  StackedBall ball = to_path_order(input);
  const int n = ball.vertex_count();
  if (n <= 10) return base_case(ball);

  SplitResult split = split_last_block(ball);
  TransversalPair inner = transversal_3n7(split.prefix);

  // Two of the inner pair's hits on the prefix's last simplex must lie on the
  // shared triangle; route the block's sets through them.
  std::vector<Vertex> both = inner.t1;
  both.insert(both.end(), inner.t2.begin(), inner.t2.end());
  std::sort(both.begin(), both.end());
  both.erase(std::unique(both.begin(), both.end()), both.end());

  std::vector<Vertex> on_triangle;
  for (Vertex v : both)
    if (split.shared_triangle.contains(v)) on_triangle.push_back(v);
  if (on_triangle.size() < 2)
    fail(Errc::internal_contradiction, "inner pair touches the shared triangle fewer than twice");

  Simplex L_orig{on_triangle[0], on_triangle[1]};
  std::vector<Vertex> lc;
  for (Vertex v : L_orig) lc.push_back(split.block.to_canonical.at(v));
  BlockInput bi{split.block.block, Simplex(lc)};
  TransversalPair wpair = block_pair(bi);

  std::map<Vertex, Vertex> from_canonical;
  for (auto [orig, canon] : split.block.to_canonical) from_canonical[canon] = orig;
  auto unmap = [&](const std::vector<Vertex>& w) {
    std::vector<Vertex> out;
    out.reserve(w.size());
    for (Vertex v : w) out.push_back(from_canonical.at(v));
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<Vertex> w1 = unmap(wpair.t1);
  std::vector<Vertex> w2 = unmap(wpair.t2);

  auto meets = [](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    for (Vertex v : a)
      if (std::binary_search(b.begin(), b.end(), v)) return true;
    return false;
  };
  auto pick_host = [&](const std::vector<Vertex>& w) -> const std::vector<Vertex>& {
    if (meets(w, inner.t1)) return inner.t1;
    if (meets(w, inner.t2)) return inner.t2;
    fail(Errc::internal_contradiction, "block transversal misses both inner transversals");
  };
  auto fuse = [](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<Vertex> out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  TransversalPair result;
  result.t1 = fuse(pick_host(w1), w1);
  result.t2 = fuse(pick_host(w2), w2);

  const Simplex& last = ball.simplices.back();
  int hits = 0;
  for (Vertex v : last) {
    if (std::binary_search(result.t1.begin(), result.t1.end(), v) ||
        std::binary_search(result.t2.begin(), result.t2.end(), v))
      ++hits;
  }
  result.last_facet_hits = hits;

  check_pair(ball, result, bound_3n7(n));
  return result;
}

}  // namespace stx
