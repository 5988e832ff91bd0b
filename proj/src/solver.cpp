#include "stx/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <mutex>
#include <thread>

#include "stx/bitset.hpp"
#include "stx/error.hpp"

namespace stx {

namespace {

// Vertices compressed to 0..n-1 (order-preserving, so smallest-id tie breaks
// agree with the original labels).
struct Compressed {
  std::vector<Vertex> label;  // compressed -> original
  std::vector<Bits> edges;
  int n = 0;
};

Compressed compress(const FacetHypergraph& h) {
  for (const auto& e : h.edges)
    if (e.empty()) fail(Errc::empty_edge, "hypergraph has an empty edge");

  std::vector<Vertex> support;
  for (const auto& e : h.edges) support.insert(support.end(), e.begin(), e.end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  Compressed c;
  c.label = std::move(support);
  c.n = static_cast<int>(c.label.size());
  c.edges.reserve(h.edges.size());
  for (const auto& e : h.edges) {
    Bits b(c.n);
    for (Vertex v : e) {
      auto it = std::lower_bound(c.label.begin(), c.label.end(), v);
      b.set(static_cast<int>(it - c.label.begin()));
    }
    c.edges.push_back(std::move(b));
  }
  return c;
}

// first-fit disjoint edges
int matching_bound(const std::vector<Bits>& edges, int n) {
  Bits used(n);
  int count = 0;
  for (const auto& e : edges) {
    if (!used.intersects(e)) {
      used |= e;
      ++count;
    }
  }
  return count;
}

std::vector<int> greedy_cover(std::vector<Bits> edges, int n) {
  std::vector<int> picked;
  while (!edges.empty()) {
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (const auto& e : edges) e.for_each([&](int v) { ++deg[static_cast<std::size_t>(v)]; });
    int best = 0;
    for (int v = 1; v < n; ++v)
      if (deg[static_cast<std::size_t>(v)] > deg[static_cast<std::size_t>(best)]) best = v;
    picked.push_back(best);
    std::vector<Bits> rest;
    rest.reserve(edges.size());
    for (auto& e : edges)
      if (!e.test(best)) rest.push_back(std::move(e));
    edges = std::move(rest);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

struct Node {
  std::vector<Bits> edges;
  std::vector<int> chosen;
};

struct Shared {
  int n = 0;
  std::optional<std::uint64_t> node_cap;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> reductions{0};
  std::atomic<bool> capped{false};
  std::atomic<int> best_size{0};
  std::vector<int> best;  // guarded by mu
  std::mutex mu;

  void offer(const std::vector<int>& candidate) {
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<int>(candidate.size()) < best_size.load(std::memory_order_relaxed)) {
      best = candidate;
      std::sort(best.begin(), best.end());
      best_size.store(static_cast<int>(candidate.size()), std::memory_order_relaxed);
    }
  }
};

// Applies unit forcing, superset-edge deletion and dominated-vertex deletion
// until fixpoint. Returns false when some edge became empty (infeasible branch).
bool reduce(Node& nd, Shared& sh) {
  const int n = sh.n;
  std::uint64_t applied = 0;
  bool changed = true;
  bool feasible = true;
  while (changed && feasible) {
    changed = false;

    // empty check + unit forcing
    for (std::size_t i = 0; i < nd.edges.size() && feasible; ++i) {
      int c = nd.edges[i].count();
      if (c == 0) {
        feasible = false;
      } else if (c == 1) {
        int v = nd.edges[i].first();
        nd.chosen.push_back(v);
        std::vector<Bits> rest;
        rest.reserve(nd.edges.size());
        for (auto& e : nd.edges)
          if (!e.test(v)) rest.push_back(std::move(e));
        nd.edges = std::move(rest);
        ++applied;
        changed = true;
        i = static_cast<std::size_t>(-1);  // restart scan
      }
    }
    if (!feasible) break;

    // superset-edge deletion: drop any edge containing another edge
    {
      std::vector<bool> dead(nd.edges.size(), false);
      for (std::size_t i = 0; i < nd.edges.size(); ++i) {
        if (dead[i]) continue;
        for (std::size_t j = 0; j < nd.edges.size(); ++j) {
          if (i == j || dead[j]) continue;
          if (nd.edges[j].subset_of(nd.edges[i]) && nd.edges[i] != nd.edges[j]) {
            dead[i] = true;
            break;
          }
          if (i < j && nd.edges[i] == nd.edges[j]) dead[j] = true;  // dedupe, keep first
        }
      }
      std::vector<Bits> rest;
      rest.reserve(nd.edges.size());
      for (std::size_t i = 0; i < nd.edges.size(); ++i)
        if (!dead[i]) rest.push_back(std::move(nd.edges[i]));
      if (rest.size() != nd.edges.size()) {
        applied += nd.edges.size() - rest.size();
        changed = true;
      }
      nd.edges = std::move(rest);
    }

    // dominated-vertex deletion: drop u when every edge with u also has v
    if (!nd.edges.empty()) {
      const std::size_t m = nd.edges.size();
      const int edge_count = static_cast<int>(m);
      std::vector<Bits> occ(static_cast<std::size_t>(n));
      std::vector<int> active;
      for (int v = 0; v < n; ++v) occ[static_cast<std::size_t>(v)] = Bits(edge_count);
      for (std::size_t i = 0; i < m; ++i)
        nd.edges[i].for_each([&](int v) { occ[static_cast<std::size_t>(v)].set(static_cast<int>(i)); });
      for (int v = 0; v < n; ++v)
        if (!occ[static_cast<std::size_t>(v)].none()) active.push_back(v);

      Bits dropped(n);
      bool any = false;
      for (std::size_t a = 0; a < active.size(); ++a) {
        int u = active[a];
        if (dropped.test(u)) continue;
        for (std::size_t b = 0; b < active.size(); ++b) {
          int v = active[b];
          if (u == v || dropped.test(v)) continue;
          const Bits& ou = occ[static_cast<std::size_t>(u)];
          const Bits& ov = occ[static_cast<std::size_t>(v)];
          if (ou.subset_of(ov) && (ou != ov || u > v)) {
            dropped.set(u);
            any = true;
            ++applied;
            break;
          }
        }
      }
      if (any) {
        for (auto& e : nd.edges) e.and_not(dropped);
        changed = true;
      }
    }
  }
  sh.reductions.fetch_add(applied, std::memory_order_relaxed);
  return feasible;
}

int pick_branch_vertex(const Node& nd, int n) {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const auto& e : nd.edges) e.for_each([&](int v) { ++deg[static_cast<std::size_t>(v)]; });
  int best = -1;
  for (int v = 0; v < n; ++v)
    if (deg[static_cast<std::size_t>(v)] > 0 && (best < 0 || deg[static_cast<std::size_t>(v)] > deg[static_cast<std::size_t>(best)]))
      best = v;
  return best;
}

void branch_and_bound(Node nd, Shared& sh) {
  std::uint64_t visited = sh.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
  if (sh.node_cap && visited > *sh.node_cap) {
    sh.capped.store(true, std::memory_order_relaxed);
    return;
  }
  if (!reduce(nd, sh)) return;

  if (nd.edges.empty()) {
    sh.offer(nd.chosen);
    return;
  }

  int lb = matching_bound(nd.edges, sh.n);
  if (static_cast<int>(nd.chosen.size()) + lb >= sh.best_size.load(std::memory_order_relaxed))
    return;

  int v = pick_branch_vertex(nd, sh.n);

  // include v
  {
    Node child;
    child.chosen = nd.chosen;
    child.chosen.push_back(v);
    child.edges.reserve(nd.edges.size());
    for (const auto& e : nd.edges)
      if (!e.test(v)) child.edges.push_back(e);
    branch_and_bound(std::move(child), sh);
  }
  // exclude v
  {
    Node child;
    child.chosen = std::move(nd.chosen);
    child.edges = std::move(nd.edges);
    for (auto& e : child.edges) e.reset(v);
    branch_and_bound(std::move(child), sh);
  }
}

}  // namespace

SolveResult min_transversal(const FacetHypergraph& h, const SolveOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  Compressed c = compress(h);

  Shared sh;
  sh.n = c.n;
  sh.node_cap = opts.node_cap;

  std::vector<int> greedy = greedy_cover(c.edges, c.n);
  sh.best = greedy;
  sh.best_size.store(static_cast<int>(greedy.size()));

  Node root;
  root.edges = c.edges;

  if (opts.threads <= 1) {
    branch_and_bound(std::move(root), sh);
  } else {
    // Deterministic frontier expansion, then parallel subtree search sharing
    // the incumbent size. The final size is the exact optimum either way.
    std::deque<Node> frontier;
    frontier.push_back(std::move(root));
    const std::size_t target = static_cast<std::size_t>(opts.threads) * 8;
    std::size_t expansions = 0;
    while (frontier.size() < target && expansions < 512 && !frontier.empty()) {
      Node nd = std::move(frontier.front());
      frontier.pop_front();
      ++expansions;
      sh.nodes.fetch_add(1, std::memory_order_relaxed);
      if (!reduce(nd, sh)) continue;
      if (nd.edges.empty()) {
        sh.offer(nd.chosen);
        continue;
      }
      int lb = matching_bound(nd.edges, sh.n);
      if (static_cast<int>(nd.chosen.size()) + lb >= sh.best_size.load()) continue;
      int v = pick_branch_vertex(nd, sh.n);
      Node inc;
      inc.chosen = nd.chosen;
      inc.chosen.push_back(v);
      for (const auto& e : nd.edges)
        if (!e.test(v)) inc.edges.push_back(e);
      Node exc;
      exc.chosen = std::move(nd.chosen);
      exc.edges = std::move(nd.edges);
      for (auto& e : exc.edges) e.reset(v);
      frontier.push_back(std::move(inc));
      frontier.push_back(std::move(exc));
    }

    std::vector<Node> tasks(std::make_move_iterator(frontier.begin()),
                            std::make_move_iterator(frontier.end()));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        branch_and_bound(std::move(tasks[i]), sh);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < opts.threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SolveResult res;
  res.stats.nodes_explored = sh.nodes.load();
  res.stats.reductions_applied = sh.reductions.load();
  res.stats.node_cap_hit = sh.capped.load();
  res.certificate.optimal = !res.stats.node_cap_hit;
  res.certificate.vertices.reserve(sh.best.size());
  for (int v : sh.best) res.certificate.vertices.push_back(c.label[static_cast<std::size_t>(v)]);
  std::sort(res.certificate.vertices.begin(), res.certificate.vertices.end());

  if (!is_transversal(h, res.certificate.vertices))
    fail(Errc::internal_contradiction, "solver certificate does not cover the input");

  res.stats.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::optional<int> brute_force_tau(const FacetHypergraph& h, int max_size) {
  if (max_size < 0) fail(Errc::bad_argument, "max_size must be non-negative");
  if (h.edges.empty()) return 0;
  for (const auto& e : h.edges)
    if (e.empty()) return std::nullopt;  // uncoverable

  std::vector<Vertex> support;
  for (const auto& e : h.edges) support.insert(support.end(), e.begin(), e.end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  const int n = static_cast<int>(support.size());

  std::vector<Vertex> subset;
  for (int size = 1; size <= std::min(max_size, n); ++size) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      subset.clear();
      for (int i : idx) subset.push_back(support[static_cast<std::size_t>(i)]);
      if (is_transversal(h, subset)) return size;
      // next combination, lexicographic
      int k = size - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - size + k) --k;
      if (k < 0) break;
      ++idx[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < size; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return std::nullopt;
}

TransversalCertificate greedy_transversal(const FacetHypergraph& h) {
  Compressed c = compress(h);
  std::vector<int> picked = greedy_cover(c.edges, c.n);
  TransversalCertificate cert;
  cert.optimal = false;
  cert.vertices.reserve(picked.size());
  for (int v : picked) cert.vertices.push_back(c.label[static_cast<std::size_t>(v)]);
  std::sort(cert.vertices.begin(), cert.vertices.end());
  return cert;
}

bool is_transversal(const FacetHypergraph& h, const std::vector<Vertex>& t) {
  std::vector<Vertex> sorted = t;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& e : h.edges) {
    bool hit = false;
    for (Vertex v : e)
      if (std::binary_search(sorted.begin(), sorted.end(), v)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

int matching_lower_bound(const FacetHypergraph& h) {
  for (const auto& e : h.edges)
    if (e.empty()) fail(Errc::empty_edge, "hypergraph has an empty edge");
  int count = 0;
  std::vector<Vertex> used;
  for (const auto& e : h.edges) {
    bool disjoint = true;
    for (Vertex v : e)
      if (std::binary_search(used.begin(), used.end(), v)) {
        disjoint = false;
        break;
      }
    if (disjoint) {
      ++count;
      used.insert(used.end(), e.begin(), e.end());
      std::sort(used.begin(), used.end());
    }
  }
  return count;
}

}  // namespace stx
