#include "stx/ball.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "stx/error.hpp"

namespace stx {

namespace {

std::string describe(const Simplex& s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

}  // namespace

std::vector<Vertex> StackedBall::vertices() const {
  std::set<Vertex> vs;
  for (const auto& s : simplices) vs.insert(s.begin(), s.end());
  return {vs.begin(), vs.end()};
}

std::vector<Simplex> StackedSphere::active() const {
  std::vector<Simplex> out;
  out.reserve(facets.size());
  std::set_difference(facets.begin(), facets.end(), removed.begin(), removed.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<Vertex> StackedSphere::vertices() const {
  std::set<Vertex> vs;
  for (const auto& f : facets) vs.insert(f.begin(), f.end());
  return {vs.begin(), vs.end()};
}

std::vector<std::vector<int>> DualTree::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes));
  for (auto [i, j] : edges) {
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

int DualTree::degree(int i) const {
  int deg = 0;
  for (auto [a, b] : edges)
    if (a == i || b == i) ++deg;
  return deg;
}

StackedBall make_ball(int d, const std::vector<Simplex>& simplices) {
  if (d < 1) fail(Errc::bad_argument, "dimension must be at least 1");
  if (simplices.empty()) fail(Errc::bad_argument, "empty construction sequence");

  StackedBall ball;
  ball.d = d;
  ball.parent.assign(simplices.size(), -1);
  ball.attach_face.assign(simplices.size(), Simplex{});

  std::set<Vertex> seen;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const Simplex& s = simplices[i];
    if (s.size() != d + 2) {
      fail(Errc::wrong_simplex_size,
           "simplex " + std::to_string(i + 1) + " has " + std::to_string(s.size()) +
               " vertices, expected " + std::to_string(d + 2));
    }
    if (i == 0) {
      seen.insert(s.begin(), s.end());
      ball.simplices.push_back(s);
      continue;
    }

    // Candidate attachments: earlier simplices sharing a full d-face.
    std::vector<int> hosts;
    for (std::size_t j = 0; j < i; ++j)
      if (intersection_size(s, simplices[j]) == d + 1) hosts.push_back(static_cast<int>(j));
    if (hosts.empty()) {
      fail(Errc::attachment_not_found,
           "simplex " + std::to_string(i + 1) + " " + describe(s) +
               " shares no " + std::to_string(d) + "-face with the ball built so far");
    }

    int fresh = 0;
    Vertex fresh_v = -1;
    for (Vertex v : s)
      if (!seen.count(v)) ++fresh, fresh_v = v;
    if (fresh != 1) {
      fail(Errc::no_new_vertex, "simplex " + std::to_string(i + 1) + " introduces " +
                                    std::to_string(fresh) + " new vertices, expected 1");
    }
    // With exactly one new vertex the shared face is determined.
    Simplex eta = s.without(fresh_v);
    if (hosts.size() > 1) {
      fail(Errc::face_not_free, "attachment face " + describe(eta) + " of simplex " +
                                    std::to_string(i + 1) + " lies in " +
                                    std::to_string(hosts.size()) + " earlier simplices");
    }

    ball.parent[i] = hosts[0];
    ball.attach_face[i] = eta;
    ball.simplices.push_back(s);
    seen.insert(fresh_v);
  }
  return ball;
}

StackedSphere boundary(const StackedBall& ball) {
  std::map<Simplex, int> multiplicity;
  for (const auto& s : ball.simplices)
    for (Vertex v : s) ++multiplicity[s.without(v)];

  StackedSphere sphere;
  sphere.d = ball.d;
  for (const auto& [face, count] : multiplicity)
    if (count == 1) sphere.facets.push_back(face);
  // std::map iterates lexicographically already
  return sphere;
}

DualTree dual_graph(const StackedBall& ball) {
  DualTree t;
  t.nodes = ball.size();
  for (int i = 0; i < ball.size(); ++i)
    for (int j = i + 1; j < ball.size(); ++j)
      if (intersection_size(ball.simplices[static_cast<std::size_t>(i)],
                            ball.simplices[static_cast<std::size_t>(j)]) == ball.d + 1)
        t.edges.emplace_back(i, j);
  return t;
}

bool is_linear(const StackedBall& ball) {
  DualTree t = dual_graph(ball);
  for (int i = 0; i < t.nodes; ++i)
    if (t.degree(i) > 2) return false;
  return true;
}

std::vector<int> path_order(const StackedBall& ball) {
  DualTree t = dual_graph(ball);
  auto adj = t.adjacency();
  if (t.nodes == 1) return {0};

  int start = -1;
  for (int i = 0; i < t.nodes; ++i) {
    if (adj[static_cast<std::size_t>(i)].size() > 2) fail(Errc::not_linear, "dual tree is not a path");
    if (adj[static_cast<std::size_t>(i)].size() == 1 && start < 0) start = i;
  }
  if (start < 0) fail(Errc::not_linear, "dual graph is not a path");

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(t.nodes));
  int prev = -1, cur = start;
  while (true) {
    order.push_back(cur);
    int next = -1;
    for (int nb : adj[static_cast<std::size_t>(cur)])
      if (nb != prev) next = nb;
    if (next < 0) break;
    prev = cur;
    cur = next;
  }
  if (static_cast<int>(order.size()) != t.nodes) fail(Errc::not_linear, "dual graph is disconnected");
  return order;
}

StackedBall reroot(const StackedBall& ball, int root) {
  if (root < 0 || root >= ball.size()) fail(Errc::bad_argument, "root index out of range");
  auto adj = dual_graph(ball).adjacency();

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(ball.size()));
  std::vector<bool> visited(static_cast<std::size_t>(ball.size()), false);
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    if (visited[static_cast<std::size_t>(cur)]) continue;
    visited[static_cast<std::size_t>(cur)] = true;
    order.push_back(cur);
    // push descending so the smallest neighbor is explored first
    const auto& nbs = adj[static_cast<std::size_t>(cur)];
    for (auto it = nbs.rbegin(); it != nbs.rend(); ++it)
      if (!visited[static_cast<std::size_t>(*it)]) stack.push_back(*it);
  }

  std::vector<Simplex> seq;
  seq.reserve(order.size());
  for (int i : order) seq.push_back(ball.simplices[static_cast<std::size_t>(i)]);
  return make_ball(ball.d, seq);
}

StackedBall to_path_order(const StackedBall& ball) {
  std::vector<int> order = path_order(ball);
  std::vector<Simplex> seq;
  seq.reserve(order.size());
  for (int i : order) seq.push_back(ball.simplices[static_cast<std::size_t>(i)]);
  return make_ball(ball.d, seq);
}

FacetHypergraph to_hypergraph(const StackedSphere& sphere) {
  FacetHypergraph h;
  h.vertices = sphere.vertices();
  h.edges = sphere.active();
  return h;
}

StackedSphere remove_facets(const StackedSphere& sphere, const std::vector<Simplex>& facets) {
  StackedSphere out = sphere;
  for (const auto& f : facets) {
    if (!std::binary_search(out.facets.begin(), out.facets.end(), f))
      fail(Errc::facet_not_present, "facet " + describe(f) + " is not a facet of the sphere");
    auto pos = std::lower_bound(out.removed.begin(), out.removed.end(), f);
    if (pos == out.removed.end() || *pos != f) out.removed.insert(pos, f);
  }
  return out;
}

BlockLabeling canonical_block_labeling(const StackedBall& ball, int start, int length,
                                       const Simplex& pinned) {
  std::vector<int> order = path_order(ball);
  if (length < 1 || start < 0 || start + length > ball.size())
    fail(Errc::not_consecutive, "block [" + std::to_string(start) + ", " +
                                    std::to_string(start + length) +
                                    ") is out of range for a ball of size " +
                                    std::to_string(ball.size()));
  if (pinned.size() > ball.d + 1)
    fail(Errc::pinned_too_large, "pinned set has " + std::to_string(pinned.size()) +
                                     " vertices, at most " + std::to_string(ball.d + 1) +
                                     " allowed");

  std::vector<Simplex> block;
  block.reserve(static_cast<std::size_t>(length));
  for (int k = 0; k < length; ++k)
    block.push_back(ball.simplices[static_cast<std::size_t>(order[static_cast<std::size_t>(start + k)])]);

  const Simplex& first = block.front();
  if (!first.contains_all(pinned))
    fail(Errc::bad_argument, "pinned set is not contained in the block's first simplex");

  std::map<Vertex, Vertex> to_canonical;
  Vertex next = 1;
  for (Vertex v : pinned) to_canonical[v] = next++;
  for (Vertex v : first)
    if (!to_canonical.count(v)) to_canonical[v] = next++;
  for (int k = 1; k < length; ++k)
    for (Vertex v : block[static_cast<std::size_t>(k)])
      if (!to_canonical.count(v)) to_canonical[v] = next++;  // the single new vertex, d+1+(k+1)

  std::vector<Simplex> relabeled;
  relabeled.reserve(block.size());
  for (const auto& s : block) {
    std::vector<Vertex> vs;
    vs.reserve(static_cast<std::size_t>(s.size()));
    for (Vertex v : s) vs.push_back(to_canonical.at(v));
    relabeled.emplace_back(std::move(vs));
  }

  BlockLabeling out;
  out.block = make_ball(ball.d, relabeled);
  out.to_canonical = std::move(to_canonical);
  return out;
}

StackedBall ball_from_sphere(const StackedSphere& sphere) {
  const int d = sphere.d;
  std::set<Simplex> work(sphere.facets.begin(), sphere.facets.end());
  if (work.size() != sphere.facets.size())
    fail(Errc::not_stacked, "duplicate facets");

  std::vector<Simplex> peeled;
  while (static_cast<int>(work.size()) > d + 2) {
    std::map<Vertex, std::vector<Simplex>> at;
    for (const auto& f : work)
      for (Vertex v : f) at[v].push_back(f);

    bool found = false;
    for (const auto& [v, fs] : at) {
      if (static_cast<int>(fs.size()) != d + 1) continue;
      Simplex u;
      for (const Simplex& f : fs) u = unite(u, f);
      if (u.size() != d + 2) continue;
      Simplex base = u.without(v);
      if (work.count(base)) continue;  // would collapse onto an existing facet
      for (const Simplex& f : fs) work.erase(f);
      work.insert(base);
      peeled.push_back(u);
      found = true;
      break;
    }
    if (!found) fail(Errc::not_stacked, "no peelable vertex; sphere is not stacked");
  }

  // What remains must be the boundary of a single top simplex.
  Simplex u;
  for (const auto& f : work) u = unite(u, f);
  if (u.size() != d + 2) fail(Errc::not_stacked, "residual complex is not a simplex boundary");
  for (Vertex v : u)
    if (!work.count(u.without(v)))
      fail(Errc::not_stacked, "residual complex is not a simplex boundary");

  std::vector<Simplex> seq{u};
  for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) seq.push_back(*it);
  StackedBall ball = make_ball(d, seq);  // validates the recovered order
  return ball;
}

}  // namespace stx
