#include "stx/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stx/error.hpp"

namespace stx {

namespace {

using nlohmann::json;

std::vector<Vertex> all_labels(const Instance& inst) {
  std::set<Vertex> vs;
  for (const auto& s : inst.simplices) vs.insert(s.begin(), s.end());
  for (const auto& s : inst.removed) vs.insert(s.begin(), s.end());
  return {vs.begin(), vs.end()};
}

Simplex apply_map(const Simplex& s, const std::map<Vertex, Vertex>& m) {
  std::vector<Vertex> vs;
  vs.reserve(static_cast<std::size_t>(s.size()));
  for (Vertex v : s) vs.push_back(m.at(v));
  return Simplex(std::move(vs));
}

}  // namespace

Instance instance_from_ball(const StackedBall& ball, InstanceMeta meta) {
  Instance inst;
  inst.kind = Instance::Kind::ball;
  inst.d = ball.d;
  inst.simplices = ball.simplices;
  inst.meta = std::move(meta);
  return inst;
}

Instance instance_from_family(const FamilyInstance& fam) {
  Instance inst;
  inst.kind = Instance::Kind::sphere;
  inst.d = fam.d;
  inst.simplices = fam.sphere.facets;
  inst.removed = fam.sphere.removed;
  inst.meta.family = fam.family;
  inst.meta.params["d"] = fam.d;
  inst.meta.params["k"] = fam.k;
  inst.meta.claimed_tau_lower = fam.claimed_tau_lower;
  inst.meta.claimed_n = fam.claimed_n;
  return inst;
}

StackedBall to_ball(const Instance& inst) {
  if (inst.kind != Instance::Kind::ball)
    fail(Errc::wrong_dimension, "instance does not hold a construction sequence");
  return make_ball(inst.d, inst.simplices);
}

StackedSphere to_sphere(const Instance& inst) {
  if (inst.kind == Instance::Kind::ball)
    return remove_facets(boundary(make_ball(inst.d, inst.simplices)), inst.removed);
  StackedSphere s;
  s.d = inst.d;
  s.facets = inst.simplices;
  std::sort(s.facets.begin(), s.facets.end());
  return remove_facets(s, inst.removed);
}

void write_instance(const std::string& path, const Instance& inst, bool with_sidecar) {
  std::vector<Vertex> labels = all_labels(inst);
  std::map<Vertex, Vertex> to_canonical;
  for (std::size_t i = 0; i < labels.size(); ++i)
    to_canonical[labels[i]] = static_cast<Vertex>(i);

  std::ofstream out(path);
  if (!out) fail(Errc::parse_error, "cannot open " + path + " for writing");

  if (inst.kind == Instance::Kind::ball)
    out << "ball " << inst.d << ' ' << inst.simplices.size() << '\n';
  else
    out << "sphere " << inst.d << ' ' << labels.size() << ' ' << inst.simplices.size() << '\n';

  auto emit = [&](const Simplex& s) {
    Simplex c = apply_map(s, to_canonical);
    for (int i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << '\n';
  };
  for (const auto& s : inst.simplices) emit(s);
  if (!inst.removed.empty()) {
    out << "removed " << inst.removed.size() << '\n';
    for (const auto& s : inst.removed) emit(s);
  }
  out.close();
  if (!with_sidecar) return;

  json meta;
  meta["kind"] = inst.kind == Instance::Kind::ball ? "ball" : "sphere";
  meta["dim"] = inst.d;
  meta["labels"] = labels;
  if (!inst.meta.family.empty()) meta["family"] = inst.meta.family;
  if (!inst.meta.params.empty()) meta["params"] = inst.meta.params;
  if (inst.meta.claimed_tau_lower) meta["claimed_tau_lower"] = *inst.meta.claimed_tau_lower;
  if (inst.meta.claimed_n) meta["claimed_n"] = *inst.meta.claimed_n;

  std::ofstream mout(path + ".json");
  if (!mout) fail(Errc::parse_error, "cannot open " + path + ".json for writing");
  mout << meta.dump(2) << '\n';
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open " + path);

  Instance inst;
  std::string line;
  if (!std::getline(in, line)) fail(Errc::parse_error, "empty instance file");
  {
    std::istringstream hs(line);
    std::string kind;
    hs >> kind;
    int simplex_count = 0;
    if (kind == "ball") {
      inst.kind = Instance::Kind::ball;
      if (!(hs >> inst.d >> simplex_count)) fail(Errc::parse_error, "bad ball header");
    } else if (kind == "sphere") {
      inst.kind = Instance::Kind::sphere;
      int n = 0;
      if (!(hs >> inst.d >> n >> simplex_count)) fail(Errc::parse_error, "bad sphere header");
    } else {
      fail(Errc::parse_error, "unknown instance kind '" + kind + "'");
    }

    auto read_simplex_lines = [&](int count, std::vector<Simplex>& dst) {
      for (int i = 0; i < count; ++i) {
        if (!std::getline(in, line)) fail(Errc::parse_error, "unexpected end of file");
        std::istringstream ls(line);
        std::vector<Vertex> vs;
        Vertex v;
        while (ls >> v) vs.push_back(v);
        if (vs.empty()) fail(Errc::parse_error, "blank simplex line");
        if (!std::is_sorted(vs.begin(), vs.end()))
          fail(Errc::parse_error, "simplex line not ascending: '" + line + "'");
        dst.emplace_back(std::move(vs));
      }
    };
    read_simplex_lines(simplex_count, inst.simplices);
    if (std::getline(in, line) && !line.empty()) {
      std::istringstream rs(line);
      std::string tag;
      int removed_count = 0;
      rs >> tag >> removed_count;
      if (tag != "removed") fail(Errc::parse_error, "expected 'removed' section, got '" + line + "'");
      read_simplex_lines(removed_count, inst.removed);
    }
  }

  std::ifstream min(path + ".json");
  if (min) {
    json meta = json::parse(min, nullptr, false);
    if (meta.is_discarded()) fail(Errc::parse_error, "bad JSON sidecar for " + path);
    if (meta.contains("labels")) {
      std::vector<Vertex> labels = meta["labels"].get<std::vector<Vertex>>();
      std::map<Vertex, Vertex> from_canonical;
      for (std::size_t i = 0; i < labels.size(); ++i)
        from_canonical[static_cast<Vertex>(i)] = labels[i];
      auto relabel = [&](std::vector<Simplex>& ss) {
        for (auto& s : ss) {
          for (Vertex v : s)
            if (!from_canonical.count(v))
              fail(Errc::parse_error, "vertex id " + std::to_string(v) + " outside label map");
          s = apply_map(s, from_canonical);
        }
      };
      relabel(inst.simplices);
      relabel(inst.removed);
    }
    if (meta.contains("family")) inst.meta.family = meta["family"].get<std::string>();
    if (meta.contains("params"))
      inst.meta.params = meta["params"].get<std::map<std::string, std::int64_t>>();
    if (meta.contains("claimed_tau_lower"))
      inst.meta.claimed_tau_lower = meta["claimed_tau_lower"].get<int>();
    if (meta.contains("claimed_n")) inst.meta.claimed_n = meta["claimed_n"].get<int>();
  }
  return inst;
}

}  // namespace stx
