#include "stx/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stx/constructions.hpp"
#include "stx/cover37.hpp"
#include "stx/error.hpp"
#include "stx/io.hpp"
#include "stx/solver.hpp"
#include "stx/verify.hpp"

namespace stx {

namespace {

std::optional<std::uint64_t> env_node_cap() {
  const char* s = std::getenv("STX_NODE_CAP");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  std::uint64_t v = std::strtoull(s, &end, 10);
  if (end == s || *end) fail(Errc::parse_error, "STX_NODE_CAP is not a number");
  return v;
}

std::string quote_value(const std::string& v) {
  if (!v.empty() && v.find(' ') == std::string::npos && v.find('"') == std::string::npos)
    return v;
  std::string q = "\"";
  for (char c : v) {
    if (c == '"') q += '\\';
    q += c;
  }
  return q + "\"";
}

// One machine-readable stdout line: space-separated key=value pairs.
class KVLine {
 public:
  template <class T>
  KVLine& kv(const std::string& key, const T& value) {
    std::ostringstream vs;
    vs << value;
    if (!text_.empty()) text_ += ' ';
    text_ += key + '=' + quote_value(vs.str());
    return *this;
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

std::string join(const std::vector<Vertex>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(vs[i]);
  }
  return s;
}

std::vector<Vertex> parse_csv_vertices(const std::string& csv) {
  std::vector<Vertex> vals;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      vals.push_back(v);
    } catch (const std::exception&) {
      fail(Errc::parse_error, "bad vertex list '" + csv + "'");
    }
  }
  if (vals.empty()) fail(Errc::parse_error, "empty vertex list");
  return vals;
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << s << 's';
  return os.str();
}

struct GenArgs {
  std::string family;
  std::string out;
  int d = 2;
  int k = 1;
  int m = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  if (a.d < 2) fail(Errc::bad_argument, "need d >= 2");
  Instance inst;
  if (a.family == "path" || a.family == "random-linear") {
    if (a.m < 1) fail(Errc::bad_argument, "family '" + a.family + "' needs --m >= 1");
    StackedBall ball;
    InstanceMeta meta;
    meta.family = a.family;
    meta.params["d"] = a.d;
    meta.params["m"] = a.m;
    if (a.family == "path") {
      ball = path_ball(a.d, a.m);
    } else {
      if (!a.seed_given) fail(Errc::bad_argument, "random families need an explicit --seed");
      meta.params["seed"] = static_cast<std::int64_t>(a.seed);
      ball = random_linear_ball(a.d, a.m, a.seed);
    }
    meta.claimed_n = ball.vertex_count();
    inst.kind = Instance::Kind::sphere;
    inst.d = a.d;
    inst.simplices = boundary(ball).facets;
    inst.meta = std::move(meta);
  } else if (a.family == "linear-lb" || a.family == "general-lb" || a.family == "general-lb-2") {
    if (a.k < 1) fail(Errc::bad_argument, "need --k >= 1");
    FamilyInstance fam = a.family == "linear-lb"     ? linear_lower_bound(a.d, a.k)
                         : a.family == "general-lb"  ? general_lower_bound(a.d, a.k)
                                                     : general_lower_bound_2(a.k);
    inst = instance_from_family(fam);
  } else {
    fail(Errc::bad_argument, "unknown family '" + a.family + "'");
  }

  write_instance(a.out, inst);

  std::vector<Vertex> all;
  for (const auto& s : inst.simplices) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  KVLine line;
  line.kv("cmd", "gen").kv("family", a.family).kv("kind", "sphere").kv("d", inst.d);
  for (const auto& [key, value] : inst.meta.params)
    if (key != "d") line.kv(key, value);
  line.kv("n", all.size()).kv("facets", inst.simplices.size()).kv("removed", inst.removed.size());
  if (inst.meta.claimed_tau_lower) line.kv("claimed_tau_lower", *inst.meta.claimed_tau_lower);
  line.kv("out", a.out);
  out << line.str() << '\n';
  out << "wrote " << a.out << " and " << a.out << ".json\n";
  return 0;
}

struct TauArgs {
  std::string file;
  bool exact = false;
  bool greedy = false;
  int brute = -1;
  std::vector<std::string> remove;
  int threads = 1;
};

int cmd_tau(const TauArgs& a, std::ostream& out) {
  Instance inst = read_instance(a.file);
  StackedSphere sphere = to_sphere(inst);
  if (!a.remove.empty()) {
    std::vector<Simplex> facets;
    for (const std::string& csv : a.remove) facets.emplace_back(parse_csv_vertices(csv));
    sphere = remove_facets(sphere, facets);
  }
  FacetHypergraph h = to_hypergraph(sphere);

  if (a.greedy) {
    TransversalCertificate cert = greedy_transversal(h);
    KVLine line;
    line.kv("cmd", "tau").kv("mode", "greedy").kv("n", h.vertices.size())
        .kv("edges", h.edges.size()).kv("tau_upper", cert.size()).kv("cert", join(cert.vertices));
    out << line.str() << '\n';
    out << "greedy transversal of size " << cert.size() << " on " << h.vertices.size()
        << " vertices / " << h.edges.size() << " edges\n";
    return 0;
  }

  if (a.brute >= 0) {
    std::optional<int> tau = brute_force_tau(h, a.brute);
    KVLine line;
    line.kv("cmd", "tau").kv("mode", "brute").kv("n", h.vertices.size())
        .kv("edges", h.edges.size());
    if (tau)
      line.kv("tau", *tau);
    else
      line.kv("tau_gt", a.brute);
    out << line.str() << '\n';
    if (tau)
      out << "brute force: tau = " << *tau << '\n';
    else
      out << "brute force: no transversal of size <= " << a.brute << '\n';
    return 0;
  }

  SolveOptions so;
  so.node_cap = env_node_cap();
  so.threads = a.threads;
  SolveResult res = min_transversal(h, so);
  KVLine line;
  line.kv("cmd", "tau").kv("mode", "exact").kv("n", h.vertices.size())
      .kv("edges", h.edges.size());
  if (res.certificate.optimal)
    line.kv("tau", res.certificate.size());
  else
    line.kv("tau_upper", res.certificate.size());
  line.kv("optimal", res.certificate.optimal ? 1 : 0)
      .kv("nodes", res.stats.nodes_explored)
      .kv("reductions", res.stats.reductions_applied)
      .kv("time", res.stats.wall_time)
      .kv("cert", join(res.certificate.vertices));
  out << line.str() << '\n';

  out << "instance: " << h.vertices.size() << " vertices, " << h.edges.size() << " edges\n";
  if (res.certificate.optimal) {
    out << "tau = " << res.certificate.size() << " (exact)\n";
  } else {
    out << "tau <= " << res.certificate.size() << " (node cap hit, not certified)\n";
  }
  out << "certificate: " << join(res.certificate.vertices) << '\n';
  out << "search: " << res.stats.nodes_explored << " nodes, " << res.stats.reductions_applied
      << " reductions, " << fmt_seconds(res.stats.wall_time) << '\n';
  return res.certificate.optimal ? 0 : 4;
}

StackedBall ball_of_instance(const Instance& inst) {
  if (inst.kind == Instance::Kind::ball) return to_ball(inst);
  StackedSphere full;
  full.d = inst.d;
  full.facets = inst.simplices;
  std::sort(full.facets.begin(), full.facets.end());
  return ball_from_sphere(full);
}

int cmd_cover37(const std::string& file, std::ostream& out) {
  Instance inst = read_instance(file);
  StackedBall ball = ball_of_instance(inst);
  TransversalPair pair = transversal_3n7(ball);
  int n = ball.vertex_count();
  int bound = bound_3n7(n);

  FacetHypergraph h = to_hypergraph(boundary(ball));
  bool verified = is_transversal(h, pair.t1) && is_transversal(h, pair.t2) &&
                  static_cast<int>(pair.t1.size()) <= bound &&
                  static_cast<int>(pair.t2.size()) <= bound && pair.last_facet_hits >= 3;

  KVLine line;
  line.kv("cmd", "cover37").kv("n", n).kv("bound", bound).kv("t1_size", pair.t1.size())
      .kv("t2_size", pair.t2.size()).kv("last_hits", pair.last_facet_hits)
      .kv("verified", verified ? 1 : 0).kv("t1", join(pair.t1)).kv("t2", join(pair.t2));
  out << line.str() << '\n';

  out << "n = " << n << ", size bound ceil(3n/7) = " << bound << '\n';
  out << "T1 (" << pair.t1.size() << "): " << join(pair.t1) << '\n';
  out << "T2 (" << pair.t2.size() << "): " << join(pair.t2) << '\n';
  out << "last simplex hits: " << pair.last_facet_hits << ", verified: "
      << (verified ? "yes" : "NO") << '\n';
  return verified ? 0 : 3;
}

void print_claim_rows(const std::vector<ClaimReport>& rows, std::ostream& out) {
  for (const ClaimReport& r : rows) {
    KVLine line;
    line.kv("claim", r.claim).kv("status", claim_status_name(r.status)).kv("time", r.seconds)
        .kv("instance", r.instance).kv("claimed", r.claimed).kv("computed", r.computed);
    out << line.str() << '\n';
  }
}

void print_claim_table(const std::vector<ClaimReport>& rows, std::ostream& out) {
  out << '\n';
  for (const ClaimReport& r : rows) {
    out << std::left << std::setw(14) << r.claim << std::setw(19) << claim_status_name(r.status)
        << fmt_seconds(r.seconds) << '\n';
    out << "    " << r.instance << '\n';
    out << "    claimed:  " << r.claimed << '\n';
    out << "    computed: " << r.computed << '\n';
  }
}

struct VerifyArgs {
  std::string suite = "paper";
  std::string instance;
  int threads = 1;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyOptions vopt;
  vopt.node_cap = env_node_cap();
  vopt.threads = a.threads;

  std::vector<ClaimReport> rows;
  if (!a.instance.empty()) {
    rows = verify_instance_claims(read_instance(a.instance), vopt);
    print_claim_rows(rows, out);
  } else {
    for (int number : suite_criteria(a.suite)) {
      CriterionReport rep = run_criterion(number, vopt);
      print_claim_rows(rep.rows, out);
      rows.insert(rows.end(), rep.rows.begin(), rep.rows.end());
    }
  }

  auto count = [&](ClaimStatus s) {
    return std::count_if(rows.begin(), rows.end(),
                         [&](const ClaimReport& r) { return r.status == s; });
  };
  long violated = count(ClaimStatus::violated);
  long skipped = count(ClaimStatus::skipped);
  KVLine footer;
  footer.kv("cmd", "verify");
  if (!a.instance.empty())
    footer.kv("instance", a.instance);
  else
    footer.kv("suite", a.suite);
  footer.kv("rows", rows.size()).kv("violated", violated).kv("skipped", skipped);
  out << footer.str() << '\n';
  print_claim_table(rows, out);

  if (violated > 0) return 3;
  if (!a.instance.empty() && skipped > 0) return 4;
  return 0;
}

struct EnumArgs {
  int d = 2;
  int m = 1;
  std::string out_dir;
};

int cmd_enumerate(const EnumArgs& a, std::ostream& out) {
  if (a.d < 2 || a.m < 1) fail(Errc::bad_argument, "need d >= 2 and m >= 1");
  std::filesystem::create_directories(a.out_dir);
  int index = 0;
  for_each_linear_ball(a.d, a.m, [&](const StackedBall& ball) {
    std::ostringstream name;
    name << "ball-d" << a.d << "-m" << a.m << '-' << std::setw(6) << std::setfill('0') << index
         << ".txt";
    write_instance((std::filesystem::path(a.out_dir) / name.str()).string(),
                   instance_from_ball(ball), /*with_sidecar=*/false);
    ++index;
  });
  KVLine line;
  line.kv("cmd", "enumerate").kv("d", a.d).kv("m", a.m).kv("count", index).kv("dir", a.out_dir);
  out << line.str() << '\n';
  out << "wrote " << index << " construction files to " << a.out_dir << '\n';
  return 0;
}

struct BenchArgs {
  std::string sizes = "14,21,28";
  int threads = 1;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  SolveOptions so;
  so.node_cap = env_node_cap();
  so.threads = a.threads;

  out << "n,family,facets,tau,exact,solver_ms,cover_size,cover_ms,bound\n";
  for (Vertex n : parse_csv_vertices(a.sizes)) {
    if (n < 4) fail(Errc::bad_argument, "sizes must be at least 4");
    StackedBall ball;
    std::string family;
    if (n % 14 == 0) {
      ball = linear_lower_bound(2, n / 14).ball;
      family = "linear-lb";
    } else {
      ball = path_ball(2, n - 3);
      family = "path";
    }
    StackedSphere full = boundary(ball);

    SolveResult res = min_transversal(to_hypergraph(full), so);

    auto t0 = std::chrono::steady_clock::now();
    TransversalPair pair = transversal_3n7(ball);
    double cover_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    out << n << ',' << family << ',' << full.facets.size() << ',' << res.certificate.size()
        << ',' << (res.certificate.optimal ? 1 : 0) << ',' << std::fixed << std::setprecision(2)
        << res.stats.wall_time * 1000.0 << ',' << pair.t1.size() << ',' << cover_s * 1000.0
        << ',' << bound_3n7(n) << '\n';
    out << std::defaultfloat << std::setprecision(6);
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"construct, solve, and certify stacked-sphere transversal instances"};
  app.name("stx");
  app.require_subcommand(1);

  GenArgs ga;
  CLI::App* gen = app.add_subcommand("gen", "generate a family instance file");
  gen->add_option("--family", ga.family,
                  "path | linear-lb | general-lb | general-lb-2 | random-linear")
      ->required();
  gen->add_option("--d", ga.d, "sphere dimension (default 2)");
  gen->add_option("--k", ga.k, "chained copies for the lower-bound families");
  gen->add_option("--m", ga.m, "top simplices for path / random-linear");
  CLI::Option* seed_opt = gen->add_option("--seed", ga.seed, "rng seed, required when random");
  gen->add_option("--out", ga.out, "output file path")->required();

  TauArgs ta;
  CLI::App* tau = app.add_subcommand("tau", "minimum facet transversal of an instance");
  tau->add_option("file", ta.file, "instance file")->required();
  CLI::Option* exact_opt = tau->add_flag("--exact", ta.exact, "exact search (default)");
  CLI::Option* greedy_opt = tau->add_flag("--greedy", ta.greedy, "greedy upper bound only");
  CLI::Option* brute_opt =
      tau->add_option("--brute", ta.brute, "brute-force oracle up to this size");
  tau->add_option("--remove", ta.remove, "facet to remove, comma separated vertex ids")
      ->take_all();
  tau->add_option("--threads", ta.threads, "parallel search width");
  greedy_opt->excludes(brute_opt)->excludes(exact_opt);
  brute_opt->excludes(exact_opt);

  std::string cover_file;
  CLI::App* cover = app.add_subcommand("cover37", "two bounded transversals of a linear instance");
  cover->add_option("file", cover_file, "instance file")->required();

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "certify recorded claims");
  verify->add_option("--suite", va.suite, "paper | oracle | all (default paper)");
  verify->add_option("--instance", va.instance, "check one instance file instead");
  verify->add_option("--threads", va.threads, "parallel search width");

  EnumArgs ea;
  CLI::App* enumerate = app.add_subcommand("enumerate", "write the labeled linear corpus");
  enumerate->add_option("--d", ea.d, "sphere dimension")->required();
  enumerate->add_option("--m", ea.m, "top simplices per ball")->required();
  enumerate->add_option("--out", ea.out_dir, "output directory")->required();

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "time the solver and the cover routine");
  bench->add_option("--sizes", ba.sizes, "comma separated vertex counts (default 14,21,28)");
  bench->add_option("--threads", ba.threads, "parallel search width");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  ga.seed_given = seed_opt->count() > 0;

  try {
    if (gen->parsed()) return cmd_gen(ga, out);
    if (tau->parsed()) return cmd_tau(ta, out);
    if (cover->parsed()) return cmd_cover37(cover_file, out);
    if (verify->parsed()) return cmd_verify(va, out);
    if (enumerate->parsed()) return cmd_enumerate(ea, out);
    if (bench->parsed()) return cmd_bench(ba, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::internal_contradiction ? 3 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace stx
