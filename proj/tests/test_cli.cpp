#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "stx/cli.hpp"
#include "stx/io.hpp"

using namespace stx;

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
  bool has(const std::string& needle) const { return out.find(needle) != std::string::npos; }
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = run_cli(std::move(args), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("stx-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

struct EnvGuard {
  std::string name;
  EnvGuard(const std::string& n, const std::string& value) : name(n) {
    ::setenv(name.c_str(), value.c_str(), 1);
  }
  ~EnvGuard() { ::unsetenv(name.c_str()); }
};

}  // namespace

TEST_CASE("gen writes instances and reports the claim") {
  TempDir tmp;
  std::string path = tmp.file("lin.txt");
  RunResult r = run({"gen", "--family", "linear-lb", "--d", "2", "--k", "1", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.has("cmd=gen family=linear-lb"));
  CHECK(r.has("n=14 facets=24 removed=2 claimed_tau_lower=6"));
  CHECK(fs::exists(path));
  CHECK(fs::exists(path + ".json"));

  RunResult rnd = run({"gen", "--family", "random-linear", "--m", "5", "--out", tmp.file("r.txt")});
  CHECK(rnd.code == 2);
  CHECK(rnd.err.find("--seed") != std::string::npos);

  RunResult seeded = run({"gen", "--family", "random-linear", "--m", "5", "--seed", "9",
                          "--out", tmp.file("r.txt")});
  CHECK(seeded.code == 0);
  CHECK(seeded.has("seed=9"));

  CHECK(run({"gen", "--family", "moebius", "--out", tmp.file("x.txt")}).code == 2);
}

TEST_CASE("tau modes on a tetrahedron") {
  TempDir tmp;
  std::string path = tmp.file("tetra.txt");
  REQUIRE(run({"gen", "--family", "path", "--d", "2", "--m", "1", "--out", path}).code == 0);

  RunResult exact = run({"tau", path, "--exact"});
  CHECK(exact.code == 0);
  CHECK(exact.has("tau=2"));
  CHECK(exact.has("optimal=1"));
  CHECK(exact.has("cert=1,2"));

  RunResult greedy = run({"tau", path, "--greedy"});
  CHECK(greedy.code == 0);
  CHECK(greedy.has("mode=greedy"));
  CHECK(greedy.has("tau_upper=2"));

  CHECK(run({"tau", path, "--brute", "3"}).has("tau=2"));
  RunResult low = run({"tau", path, "--brute", "1"});
  CHECK(low.code == 0);
  CHECK(low.has("tau_gt=1"));

  RunResult cut = run({"tau", path, "--remove", "1,2,3"});
  CHECK(cut.code == 0);
  CHECK(cut.has("tau=1"));

  CHECK(run({"tau", path, "--greedy", "--exact"}).code == 2);
  CHECK(run({"tau", tmp.file("nope.txt")}).code == 2);
  CHECK(run({"tau", path, "--remove", "1,2"}).code == 2);  // not a facet
}

TEST_CASE("tau on the 13-vertex branched instance") {
  TempDir tmp;
  std::string path = tmp.file("glb2.txt");
  REQUIRE(run({"gen", "--family", "general-lb-2", "--k", "1", "--out", path}).code == 0);
  RunResult r = run({"tau", path});
  CHECK(r.code == 0);
  CHECK(r.has("tau=6"));
}

TEST_CASE("cover37 rebuilds a stacking from a facet list") {
  TempDir tmp;
  std::string path = tmp.file("p7.txt");
  REQUIRE(run({"gen", "--family", "path", "--m", "4", "--out", path}).code == 0);
  RunResult r = run({"cover37", path});
  CHECK(r.code == 0);
  CHECK(r.has("cmd=cover37 n=7 bound=3"));
  CHECK(r.has("verified=1"));
}

TEST_CASE("verify --instance certifies and rejects") {
  TempDir tmp;
  std::string good = tmp.file("good.txt");
  REQUIRE(run({"gen", "--family", "linear-lb", "--k", "1", "--out", good}).code == 0);
  RunResult ok = run({"verify", "--instance", good});
  CHECK(ok.code == 0);
  CHECK(ok.has("claim=structure status=CERTIFIED"));
  CHECK(ok.has("claim=tau-bound status=CERTIFIED"));
  CHECK(ok.has("violated=0 skipped=0"));

  Instance lie = read_instance(good);
  lie.meta.claimed_tau_lower = 99;
  std::string liar = tmp.file("liar.txt");
  write_instance(liar, lie);
  RunResult bad = run({"verify", "--instance", liar});
  CHECK(bad.code == 3);
  CHECK(bad.has("claim=tau-bound status=VIOLATED"));

  Instance broken;
  broken.kind = Instance::Kind::sphere;
  broken.d = 2;
  broken.simplices = {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}};
  std::string torn = tmp.file("torn.txt");
  write_instance(torn, broken);
  RunResult hole = run({"verify", "--instance", torn});
  CHECK(hole.code == 3);
  CHECK(hole.has("claim=structure status=VIOLATED"));
}

TEST_CASE("enumerate writes the labeled corpus") {
  TempDir tmp;
  std::string dir = tmp.file("corpus");
  RunResult r = run({"enumerate", "--d", "2", "--m", "2", "--out", dir});
  CHECK(r.code == 0);
  CHECK(r.has("count=4"));
  int files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  CHECK(files == 4);
  CHECK(fs::exists(fs::path(dir) / "ball-d2-m2-000000.txt"));
}

TEST_CASE("bench emits one csv row per size") {
  RunResult r = run({"bench", "--sizes", "14"});
  CHECK(r.code == 0);
  CHECK(r.has("n,family,facets,tau,exact,solver_ms,cover_size,cover_ms,bound"));
  CHECK(r.has("14,linear-lb,24,6,1,"));
}

TEST_CASE("argument errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--suite", "bogus"}).code == 2);

  RunResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.has("cover37"));
}

TEST_CASE("node cap env var caps the search") {
  TempDir tmp;
  std::string path = tmp.file("glb.txt");
  REQUIRE(run({"gen", "--family", "general-lb", "--d", "2", "--k", "1", "--out", path}).code == 0);

  {
    EnvGuard cap("STX_NODE_CAP", "1");
    RunResult r = run({"tau", path, "--exact"});
    CHECK(r.code == 4);
    CHECK(r.has("optimal=0"));
    CHECK(r.has("tau_upper="));
  }
  {
    EnvGuard cap("STX_NODE_CAP", "many");
    CHECK(run({"tau", path, "--exact"}).code == 2);
  }
  RunResult clean = run({"tau", path, "--exact"});
  CHECK(clean.code == 0);
  CHECK(clean.has("tau=7"));
}
