#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "stx/constructions.hpp"
#include "stx/error.hpp"
#include "stx/io.hpp"

using namespace stx;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("stx-io-test-" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

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

}  // namespace

TEST_CASE("ball round trip keeps labels and metadata") {
  TempDir tmp;
  StackedBall ball = make_ball(2, {{3, 5, 8, 13}, {5, 8, 13, 21}});
  InstanceMeta meta;
  meta.family = "demo";
  meta.params["seed"] = 42;
  meta.claimed_n = 5;
  std::string path = tmp.file("ball.txt");
  write_instance(path, instance_from_ball(ball, meta));

  Instance back = read_instance(path);
  CHECK(back.kind == Instance::Kind::ball);
  CHECK(back.d == 2);
  CHECK(back.simplices == ball.simplices);
  CHECK(back.meta.family == "demo");
  CHECK(back.meta.params.at("seed") == 42);
  CHECK(back.meta.claimed_n == 5);
  CHECK_FALSE(back.meta.claimed_tau_lower.has_value());
  CHECK(to_ball(back).simplices == ball.simplices);
}

TEST_CASE("sphere round trip keeps removed facets and claims") {
  TempDir tmp;
  FamilyInstance fam = linear_lower_bound(2, 1);
  std::string path = tmp.file("sphere.txt");
  write_instance(path, instance_from_family(fam));

  Instance back = read_instance(path);
  CHECK(back.kind == Instance::Kind::sphere);
  CHECK(back.meta.family == fam.family);
  CHECK(back.meta.params.at("k") == 1);
  CHECK(back.meta.claimed_tau_lower == 6);
  CHECK(back.meta.claimed_n == 14);

  StackedSphere sphere = to_sphere(back);
  CHECK(sphere.facets == fam.sphere.facets);
  CHECK(sphere.removed == fam.sphere.removed);
  CHECK(code_of([&] { to_ball(back); }) == Errc::wrong_dimension);
}

TEST_CASE("text body is canonicalized to ids 0..n-1") {
  TempDir tmp;
  StackedBall ball = make_ball(2, {{10, 20, 30, 40}});
  std::string path = tmp.file("canon.txt");
  write_instance(path, instance_from_ball(ball));
  CHECK(slurp(path) == "ball 2 1\n0 1 2 3\n");

  FamilyInstance fam = linear_lower_bound(2, 1);
  std::string spath = tmp.file("canon-sphere.txt");
  write_instance(spath, instance_from_family(fam));
  std::string text = slurp(spath);
  CHECK(text.substr(0, text.find('\n')) == "sphere 2 14 24");
  CHECK(text.find("removed 2\n") != std::string::npos);
}

TEST_CASE("reading without a sidecar keeps canonical ids") {
  TempDir tmp;
  std::string path = tmp.file("bare.txt");
  write_instance(path, instance_from_ball(make_ball(2, {{4, 5, 6, 7}})), false);
  CHECK_FALSE(fs::exists(path + ".json"));
  Instance back = read_instance(path);
  CHECK(back.simplices == std::vector<Simplex>{{0, 1, 2, 3}});
  CHECK(back.meta.family.empty());
}

TEST_CASE("malformed files raise parse_error") {
  TempDir tmp;
  auto bad = [&](const std::string& name, const std::string& text) {
    std::string path = tmp.file(name);
    spit(path, text);
    CHECK(code_of([&] { read_instance(path); }) == Errc::parse_error);
  };

  CHECK(code_of([&] { read_instance(tmp.file("missing.txt")); }) == Errc::parse_error);
  bad("empty.txt", "");
  bad("kind.txt", "widget 2 3\n0 1 2\n");
  bad("header.txt", "ball two 1\n0 1 2 3\n");
  bad("short-header.txt", "sphere 2 4\n");
  bad("unsorted.txt", "ball 2 1\n3 2 1 0\n");
  bad("truncated.txt", "ball 2 2\n0 1 2 3\n");
  bad("blank-line.txt", "ball 2 1\n\n");
  bad("trailing.txt", "ball 2 1\n0 1 2 3\nextra junk\n");

  std::string path = tmp.file("badmeta.txt");
  spit(path, "ball 2 1\n0 1 2 3\n");
  spit(path + ".json", "{ not json");
  CHECK(code_of([&] { read_instance(path); }) == Errc::parse_error);

  spit(path + ".json", "{\"labels\": [7, 8]}");
  CHECK(code_of([&] { read_instance(path); }) == Errc::parse_error);
}

TEST_CASE("corpus of generated instances survives the round trip") {
  TempDir tmp;
  int idx = 0;
  for (const StackedBall& b : enumerate_linear_balls(2, 3)) {
    std::string path = tmp.file("c" + std::to_string(idx++) + ".txt");
    write_instance(path, instance_from_ball(b));
    CHECK(to_ball(read_instance(path)).simplices == b.simplices);
  }

  FamilyInstance fam = general_lower_bound_2(2);
  std::string path = tmp.file("family.txt");
  write_instance(path, instance_from_family(fam));
  Instance back = read_instance(path);
  CHECK(to_sphere(back).active() == fam.sphere.active());
  CHECK(back.meta.claimed_tau_lower == 12);
}
