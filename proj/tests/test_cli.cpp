#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "w3j/render.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(W3J_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::current_path() / "cli_scratch" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("eval") {
  Run r = run("eval 1 1 2 0 0 0");
  CHECK(r.code == 0);
  CHECK(r.out == "+sqrt(2/15) ≈ 0.3651484\n");
  CHECK(run("eval 0 0 0 0 0 0").out == "1\n");
  CHECK(run("eval 1/2 1/2 1 1/2 -1/2 0").out == "+sqrt(1/6) ≈ 0.4082483\n");
  CHECK(run("eval 0.5 0.5 1 .5 -0.5 0 --cg").out == "+sqrt(1/6) ≈ 0.4082483\ncg +sqrt(1/2) ≈ 0.7071068\n");
  r = run("eval 1 3 5 0 0 0");
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");
  CHECK(run("eval 1 3 5 0 0 0 --strict").code == 3);
  CHECK(run("eval 1 1 1 1/2 -1/2 0").out == "0\n");  // parity is a selection rule
  CHECK(run("eval 1 1 1 1/2 -1/2 0 --strict").code == 3);
  CHECK(run("eval 1 1 1/3 0 0 0").code == 2);
  CHECK(run("eval 1 1 2 0 0").code == 2);
}

TEST_CASE("screen") {
  const auto dir = scratch("screen");
  Run r = run("screen 2 2 1 --format csv -o " + (dir / "s").string());
  CHECK(r.code == 0);
  CHECK(contains(r.out, "canonicalized to (1,3,0) via regge then swap(a,b)"));
  CHECK(contains(r.out, "size 3x3"));
  const auto grid = w3j::parse_screen_csv(w3j::read_file((dir / "s.csv").string()));
  CHECK(grid.xs.size() == 3);
  CHECK(grid.values(1, 1) == 0.0);

  r = run("screen 1 3 0 --format csv,pgm,ppm,svg --doubled-ints -o " + (dir / "t").string());
  CHECK(r.code == 0);
  CHECK(contains(r.out, "is canonical"));
  for (const char* ext : {".csv", ".pgm", ".ppm", ".svg"})
    CHECK(std::filesystem::exists(dir / (std::string("t") + ext)));
  CHECK(w3j::read_file((dir / "t.csv").string()).rfind("twice_x,twice_delta,u\n", 0) == 0);

  r = run("screen 2 2 1 --raw --format csv -o " + (dir / "raw").string());
  CHECK(r.code == 0);
  const auto raw = w3j::parse_screen_csv(w3j::read_file((dir / "raw.csv").string()));
  CHECK(raw.xs.front() == 2);

  CHECK(run("screen 1 1/2 0").code == 2);
  CHECK(run("screen 1 1 2").code == 2);
  CHECK(run("screen 1 3 0 --floor 2").code == 2);
  CHECK(run("screen 1 3 0 -o /nonexistent-dir/zz --format csv").code == 4);
}

TEST_CASE("caustics") {
  const auto dir = scratch("caustics");
  Run r = run("caustics 3/2 7/2 -o " + (dir / "c").string());
  CHECK(r.code == 0);
  const std::string index = w3j::read_file((dir / "c_index.csv").string());
  CHECK(index.rfind("sigma,cusp,samples\n", 0) == 0);
  CHECK(contains(index, "\n-1.0,1,"));
  CHECK(contains(index, "\n1.0,1,"));
  CHECK(contains(index, "\n0.0,0,"));
  CHECK(contains(index, "\n2.5,0,"));
  CHECK(std::filesystem::exists(dir / "c_s-2.5.csv"));
  CHECK(std::filesystem::exists(dir / "c_s1_ridge_x.csv"));

  r = run("caustics 7/2 7/2 --sigma 0,1 --format svg -o " + (dir / "d").string());
  CHECK(r.code == 0);
  CHECK(contains(r.out, "sigma=0 cusp=yes"));
  CHECK(contains(r.out, "sigma=1 cusp=no"));
  CHECK(std::filesystem::exists(dir / "d_s0.svg"));

  CHECK(run("caustics 0 1").code == 2);
  CHECK(run("caustics 1 1/2").code == 2);
}

TEST_CASE("verify") {
  Run r = run("verify 2 3");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "oracle-equivalence"));
  CHECK_FALSE(contains(r.out, "FAIL"));
  CHECK(run("verify 2 3 --p-variant minus-one").code == 1);
  CHECK(run("verify 40 40").code == 2);
  CHECK(run("verify -1 2").code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("--help").code == 0);
}
