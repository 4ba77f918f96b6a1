#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "abc/profile.hpp"

// Drives the installed binary through a shell; ABC_CLI is set by ctest.

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const char* cli = std::getenv("ABC_CLI");
  REQUIRE(cli != nullptr);
  std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int st = pclose(pipe);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string write_example1() {
  std::string path = "example1.abc";
  std::ofstream f(path);
  f << abc::write_profile(abc::example1_profile()) << "\n";
  return path;
}

}  // namespace

TEST_CASE("elect: seq-phragmen on example 1") {
  auto file = write_example1();
  auto r = run("elect --rule seq-phragmen --file " + file + " -k 10");
  CHECK(r.code == 0);
  CHECK(r.out.find("committee: 1 2 3 4 5 6 11 12 13 21") != std::string::npos);
}

TEST_CASE("elect: seq-pav trace is exact") {
  auto file = write_example1();
  auto r = run("elect --rule seq-pav --file " + file + " -k 3 --trace");
  CHECK(r.code == 0);
  CHECK(r.out.find("1 1 3/5 {1") != std::string::npos);
}

TEST_CASE("bounds verbs") {
  auto r = run("bounds --rule phragmen --lower -l 3");
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 1) == "1");
  auto u = run("bounds --rule phragmen --upper -l 2 -k 10");
  CHECK(u.out.substr(0, 7) == "1.28571");
  auto e = run("bounds --rule efficiency --upper -k 4 --lambda pav");
  CHECK(e.out.find("guarantee: 0.75") != std::string::npos);
}

TEST_CASE("lp verb prints the coefficient") {
  auto r = run("lp --kind relaxed -k 10");
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 6) == "0.7705");
  auto d = run("lp --kind exact -k 2 --dump");
  CHECK(d.out.find("Maximize") != std::string::npos);
}

TEST_CASE("gen writes loadable profiles") {
  auto r = run("gen -o gen_ph.abc phragmen-hard -l 2 -k 10");
  CHECK(r.code == 0);
  std::ifstream f("gen_ph.abc");
  std::stringstream buf;
  buf << f.rdbuf();
  auto p = abc::parse_profile(buf.str());
  CHECK(p.total_weight() == 350);
  auto e = run("gen party-list --weights 60,30,10 --per-party 10");
  CHECK(e.code == 0);
  CHECK(abc::parse_profile(e.out) == abc::example1_profile());
}

TEST_CASE("table replays the library values") {
  auto r = run("table --kind seqpav-exact --kmax 4");
  CHECK(r.code == 0);
  CHECK(r.out == "k,coefficient\n1,1\n2,1\n3,0.888889\n4,0.857143\n");
}

TEST_CASE("curve: phragmen upper bound over k") {
  auto r = run("curve --kind phragmen-upper-vs-k -l 1 --kmax 8");
  CHECK(r.code == 0);
  // y(k) = (1/2) * 2k/(2k-3), decreasing toward 1/2
  CHECK(r.out.find("3,1\n") != std::string::npos);
  CHECK(r.out.find("8,0.615385\n") != std::string::npos);
}

TEST_CASE("exit codes: usage=1, computation=2") {
  CHECK(run("elect --rule nope --file missing.abc -k 1").code == 1);
  auto file = write_example1();
  CHECK(run("elect --rule pav --file " + file + " -k 10").code == 2);  // enumeration budget
  CHECK(run("bounds --rule phragmen --upper -l 2 -k 5").code == 1);
}

TEST_CASE("ABC_BUDGET env raises the enumeration budget") {
  auto file = write_example1();
  const char* cli = std::getenv("ABC_CLI");
  REQUIRE(cli != nullptr);
  std::string cmd = "ABC_BUDGET=40000000 " + std::string(cli) + " elect --rule pav --file " +
                    file + " -k 10 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int st = pclose(pipe);
  CHECK(WEXITSTATUS(st) == 0);
  CHECK(out.find("committee: 1 2 3 4 5 6 11 12 13 21") != std::string::npos);
}

TEST_CASE("csv output is byte-stable across runs") {
  auto a = run("table --kind seqpav-relaxed --kmax 6");
  auto b = run("table --kind seqpav-relaxed --kmax 6");
  CHECK(a.out == b.out);
  CHECK(a.out.find("6,0.813") != std::string::npos);
}
