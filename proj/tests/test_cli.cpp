#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <algorithm>
#include <fstream>
#include <string>

#include "smalldiff/io.hpp"

namespace {

struct Outcome {
  int status;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(SMALLDIFF_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

smalldiff::json parse(const Outcome& r) { return smalldiff::json::parse(r.out); }

}  // namespace

TEST(Cli, PhiReport) {
  const Outcome r = run("phi " + temp_file("a.json", R"({"L":3,"arcs":[[0,0.5]]})"));
  ASSERT_EQ(r.status, 0);
  const auto j = parse(r);
  EXPECT_EQ(j["phi"].get<double>(), 0.125);
  EXPECT_NEAR(j["eta"].get<double>(), 0.0754902432036, 1e-12);
  EXPECT_TRUE(j.contains("g_breakpoints"));
  EXPECT_TRUE(j.contains("version"));
  EXPECT_TRUE(j.contains("params"));
}

TEST(Cli, PhiFullCircle) {
  const auto j = parse(run("phi " + temp_file("full.json", R"({"L":3,"arcs":[[0,3]]})")));
  EXPECT_EQ(j["phi"].get<double>(), 3.0);
  EXPECT_EQ(j["eta"].get<double>(), 0.0);
}

TEST(Cli, PhiInputErrors) {
  EXPECT_EQ(run("phi " + temp_file("bad.json", "{\"L\":3,")).status, 2);
  EXPECT_EQ(run("phi " + temp_file("short.json", R"({"L":0.5,"arcs":[]})")).status, 2);
  EXPECT_EQ(run("phi /nonexistent/file.json").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("phi").status, 2);
}

TEST(Cli, Bounds) {
  EXPECT_EQ(run("bound colouring --k 1 --L 10").out, "4.14213562373\n");
  EXPECT_EQ(run("bound density --xi 0.5 --L 2.8284271").out, "0.585786432502\n");
  EXPECT_EQ(run("bound discrete --k 1 --m 2 --n 8").out, "0.62741699797\n");
  EXPECT_EQ(run("bound discrete --k 1 --m 3 --n 2").status, 2);
  EXPECT_EQ(run("bound density --xi 1.5 --L 3").status, 2);
}

TEST(Cli, ConstructAlternating) {
  const Outcome r = run("construct alternating --k 2 --n 3");
  ASSERT_EQ(r.status, 0);
  const auto j = parse(r);
  EXPECT_LE(std::abs(j["slack"].get<double>()), 1e-9);
  EXPECT_EQ(j["partition"]["parts"].size(), 3u);
}

TEST(Cli, ConstructWritesExchangeFiles) {
  const std::string out = ::testing::TempDir() + "eq.json";
  ASSERT_EQ(run("construct equispaced --xi 0.5 --L 2.8284271247461903 --n 2 -o " + out).status, 0);
  const Outcome again = run("phi " + out);
  ASSERT_EQ(again.status, 0);
  EXPECT_NEAR(parse(again)["eta"].get<double>(), 0.0, 1e-9);

  const std::string col = ::testing::TempDir() + "c.json";
  const Outcome blocks = run("construct blocks --k 1 --n 8 --t 2 --m 2 -o " + col);
  ASSERT_EQ(blocks.status, 0);
  EXPECT_EQ(parse(blocks)["witness"], "11221122");
  EXPECT_EQ(parse(blocks)["mono_edges"], 4);
  const Outcome blow = run("construct blowup --input " + col + " --m 2");
  ASSERT_EQ(blow.status, 0);
  EXPECT_LE(parse(blow)["sum_phi"].get<double>(), parse(blow)["bridge_rhs"].get<double>());
  EXPECT_EQ(run("construct blowup --input " + col + " --m 9").status, 2);
}

TEST(Cli, DiscreteSolve) {
  const Outcome r = run("discrete solve --k 1 --m 2 --n 8");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "k,m,n,f,bound,slack,witness\n1,2,8,3,0.62741699797,2.37258300203,12211221\n");
  EXPECT_EQ(run("discrete solve --k 1 --m 2 --n 8 --method brute").out, r.out);
}

TEST(Cli, DiscreteCapacityAndUsage) {
  EXPECT_EQ(run("discrete solve --k 9 --m 9 --n 12").status, 3);
  EXPECT_EQ(run("discrete solve --k 1 --m 2 --n 40 --method brute").status, 3);
  EXPECT_EQ(run("discrete solve --k 1 --m 2").status, 2);
  EXPECT_EQ(run("discrete solve --k 1 --m 2 --n 8 --method magic").status, 2);
}

TEST(Cli, DiscreteTables) {
  const Outcome scan = run("discrete scan --k 1 --m 2 --n-max 6");
  ASSERT_EQ(scan.status, 0);
  EXPECT_EQ(std::count(scan.out.begin(), scan.out.end(), '\n'), 6);
  const Outcome alpha = run("discrete alpha --k 1 --m 2 --n-max 24");
  ASSERT_EQ(alpha.status, 0);
  EXPECT_LE(parse(alpha)["lower"].get<double>(), parse(alpha)["upper"].get<double>());
  EXPECT_EQ(run("discrete subadd --k 1 --m 2 --n1 4 --n2 4").status, 0);
}

TEST(Cli, Verify) {
  const Outcome r = run("verify thm2-random --samples 2000 --seed 0");
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(parse(r)["passed"].get<bool>());
  EXPECT_EQ(run("verify fact21").status, 0);
  EXPECT_EQ(run("verify no-such-suite").status, 2);
}

TEST(Cli, OptimizeDeterministic) {
  const std::string cfg = temp_file("cfg.json", R"({"restarts": 3, "seed": 7})");
  const Outcome a = run("optimize density --xi 0.3 --L 5 --n 3 --config " + cfg);
  const Outcome b = run("optimize density --xi 0.3 --L 5 --n 3 --restarts 3 --seed 7");
  ASSERT_EQ(a.status, 0);
  const auto ja = parse(a), jb = parse(b);
  EXPECT_EQ(ja["result"], jb["result"]);
  EXPECT_EQ(ja["params"]["options"]["restarts"], 3);
  EXPECT_EQ(run("optimize density --xi 0.3 --L 5 --n 3 --restarts 3 --seed 7").out, b.out);
}

TEST(Cli, OptimizeEquality) {
  const auto j = parse(run("optimize density --xi 0.5 --L 2.8284271247461903 --n 2"));
  EXPECT_LE(j["result"]["eta_value"].get<double>(), 1e-7);
  EXPECT_TRUE(j["result"]["stationarity"]["passes"].get<bool>());
  const auto p = parse(run("optimize partition --k 2 --L 4.02492235949962 --n-per-part 3"));
  EXPECT_LE(p["slack"].get<double>(), 1e-6);
}
