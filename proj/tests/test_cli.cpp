#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("\"") + DPSEQ_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("dpseq_cli_" + std::to_string(::getpid()) + "_" + name)).string();
}

}  // namespace

TEST(Cli, TablesFive) {
  const auto r = cli("tables --k 5");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("|S| = 5"), std::string::npos);
  EXPECT_NE(r.out.find("x1^2 x2 x3^2 y1 y2"), std::string::npos);
  const auto j = nlohmann::json::parse(cli("tables --k 5 --format json").out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 4u);
  EXPECT_EQ(j[2]["coefficient"], "6");
  EXPECT_EQ(j[2]["factors"], "2,3");
}

TEST(Cli, SearchCounterexample) {
  const auto r = cli("search --group D6 --set u,u^2,v,u^2*v");
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["reason"], "no S-sequencing; exception pattern P1");
}

TEST(Cli, SearchFound) {
  const auto r = cli("search --group D10 --set u,v,u^2*v");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["sequence"].size(), 3u);
  EXPECT_EQ(j["partial_products"].size(), 4u);
}

TEST(Cli, ConstructVerifyRoundTrip) {
  const auto file = temp_path("d22.json");
  EXPECT_EQ(cli("construct --m 11 --exclude u --out " + file).code, 0);
  const auto v = cli("verify --in " + file);
  EXPECT_EQ(v.code, 0);
  const auto j = nlohmann::json::parse(v.out);
  EXPECT_EQ(j["valid"], true);
  EXPECT_EQ(j["certificate_replays"], true);
  std::filesystem::remove(file);

  const auto file2 = temp_path("d18.json");
  EXPECT_EQ(cli("construct --m 9 --reflection-start --out " + file2).code, 0);
  EXPECT_EQ(cli("verify --in " + file2).code, 0);
  std::filesystem::remove(file2);
}

TEST(Cli, VerifyRejects) {
  EXPECT_EQ(cli("verify --group D6 --sequence u,u^2").code, 1);
  EXPECT_EQ(cli("verify --group D6 --sequence u,w").code, 2);
  EXPECT_EQ(cli("verify --in /nonexistent/file.json").code, 2);
}

TEST(Cli, Coefficient) {
  const auto r = cli("coeff --r 3 --s 2 --monomial \"x1^2 x2 x3^2 y1 y2\" --prime 5");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["coefficient"], "6");
  EXPECT_EQ(j["nonvanishing"], true);
  EXPECT_EQ(cli("coeff --r 0 --s 3 --monomial y1").code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("tables --k 12").code, 2);
  EXPECT_EQ(cli("search --group D6").code, 2);
}

TEST(Cli, GracefulGenerators) {
  const auto r = cli("graceful --generator twizzler --n 22 --p 4 --q 3 --r 10 --tail 8,2,6,1,9,0,7,4,3,5 --format text");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(20,1,21,0,18,3,19,2,16,5,17,4,14,8,12,7,15,6,13,10,9,11)\n");
  EXPECT_EQ(cli("graceful --generator variant --l 4 --d 6").code, 1);
  EXPECT_EQ(cli("graceful --generator verify --perm 0,1,2,3").code, 1);
}

TEST(Cli, CanonicalDeterministicJson) {
  const auto a = cli("search --group D8 --set u,u^3,v,u*v --objective first");
  const auto b = cli("search --group D8 --set u,u^3,v,u*v --objective first --threads 2");
  EXPECT_EQ(a.code, 0);
  const auto ja = nlohmann::json::parse(a.out);
  EXPECT_EQ(ja.dump(2) + "\n", a.out);  // sorted keys, re-serializes identically
  EXPECT_EQ(ja["sequence"], nlohmann::json::parse(b.out)["sequence"]);
  const auto c = cli("search --group D8 --set u,u^3,v,u*v --objective first");
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, ScanSmall) {
  const auto r = cli("scan --group D10 --min-size 1 --max-size 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(r.out.empty());
}
