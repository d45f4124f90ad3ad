#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticode/cli.hpp"

namespace latticode {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "latticode");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

TEST(Cli, EncodeDecodeD4) {
  EXPECT_EQ(run({"encode", "--lattice", "d4", "--p", "4", "0x6E"}).out, "1 2 3 0\n");
  EXPECT_EQ(run({"encode", "--lattice", "d4", "--p", "4", "00"}).out, "0 0 0 0\n");
  EXPECT_EQ(run({"decode", "--lattice", "d4", "--p", "4", "5", "6", "7", "4"}).out, "0x6e\n");
  EXPECT_EQ(run({"decode", "--lattice", "d4", "--p", "4", "1.2", "2.1", "2.8", "0.3"}).out, "0x6e\n");
}

TEST(Cli, EncodeErrorsAreOneLine) {
  const Result r = run({"encode", "--lattice", "d4", "--p", "4", "0x6F"});
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(lines(r.err), 1u);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(run({"decode", "--lattice", "d4", "--p", "4", "1", "2"}).code, 0);
  EXPECT_NE(run({"encode", "--lattice", "nope", "--p", "4", "00"}).code, 0);
  EXPECT_NE(run({}).code, 0);
}

TEST(Cli, ParamsListAndShow) {
  const Result list = run({"params", "list"});
  EXPECT_EQ(list.code, 0);
  EXPECT_EQ(lines(list.out), 22u);  // header + 21 sets
  const Result show = run({"params", "show", "frodo-640-e8", "--format", "json"});
  const auto j = nlohmann::json::parse(show.out);
  EXPECT_EQ(j["q"], 32768);
  EXPECT_EQ(j["sigma"], 3.25);
  EXPECT_EQ(j["B"], 2.0);
  EXPECT_EQ(nlohmann::json::parse(run({"params", "show", "frodo-976-bw16", "--format", "json"}).out)["B"], 3.25);
  EXPECT_NE(run({"params", "show", "frodo-2"}).code, 0);
}

TEST(Cli, DfrBound) {
  const Result r = run({"dfr", "bound", "--lattice", "e8", "--q", "32768", "--sigma", "3.25", "--nprime", "640", "--b",
                        "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const double v = nlohmann::json::parse(r.out)["bound_log2"];
  EXPECT_NEAR(v, -164, 1);
}

TEST(Cli, DfrTableCsv) {
  const Result r = run({"dfr", "table", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 13u);
  EXPECT_EQ(r.out, run({"dfr", "table", "2"}).out);
}

TEST(Cli, SimulateRejectsBw32) {
  const Result r = run({"dfr", "simulate", "--lattice", "bw32", "--p", "8", "--sigma-bar", "1", "--trials", "10"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("decoder not implemented"), std::string::npos);
}

TEST(Cli, SimulateDeterministicAcrossThreads) {
  const std::vector<std::string> base{"dfr", "simulate", "--lattice", "e8", "--p", "4", "--delta", "1",
                                      "--sigma-bar", "0.35", "--trials", "20000", "--seed", "5"};
  auto one = base, two = base;
  two.insert(two.end(), {"--threads", "2"});
  const Result a = run(one), b = run(two);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, PkeFilesRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "latticode_cli_test";
  std::filesystem::create_directories(dir);
  const std::string pk = (dir / "pk").string(), sk = (dir / "sk").string(), ct = (dir / "ct").string();
  const std::string msg = "0x0123456789abcdef0123456789abcdef";
  ASSERT_EQ(run({"pke", "keygen", "--params", "frodo-640-e8", "--seed", "7", "--pk", pk, "--sk", sk}).code, 0);
  ASSERT_EQ(run({"pke", "encrypt", "--params", "frodo-640-e8", "--seed", "8", "--pk", pk, "--msg", msg, "--ct", ct}).code, 0);
  EXPECT_EQ(run({"pke", "decrypt", "--params", "frodo-640-e8", "--sk", sk, "--ct", ct}).out, msg + "\n");
  EXPECT_EQ(std::filesystem::file_size(ct), 16u + 9720u);
  EXPECT_NE(run({"pke", "decrypt", "--params", "frodo-640-bw16", "--sk", sk, "--ct", ct}).code, 0);
  EXPECT_NE(run({"pke", "decrypt", "--params", "frodo-640-e8", "--sk", (dir / "missing").string(), "--ct", ct}).code, 0);
  std::filesystem::remove_all(dir);
}

TEST(Cli, PkeRoundtripCount) {
  const Result r = run({"pke", "roundtrip", "--params", "frodo-640-e8", "--trials", "10", "--seed", "7", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["failures"], 0);
  EXPECT_EQ(j["trials"], 10);
}

TEST(Cli, SeedFromEnvironment) {
  const std::vector<std::string> args{"dfr", "simulate", "--lattice", "e8", "--p", "4", "--delta", "1",
                                      "--sigma-bar", "0.4", "--trials", "5000"};
  setenv("LATTICODE_SEED", "5", 1);
  const Result env = run(args);
  unsetenv("LATTICODE_SEED");
  auto flagged = args;
  flagged.insert(flagged.end(), {"--seed", "5"});
  EXPECT_EQ(env.out, run(flagged).out);
  setenv("LATTICODE_SEED", "five", 1);
  EXPECT_NE(run(args).code, 0);
  unsetenv("LATTICODE_SEED");
}

TEST(Cli, RatesAndCatalog) {
  EXPECT_EQ(run({"dfr", "rates", "--lattice", "bw16", "--max-bits", "272"}).out, "80 144 208 272\n");
  const auto j = nlohmann::json::parse(run({"catalog"}).out);
  EXPECT_EQ(j.size(), 8u);
}

}  // namespace
}  // namespace latticode
