#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Outcome {
  int exit = -1;
  std::string out;
};

Outcome cli(const std::string& args) {
  const std::string cmd = std::string(HOPFGROUP_CLI) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, VerifyPassReport) {
  const Outcome r = cli("verify --group qp:2 --suite hopf-axioms --seed 42 --trials 100 --json");
  ASSERT_EQ(r.exit, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["suite"], "hopf-axioms");
  EXPECT_EQ(j["group"], "qp:2");
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["trials"], 100);
}

TEST(Cli, GroupLikeRefusal) {
  const Outcome r = cli("grouplike --group qp:2 --fn 'chi(0,level=0)+chi(1/2,level=1)'");
  EXPECT_EQ(r.exit, 1);
  EXPECT_NE(r.out.find("support not closed"), std::string::npos) << r.out;
  EXPECT_EQ(cli("grouplike --group qp:2 --fn 'chi(0,level=0)+chi(1/2,level=1)' --expect no").exit, 0);
  const Outcome yes = cli("grouplike --group qp:2 --fn 'chi(0,level=1)+chi(1,level=1)' --json");
  EXPECT_EQ(yes.exit, 0);
  EXPECT_EQ(nlohmann::json::parse(yes.out)["subgroup_level"], 0);
}

TEST(Cli, NonAbelianFourierIsAUsageError) {
  const Outcome r = cli("fourier --group shift:2 --fn 'chi((0, 0), level=0)' --json");
  EXPECT_EQ(r.exit, 2);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["error"]["code"], "UNSUPPORTED");
  EXPECT_NE(j["error"]["message"].get<std::string>().find("group not abelian"), std::string::npos);
}

TEST(Cli, ParseErrorsExitTwo) {
  EXPECT_EQ(cli("eval --group qp:2 --fn 'chi(1/3, level=0)'").exit, 2);
  EXPECT_EQ(cli("eval --group qp:2 --fn 'chi(0, level=0'").exit, 2);
  EXPECT_EQ(cli("eval --group nope:2 --fn 'chi(0, level=0)'").exit, 2);
  EXPECT_EQ(cli("frobnicate").exit, 2);
  EXPECT_EQ(cli("verify --group qp:2 --json").exit, 2);  // seed is mandatory in JSON mode
  EXPECT_EQ(cli("verify --group qp:2 --suite nope --seed 1").exit, 2);
}

TEST(Cli, EvalPrintsCanonicalFormAndValues) {
  const Outcome r = cli("eval --group qp:2 --fn 'chi(1, level=1) + chi(0, level=1)' --at 3 --json");
  ASSERT_EQ(r.exit, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dsl"], "chi(0, level=0)");
  EXPECT_EQ(j["values"][0]["value"], "1");
}

TEST(Cli, FileInputsAreReadNotWritten) {
  const std::string path = ::testing::TempDir() + "cli_fn.json";
  const std::string text = R"({"group": "qp:2", "level": 1, "terms": [{"rep": "1/2", "coeff": "z4"}]})";
  {
    std::ofstream(path) << text;
  }
  const Outcome r = cli("eval --group qp:2 --fn @" + path);
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(r.out, "z4*chi(1/2, level=1)\n");
  std::ifstream in(path);
  const std::string after((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(after, text);
  const std::string out = ::testing::TempDir() + "cli_out.json";
  EXPECT_EQ(cli("convolve --group qp:2 --fn @" + path + " --with 'chi(0, level=0)' --out " + out).exit, 0);
  std::ifstream written(out);
  const auto j = nlohmann::json::parse(written);
  EXPECT_EQ(j["dual"], true);
}

TEST(Cli, OperatorVerbs) {
  const Outcome rank = cli("rank --group qp:2 --conv 'chi(0, level=1)' --mult 'chi(0, level=1)' --window 'p^-2..level 1' --json");
  ASSERT_EQ(rank.exit, 0);
  const auto j = nlohmann::json::parse(rank.out);
  EXPECT_EQ(j["rank"], 1);
  EXPECT_EQ(j["leakage"], false);
  EXPECT_EQ(j["window"], "p^-2..level 1");
  const Outcome no = cli("commute --group qp:2 --conv 'chi(1/2, level=0)' --mult 'chi(0, level=0)' --window 'p^-2..level 0' --json");
  ASSERT_EQ(no.exit, 0);
  const auto c = nlohmann::json::parse(no.out);
  EXPECT_EQ(c["commute"], false);
  EXPECT_TRUE(c.contains("witness"));
  EXPECT_EQ(cli("commute --group qp:2 --conv 'chi(1/2, level=0)' --mult 'chi(0, level=0)' --window 'p^-2..level 0' "
                "--expect yes")
                .exit,
            1);
  EXPECT_EQ(cli("rank --group qp:2 --conv 'chi(0, level=0)' --mult 'chi(0, level=0)' --window 'bogus'").exit, 2);
}

TEST(Cli, FourierChecksAndExpectation) {
  EXPECT_EQ(cli("fourier --group qp:2 --fn 'chi(1/2, level=1)' --check plancherel").exit, 0);
  EXPECT_EQ(cli("fourier --group zp:3 --fn 'chi(1, level=1)' --check roundtrip").exit, 0);
  EXPECT_EQ(cli("fourier --group qp:3 --fn 'chi(1/3, level=1)' --check convolution --with 'chi(0, level=2)'").exit, 0);
  const Outcome e = cli("expect --group qp:2 --fn 'chi(1/2, level=1) + chi(3, level=0)' --level 0 --reconstruct --json");
  ASSERT_EQ(e.exit, 0);
  const auto j = nlohmann::json::parse(e.out);
  EXPECT_EQ(j["tau"], "1");
  EXPECT_EQ(j["reconstruction"]["cosets"], nlohmann::json({"0", "1/2"}));
  const Outcome cp = cli("coproduct --group qp:2 --fn 'chi(1/2, level=0)' --with 'chi(0, level=0)' --dual --json");
  ASSERT_EQ(cp.exit, 0);
  EXPECT_EQ(nlohmann::json::parse(cp.out)["length"], 1);
}
