#include <gtest/gtest.h>

#include <ekr/cli.hpp>

using ekr::cli::run;
using nlohmann::json;

namespace {

json report(std::vector<std::string> args, int expect_exit = 0)
{
  auto r = run(args);
  EXPECT_EQ(r.exit_code, expect_exit) << r.err;
  return json::parse(r.out);
}

std::string sample(char const *name) { return std::string(EKR_SAMPLES_DIR) + "/" + name; }

} // namespace

TEST(Cli, SpectrumAlt5)
{
  auto j = report({"spectrum", "--group", "alt:5"});
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["command"], "spectrum");
  EXPECT_EQ(j["group"]["order"], 60);
  EXPECT_EQ(j["payload"]["d"], 24);
  EXPECT_EQ(j["payload"]["lambda_star"]["value"], "-6");
  EXPECT_EQ(j["payload"]["lambda_star"]["kind"], "exact");
  EXPECT_EQ(j["payload"]["spectrum"][0]["kind"], "float");
  EXPECT_EQ(j["verdicts"]["least_eigenvalue"], "CERTIFIED_UNIQUE");
  EXPECT_FALSE(j.contains("timings"));
}

TEST(Cli, EkrCheckAgl15Exhaustive)
{
  auto j = report({"ekr-check", "--group", "agl1:5", "--exhaustive", "--limit", "1000"});
  auto const &c = j["payload"]["census"];
  EXPECT_EQ(c["total_found"], 625);
  EXPECT_EQ(c["canonical"], 25);
  EXPECT_EQ(c["complete"], true);
  EXPECT_EQ(j["payload"]["kept_checks"]["module_check"], 625);
  EXPECT_EQ(j["verdicts"]["module_property"], true);
  EXPECT_EQ(j["verdicts"]["strict_ekr"], false);
  EXPECT_EQ(j["verdicts"]["ekr"], true);
}

TEST(Cli, EkrCheckStrict)
{
  auto j = report({"ekr-check", "--group", "alt:5", "--exhaustive"});
  EXPECT_EQ(j["verdicts"]["strict_ekr"], true);
  auto s = report({"ekr-check", "--group", "m11", "--limit", "3"});
  EXPECT_EQ(s["payload"]["census"]["mode"], "sampling");
  EXPECT_TRUE(s["verdicts"]["strict_ekr"].is_null());
}

TEST(Cli, ComplementsAsl24)
{
  auto j = report({"complements", "--group", "asl2:4"});
  EXPECT_EQ(j["verdicts"]["nonstandard_coclique_complement"], true);
  EXPECT_EQ(j["payload"]["classes"].size(), 4u);
  EXPECT_EQ(j["payload"]["classes"][0]["standard"], true);
  EXPECT_EQ(j["payload"]["classes"][1]["canonical"], false);
}

TEST(Cli, ModuleCheckFromFiles)
{
  auto j = report({"module-check", "--group", "@" + sample("agl1_5.json"), "--coclique",
                   sample("agl1_5_noncanonical.json")});
  EXPECT_EQ(j["verdicts"]["module_check"], true);
  EXPECT_EQ(j["verdicts"]["canonical"], false);
  EXPECT_EQ(j["group"]["name"], "AGL(1,5)");
  EXPECT_EQ(j["group"]["digest"].get<std::string>().size(), 16u);
  auto k = report({"module-check", "--group", "asl2:4", "--coclique", sample("asl2_4_nonstandard_complement.json")});
  EXPECT_EQ(k["payload"]["is_subgroup"], true);
}

TEST(Cli, InnerDistDefaultsToStabilizer)
{
  auto j = report({"inner-dist", "--group", "psl2:7"});
  EXPECT_EQ(j["verdicts"]["matches_stabilizer"], true);
  for (auto const &row : j["payload"]["classes"])
    EXPECT_EQ(row["value"], row["stabilizer"]);
  auto k = report({"inner-dist", "--group", "agl1:5", "--coclique", sample("agl1_5_noncanonical.json")});
  EXPECT_EQ(k["verdicts"]["matches_stabilizer"], true);
}

TEST(Cli, InfoConnectivityDerangements)
{
  auto i = report({"info", "--group", "m11"});
  EXPECT_EQ(i["payload"]["derangement_count"], 2760);
  EXPECT_EQ(i["payload"]["two_transitive"], true);
  auto c = report({"connectivity", "--group", "agammal1:3,2"});
  EXPECT_EQ(c["verdicts"]["connected"], false);
  EXPECT_EQ(c["verdicts"]["coset_flags_agree"], true);
  EXPECT_EQ(c["verdicts"]["two_point_generation_equal"], true);
  auto d = report({"derangements", "--group", "alt:6"});
  EXPECT_EQ(d["payload"]["d"], 130);
  EXPECT_EQ(d["payload"]["degree_ratio"]["value"], "26");
  EXPECT_EQ(d["payload"]["alt_bound"]["d_lower"], 120);
}

TEST(Cli, DeterministicAcrossWorkers)
{
  auto a = run({"ekr-check", "--group", "agammal1:3,2", "--exhaustive", "--workers", "1"});
  auto b = run({"ekr-check", "--group", "agammal1:3,2", "--exhaustive", "--workers", "3"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.exit_code, 0);
}

TEST(Cli, TextOutput)
{
  auto r = run({"spectrum", "--group", "alt:5", "--out", "text"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("payload.lambda_star: -6"), std::string::npos);
}

TEST(Cli, UsageErrors)
{
  EXPECT_EQ(run({}).exit_code, 1);
  EXPECT_EQ(run({"frobnicate"}).exit_code, 1);
  EXPECT_EQ(run({"info"}).exit_code, 1);
  EXPECT_EQ(run({"info", "--group", "nosuch:2"}).exit_code, 1);
  EXPECT_EQ(run({"info", "--group", "@/nonexistent.json"}).exit_code, 1);
  EXPECT_EQ(run({"module-check", "--group", "alt:5"}).exit_code, 1);
  EXPECT_EQ(run({"complements", "--group", "alt:5"}).exit_code, 1);
  EXPECT_EQ(run({"spectrum", "--group", "alt:5", "--out", "xml"}).exit_code, 1);
  EXPECT_EQ(run({"module-check", "--group", "alt:5", "--coclique", sample("agl1_5_noncanonical.json")}).exit_code, 1);
  auto r = run({"ekr-check", "--group", "agl1:8", "--exhaustive", "--budget", "5"});
  EXPECT_EQ(r.exit_code, 1);
}
