#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ubdyn/cli.hpp"

namespace ubdyn {
namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
  Json error() const { return Json::parse(err); }
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ubdyn");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, AnalyzePsiExample) {
  const auto r = invoke({"analyze-psi", "--psi", "2/(t^2+8)"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["A"], "1");
  EXPECT_EQ(j["G"], Json::parse(R"([["2",2,0]])"));
  EXPECT_EQ(j["H"], Json::parse(R"([["1",0,2],["8",2,0]])"));
  EXPECT_EQ(j["n"], 1);
  EXPECT_EQ(j["passes"], true);
  EXPECT_TRUE(j["failure_reason"].is_null());
}

TEST(Cli, AnalyzePsiFailureExitsTwo) {
  const auto r = invoke({"analyze-psi", "--psi", "1/(t*(t+1))"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.json()["failure_reason"], "ReducibleSupport");
  EXPECT_EQ(r.json()["passes"], false);
}

TEST(Cli, PsiFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "ubdyn_cli_test_psi.txt";
  {
    std::ofstream f(path);
    f << "2/(t^2+8)\n";
  }
  const auto r = invoke({"analyze-psi", "--psi-file", path.string()});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["H"], Json::parse(R"([["1",0,2],["8",2,0]])"));
}

TEST(Cli, FindPrimes) {
  const auto r = invoke({"find-primes", "--psi", "2/(t^2+8)", "--count", "2", "--bound", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["good_primes"], Json::parse("[5,7]"));
  EXPECT_EQ(r.json()["complete"], true);
}

TEST(Cli, PreperGolden) {
  const auto r = invoke({"preper", "--d", "2", "--alpha", "-29/16"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["total_count"], 9);
  EXPECT_EQ(j["affine_count"], 8);
  EXPECT_EQ(j["max_period"], 3);
  EXPECT_EQ(j["certificates"]["denominator"], "4");
  EXPECT_EQ(j["certificates"]["escape_radius"], "45/16");
  EXPECT_EQ(j["points"].back()["z"], "inf");
  EXPECT_EQ(j["points"][0], Json::parse(R"({"z":"-7/4","tail":0,"period":3,"image":"5/4"})"));

  const auto none = invoke({"preper", "--d", "2", "--alpha", "1/2"}).json();
  EXPECT_EQ(none["certificates"]["denominator"], "none");
  EXPECT_EQ(none["total_count"], 1);
}

TEST(Cli, ScanFamilyCsvDeterministic) {
  const std::vector<std::string> base = {"scan-family", "--d", "2", "--psi", "2/(t^2+8)", "--height", "8"};
  auto with_workers = [&](const char* w) {
    auto a = base;
    a.insert(a.begin(), {"--workers", w});
    return invoke(a);
  };
  const auto one = with_workers("1");
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(one.out, with_workers("4").out);
  EXPECT_EQ(one.out, invoke(base).out);
  EXPECT_EQ(one.out.substr(0, one.out.find('\n')),
            "c,alpha,affine_count,total_count,max_period,max_tail,has_affine_fixed_point");
  EXPECT_NE(one.out.find("\n1,2/9,4,5,1,1,true\n"), std::string::npos);
}

TEST(Cli, ScanFamilyJson) {
  const auto r = invoke({"scan-family", "--d", "2", "--psi", "2/(t^2+8)", "--height", "4", "--out", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["summary"]["certificate"]["N"], "1152");
  EXPECT_EQ(j["summary"]["certificate"]["p"], 5);
  EXPECT_EQ(j["summary"]["rows"], j["rows"].size());
}

TEST(Cli, ScanFamilyHypothesisFailure) {
  const auto r = invoke({"scan-family", "--d", "2", "--psi", "1/t", "--height", "4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.error()["error"], "hypothesis_failed");
}

TEST(Cli, VerifyLemma1) {
  const auto good = invoke({"verify-lemma1", "--psi", "2/(t^2+8)", "--ell", "5", "--height", "30"});
  ASSERT_EQ(good.code, 0) << good.err;
  EXPECT_EQ(good.json()["violations"], 0);
  EXPECT_EQ(good.json()["ell_is_good"], true);

  const auto bad = invoke({"verify-lemma1", "--psi", "2/(t^2+8)", "--ell", "3", "--height", "10"});
  EXPECT_EQ(bad.code, 3);
  EXPECT_GT(bad.json()["violations"].get<int>(), 0);
  EXPECT_EQ(bad.error()["error"], "certificate_violation");

  EXPECT_EQ(invoke({"verify-lemma1", "--psi", "2/(t^2+8)", "--ell", "9", "--height", "10"}).code, 1);
}

TEST(Cli, UsageErrors) {
  const auto none = invoke({});
  EXPECT_EQ(none.code, 1);
  EXPECT_EQ(none.error()["error"], "usage");
  EXPECT_EQ(invoke({"preper", "--d", "2"}).code, 1);
  EXPECT_EQ(invoke({"preper", "--d", "1", "--alpha", "0"}).code, 1);
  EXPECT_EQ(invoke({"bogus"}).code, 1);

  const auto parse = invoke({"analyze-psi", "--psi", "2/(t^2+"});
  EXPECT_EQ(parse.code, 1);
  EXPECT_EQ(parse.error()["error"], "parse_error");
  EXPECT_TRUE(parse.out.empty());

  const auto rat = invoke({"preper", "--d", "2", "--alpha", "1/0"});
  EXPECT_EQ(rat.code, 1);
  EXPECT_EQ(invoke({"preper", "--d", "2", "--alpha", "1/2", "--out", "csv"}).code, 1);
  EXPECT_EQ(invoke({"analyze-psi"}).code, 1);
}

TEST(Cli, Help) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("scan-family"), std::string::npos);
}

TEST(Cli, TextOutput) {
  const auto r = invoke({"preper", "--d", "2", "--alpha", "1/4", "--out", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("total_count"), std::string::npos);
}

TEST(Cli, WorkersFromEnvironment) {
  ::setenv("UBDYN_WORKERS", "3", 1);
  EXPECT_EQ(detail::resolve_workers(0), 3U);
  EXPECT_EQ(detail::resolve_workers(2), 2U);
  ::setenv("UBDYN_WORKERS", "junk", 1);
  EXPECT_THROW(detail::resolve_workers(0), detail::UsageError);
  ::unsetenv("UBDYN_WORKERS");
  EXPECT_GE(detail::resolve_workers(0), 1U);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const std::vector<std::string> args = {"verify-example", "--height", "6"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, b.err);
}

}  // namespace
}  // namespace ubdyn
