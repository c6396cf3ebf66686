#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(BR2D_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, CriticalJson) {
  const CliRun r = run("critical");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["results"]["delta_c"].get<double>(), 0.37801663946445575, 1e-9);
  EXPECT_NEAR(j["results"]["floor"].get<double>(), 0.2439667210710885, 1e-9);
  EXPECT_TRUE(j.contains("version"));
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j.contains("tolerances"));
}

TEST(Cli, CriticalCsvAndPrecision) {
  const CliRun r = run("critical --format csv --precision 12");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("delta_c,floor\n0.378016639464,0.243966721071"), std::string::npos) << r.out;
}

TEST(Cli, SpectrumFreeForm) {
  const CliRun r = run("spectrum --delta 0 --k 0 --n 100");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["results"]["rows"][0]["lambda_min"].get<double>(), 1.0, 1e-2);
}

TEST(Cli, SpectrumAboveCriticalNotAsserted) {
  const CliRun r = run("spectrum --delta 0.5 --k 0 --n 100 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("delta,k,n,p_max,lambda_min,residual"), std::string::npos);
}

TEST(Cli, SpectrumAssertFloor) {
  EXPECT_EQ(run("spectrum --delta 0.2 --n 100 --assert-floor --floor-tol 0").code, 0);
  EXPECT_EQ(run("spectrum --delta 0.2 --n 100 --assert-floor --floor-tol -1").code, 2);
}

TEST(Cli, DivergeConfigErrors) {
  EXPECT_EQ(run("diverge --delta 0.3 --a 50 --b 5e3").code, 2);
  EXPECT_EQ(run("diverge --delta 0.379 --a 20 --b 5e3").code, 2);
  EXPECT_EQ(run("diverge --delta 0.5 --a 50 --b 20").code, 2);
}

TEST(Cli, DivergeRows) {
  const CliRun r = run("diverge --delta 0.5 --a 50 --b 5e3,5e4 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("a,b,delta,form_value,norm_sq,log_ratio"), std::string::npos);
}

TEST(Cli, VerifyCertificates) {
  const CliRun r = run("verify certificates");
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["results"]["pass"].get<bool>());
  EXPECT_EQ(j["results"]["failed"].get<int>(), 0);
}

TEST(Cli, VerifyIdentitiesCarriesCounterfactual) {
  const CliRun r = run("verify identities --strict-tol 0.5x");
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["config"]["tolerance_scale"].get<double>(), 0.5);
  bool seen = false;
  for (const auto& rep : j["results"]["reports"]) {
    if (rep["name"] == "partial_wave_reconstruction") {
      EXPECT_NEAR(rep["report"]["extras"]["counterfactual_ratio"].get<double>(), 2.0, 1e-3);
      seen = true;
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("verify nonsense").code, 2);
  EXPECT_EQ(run("verify all --strict-tol abc").code, 2);
  EXPECT_EQ(run("critical --format xml").code, 2);
  EXPECT_EQ(run("kernel-eval --p 1 --q 1").code, 2);
}

TEST(Cli, KernelEval) {
  const CliRun r = run("kernel-eval --k 0,1 --p 1 --q 2 --full 1,0,0,2");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["results"]["channels"].size(), 2u);
  EXPECT_TRUE(j["results"].contains("full_kernel"));
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const auto dir = std::filesystem::temp_directory_path() / "br2d_cli_test_out";
  std::filesystem::remove_all(dir);
  const CliRun r = run("critical", "BR2D_OUTPUT_DIR=" + dir.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(dir / "critical.json");
  ASSERT_TRUE(in.good());
  const json j = json::parse(in);
  EXPECT_TRUE(j["results"].contains("delta_c"));
  std::filesystem::remove_all(dir);
}
