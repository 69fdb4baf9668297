// End-to-end tests of the command-line surface: exit codes, formats, and
// byte-for-byte determinism.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "qskew/json_io.hpp"

namespace qskew {
namespace {

#ifndef QSKEW_CLI_PATH
#error "QSKEW_CLI_PATH must be defined by the build"
#endif

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(QSKEW_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(out)};
}

TEST(Cli, PidegFamily) {
  RunResult r = run_cli("pideg family euclidean-odd --n 3 --r 5");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("PI degree:         125"), std::string::npos) << r.out;

  RunResult sp = run_cli("pideg family symplectic --n 2 --r 4");
  EXPECT_EQ(sp.exit_code, 0);
  EXPECT_NE(sp.out.find("PI degree:         4"), std::string::npos) << sp.out;

  RunResult js = run_cli("pideg family weyl-single --n 2 --r 7 --format json");
  EXPECT_EQ(js.exit_code, 0);
  json j = json::parse(js.out);
  EXPECT_EQ(j["pi_degree"], "49");
  EXPECT_EQ(j["ell"], 7);

  // multiparameter family with an explicit exponent assignment
  RunResult mp =
      run_cli("pideg family kpq --n 2 --r 7 --assign q1=1,q2=2,p1=3,p2=4,g12=5 --format json");
  EXPECT_EQ(mp.exit_code, 0);
  EXPECT_FALSE(json::parse(mp.out)["pi_degree"].get<std::string>().empty());

  RunResult txt = run_cli("sweep matrices-single --n 2..3 --r 3..5 --format text");
  EXPECT_EQ(txt.exit_code, 0);
  EXPECT_EQ(txt.out.find("NO"), std::string::npos);
}

TEST(Cli, PidegMatrixInput) {
  std::string path = std::string(::testing::TempDir()) + "/zero4.json";
  {
    std::ofstream out(path);
    out << matrix_to_json(IntMatrix(4, 4)).dump();
  }
  RunResult r = run_cli("pideg matrix --input " + path + " --r 7");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("PI degree:         1"), std::string::npos) << r.out;
}

TEST(Cli, InputErrorsExitOne) {
  EXPECT_EQ(run_cli("pideg family no-such-family --n 2 --r 3").exit_code, 1);
  EXPECT_EQ(run_cli("pideg matrix --input /nonexistent.json --r 3").exit_code, 1);
  EXPECT_EQ(run_cli("verify no-such-suite").exit_code, 1);
  // multiparameter families have no closed form to sweep against
  EXPECT_EQ(run_cli("sweep weyl-multi --n 2 --r 3").exit_code, 1);
  // out-of-range family size
  EXPECT_EQ(run_cli("sweep euclidean-even --n 1 --r 3..4").exit_code, 1);
}

TEST(Cli, SweepMatchesAndIsDeterministic) {
  RunResult a = run_cli("sweep euclidean-odd --n 1..3 --r 2..9 --format csv");
  RunResult b = run_cli("sweep euclidean-odd --n 1..3 --r 2..9 --format csv");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("family,n,r,ell,h,pi_degree,closed_form,match"), std::string::npos);
  EXPECT_EQ(a.out.find("false"), std::string::npos);

  RunResult js1 = run_cli("sweep symplectic --n 1..2 --r 2..6 --format json");
  RunResult js2 = run_cli("sweep symplectic --n 1..2 --r 2..6 --format json");
  EXPECT_EQ(js1.exit_code, 0);
  EXPECT_EQ(js1.out, js2.out);
  for (const auto& row : json::parse(js1.out)) EXPECT_EQ(row["match"], true);
}

TEST(Cli, FamilyEmitsSpecAndMatrix) {
  RunResult m = run_cli("family weyl-single --n 2 --emit matrix");
  EXPECT_EQ(m.exit_code, 0);
  IntMatrix mat = matrix_from_json(json::parse(m.out));
  EXPECT_EQ(mat.rows(), 4);
  EXPECT_TRUE(mat.is_skew_symmetric());

  RunResult s = run_cli("family weyl-multi --n 2 --emit spec");
  EXPECT_EQ(s.exit_code, 0);
  SpecPtr spec = spec_from_json(json::parse(s.out));
  EXPECT_EQ(spec->size(), 4);
  EXPECT_TRUE(spec->delta_image(3, 2) != nullptr);
}

TEST(Cli, RemovalRoundTripsThroughJson) {
  std::string spec_path = std::string(::testing::TempDir()) + "/weyl1.json";
  {
    RunResult s = run_cli("family weyl-single --n 1 --emit spec --output " + spec_path);
    EXPECT_EQ(s.exit_code, 0);
  }
  RunResult r = run_cli("removal --input " + spec_path);
  EXPECT_EQ(r.exit_code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["ore_generators"].size(), 2u);
  EXPECT_EQ(j["steps"].size(), 1u);
  EXPECT_EQ(j["steps"][0]["removed_var"], "x1");

  RunResult f = run_cli("removal weyl-multi --n 2");
  EXPECT_EQ(f.exit_code, 0);
  EXPECT_EQ(json::parse(f.out)["ore_generators"].size(), 4u);

  // a cyclotomic spec keeps its generic lift through JSON, so removal still
  // constructs the higher derivations soundly at a root of unity
  std::string cyc_path = std::string(::testing::TempDir()) + "/weyl1_cyc.json";
  {
    RunResult s = run_cli("family weyl-single --n 1 --r 5 --emit spec --output " + cyc_path);
    EXPECT_EQ(s.exit_code, 0);
  }
  RunResult rc = run_cli("removal --input " + cyc_path);
  EXPECT_EQ(rc.exit_code, 0);
  EXPECT_EQ(json::parse(rc.out)["ore_generators"].size(), 2u);
}

TEST(Cli, VerifySuitesPass) {
  EXPECT_EQ(run_cli("verify qarith").exit_code, 0);
  EXPECT_EQ(run_cli("verify pidegree").exit_code, 0);
  RunResult fam = run_cli("verify families");
  EXPECT_EQ(fam.exit_code, 0);
  EXPECT_NE(fam.out.find("verification passed"), std::string::npos);
}

TEST(Cli, RunManifest) {
  std::string path = std::string(::testing::TempDir()) + "/manifest.json";
  {
    std::ofstream out(path);
    out << R"({"command": "pideg", "family": "matrices-single", "n": 3, "r": 5, "format": "json"})";
  }
  RunResult r = run_cli("run --manifest " + path);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(json::parse(r.out)["pi_degree"], "125");
  // identical manifests produce byte-identical output
  RunResult again = run_cli("run --manifest " + path);
  EXPECT_EQ(r.out, again.out);
  // two input sources is a usage error
  {
    std::ofstream out(path);
    out << R"({"command": "pideg", "family": "symplectic", "input": "x.json", "n": 1, "r": 3})";
  }
  EXPECT_EQ(run_cli("run --manifest " + path).exit_code, 1);
}

TEST(Cli, VerifyAllPassesOnPristineBuild) {
  RunResult all = run_cli("verify all");
  EXPECT_EQ(all.exit_code, 0);
  EXPECT_NE(all.out.find("verification passed"), std::string::npos);
  EXPECT_EQ(all.out.find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace qskew
