#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "spectra/cli.hpp"
#include "spectra/exact_linalg.hpp"
#include "test_util.hpp"

namespace spectra {
namespace {

const std::string kData = SPECTRA_TEST_DATA_DIR;

std::string data(const std::string& name) { return kData + "/" + name; }

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// Report without the fields that depend on the invocation (timing, paths).
Json stable(const std::string& text) {
  Json r = Json::parse(text);
  r.erase("elapsed_ms");
  r.erase("arguments");
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct GoldenCase {
  std::string golden;
  std::vector<std::string> args;
  int code;
};

class GoldenTest : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(GoldenTest, ReportMatches) {
  const GoldenCase& c = GetParam();
  const CliRun r = run(c.args);
  EXPECT_EQ(r.code, c.code);
  EXPECT_EQ(stable(r.out), Json::parse(slurp(data("golden/" + c.golden + ".json"))));
}

INSTANTIATE_TEST_SUITE_P(
    Cli, GoldenTest,
    ::testing::Values(
        GoldenCase{"analyze_unbounded", {"analyze", data("unbounded_l1.json")}, 0},
        GoldenCase{"analyze_singleton", {"analyze", data("singleton_l1.json")}, 0},
        GoldenCase{"analyze_simplex", {"analyze", data("simplex_l1.json")}, 0},
        GoldenCase{"certify_simplex", {"certify", "--l1", data("simplex_l1.json"), "--l2", data("simplex_l2.json")}, 0},
        GoldenCase{"certify_unbounded", {"certify", "--l1", data("unbounded_l1.json"), "--l2", data("unbounded_l2.json")}, 2},
        GoldenCase{"refute_unbounded_d0",
                   {"refute", "--l1", data("unbounded_l1.json"), "--l2", data("unbounded_l2.json"), "--degree", "0"}, 2},
        GoldenCase{"refute_unbounded_d1",
                   {"refute", "--l1", data("unbounded_l1.json"), "--l2", data("unbounded_l2.json"), "--degree", "1"}, 2},
        GoldenCase{"refute_singleton_d3",
                   {"refute", "--l1", data("singleton_l1.json"), "--l2", data("singleton_l2.json"), "--degree", "3"}, 2},
        GoldenCase{"verify_identity",
                   {"verify", "--l1", data("singleton_l1.json"), "--l2", data("singleton_l1.json"), "--cert",
                    data("singleton_identity_cert.json")},
                   0},
        GoldenCase{"verify_tampered",
                   {"verify", "--l1", data("singleton_l1.json"), "--l2", data("singleton_l1.json"), "--cert",
                    data("singleton_identity_cert_tampered.json")},
                   1},
        GoldenCase{"eval_unbounded_origin", {"eval", "--pencil", data("unbounded_l1.json"), "--point", "0,0"}, 0},
        GoldenCase{"eval_singleton_tuple",
                   {"eval", "--pencil", data("singleton_l1.json"), "--tuple", data("tuple_x_diag01.json")}, 0}),
    [](const ::testing::TestParamInfo<GoldenCase>& info) { return info.param.golden; });

TEST(CliPlotTest, GoldenCsv) {
  const CliRun r = run({"plot", "--pencil", data("unbounded_l1.json"), "--window", "-2,2,-2,2", "--step", "1/4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(data("golden/plot_unbounded.csv")));
}

TEST(CliPlotTest, MembershipMatchesFacets) {
  const LinearPencil l = pencil_from_json(read_json_file(data("unbounded_l1.json")));
  const Polyhedron k = region_of(l);
  const RegionClassification cls = classify(k);
  std::istringstream csv(cmd_plot(l, parse_window("-2,2,-2,2"), Rational(1, 4)));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "x1,x2,member");
  std::size_t rows = 0, boundary = 0;
  while (std::getline(csv, line)) {
    const auto last = line.rfind(',');
    const PencilPoint x = parse_point(line.substr(0, last));
    bool inside = true, on_facet = false;
    for (std::size_t i : cls.facets) {
      const Rational v = k.constraints[i](x);
      inside = inside && v >= 0;
      on_facet = on_facet || v == 0;
    }
    EXPECT_EQ(line.substr(last + 1) == "1", inside) << line;
    boundary += on_facet;
    ++rows;
  }
  EXPECT_EQ(rows, 17u * 17u);
  EXPECT_GT(boundary, 0u);
}

TEST(CliThinShellTest, PayloadEqualsLibraryCall) {
  const LinearPencil l1 = pencil_from_json(read_json_file(data("simplex_l1.json")));
  const LinearPencil l2 = pencil_from_json(read_json_file(data("simplex_l2.json")));
  const CliRun a = run({"analyze", data("simplex_l1.json")});
  EXPECT_EQ(Json::parse(a.out)["result"], cmd_analyze(l1).result);
  const CliRun c = run({"certify", "--l1", data("simplex_l1.json"), "--l2", data("simplex_l2.json")});
  EXPECT_EQ(Json::parse(c.out)["result"], cmd_certify(l1, l2, CliConfig{}).result);
  const EngineCertificate e = certify_auto(l1, l2);
  ASSERT_TRUE(e.exact);
  EXPECT_EQ(Json::parse(c.out)["result"]["certificate"], to_json(*e.exact));
  const CliRun p = run({"eval", "--pencil", data("simplex_l1.json"), "--point", "1/3,1/3"});
  EXPECT_EQ(Json::parse(p.out)["result"], cmd_eval(l1, PencilPoint{Rational(1, 3), Rational(1, 3)}).result);
}

TEST(CliThinShellTest, Deterministic) {
  const std::vector<std::string> args{"certify", "--l1", data("simplex_l1.json"), "--l2", data("simplex_l2.json")};
  EXPECT_EQ(stable(run(args).out), stable(run(args).out));
}

TEST(CliCertifyTest, WritesVerifiableCertificate) {
  const std::string out = ::testing::TempDir() + "/simplex_cert.json";
  const CliRun c = run({"certify", "--l1", data("simplex_l1.json"), "--l2", data("simplex_l2.json"), "-o", out});
  ASSERT_EQ(c.code, 0);
  const CliRun v = run({"verify", "--l1", data("simplex_l1.json"), "--l2", data("simplex_l2.json"), "--cert", out});
  EXPECT_EQ(v.code, 0);
  const Json rep = Json::parse(v.out);
  EXPECT_EQ(rep["result"]["mode"], "exact");
  EXPECT_TRUE(rep["result"]["pass"].get<bool>());
}

TEST(CliCertifyTest, NumericCertificateVerifiesAtTolerance) {
  const LinearPencil l1 = pencil_from_json(read_json_file(data("simplex_l1.json")));
  const LinearPencil l2 = pencil_from_json(read_json_file(data("simplex_l2.json")));
  const EngineCertificate e = certify_auto(l1, l2);
  const Json numeric = to_json(e.numeric);
  EXPECT_EQ(cmd_verify(l1, l2, numeric, 1e-8).exit_code, kExitOk);
  Json tampered = numeric;
  tampered["pencil"][0]["weight"] = tampered["pencil"][0]["weight"].get<double>() + 1e-3;
  const CommandOutcome bad = cmd_verify(l1, l2, tampered, 1e-8);
  EXPECT_EQ(bad.exit_code, kExitVerifyFailed);
  EXPECT_GT(bad.result["residual"].get<double>(), 1e-8);
}

TEST(CliCertifyTest, UnboundedInstanceReportsAmGmWitness) {
  const CliRun r = run({"certify", "--l1", data("unbounded_l1.json"), "--l2", data("unbounded_l2.json")});
  ASSERT_EQ(r.code, kExitInfeasible);
  const Json chain = Json::parse(r.out)["result"]["refutation"]["chain"];
  EXPECT_EQ(chain["mean"], "2/3");
  EXPECT_EQ(chain["sum_pr"], "3/4");
}

TEST(CliCertifyTest, PositivityFailureCarriesWitness) {
  const LinearPencil l1 = pencil_from_json(read_json_file(data("simplex_l1.json")));
  const LinearPencil l2 = LinearPencil({QMatrix::diagonal({Rational(-1)}), QMatrix::diagonal({Rational(0)}),
                                        QMatrix::diagonal({Rational(0)})});
  const CommandOutcome o = cmd_certify(l1, l2, CliConfig{});
  EXPECT_EQ(o.exit_code, kExitPrecondition);
  EXPECT_TRUE(o.result.contains("witness"));
}

TEST(CliCertifyTest, SdpMethodFindsTrivialCertificate) {
  const LinearPencil l1 = pencil_from_json(read_json_file(data("simplex_l1.json")));
  CliConfig config;
  config.method = Method::Sdp;
  config.degree = 0;
  const CommandOutcome o = cmd_certify(l1, l1, config);
  EXPECT_EQ(o.exit_code, kExitOk);
  EXPECT_TRUE(o.result["verification"]["pass"].get<bool>());
}

TEST(CliRefuteTest, TriviallyCertifiablePairIsFeasible) {
  const LinearPencil l1 = pencil_from_json(read_json_file(data("unbounded_l1.json")));
  const CommandOutcome o = cmd_refute(l1, l1, 0, CliConfig{});
  EXPECT_EQ(o.exit_code, kExitOk);
  EXPECT_EQ(o.result["search_status"], "Feasible");
  EXPECT_TRUE(o.result.contains("certificate"));
}

TEST(CliRefuteTest, SingletonInstanceDegreeThreeTrace) {
  const CliRun r = run({"refute", "--l1", data("singleton_l1.json"), "--l2", data("singleton_l2.json"), "--degree", "3"});
  ASSERT_EQ(r.code, kExitInfeasible);
  const Json rep = Json::parse(r.out)["result"]["refutation"];
  EXPECT_TRUE(rep["exact"].get<bool>());
  const std::string trace = rep["trace"].dump();
  EXPECT_NE(trace.find("constant coefficient"), std::string::npos);
  EXPECT_NE(trace.find("coefficient of x"), std::string::npos);
}

TEST(CliEvalTest, Examples) {
  const CliRun a = run({"eval", "--pencil", data("unbounded_l1.json"), "--point", "0,0"});
  EXPECT_TRUE(Json::parse(a.out)["result"]["psd"].get<bool>());
  const CliRun b = run({"eval", "--pencil", data("singleton_l1.json"), "--tuple", data("tuple_x_diag01.json")});
  const Json res = Json::parse(b.out)["result"];
  EXPECT_FALSE(res["psd"].get<bool>());
  // Oracle: eigenvalues of [[1,0,0,0],[0,1,0,1],[0,0,0,0],[0,1,0,0]].
  const Eigen::MatrixXd m = to_eigen(qmatrix_from_json(res["matrix"]));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  EXPECT_LT(es.eigenvalues()(0), -0.5);
  EXPECT_EQ(res["signature"]["negative"], 1);
}

TEST(CliErrorTest, ExitCodes) {
  EXPECT_EQ(run({"certify", "--l1", data("unbounded_l1.json"), "--l2", data("singleton_l2.json")}).code, kExitParse);
  EXPECT_EQ(run({"analyze", data("missing.json")}).code, kExitParse);
  EXPECT_EQ(run({"certify", "--l1", data("simplex_l1.json"), "--l2", data("simplex_l2.json"), "--degree", "5"}).code,
            kExitParse);
  EXPECT_EQ(run({"certify", "--l1", data("simplex_l1.json"), "--l2", data("simplex_l2.json"), "--tol", "0"}).code,
            kExitParse);
  EXPECT_EQ(run({"certify", "--l1", data("simplex_l1.json"), "--l2", data("simplex_l2.json"), "--method", "magic"}).code,
            kExitParse);
  EXPECT_EQ(run({"refute", "--l1", data("singleton_l1.json"), "--l2", data("singleton_l2.json"), "--degree", "9"}).code,
            kExitParse);
  EXPECT_EQ(run({"eval", "--pencil", data("unbounded_l1.json"), "--point", "0"}).code, kExitParse);
  EXPECT_EQ(run({"eval", "--pencil", data("unbounded_l1.json")}).code, kExitParse);
  EXPECT_EQ(run({"plot", "--pencil", data("singleton_l1.json"), "--window", "0,1,0,1", "--step", "1"}).code,
            kExitPrecondition);
  EXPECT_EQ(run({"certify", "--l1", data("singleton_l1.json"), "--l2", data("singleton_l2.json"), "--method", "simplex"}).code,
            kExitPrecondition);
  EXPECT_EQ(run({"frobnicate"}).code, kExitParse);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(CliConfigTest, Validation) {
  CliConfig c;
  EXPECT_NO_THROW(c.validate());
  c.degree = 4;
  EXPECT_NO_THROW(c.validate());
  c.degree = 5;
  EXPECT_THROW(c.validate(), ParseError);
  c = CliConfig{};
  c.tol = -1;
  EXPECT_THROW(c.validate(), ParseError);
  EXPECT_EQ(parse_method("one-var"), Method::OneVariable);
  EXPECT_THROW(parse_method("x"), ParseError);
}

}  // namespace
}  // namespace spectra
