#include <gtest/gtest.h>

#include <cstdlib>

#include "sciwb/catalog.hpp"
#include "sciwb/cli.hpp"

namespace sciwb {
namespace {

RunReport run(std::vector<std::string> args) { return dispatch(args); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidArgument;
}

TEST(Catalog, ShippedCatalogLoads) {
  const auto c = load_catalog(std::string(SCIWB_DATA_DIR) + "/catalog.json");
  EXPECT_GE(c.spectral_pair_count(), 30u);
  bool has_degenerate = false;
  for (const auto& e : c.integration) has_degenerate = has_degenerate || e.degenerate;
  EXPECT_TRUE(has_degenerate);
  ASSERT_FALSE(c.koopman.empty());
  EXPECT_EQ(c.koopman.front().maps.size(), 3u);
}

TEST(Catalog, DegenerateFlag) {
  const auto c = parse_catalog(R"({"entries":[{"problem":"integration","params":{"interval":["3/2","3/2"]}}]})");
  ASSERT_EQ(c.integration.size(), 1u);
  EXPECT_TRUE(c.integration[0].degenerate);
}

TEST(Catalog, ErrorsCarryLocation) {
  try {
    parse_catalog(R"({"entries":[{"problem":"integration","params":{"interval":[0,1]}},{"problem":"fluid","params":{}}]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CatalogError);
    EXPECT_NE(std::string(e.what()).find("/entries/1/problem"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { parse_catalog("{not json"); }), Errc::CatalogError);
  EXPECT_EQ(code_of([] { parse_catalog(R"({"entries":[{"problem":"integration","params":{"interval":[1,0]}}]})"); }),
            Errc::CatalogError);
  EXPECT_EQ(code_of([] {
              parse_catalog(R"({"entries":[{"problem":"spectral","params":{"domain":[0,1],
                 "pairs":[{"operator":{"kind":"fourier"},"window":"1/2"}]}}]})");
            }),
            Errc::CatalogError);
  EXPECT_EQ(code_of([] { parse_catalog(R"({"entries":[{"problem":"koopman","params":{"N":2,"map":[1,3]}}]})"); }),
            Errc::CatalogError);
  EXPECT_EQ(code_of([] { load_catalog("/nonexistent/catalog.json"); }), Errc::CatalogError);
}

TEST(Cli, IntegrateTowerExample) {
  const auto r = run({"integrate", "tower", "--interval", "0", "1", "--function", "poly:0,1", "--n", "1024"});
  EXPECT_TRUE(r.ok());
  const auto& row = r.result["stages"][0];
  EXPECT_EQ(row["value"]["exact"], "1023/2048");
  EXPECT_NEAR(row["value"]["approx"].get<double>(), 0.5, 1e-3);
}

TEST(Cli, FamilyClassifyExample) {
  const auto r = run({"family", "classify", "--heights", "0,2", "--k", "2"});
  EXPECT_EQ(r.result["verdict"], "(F,T,T)");
}

TEST(Cli, CounterexampleExamples) {
  const auto id = run({"degrees", "counterexample", "--class", "id"});
  EXPECT_EQ(id.result["verdict"].get<std::string>().rfind("carrier clash", 0), 0u);
  const auto cont = run({"degrees", "counterexample", "--class", "cont"});
  EXPECT_EQ(cont.result["verdict"], "Infeasible");
  EXPECT_TRUE(cont.ok());
}

TEST(Cli, JsonModeIsVersionedAndDeterministic) {
  const std::vector<std::string> args{"--json", "integrate", "reduce", "--to", "-1", "3", "--samples", "20"};
  const auto a = run(args).render();
  const auto b = run(args).render();
  EXPECT_EQ(a, b);
  const auto doc = Json::parse(a);
  EXPECT_EQ(doc["schema"], kReportSchema);
  EXPECT_EQ(doc["command"], "integrate reduce");
  EXPECT_EQ(doc["seed"], 0);
  EXPECT_TRUE(doc["ok"].get<bool>());
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("SCI_WORKBENCH_SEED", "42", 1);
  EXPECT_EQ(run({"family", "classify", "--heights", "1", "--k", "1"}).seed, 42u);
  ::setenv("SCI_WORKBENCH_SEED", "x", 1);
  EXPECT_EQ(code_of([] { run({"family", "classify", "--heights", "1", "--k", "1"}); }), Errc::UsageError);
  ::unsetenv("SCI_WORKBENCH_SEED");
}

TEST(Cli, UsageErrorsEchoGrammar) {
  try {
    run({"integrate", "tower"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UsageError);
    EXPECT_NE(std::string(e.what()).find("integrate tower"), std::string::npos);
  }
  EXPECT_EQ(code_of([] { run({"degrees", "counterexample", "--class", "smooth"}); }), Errc::UsageError);
  EXPECT_EQ(code_of([] { run({"koopman", "finite", "--target", "pseudo"}); }), Errc::UsageError);
  EXPECT_EQ(code_of([] { run({"--catalog", "/nonexistent.json", "spectral", "decide"}); }), Errc::CatalogError);
  EXPECT_EQ(run({"--help"}).command, "help");
}

TEST(Cli, ReductionSpecRoundTrip) {
  const std::string dir = std::string(SCIWB_DATA_DIR) + "/reductions/";
  const auto v = run({"reduce", "verify", "--spec", dir + "unit_to_0_2.json", "--samples", "20"});
  EXPECT_TRUE(v.ok());
  const auto c = run({"reduce", "compose", "--first", dir + "unit_to_0_2.json", "--second", dir + "0_2_to_m1_3.json",
                      "--samples", "20"});
  EXPECT_TRUE(c.ok());
  // The composite spec rebuilds into the same reduction.
  const auto again = reduction_from_json(c.result["spec"]);
  EXPECT_EQ(reduction_to_json(again).dump(), c.result["spec"].dump());
  EXPECT_TRUE(run({"reduce", "pullback", "--spec", dir + "strip_const5.json"}).ok());
}

TEST(Cli, ReductionSpecRejectsUnknownRule) {
  EXPECT_EQ(code_of([] { reduction_from_json(Json::parse(R"({"plan":{"rule":"fourier","params":{}}})")); }),
            Errc::CatalogError);
  EXPECT_EQ(code_of([] {
              reduction_from_json(Json::parse(
                  R"({"source":"integrate[0,1]","target":"integrate[0,3]","plan":{"rule":"interval_affine","params":{"from":"[0,1]","to":"[0,2]"}}})"));
            }),
            Errc::CatalogError);
}

TEST(Cli, EveryCommandRuns) {
  const std::vector<std::vector<std::string>> cmds{
      {"integrate", "adversary", "--n", "5"},
      {"spectral", "decide"},
      {"spectral", "stabilize"},
      {"spectral", "reduce", "--samples", "10", "--stabilizer", "finite:|5"},
      {"koopman", "finite", "--n", "3"},
      {"koopman", "finite", "--map", "2,1", "--target", "apeps", "--epsilon", "0.1", "--grid", "0.025"},
      {"certify", "package", "--samples", "10"},
      {"certify", "package", "--family", "spectral", "--samples", "10"},
      {"certify", "package", "--drop", "C2", "--samples", "10"},
      {"certify", "saturate", "--samples", "10"},
      {"degrees", "join", "--samples", "10"},
      {"degrees", "meet", "--samples", "10"},
  };
  for (const auto& c : cmds) {
    const auto r = run(c);
    EXPECT_TRUE(r.ok()) << r.command << "\n" << r.render();
    EXPECT_FALSE(r.checks.empty()) << r.command;
  }
}

}  // namespace
}  // namespace sciwb
