#include <gtest/gtest.h>

#include "qstab/io.hpp"
#include "qstab/lattices.hpp"

using namespace qstab;
using qstab::io::json;

namespace {

std::string sample(const std::string& name) { return std::string(QSTAB_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(GroupJson, TextAndExponentElements) {
  auto H = io::group_from_json(json::parse(R"({"d": 8, "n": 1, "gens": ["X1^4", {"phase": 0, "a": [0], "b": [4]}]})"));
  EXPECT_EQ(H.generators()[0], Pauli::X(8, 1, 0, 4));
  EXPECT_EQ(H.generators()[1], Pauli::Z(8, 1, 0, 4));
  auto again = io::group_from_json(io::group_json(H));
  EXPECT_EQ(again.generators(), H.generators());
}

TEST(GroupJson, SchemaErrors) {
  for (const char* bad : {R"({"n": 1, "generators": []})", R"({"d": 2, "n": 1, "generators": [{"a": [1, 0], "b": [0]}]})",
                          R"({"d": 2, "n": 1, "generators": "Z1"})", R"({"d": 1, "n": 1, "generators": []})",
                          R"({"d": 3, "n": 1, "generators": ["Q1"]})"}) {
    try {
      io::group_from_json(json::parse(bad));
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
    }
  }
}

TEST(Analyze, GoldenQubitInQudit) {
  auto out = io::cmd_analyze(io::read_json_file(sample("qubit_in_qudit8.json")));
  EXPECT_EQ(out.exit_code, 0);
  const json& r = out.document["report"];
  EXPECT_EQ(r["dim_protected"], 2);
  EXPECT_EQ(r["quotient_divisors"], json::array({2}));
  EXPECT_EQ(r["classification"], "GENERAL");
  EXPECT_EQ(out.document["tool"]["version"], io::kVersion);
  EXPECT_TRUE(out.document["conventions"].contains("charge_direction"));
  // deterministic output
  EXPECT_EQ(out.document.dump(), io::cmd_analyze(io::read_json_file(sample("qubit_in_qudit8.json"))).document.dump());
}

TEST(Analyze, ValidationErrorsExitTwo) {
  auto out = io::cmd_analyze(io::read_json_file(sample("not_abelian.json")));
  EXPECT_EQ(out.exit_code, 2);
  EXPECT_EQ(out.document["error"]["kind"], "NotAbelian");
  EXPECT_EQ(out.document["error"]["detail"], json::array({0, 1}));

  auto scalar = io::cmd_analyze(json::parse(R"({"d": 2, "n": 1, "generators": ["X1 Z1"]})"));
  EXPECT_EQ(scalar.exit_code, 2);
  EXPECT_EQ(scalar.document["error"]["kind"], "ContainsScalar");
}

TEST(Report, RoundTripThroughJsonStillVerifies) {
  auto H = io::group_from_json(io::read_json_file(sample("z2_in_d4.json")));
  json r = io::report_json(analyze(H));
  auto parsed = io::report_from_json(json::parse(r.dump()));
  EXPECT_EQ(io::report_json(parsed)["quotient_divisors"], r["quotient_divisors"]);
  EXPECT_TRUE(verify_report(H, parsed).passed());

  auto ok = io::cmd_oracle_verify(io::group_json(H), json{{"report", r}}, 200000);
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_EQ(ok.document["oracle"]["verdict"], "pass");

  r["dim_protected"] = 3;
  auto bad = io::cmd_oracle_verify(io::group_json(H), r, 200000);
  EXPECT_EQ(bad.exit_code, 3);
  EXPECT_EQ(bad.document["oracle"]["checks"]["dimension"], false);

  auto too_large = io::cmd_oracle_verify(io::group_json(H), json(), 2);
  EXPECT_EQ(too_large.exit_code, 2);
  EXPECT_EQ(too_large.document["error"]["kind"], "TooLarge");
}

TEST(Graphs, SamplesMatchBuiltInLattices) {
  EXPECT_EQ(io::read_json_file(sample("torus2x2.json")), io::graph_json(lattices::torus_2x2()));
  EXPECT_EQ(io::read_json_file(sample("tetrahedron.json")), io::graph_json(lattices::tetrahedron()));
  EXPECT_EQ(io::read_json_file(sample("genus2.json")), io::graph_json(lattices::genus2_one_vertex()));
  auto g = io::graph_from_json(io::graph_json(lattices::torus_2x2()));
  EXPECT_EQ(io::graph_json(g), io::graph_json(lattices::torus_2x2()));
}

TEST(Kitaev, BuildVerifyAndTwist) {
  io::KitaevOptions opt;
  opt.d = 2;
  opt.verify = true;
  auto out = io::cmd_kitaev_build(io::read_json_file(sample("torus2x2.json")), opt);
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.document["report"]["dim_protected"], 4);
  EXPECT_EQ(out.document["oracle"]["verdict"], "pass");
  EXPECT_EQ(out.document["genus"], 1);

  io::KitaevOptions tw;
  tw.d = 4;
  tw.twist = io::read_json_file(sample("twist_c2.json"));
  auto t = io::cmd_kitaev_build(io::read_json_file(sample("torus2x2.json")), tw);
  EXPECT_EQ(t.document["report"]["dim_protected"], 32);
  EXPECT_EQ(t.document["modification"], "twist");

  io::KitaevOptions bad = tw;
  bad.twist = nullptr;
  bad.shift = io::read_json_file(sample("twist_c2.json"));  // 4 * 2 != 4
  auto b = io::cmd_kitaev_build(io::read_json_file(sample("torus2x2.json")), bad);
  EXPECT_EQ(b.exit_code, 2);
  EXPECT_EQ(b.document["error"]["kind"], "BadSplit");

  json broken = io::read_json_file(sample("torus2x2.json"));
  broken["faces"][0][0]["side"] = "right";
  EXPECT_EQ(io::cmd_kitaev_build(broken, opt).document["error"]["kind"], "BadSurface");
}

TEST(Canonicalize, FreeAndNotFree) {
  auto out = io::cmd_canonicalize(io::read_json_file(sample("bell_pair.json")));
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.document["conjugated_generators"][0]["b"], json::array({1, 0}));
  auto nf = io::cmd_canonicalize(io::read_json_file(sample("z2_in_d4.json")));
  EXPECT_EQ(nf.exit_code, 2);
  EXPECT_EQ(nf.document["error"]["kind"], "NotFree");
}

TEST(Render, TextFormat) {
  auto out = io::cmd_analyze(io::read_json_file(sample("qubit_in_qudit8.json")));
  std::string text = io::render(out, true);
  EXPECT_NE(text.find("dim V^H: 2"), std::string::npos);
  EXPECT_NE(text.find("classification: GENERAL"), std::string::npos);
  std::string err = io::render(io::cmd_analyze(io::read_json_file(sample("not_abelian.json"))), true);
  EXPECT_EQ(err.rfind("error: NotAbelian", 0), 0u);
}
