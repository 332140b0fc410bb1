#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "divisor_lab/cli.hpp"

using namespace divlab;

namespace {

const std::string samples = DIVLAB_SAMPLES_DIR;

struct Run {
  int code;
  std::string out, err;
  Json json() const { return parse_json_text(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("divisor_lab_cli_" + name);
  std::ofstream(p) << content;
  return p.string();
}

}  // namespace

TEST(Cli, SolveExampleSystem) {
  const auto r = run({"solve", "--system", samples + "/s4_system.json"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j.at("schema"), "divisor-lab/1");
  const auto& t1 = j.at("reports").at(0);
  EXPECT_EQ(t1.at("theorem"), "theorem1");
  EXPECT_EQ(t1.at("breakdown").at("invariant_factor"), 5);
  EXPECT_EQ(t1.at("breakdown").at("centralizer_order"), 4);
  EXPECT_EQ(t1.at("bound"), 1);  // GCD(5, 4)
  EXPECT_EQ(j.at("reports").back().at("theorem"), "theorem2");
}

TEST(Cli, SolveOracleMatchesFast) {
  const auto fast = run({"solve", "--system", samples + "/klein_system.json"});
  const auto slow = run({"solve", "--system", samples + "/klein_system.json", "--oracle"});
  ASSERT_EQ(fast.code, exit_ok);
  EXPECT_EQ(fast.out, slow.out);
}

TEST(Cli, OneUnknownAddsHall) {
  const auto f = temp_file("hall.json", R"j({"group": "S3", "unknowns": ["x"], "coefficients": {"a": "(1,2)"},
    "equations": [{"word": "x^2 a x a", "eq1": true}]})j");
  const auto r = run({"solve", "--system", f});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  EXPECT_EQ(r.json().at("reports").at(1).at("theorem"), "hall");
}

TEST(Cli, RingSolve) {
  const auto r = run({"ring-solve", "--ring", samples + "/cubic_m2z2.json"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j.at("homogeneity_modulus"), 2);
  EXPECT_EQ(j.at("reports").at(0).at("solution_count"), 4);
  EXPECT_EQ(j.at("reports").at(0).at("bound"), 2);
}

TEST(Cli, Crossed) {
  const auto r = run({"crossed", "--action", samples + "/z2_on_z3.json"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j.at("direct_count"), 3);
  EXPECT_EQ(j.at("routes_agree"), true);
  EXPECT_EQ(j.at("reports").back().at("theorem"), "theorem4_corollary");
}

TEST(Cli, HomCheck) {
  const auto r = run({"hom-check", "--presentation", samples + "/cyclic_presentation.json"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j.at("condition_I"), true);
  EXPECT_EQ(j.at("condition_II"), true);
  EXPECT_EQ(j.at("divides"), true);
  EXPECT_EQ(j.at("lemma0_agrees"), true);
}

TEST(Cli, HomCheckNeedsDividingSubgroup) {
  const auto f = temp_file("pres.json", R"j({"generators": ["g"], "relators": ["g^4"], "deg": {"g": 1}, "n": 2,
    "group": "Z4", "subgroup": ["g"]})j");
  EXPECT_EQ(run({"hom-check", "--presentation", f}).code, exit_input);
}

TEST(Cli, GroupCommands) {
  const auto v = run({"group", "validate", "--group", samples + "/klein.json"});
  ASSERT_EQ(v.code, exit_ok) << v.err;
  EXPECT_EQ(v.json().at("order"), 4);
  const auto i = run({"group", "info", "--catalog", "Q8"});
  ASSERT_EQ(i.code, exit_ok);
  EXPECT_EQ(i.json().at("conjugacy_classes"), 5);
  EXPECT_EQ(i.json().at("abelianization"), parse_json_text("[2,2]"));
  EXPECT_EQ(run({"group", "info", "--catalog", "S3", "--group", samples + "/klein.json"}).code, exit_input);
}

TEST(Cli, ExploreWritesDeterministicFile) {
  const auto p1 = std::filesystem::temp_directory_path() / "divisor_lab_cli_e1.json";
  const auto p2 = std::filesystem::temp_directory_path() / "divisor_lab_cli_e2.json";
  for (const auto& p : {p1, p2}) {
    const auto r = run({"explore", "--question", "Q2", "--seed", "3", "--trials", "20", "--out", p.string()});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    EXPECT_TRUE(r.out.empty());
  }
  std::ifstream a(p1), b(p2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(parse_json_text(sa.str()).at("summary").at("trials"), 20);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"solve", "--system", temp_file("bad.json", "{\"group\": ")}).code, exit_input);
  EXPECT_EQ(run({"solve", "--system", samples + "/s4_system.json", "--cap", "100"}).code, exit_cap);
  EXPECT_EQ(run({"solve"}).code, exit_input);
  EXPECT_EQ(run({"frobnicate"}).code, exit_input);
  EXPECT_EQ(run({}).code, exit_input);
  EXPECT_EQ(run({"group", "validate", "--group", temp_file("nag.json", R"j({"table": [[0,1],[1,1]]})j")}).code,
            exit_input);
  EXPECT_EQ(run({"explore", "--question", "Q9"}).code, exit_input);
  EXPECT_EQ(run({"explore", "--max-order", "1000"}).code, exit_cap);
  EXPECT_EQ(run({"group", "info", "--catalog", "S7"}).code, exit_cap);
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, exit_ok);
  EXPECT_NE(help.out.find("explore"), std::string::npos);
}

TEST(Cli, FailedDivisibilityMapsToOne) {
  const auto reports = parse_json_text(R"j([{"divides": true}, {"divides": false}])j");
  EXPECT_EQ(detail::status_of(reports), exit_bound_failed);
  EXPECT_EQ(detail::status_of(parse_json_text(R"j([{"divides": true}])j")), exit_ok);
}
