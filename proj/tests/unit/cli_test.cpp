// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "commands.hpp"
#include "config.hpp"
#include "lindyn/error.hpp"
#include "registry.hpp"

namespace lindyn::cli {
namespace {

namespace fs = std::filesystem;

// A scratch directory removed when the test ends.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("lindyn_cli_" + name + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  fs::path write(const std::string& file, const std::string& text) const {
    std::ofstream(path_ / file) << text;
    return path_ / file;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

struct CmdResult {
  int code;
  std::string out;
  std::string err;
};

CmdResult run(const std::string& command, const CommandLine& line) {
  std::ostringstream out, err;
  const int code = run_command(command, line, out, err);
  return {code, out.str(), err.str()};
}

CommandLine with_config(const fs::path& path) {
  CommandLine line;
  line.config_path = path.string();
  return line;
}

ErrorCode code_of(const Json& j) {
  try {
    parse_config(j);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // unreachable in these tests
}

TEST(ConfigTest, Defaults) {
  const ExperimentConfig c = parse_config(Json::object());
  EXPECT_FALSE(c.preset);
  EXPECT_EQ(c.space, SpaceKind::L2);
  EXPECT_EQ(c.horizon, 200);
  EXPECT_EQ(c.tol, 1e-6);
  EXPECT_EQ(config_grid(c).half_width(), 64.0);
}

TEST(ConfigTest, ParsesFields) {
  const ExperimentConfig c = parse_config(Json::parse(R"({
    "operator": "ex3.6", "inverse": true, "space": "C0",
    "grid": {"L": 16, "h": 0.5}, "window": {"lo": -2, "hi": 3},
    "horizon": 50, "tol": 0.01, "kinds": ["CESARO_C0"],
    "expect": {"CESARO_C0": "NOT_SATISFIED_UP_TO_HORIZON"}, "seed": 9})"));
  EXPECT_EQ(*c.preset, "ex3.6");
  EXPECT_TRUE(c.inverse);
  EXPECT_EQ(c.space, SpaceKind::C0);
  EXPECT_EQ(config_grid(c).size(), 65u);
  EXPECT_EQ(c.window_lo, -2.0);
  EXPECT_EQ(c.window_hi, 3.0);
  EXPECT_EQ(c.kinds, std::vector<CriterionKind>{CriterionKind::CesaroC0});
  EXPECT_EQ(c.expect.at(CriterionKind::CesaroC0), Status::NotSatisfiedUpToHorizon);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_TRUE(config_operator(c).is_inverse());
}

TEST(ConfigTest, InlineOperator) {
  const ExperimentConfig c = parse_config(Json::parse(R"({"operator":
    {"alpha": {"kind": "translation", "shift": -1}, "weight": {"breakpoints": [], "values": [], "left_tail": 2}}})"));
  const CompositionOperator op = config_operator(c);
  EXPECT_EQ(op.step(3.0), 2.0);
  EXPECT_EQ(op.multiplier(3.0), 2.0);
}

TEST(ConfigTest, Rejections) {
  EXPECT_EQ(code_of(Json::parse(R"({"operator": "ex7.7"})")), ErrorCode::UnknownPreset);
  EXPECT_EQ(code_of(Json::parse(R"({"space": "L1"})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(Json::parse(R"({"space": "SEGAL"})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(Json::parse(R"({"grid": {"L": 3.3, "h": 0.25}})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(Json::parse(R"({"window": {"lo": 2, "hi": 1}})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(Json::parse(R"({"horizon": 0})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(Json::parse(R"({"tol": -1})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(Json::parse(R"({"kinds": ["FOO"]})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(Json::parse(R"({"expect": {"CESARO_C0": "MAYBE"}})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(Json::parse(R"({"operator": 3})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(Json::parse("[]")), ErrorCode::ParseError);
}

TEST(ConfigTest, FunctionSpecs) {
  const Grid grid = Grid::from_half_width(8.0, 0.25);
  const GridFunction unit = function_from_json(Json(nullptr), grid);
  EXPECT_EQ(unit.at_integer(0), Complex(1.0, 0.0));
  const GridFunction bump = function_from_json(Json::parse(R"({"bump": {"center": 2, "height": 3}})"), grid);
  EXPECT_EQ(bump.at_integer(2), Complex(3.0, 0.0));
  const GridFunction map = function_from_json(
      Json::parse(R"({"map": {"breakpoints": [0, 1], "values": [0, 2]}})"), grid);
  EXPECT_EQ(map.at_integer(1), Complex(2.0, 0.0));
  const Json rand = Json::parse(R"({"random": {"count": 4, "spread": 3}})");
  const GridFunction r1 = function_from_json(rand, grid, 11);
  const GridFunction r2 = function_from_json(rand, grid, 11);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(r1[i], r2[i]);
  EXPECT_THROW(function_from_json(Json::parse(R"({"wave": 1})"), grid), Error);
}

TEST(CommandTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run("frobnicate", {}).code, kExitUsage);
  EXPECT_EQ(run("classify", {}).code, kExitUsage);  // no operator
  CommandLine missing;
  missing.config_path = "/nonexistent/lindyn.json";
  EXPECT_EQ(run("classify", missing).code, kExitUsage);
  CommandLine unknown;
  unknown.preset = "ex0.0";
  const CmdResult r = run("classify", unknown);
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("UNKNOWN_PRESET"), std::string::npos) << r.err;
  CommandLine ids;
  ids.ids = {"ex3.5", "nope"};
  EXPECT_EQ(run("examples", ids).code, kExitUsage);
  CommandLine rem;
  rem.preset = "rem3.10";
  EXPECT_EQ(run("orbit", rem).code, kExitUsage);
}

TEST(CommandTest, MalformedConfigExitsTwo) {
  ScratchDir dir("malformed");
  EXPECT_EQ(run("classify", with_config(dir.write("a.json", "{not json"))).code, kExitUsage);
  EXPECT_EQ(run("classify", with_config(dir.write("b.json", R"({"operator":"ex3.6","tol":"x"})"))).code,
            kExitUsage);
}

TEST(CommandTest, ClassifyMatchesExpectations) {
  ScratchDir dir("classify");
  const auto good = dir.write("good.json", R"({"operator": "ex3.6", "window": {"lo": -2, "hi": 2},
    "kinds": ["SUPERCYCLIC_SOLID", "CESARO_SOLID"],
    "expect": {"SUPERCYCLIC_SOLID": "SATISFIED", "CESARO_SOLID": "NOT_SATISFIED_UP_TO_HORIZON"}})");
  const CmdResult ok = run("classify", with_config(good));
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  std::istringstream lines(ok.out);
  std::size_t count = 0;
  std::set<std::string> statuses;
  for (std::string line; std::getline(lines, line); ++count) {
    const Json j = Json::parse(line);
    if (j.contains("status")) statuses.insert(j["status"].get<std::string>());
  }
  EXPECT_EQ(count, 2u * 201u);
  EXPECT_EQ(statuses, (std::set<std::string>{"SATISFIED", "NOT_SATISFIED_UP_TO_HORIZON"}));

  const auto wrong = dir.write("wrong.json", R"({"operator": "ex3.6", "kinds": ["CESARO_SOLID"],
    "expect": {"CESARO_SOLID": "SATISFIED"}})");
  EXPECT_EQ(run("classify", with_config(wrong)).code, kExitFailure);
}

TEST(CommandTest, InverseFlagSelectsS) {
  ScratchDir dir("inverse");
  const auto cfg = dir.write("s.json", R"({"operator": "ex3.6", "window": {"lo": -2, "hi": 2}, "tol": 0.5,
    "kinds": ["CESARO_SOLID"], "expect": {"CESARO_SOLID": "SATISFIED"}})");
  EXPECT_EQ(run("classify", with_config(cfg)).code, kExitFailure);
  CommandLine line = with_config(cfg);
  line.inverse = true;
  const CmdResult r = run("classify", line);
  EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST(CommandTest, ClassifyBilateralShift) {
  CommandLine line;
  line.preset = "rem3.10";
  const CmdResult r = run("classify", line);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("HYPERCYCLIC_SOLID"), std::string::npos);
  line.inverse = true;
  EXPECT_EQ(run("classify", line).code, kExitUsage);
}

TEST(CommandTest, OutputIsDeterministic) {
  CommandLine line;
  line.preset = "ex3.7";
  const CmdResult a = run("classify", line);
  const CmdResult b = run("classify", line);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, b.err);
}

TEST(CommandTest, OutDirReceivesFiles) {
  ScratchDir dir("outdir");
  CommandLine line;
  line.preset = "ex3.8";
  line.out_dir = (dir.path() / "run").string();
  const CmdResult r = run("orbit", line);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream csv(dir.path() / "run" / "orbit.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "n,norm,cesaro_norm,scaled_dist");
}

TEST(CommandTest, OrbitWithTargetsReportsBestHits) {
  ScratchDir dir("targets");
  const auto cfg = dir.write("o.json", R"({"operator": "ex3.6", "grid": {"L": 32, "h": 0.25},
    "orbit": {"horizon": 20, "targets": [{"bump": {"center": 3}}], "mode": "plain"}})");
  const CmdResult r = run("orbit", with_config(cfg));
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("target 0: best n"), std::string::npos) << r.err;
}

TEST(CommandTest, PorosityScenes) {
  ScratchDir dir("porosity");
  const auto single = dir.write("s.json", R"({"grid": {"L": 4, "h": 0.5},
    "scene": {"kind": "singleton", "outer": 16, "inner": 16, "probe_deltas": [0.1]}})");
  EXPECT_EQ(run("porosity", with_config(single)).code, kExitOk);
  const auto corollary = dir.write("c.json", R"({"scene": {"kind": "corollary", "N": 20}})");
  const CmdResult c = run("porosity", with_config(corollary));
  EXPECT_EQ(c.code, kExitOk) << c.err;
  EXPECT_EQ(Json::parse(c.out)["decays"], true);
  const auto theorem = dir.write("t.json", R"({"grid": {"L": 12, "h": 0.5},
    "scene": {"kind": "theorem", "outer": 16, "inner": 16}})");
  const CmdResult t = run("porosity", with_config(theorem));
  EXPECT_EQ(t.code, kExitOk) << t.err;
  const auto bad = dir.write("b.json", R"({"scene": {"kind": "spiral"}})");
  EXPECT_EQ(run("porosity", with_config(bad)).code, kExitUsage);
}

TEST(CommandTest, AdjointRun) {
  ScratchDir dir("adjoint");
  const auto cfg = dir.write("a.json", R"({"operator": "ex4.3a", "window": {"lo": -1, "hi": 1}, "tol": 0.01,
    "expect": {"ADJOINT_SUPER": "SATISFIED", "ADJOINT_CESARO": "SATISFIED"},
    "adjoint": {"approximant_n": 3}})");
  const CmdResult r = run("adjoint", with_config(cfg));
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("\"approximant\""), std::string::npos);
  const auto wrong_kind = dir.write("k.json", R"({"operator": "ex4.3a", "kinds": ["CESARO_SOLID"]})");
  EXPECT_EQ(run("adjoint", with_config(wrong_kind)).code, kExitUsage);
}

TEST(RegistryTest, OnlyTheCesaroRateEntriesFail) {
  const Grid grid = Grid::from_half_width(64.0, 0.25);
  std::set<std::string> failing;
  std::size_t total = 0;
  for (const auto& e : example_registry()) {
    for (const auto& o : run_example(e, grid)) {
      ++total;
      if (!o.pass)
        failing.insert(o.id + " " + o.expectation.criterion + (o.expectation.inverse ? " S" : " T"));
    }
  }
  EXPECT_EQ(total, 23u);
  const std::set<std::string> known = {"ex3.5 CESARO_C0 T", "ex3.5 CESARO_SOLID T", "ex3.6 CESARO_SOLID S",
                                       "ex4.3a ADJOINT_CESARO T"};
  EXPECT_EQ(failing, known);
}

TEST(RegistryTest, Lookup) {
  ASSERT_NE(find_example("ex4.3b"), nullptr);
  EXPECT_EQ(find_example("ex4.3b")->expectations.size(), 2u);
  EXPECT_EQ(find_example("ex9"), nullptr);
  EXPECT_EQ(example_registry().size(), 8u);
}

TEST(CommandTest, ExamplesSubsetPasses) {
  CommandLine line;
  line.ids = {"ex3.7", "ex4.3b"};
  const CmdResult r = run("examples", line);
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  line.ids = {"ex3.5"};
  EXPECT_EQ(run("examples", line).code, kExitFailure);
}

}  // namespace
}  // namespace lindyn::cli
