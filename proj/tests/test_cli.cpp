#include "l1adm/commands.hpp"
#include "l1adm/config.hpp"
#include "l1adm/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace l1adm;
namespace fs = std::filesystem;

namespace {

const fs::path kCli = L1ADM_CLI_PATH;
const fs::path kTinyBp = fs::path(L1ADM_DATA_DIR) / "tiny_bp" / "config.json";

fs::path scratch_dir(const std::string& name)
{
  fs::path const p = fs::temp_directory_path() / ("l1adm_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome run_cli(const std::string& args, const fs::path& dir)
{
  std::string const cmd = kCli.string() + " " + args + " >" + (dir / "stdout").string() + " 2>" +
                          (dir / "stderr").string();
  int const status = std::system(cmd.c_str());
  Outcome o;
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.out = slurp(dir / "stdout");
  o.err = slurp(dir / "stderr");
  return o;
}

}  // namespace

TEST(Cli, BundledExampleConverges)
{
  fs::path const dir = scratch_dir("tiny");
  Outcome const o = run_cli("solve " + kTinyBp.string() + " --out " + (dir / "out").string(), dir);
  ASSERT_EQ(o.code, 0) << o.out << o.err;
  Json const result = load_json_file(dir / "out" / "result.json");
  EXPECT_LE(result.at("rel_res").get<double>(), 1e-10);
  EXPECT_EQ(result.at("status").get<std::string>(), "converged");
  EXPECT_TRUE(result.contains("config_hash"));
  CVector const x = read_vector(dir / "out" / "x.bin");
  CVector const x_csv = read_vector(dir / "out" / "x.csv");
  CVector const x_true = read_vector(kTinyBp.parent_path() / "x_true.csv");
  EXPECT_EQ(x, x_csv);
  EXPECT_LE((x - x_true).norm(), 1e-8);
}

TEST(Cli, PrimalSolverOnBundledExample)
{
  fs::path const dir = scratch_dir("tiny_padm");
  Outcome const o = run_cli("solve " + kTinyBp.string() + " --solver padm --out " + (dir / "out").string(), dir);
  EXPECT_EQ(o.code, 0) << o.out << o.err;
}

TEST(Cli, MissingConfigIsAnInputError)
{
  fs::path const dir = scratch_dir("missing");
  fs::path const missing = dir / "nope.json";
  Outcome const o = run_cli("solve " + missing.string(), dir);
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find(missing.string()), std::string::npos) << o.err;
}

TEST(Cli, IterationCapGivesExitTwo)
{
  fs::path const dir = scratch_dir("cap");
  Outcome const o = run_cli("solve " + kTinyBp.string() + " --max-iter 1 --out " + (dir / "out").string(), dir);
  EXPECT_EQ(o.code, 2) << o.out << o.err;
  EXPECT_TRUE(fs::exists(dir / "out" / "x.bin"));
}

TEST(Cli, UnknownProtocolAndBadFlags)
{
  fs::path const dir = scratch_dir("badproto");
  Outcome const o = run_cli("experiment table-7 --out " + (dir / "out").string(), dir);
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("race-qp"), std::string::npos) << o.err;
  EXPECT_EQ(run_cli("solve", dir).code, 1);
  EXPECT_EQ(run_cli("frobnicate", dir).code, 1);
  EXPECT_EQ(run_cli("solve " + kTinyBp.string() + " --model lasso --out " + (dir / "o2").string(), dir).code, 1);
  EXPECT_EQ(run_cli("--version", dir).code, 0);
}

TEST(Cli, OverridesSelectTheModel)
{
  fs::path const dir = scratch_dir("override");
  std::ostringstream out, err;
  SolveOverrides o;
  o.mu = 1e-3;
  o.eps = 1e-8;
  o.max_iter = 5000;
  int const code = cmd_solve(kTinyBp, o, dir / "out", out, err);
  EXPECT_EQ(code, 0) << err.str();
  Json const result = load_json_file(dir / "out" / "result.json");
  EXPECT_EQ(result.at("config").at("model").at("family").get<std::string>(), "qp");
  EXPECT_NE(out.str().find("QP"), std::string::npos);
}

TEST(Cli, SyntheticConfigWithTransformOperator)
{
  fs::path const dir = scratch_dir("synthetic");
  std::ofstream(dir / "c.json") << R"({
    "operator": {"kind": "partial-dct", "rows": 60, "cols": 200, "seed": 4},
    "data": {"k": 6, "seed": 9},
    "model": {"family": "bp"},
    "solver": {"name": "dadm", "eps": 1e-10, "stop": "res", "max_iter": 5000}
  })";
  Outcome const o = run_cli("solve " + (dir / "c.json").string() + " --out " + (dir / "out").string(), dir);
  EXPECT_EQ(o.code, 0) << o.out << o.err;
  EXPECT_NE(o.out.find("RelErr"), std::string::npos);
}

TEST(Cli, ExperimentRefusesForeignOutputDirectory)
{
  fs::path const dir = scratch_dir("experiment");
  std::string const base = "experiment race-bp --n 128 --trials 1 --out " + (dir / "out").string();
  ASSERT_EQ(run_cli(base, dir).code, 0);
  for (const char* f : {"summary.csv", "trials.csv", "curves.csv", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
  }
  EXPECT_EQ(run_cli(base, dir).code, 0);  // same config: allowed
  Outcome const clash = run_cli(base + " --seed 5", dir);
  EXPECT_EQ(clash.code, 1);
  EXPECT_NE(clash.err.find("--force"), std::string::npos);
  EXPECT_EQ(run_cli(base + " --seed 5 --force", dir).code, 0);
  Json const manifest = load_json_file(dir / "out" / "manifest.json");
  EXPECT_EQ(manifest.at("seed").get<std::uint64_t>(), 5u);
}
