#include "l1adm/config.hpp"
#include "l1adm/io.hpp"
#include "support/checks.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace l1adm;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
  fs::path const p = fs::temp_directory_path() / ("l1adm_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_text(const fs::path& p, const std::string& text)
{
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST(Io, BinaryVectorRoundTripIsExact)
{
  Rng rng(1);
  CVector v = test::random_cvector(rng, 33);
  v[3] = Complex(-0.0, 1e-300);
  fs::path const dir = scratch_dir("io_bin");
  write_vector(dir / "v.bin", v);
  CVector const back = read_vector(dir / "v.bin");
  EXPECT_EQ(back, v);
  EXPECT_EQ(fs::file_size(dir / "v.bin"), 16u + 33u * 16u);
}

TEST(Io, BinaryLayoutIsLittleEndianPairs)
{
  fs::path const dir = scratch_dir("io_layout");
  CVector v(1);
  v << Complex(1.0, -2.0);
  write_vector_binary(dir / "v.bin", v);
  std::ifstream in(dir / "v.bin", std::ios::binary);
  std::string const bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  ASSERT_EQ(bytes.size(), 32u);
  EXPECT_EQ(bytes.substr(0, 8), "ADL1VEC1");
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 1u);
  // 1.0 = 0x3FF0000000000000, -2.0 = 0xC000000000000000
  EXPECT_EQ(static_cast<unsigned char>(bytes[16 + 7]), 0x3Fu);
  EXPECT_EQ(static_cast<unsigned char>(bytes[16 + 6]), 0xF0u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[24 + 7]), 0xC0u);
}

TEST(Io, CsvVectorsAcceptRealAndComplexLines)
{
  fs::path const dir = scratch_dir("io_csv");
  write_text(dir / "v.csv", "1.5\n-2,0.25\n\n3e-1\n");
  CVector const v = read_vector(dir / "v.csv");
  ASSERT_EQ(v.size(), 3);
  EXPECT_EQ(v[0], Complex(1.5, 0));
  EXPECT_EQ(v[1], Complex(-2, 0.25));
  EXPECT_EQ(v[2], Complex(0.3, 0));

  Rng rng(2);
  CVector const w = test::random_cvector(rng, 10);
  write_vector(dir / "w.csv", w);
  EXPECT_EQ(read_vector(dir / "w.csv"), w);
}

TEST(Io, MalformedFilesRaiseIoError)
{
  fs::path const dir = scratch_dir("io_bad");
  write_text(dir / "bad.csv", "1\nabc\n");
  EXPECT_THROW(read_vector(dir / "bad.csv"), IoError);
  write_text(dir / "bad.bin", "NOTAVECTORFILE!!");
  EXPECT_THROW(read_vector(dir / "bad.bin"), IoError);
  EXPECT_THROW(read_vector(dir / "missing.bin"), IoError);
  write_text(dir / "m.csv", "1,2\n3,4\n");
  EXPECT_THROW(read_dense_matrix(dir / "m.csv", 3, 2), IoError);
}

TEST(Io, DenseMatrixFormats)
{
  fs::path const dir = scratch_dir("io_matrix");
  write_text(dir / "real.csv", "1,2,3\n4,5,6\n");
  CMatrix const r = read_dense_matrix(dir / "real.csv", 2, 3);
  EXPECT_EQ(r(1, 2), Complex(6, 0));
  write_text(dir / "cplx.csv", "1,1,2,2\n3,3,4,-4\n");
  CMatrix const c = read_dense_matrix(dir / "cplx.csv", 2, 2);
  EXPECT_EQ(c(1, 1), Complex(4, -4));
  EXPECT_EQ(c(0, 1), Complex(2, 2));
}

TEST(Config, SolveConfigRoundTrip)
{
  Json const j = Json::parse(R"({
    "operator": {"kind": "wht", "rows": 30, "cols": 128, "seed": 7},
    "data": {"k": 5, "noise": {"sigma": 0.01, "snr_db": null, "impulse_fraction": 0.02}, "seed": 3},
    "model": {"family": "qp", "param": 0.001},
    "solver": {"name": "padm", "eps": 1e-5, "max_iter": 500, "stop": "res", "tau": 0.5}
  })");
  SolveConfig const c = solve_config_from_json(j);
  EXPECT_EQ(c.op.kind, OperatorKind::PartialWalshHadamard);
  EXPECT_EQ(c.data.k, 5);
  EXPECT_EQ(c.model.family, ModelFamily::QP);
  EXPECT_EQ(c.solver.stop, StopRule::Res);
  EXPECT_EQ(*c.solver.tau, 0.5);
  Json const again = to_json(solve_config_from_json(to_json(c)));
  EXPECT_EQ(again, to_json(c));
  EXPECT_EQ(config_hash(again), config_hash(to_json(c)));
  EXPECT_EQ(config_hash(again).size(), 16u);
}

TEST(Config, RejectsUnknownKeysAndBadValues)
{
  EXPECT_THROW(solve_config_from_json(Json::parse(R"({"operator": {"kind": "dense"}, "solvr": {}})")),
               InvalidParameter);
  EXPECT_THROW(solve_config_from_json(Json::parse(R"({"operator": {"kind": "fourier"}})")), InvalidParameter);
  EXPECT_THROW(solve_config_from_json(Json::parse(R"({"operator": {"kind": "dense", "rows": "x"}})")),
               InvalidParameter);
  EXPECT_THROW(solve_config_from_json(Json::parse(R"({"model": {}})")), InvalidParameter);
}

TEST(Config, ExperimentConfigRoundTrip)
{
  ExperimentConfig c = default_experiment_config(Protocol::RaceBpdn);
  c.cells = {{0.25, 0.125}};
  c.trials = 4;
  Json const j = to_json(c);
  ExperimentConfig const back = experiment_config_from_json(j);
  EXPECT_EQ(to_json(back), j);
  EXPECT_EQ(back.cells.size(), 1u);
  EXPECT_EQ(back.cells[0].k_ratio, 0.125);

  Json partial = {{"protocol", "race-bp"}, {"n", 512}};
  ExperimentConfig const d = experiment_config_from_json(partial);
  EXPECT_EQ(d.n, 512);
  EXPECT_EQ(d.eps, default_experiment_config(Protocol::RaceBp).eps);
}

TEST(Config, HashIsFnv1aOfDump)
{
  // FNV-1a 64 of "{}" computed by hand from the published constants
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : std::string("{}")) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  EXPECT_EQ(config_hash(Json::object()), buf);
}
