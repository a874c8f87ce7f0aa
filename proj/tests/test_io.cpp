// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>

#include "lqo/benchmarks.hpp"
#include "lqo/h2.hpp"
#include "lqo/io.hpp"
#include "lqo/spectral.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace io = lqo::io;
namespace fs = std::filesystem;
using Eigen::MatrixXd;
using lqo::ErrorKind;
using lqo::Index;

namespace
{

class TempDir
{
public:
  TempDir()
  {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("lqo-io-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir()
  {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path &path() const { return path_; }

private:
  fs::path path_;
};

void write_text(const fs::path &p, const std::string &s)
{
  std::ofstream(p) << s;
}

std::string read_text(const fs::path &p)
{
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(MatrixMarket, RoundTripIsExact)
{
  TempDir tmp;
  const auto d = oracle::random_dense(7, 2, 3, 301);
  io::write_mtx(tmp.path() / "a.mtx", d.A);
  EXPECT_EQ(io::read_mtx_dense(tmp.path() / "a.mtx"), d.A);
  const auto sys = lqo::advection_diffusion({30, 1.0, 1.0});
  io::write_mtx(tmp.path() / "s.mtx", sys.A());
  const lqo::SparseMatrix back = io::read_mtx_sparse(tmp.path() / "s.mtx");
  EXPECT_EQ(MatrixXd(back), MatrixXd(sys.A()));
  // Either format can be read into either representation.
  EXPECT_EQ(MatrixXd(io::read_mtx_sparse(tmp.path() / "a.mtx")), d.A);
  EXPECT_EQ(io::read_mtx_dense(tmp.path() / "s.mtx"), MatrixXd(sys.A()));
}

TEST(MatrixMarket, SymmetricAndArrayInputs)
{
  TempDir tmp;
  write_text(tmp.path() / "sym.mtx",
             "%%MatrixMarket matrix coordinate real symmetric\n% comment\n3 3 3\n1 1 2.0\n3 1 -1.5\n2 2 4\n");
  MatrixXd expect(3, 3);
  expect << 2, 0, -1.5, 0, 4, 0, -1.5, 0, 0;
  EXPECT_EQ(io::read_mtx_dense(tmp.path() / "sym.mtx"), expect);
  // Array format is column-major.
  write_text(tmp.path() / "arr.mtx", "%%MatrixMarket matrix array real general\n2 3\n1\n2\n3\n4\n5\n6\n");
  MatrixXd arr(2, 3);
  arr << 1, 3, 5, 2, 4, 6;
  EXPECT_EQ(io::read_mtx_dense(tmp.path() / "arr.mtx"), arr);
  write_text(tmp.path() / "asym.mtx", "%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n3\n");
  MatrixXd s(2, 2);
  s << 1, 2, 2, 3;
  EXPECT_EQ(io::read_mtx_dense(tmp.path() / "asym.mtx"), s);
}

TEST(MatrixMarket, MalformedFilesAreIoErrors)
{
  TempDir tmp;
  EXPECT_LQO_ERROR(io::read_mtx_dense(tmp.path() / "missing.mtx"), ErrorKind::Io);
  write_text(tmp.path() / "bad.mtx", "hello\n");
  EXPECT_LQO_ERROR(io::read_mtx_dense(tmp.path() / "bad.mtx"), ErrorKind::Io);
  write_text(tmp.path() / "cplx.mtx", "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n");
  EXPECT_LQO_ERROR(io::read_mtx_dense(tmp.path() / "cplx.mtx"), ErrorKind::Io);
  write_text(tmp.path() / "range.mtx", "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n");
  EXPECT_LQO_ERROR(io::read_mtx_sparse(tmp.path() / "range.mtx"), ErrorKind::Io);
  write_text(tmp.path() / "short.mtx", "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n");
  EXPECT_LQO_ERROR(io::read_mtx_sparse(tmp.path() / "short.mtx"), ErrorKind::Io);
}

TEST(Hash, Fnv1a)
{
  // Published FNV-1a 64-bit test vectors.
  EXPECT_EQ(io::fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(io::fnv1a_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(io::fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(Bundle, FullRoundTripAndStableHash)
{
  TempDir tmp;
  const auto sys = testutil::sparse_of(oracle::random_dense(6, 2, 2, 302));
  const auto info = io::write_bundle(tmp.path() / "b1", sys, {{"note", "x"}});
  EXPECT_EQ(info.kind, "full");
  EXPECT_EQ(info.n, 6);
  EXPECT_EQ(info.m, 2);
  EXPECT_EQ(info.p, 2);
  EXPECT_EQ(info.hash.size(), 16U);
  EXPECT_EQ(io::write_bundle(tmp.path() / "b2", sys).hash, info.hash);
  const auto back = io::read_full_system(tmp.path() / "b1");
  EXPECT_EQ(MatrixXd(back.E()), MatrixXd(sys.E()));
  EXPECT_EQ(MatrixXd(back.A()), MatrixXd(sys.A()));
  EXPECT_EQ(back.B(), sys.B());
  EXPECT_EQ(back.C(), sys.C());
  for (Index k = 0; k < 2; ++k)
  {
    EXPECT_EQ(MatrixXd(back.M(k)), MatrixXd(sys.M(k)));
  }
  const auto via_manifest = io::read_bundle_info(tmp.path() / "b1" / "manifest.json");
  EXPECT_EQ(via_manifest.hash, info.hash);
  EXPECT_EQ(via_manifest.manifest["note"], "x");
  const auto other = io::write_bundle(tmp.path() / "b3", testutil::sparse_of(oracle::random_dense(6, 2, 2, 303)));
  EXPECT_NE(other.hash, info.hash);
}

TEST(Bundle, ReducedRoundTripAndKindCheck)
{
  TempDir tmp;
  const auto red = testutil::dense_of(oracle::random_dense(4, 1, 1, 304));
  const auto info = io::write_bundle(tmp.path() / "r", red);
  EXPECT_EQ(info.kind, "reduced");
  const auto back = io::read_reduced_system(tmp.path() / "r");
  EXPECT_EQ(back.E(), red.E());
  EXPECT_EQ(back.A(), red.A());
  EXPECT_EQ(back.M(0), red.M(0));
  // A reduced bundle can still be loaded as a (sparse) full-order system.
  EXPECT_EQ(MatrixXd(io::read_full_system(tmp.path() / "r").A()), red.A());
}

TEST(Bundle, InconsistentManifestIsRejected)
{
  TempDir tmp;
  io::write_bundle(tmp.path() / "b", testutil::sparse_of(oracle::random_dense(5, 1, 1, 305)));
  auto j = io::read_json(tmp.path() / "b" / "manifest.json");
  j["n"] = 6;
  io::write_json(tmp.path() / "b" / "manifest.json", j);
  EXPECT_LQO_ERROR(io::read_full_system(tmp.path() / "b"), ErrorKind::DimensionMismatch);
  write_text(tmp.path() / "b" / "manifest.json", "{\"format\": \"other\"}");
  EXPECT_LQO_ERROR(io::read_bundle_info(tmp.path() / "b"), ErrorKind::Io);
  EXPECT_LQO_ERROR(io::read_bundle_info(tmp.path() / "nowhere"), ErrorKind::Io);
}

TEST(Json, ComplexAndInterpolationData)
{
  const lqo::Complex z(1.25, -3.5);
  EXPECT_EQ(io::complex_from_json(io::complex_json(z)), z);
  const auto raw = oracle::random_data(2, 2, 5, 306);
  const auto data = lqo::make_interpolation_data(raw.sigmas, raw.r, raw.l, raw.q);
  TempDir tmp;
  io::write_json(tmp.path() / "d.json", io::to_json(data));
  const auto back = io::interpolation_data_from_json(io::read_json(tmp.path() / "d.json"));
  EXPECT_EQ(back.sigmas, data.sigmas);
  EXPECT_EQ(back.right_dirs, data.right_dirs);
  EXPECT_EQ(back.left_dirs, data.left_dirs);
  ASSERT_EQ(back.q.size(), data.q.size());
  for (std::size_t o = 0; o < data.q.size(); ++o)
  {
    EXPECT_EQ(back.q[o], data.q[o]);
  }
  EXPECT_EQ(back.pair_index, data.pair_index);
  EXPECT_LQO_ERROR(io::interpolation_data_from_json(io::json{{"sigmas", 3}}), ErrorKind::Io);
}

TEST(Json, ReportEncodesNanAsNull)
{
  lqo::IrkaReport r;
  r.iterations = 2;
  r.pole_change_history = {std::nan(""), 0.5};
  const auto j = io::to_json(r);
  EXPECT_EQ(j["iterations"], 2);
  EXPECT_TRUE(j["pole_change_history"][0].is_null());
  EXPECT_EQ(j["pole_change_history"][1], 0.5);
  lqo::H2Breakdown b{1.0, 3.0, 4.0, 0.0};
  EXPECT_EQ(io::to_json(b)["norm"], 2.0);
}

TEST(Csv, TrajectoryAndPoleHistory)
{
  TempDir tmp;
  lqo::Trajectory tr;
  tr.times = Eigen::VectorXd::LinSpaced(3, 0.0, 1.0);
  tr.outputs = MatrixXd::Ones(3, 2);
  io::write_trajectory_csv(tmp.path() / "y.csv", tr);
  const std::string s = read_text(tmp.path() / "y.csv");
  EXPECT_EQ(s.substr(0, s.find('\n')), "t,y_1,y_2");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 4);

  lqo::IrkaReport r;
  r.pole_history = {Eigen::VectorXcd::Constant(2, lqo::Complex(-1, 2)),
                    Eigen::VectorXcd::Constant(2, lqo::Complex(-1, 1))};
  r.pole_change_history = {std::nan(""), 0.25};
  io::write_pole_history_csv(tmp.path() / "p.csv", r);
  const std::string p = read_text(tmp.path() / "p.csv");
  EXPECT_EQ(p.substr(0, p.find('\n')), "iteration,k,re,im,rel_pole_change");
  EXPECT_EQ(std::count(p.begin(), p.end(), '\n'), 5);
}

TEST(Reference, SaveLoadAndCache)
{
  TempDir tmp;
  const auto sys = testutil::sparse_of(oracle::random_dense(6, 2, 1, 307));
  const auto ref = lqo::h2_reference(sys);
  io::save_reference(tmp.path() / "ref.bin", ref);
  const auto back = io::load_reference(tmp.path() / "ref.bin");
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(back->spec.lambdas, ref.spec.lambdas);
  EXPECT_EQ(back->spec.b, ref.spec.b);
  EXPECT_EQ(back->spec.c, ref.spec.c);
  EXPECT_EQ(back->spec.pair_index, ref.spec.pair_index);
  EXPECT_EQ(back->norm2.total, ref.norm2.total);
  write_text(tmp.path() / "junk.bin", "junk");
  EXPECT_FALSE(io::load_reference(tmp.path() / "junk.bin").has_value());
  EXPECT_FALSE(io::load_reference(tmp.path() / "absent.bin").has_value());

  ::setenv("LQO_MOR_CACHE_DIR", tmp.path().c_str(), 1);
  const auto first = io::cached_h2_reference(sys, "0123456789abcdef");
  EXPECT_TRUE(fs::exists(tmp.path() / "h2ref-0123456789abcdef.bin"));
  const auto second = io::cached_h2_reference(sys, "0123456789abcdef");
  EXPECT_EQ(first.norm2.total, second.norm2.total);
  ::unsetenv("LQO_MOR_CACHE_DIR");
}
