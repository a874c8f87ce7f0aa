// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqo/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "lqo/error.hpp"

namespace lqo::io
{

namespace
{

constexpr const char *kManifestName = "manifest.json";
constexpr const char *kBundleFormat = "lqo-mor-bundle";

[[noreturn]] void io_fail(const std::string &what)
{
  fail(ErrorKind::Io, what);
}

std::string read_file(const fs::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    io_fail("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const fs::path &path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    io_fail("cannot write " + path.string());
  }
  out << std::setprecision(17);
  return out;
}

struct MtxHeader
{
  bool coordinate = true;
  bool symmetric = false;
  Index rows = 0, cols = 0, nnz = 0;
};

std::string lower(std::string s)
{
  for (auto &c : s)
  {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

MtxHeader parse_header(std::istream &in, const fs::path &path)
{
  std::string line;
  if (!std::getline(in, line))
  {
    io_fail(path.string() + ": empty file");
  }
  std::istringstream hs(lower(line));
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix")
  {
    io_fail(path.string() + ": not a Matrix Market matrix");
  }
  if (field != "real" && field != "integer" && field != "double")
  {
    io_fail(path.string() + ": unsupported field '" + field + "'");
  }
  MtxHeader h;
  if (format == "coordinate")
  {
    h.coordinate = true;
  }
  else if (format == "array")
  {
    h.coordinate = false;
  }
  else
  {
    io_fail(path.string() + ": unsupported format '" + format + "'");
  }
  if (symmetry == "symmetric")
  {
    h.symmetric = true;
  }
  else if (symmetry != "general")
  {
    io_fail(path.string() + ": unsupported symmetry '" + symmetry + "'");
  }
  while (std::getline(in, line))
  {
    if (line.empty() || line[0] == '%')
    {
      continue;
    }
    std::istringstream ss(line);
    if (h.coordinate)
    {
      ss >> h.rows >> h.cols >> h.nnz;
    }
    else
    {
      ss >> h.rows >> h.cols;
      h.nnz = h.rows * h.cols;
    }
    if (!ss || h.rows < 0 || h.cols < 0 || h.nnz < 0)
    {
      io_fail(path.string() + ": malformed size line");
    }
    return h;
  }
  io_fail(path.string() + ": missing size line");
}

std::vector<Eigen::Triplet<double>> read_entries(const fs::path &path, MtxHeader &h)
{
  std::ifstream in(path);
  if (!in)
  {
    io_fail("cannot open " + path.string());
  }
  h = parse_header(in, path);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(h.nnz));
  if (h.coordinate)
  {
    for (Index k = 0; k < h.nnz; ++k)
    {
      long long i = 0, j = 0;
      double v = 0.0;
      if (!(in >> i >> j >> v))
      {
        io_fail(path.string() + ": expected " + std::to_string(h.nnz) + " entries");
      }
      if (i < 1 || j < 1 || i > h.rows || j > h.cols)
      {
        io_fail(path.string() + ": entry index out of range");
      }
      t.emplace_back(i - 1, j - 1, v);
      if (h.symmetric && i != j)
      {
        t.emplace_back(j - 1, i - 1, v);
      }
    }
  }
  else
  {
    for (Index j = 0; j < h.cols; ++j)
    {
      for (Index i = (h.symmetric ? j : 0); i < h.rows; ++i)
      {
        double v = 0.0;
        if (!(in >> v))
        {
          io_fail(path.string() + ": too few array entries");
        }
        if (v != 0.0)
        {
          t.emplace_back(i, j, v);
          if (h.symmetric && i != j)
          {
            t.emplace_back(j, i, v);
          }
        }
      }
    }
  }
  return t;
}

fs::path manifest_path(const fs::path &path)
{
  return fs::is_directory(path) ? path / kManifestName : path;
}

template <typename S>
BundleInfo write_bundle_impl(const fs::path &dir, const S &sys, const char *kind, const json &extra)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
  {
    io_fail("cannot create " + dir.string() + ": " + ec.message());
  }
  json files;
  files["E"] = "E.mtx";
  files["A"] = "A.mtx";
  files["B"] = "B.mtx";
  files["C"] = "C.mtx";
  write_mtx(dir / "E.mtx", sys.E());
  write_mtx(dir / "A.mtx", sys.A());
  write_mtx(dir / "B.mtx", sys.B());
  write_mtx(dir / "C.mtx", sys.C());
  json ms = json::array();
  for (Index k = 0; k < sys.outputs(); ++k)
  {
    const std::string name = "M" + std::to_string(k + 1) + ".mtx";
    write_mtx(dir / name, sys.M(k));
    ms.push_back(name);
  }
  files["M"] = ms;

  std::string bytes;
  for (const char *key : {"E", "A", "B", "C"})
  {
    bytes += read_file(dir / files[key].get<std::string>());
  }
  for (const auto &name : ms)
  {
    bytes += read_file(dir / name.get<std::string>());
  }

  json manifest = {{"format", kBundleFormat},
                   {"version", 1},
                   {"kind", kind},
                   {"n", sys.order()},
                   {"m", sys.inputs()},
                   {"p", sys.outputs()},
                   {"files", files},
                   {"hash", fnv1a_hex(bytes)}};
  for (auto it = extra.begin(); it != extra.end(); ++it)
  {
    manifest[it.key()] = it.value();
  }
  write_json(dir / kManifestName, manifest);
  return read_bundle_info(dir);
}

struct LoadedMatrices
{
  BundleInfo info;
  SparseMatrix E, A;
  Eigen::MatrixXd B, C;
  std::vector<SparseMatrix> Ms;
};

LoadedMatrices load_matrices(const fs::path &path)
{
  LoadedMatrices L;
  L.info = read_bundle_info(path);
  const json &files = L.info.manifest.at("files");
  auto file = [&](const char *key) { return L.info.dir / files.at(key).get<std::string>(); };
  L.E = read_mtx_sparse(file("E"));
  L.A = read_mtx_sparse(file("A"));
  L.B = read_mtx_dense(file("B"));
  L.C = read_mtx_dense(file("C"));
  for (const auto &name : files.at("M"))
  {
    L.Ms.push_back(read_mtx_sparse(L.info.dir / name.get<std::string>()));
  }
  const Index n = L.info.n;
  if (L.A.rows() != n || L.B.cols() != L.info.m || L.C.rows() != L.info.p)
  {
    fail(ErrorKind::DimensionMismatch, "bundle " + L.info.dir.string() +
                                           ": matrix sizes disagree with the manifest");
  }
  return L;
}

json vec_json(const Eigen::VectorXd &v)
{
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i)
  {
    a.push_back(v(i));
  }
  return a;
}

template <typename T>
void write_raw(std::ostream &out, const T *data, std::size_t count)
{
  out.write(reinterpret_cast<const char *>(data), static_cast<std::streamsize>(count * sizeof(T)));
}

template <typename T>
bool read_raw(std::istream &in, T *data, std::size_t count)
{
  in.read(reinterpret_cast<char *>(data), static_cast<std::streamsize>(count * sizeof(T)));
  return static_cast<bool>(in);
}

}  // namespace

SparseMatrix read_mtx_sparse(const fs::path &path)
{
  MtxHeader h;
  const auto t = read_entries(path, h);
  SparseMatrix A(h.rows, h.cols);
  A.setFromTriplets(t.begin(), t.end());
  A.makeCompressed();
  return A;
}

Eigen::MatrixXd read_mtx_dense(const fs::path &path)
{
  MtxHeader h;
  const auto t = read_entries(path, h);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(h.rows, h.cols);
  for (const auto &e : t)
  {
    A(e.row(), e.col()) += e.value();
  }
  return A;
}

void write_mtx(const fs::path &path, const SparseMatrix &A)
{
  auto out = open_out(path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.rows() << " " << A.cols() << " " << A.nonZeros() << "\n";
  for (Index j = 0; j < A.outerSize(); ++j)
  {
    for (SparseMatrix::InnerIterator it(A, j); it; ++it)
    {
      out << it.row() + 1 << " " << it.col() + 1 << " " << it.value() << "\n";
    }
  }
  if (!out)
  {
    io_fail("failed writing " + path.string());
  }
}

void write_mtx(const fs::path &path, const Eigen::MatrixXd &A)
{
  auto out = open_out(path);
  out << "%%MatrixMarket matrix array real general\n";
  out << A.rows() << " " << A.cols() << "\n";
  for (Index j = 0; j < A.cols(); ++j)
  {
    for (Index i = 0; i < A.rows(); ++i)
    {
      out << A(i, j) << "\n";
    }
  }
  if (!out)
  {
    io_fail("failed writing " + path.string());
  }
}

std::string fnv1a_hex(const std::string &bytes)
{
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes)
  {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_hash(const fs::path &path)
{
  return fnv1a_hex(read_file(path));
}

BundleInfo write_bundle(const fs::path &dir, const LqoSystem &sys, const json &extra)
{
  return write_bundle_impl(dir, sys, "full", extra);
}

BundleInfo write_bundle(const fs::path &dir, const ReducedLqoSystem &sys, const json &extra)
{
  return write_bundle_impl(dir, sys, "reduced", extra);
}

BundleInfo read_bundle_info(const fs::path &path)
{
  const fs::path mp = manifest_path(path);
  const json m = read_json(mp);
  if (m.value("format", "") != kBundleFormat)
  {
    io_fail(mp.string() + ": not an lqo-mor bundle manifest");
  }
  BundleInfo info;
  info.dir = mp.parent_path().empty() ? fs::path(".") : mp.parent_path();
  try
  {
    info.kind = m.at("kind").get<std::string>();
    info.n = m.at("n").get<Index>();
    info.m = m.at("m").get<Index>();
    info.p = m.at("p").get<Index>();
    info.hash = m.at("hash").get<std::string>();
  }
  catch (const json::exception &e)
  {
    io_fail(mp.string() + ": " + e.what());
  }
  info.manifest = m;
  return info;
}

LqoSystem read_full_system(const fs::path &path)
{
  LoadedMatrices L = load_matrices(path);
  return make_lqo_system(std::move(L.E), std::move(L.A), std::move(L.B), std::move(L.C),
                         std::move(L.Ms));
}

ReducedLqoSystem read_reduced_system(const fs::path &path)
{
  LoadedMatrices L = load_matrices(path);
  std::vector<Eigen::MatrixXd> Ms;
  for (const auto &M : L.Ms)
  {
    Ms.emplace_back(M);
  }
  return make_reduced_system(Eigen::MatrixXd(L.E), Eigen::MatrixXd(L.A), std::move(L.B),
                             std::move(L.C), std::move(Ms));
}

json complex_json(Complex z)
{
  return json{{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from_json(const json &j)
{
  if (j.is_number())
  {
    return {j.get<double>(), 0.0};
  }
  return {j.at("re").get<double>(), j.value("im", 0.0)};
}

json to_json(const Eigen::VectorXcd &v)
{
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i)
  {
    a.push_back(complex_json(v(i)));
  }
  return a;
}

json to_json(const Eigen::MatrixXcd &A)
{
  json rows = json::array();
  for (Index i = 0; i < A.rows(); ++i)
  {
    rows.push_back(to_json(Eigen::VectorXcd(A.row(i).transpose())));
  }
  return rows;
}

json to_json(const Eigen::VectorXd &v)
{
  return vec_json(v);
}

json to_json(const Eigen::MatrixXd &A)
{
  json rows = json::array();
  for (Index i = 0; i < A.rows(); ++i)
  {
    rows.push_back(vec_json(A.row(i).transpose()));
  }
  return rows;
}

json to_json(const H2Breakdown &b)
{
  return json{{"linear_part", b.linear_part},
              {"quadratic_part", b.quadratic_part},
              {"total", b.total},
              {"imag_part", b.imag_part},
              {"norm", b.norm()}};
}

json to_json(const InterpResiduals &r)
{
  return json{{"right_linear", to_json(r.right_linear)},
              {"right_linear_rel", to_json(r.right_linear_rel)},
              {"right_quadratic", to_json(r.right_quadratic)},
              {"right_quadratic_rel", to_json(r.right_quadratic_rel)},
              {"left_mixed", to_json(r.left_mixed)},
              {"left_mixed_rel", to_json(r.left_mixed_rel)},
              {"hermite_mixed", to_json(r.hermite_mixed)},
              {"hermite_mixed_rel", to_json(r.hermite_mixed_rel)},
              {"max_absolute", r.max_absolute()},
              {"max_relative", r.max_relative()}};
}

json to_json(const IrkaReport &r)
{
  json poles = json::array();
  for (const auto &p : r.pole_history)
  {
    poles.push_back(to_json(p));
  }
  auto num_array = [](const std::vector<double> &v)
  {
    json a = json::array();
    for (double x : v)
    {
      a.push_back(std::isfinite(x) ? json(x) : json(nullptr));
    }
    return a;
  };
  json j{{"converged", r.converged},
         {"iterations", r.iterations},
         {"returned_iteration", r.returned_iteration},
         {"stop_reason", r.stop_reason},
         {"pole_history", poles},
         {"pole_change_history", num_array(r.pole_change_history)},
         {"abs_pole_change_history", num_array(r.abs_pole_change_history)},
         {"h2_history", num_array(r.h2_history)},
         {"unstable_reflections", r.unstable_reflections},
         {"pole_perturbations", r.pole_perturbations}};
  j["final_optimality_residuals"] =
      r.final_optimality_residuals ? to_json(*r.final_optimality_residuals) : json(nullptr);
  return j;
}

json to_json(const InterpolationData &d)
{
  json q = json::array();
  for (const auto &qo : d.q)
  {
    q.push_back(to_json(qo));
  }
  return json{{"sigmas", to_json(d.sigmas)},
              {"right_dirs", to_json(d.right_dirs)},
              {"left_dirs", to_json(d.left_dirs)},
              {"q", q},
              {"pair_index", d.pair_index}};
}

InterpolationData interpolation_data_from_json(const json &j)
{
  auto cvec = [](const json &a)
  {
    Eigen::VectorXcd v(static_cast<Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
    {
      v(static_cast<Index>(i)) = complex_from_json(a[i]);
    }
    return v;
  };
  auto cmat = [&](const json &rows)
  {
    const auto R = static_cast<Index>(rows.size());
    const Index C = R > 0 ? static_cast<Index>(rows[0].size()) : 0;
    Eigen::MatrixXcd A(R, C);
    for (Index i = 0; i < R; ++i)
    {
      if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != C)
      {
        fail(ErrorKind::DimensionMismatch, "ragged matrix in interpolation data");
      }
      A.row(i) = cvec(rows[static_cast<std::size_t>(i)]).transpose();
    }
    return A;
  };
  try
  {
    std::vector<Eigen::MatrixXcd> q;
    for (const auto &qo : j.at("q"))
    {
      q.push_back(cmat(qo));
    }
    return make_interpolation_data(cvec(j.at("sigmas")), cmat(j.at("right_dirs")),
                                   cmat(j.at("left_dirs")), std::move(q));
  }
  catch (const json::exception &e)
  {
    io_fail(std::string("interpolation data: ") + e.what());
  }
}

void write_json(const fs::path &path, const json &j)
{
  auto out = open_out(path);
  out << j.dump(2) << "\n";
  if (!out)
  {
    io_fail("failed writing " + path.string());
  }
}

json read_json(const fs::path &path)
{
  try
  {
    return json::parse(read_file(path));
  }
  catch (const json::parse_error &e)
  {
    io_fail(path.string() + ": " + e.what());
  }
}

void write_trajectory_csv(const fs::path &path, const Trajectory &tr)
{
  auto out = open_out(path);
  out << "t";
  for (Index k = 0; k < tr.outputs.cols(); ++k)
  {
    out << ",y_" << k + 1;
  }
  out << "\n";
  for (Index i = 0; i < tr.times.size(); ++i)
  {
    out << tr.times(i);
    for (Index k = 0; k < tr.outputs.cols(); ++k)
    {
      out << "," << tr.outputs(i, k);
    }
    out << "\n";
  }
}

void write_pole_history_csv(const fs::path &path, const IrkaReport &report)
{
  auto out = open_out(path);
  out << "iteration,k,re,im,rel_pole_change\n";
  for (std::size_t it = 0; it < report.pole_history.size(); ++it)
  {
    const Eigen::VectorXcd &p = report.pole_history[it];
    for (Index k = 0; k < p.size(); ++k)
    {
      out << it + 1 << "," << k + 1 << "," << p(k).real() << "," << p(k).imag() << ","
          << report.pole_change_history[it] << "\n";
    }
  }
}

void save_reference(const fs::path &path, const H2Reference &ref)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    io_fail("cannot write " + path.string());
  }
  const SpectralData &s = ref.spec;
  const std::int64_t header[4] = {0x4c514f52, s.size(), s.b.cols(), s.c.rows()};
  write_raw(out, header, 4);
  const double norms[4] = {ref.norm2.linear_part, ref.norm2.quadratic_part, ref.norm2.total,
                           ref.norm2.imag_part};
  write_raw(out, norms, 4);
  write_raw(out, s.lambdas.data(), static_cast<std::size_t>(s.lambdas.size()));
  write_raw(out, s.b.data(), static_cast<std::size_t>(s.b.size()));
  write_raw(out, s.c.data(), static_cast<std::size_t>(s.c.size()));
  for (const auto &M : s.mres)
  {
    write_raw(out, M.data(), static_cast<std::size_t>(M.size()));
  }
  std::vector<std::int64_t> pairs(s.pair_index.begin(), s.pair_index.end());
  write_raw(out, pairs.data(), pairs.size());
  if (!out)
  {
    io_fail("failed writing " + path.string());
  }
}

std::optional<H2Reference> load_reference(const fs::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    return std::nullopt;
  }
  std::int64_t header[4];
  double norms[4];
  if (!read_raw(in, header, 4) || header[0] != 0x4c514f52 || !read_raw(in, norms, 4))
  {
    return std::nullopt;
  }
  const Index n = header[1], m = header[2], p = header[3];
  H2Reference ref;
  ref.norm2 = {norms[0], norms[1], norms[2], norms[3]};
  SpectralData &s = ref.spec;
  s.lambdas.resize(n);
  s.b.resize(n, m);
  s.c.resize(p, n);
  s.mres.assign(static_cast<std::size_t>(p), Eigen::MatrixXcd(n, n));
  bool ok = read_raw(in, s.lambdas.data(), static_cast<std::size_t>(n)) &&
            read_raw(in, s.b.data(), static_cast<std::size_t>(n * m)) &&
            read_raw(in, s.c.data(), static_cast<std::size_t>(p * n));
  for (auto &M : s.mres)
  {
    ok = ok && read_raw(in, M.data(), static_cast<std::size_t>(n * n));
  }
  std::vector<std::int64_t> pairs(static_cast<std::size_t>(n));
  ok = ok && read_raw(in, pairs.data(), pairs.size());
  if (!ok)
  {
    return std::nullopt;
  }
  s.pair_index.assign(pairs.begin(), pairs.end());
  return ref;
}

H2Reference cached_h2_reference(const LqoSystem &sys, const std::string &bundle_hash)
{
  const char *dir = std::getenv("LQO_MOR_CACHE_DIR");
  if (!dir || !*dir || bundle_hash.empty())
  {
    return h2_reference(sys);
  }
  const fs::path path = fs::path(dir) / ("h2ref-" + bundle_hash + ".bin");
  if (auto ref = load_reference(path))
  {
    if (ref->spec.size() == sys.order())
    {
      return std::move(*ref);
    }
  }
  H2Reference ref = h2_reference(sys);
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  try
  {
    save_reference(path, ref);
  }
  catch (const Error &e)
  {
    warn(std::string("could not write H2 cache: ") + e.what());
  }
  return ref;
}

}  // namespace lqo::io
