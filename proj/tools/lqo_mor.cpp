// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

// lqo-mor: generate, reduce, verify, evaluate and measure LQO systems.
//
// Exit codes: 0 success, 1 numerical failure (JSON category on stderr), 2 usage or IO error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lqo/benchmarks.hpp"
#include "lqo/error.hpp"
#include "lqo/h2.hpp"
#include "lqo/interpolation.hpp"
#include "lqo/io.hpp"
#include "lqo/irka.hpp"
#include "lqo/parallel.hpp"
#include "lqo/simulate.hpp"
#include "lqo/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

constexpr const char *kToolVersion = "0.1.0";

class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

std::string g6(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string timestamp()
{
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// Records a command's inputs and every artifact it writes.
struct RunManifest
{
  json j;

  RunManifest(const std::string &command, const fs::path &out_dir)
  {
    j = {{"tool", "lqo-mor"},
         {"tool_version", kToolVersion},
         {"command", command},
         {"output_dir", out_dir.string()},
         {"started", timestamp()},
         {"params", json::object()},
         {"inputs", json::array()},
         {"artifacts", json::array()}};
  }

  void input(const fs::path &bundle, const std::string &hash)
  {
    j["inputs"].push_back({{"path", bundle.string()}, {"hash", hash}});
  }

  void artifact(const fs::path &path)
  {
    j["artifacts"].push_back({{"path", path.string()}, {"hash", lqo::io::file_hash(path)}});
  }

  void write(const fs::path &out_dir)
  {
    j["finished"] = timestamp();
    lqo::io::write_json(out_dir / "run.json", j);
  }
};

void ensure_dir(const fs::path &dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
  {
    lqo::fail(lqo::ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  }
}

const std::map<std::string, lqo::InputSignal> &input_signals()
{
  static const std::map<std::string, lqo::InputSignal> signals = {
      {"sinc", lqo::input_sinc}, {"exp", lqo::input_exp}};
  return signals;
}

std::string valid_input_names()
{
  std::string names;
  for (const auto &[name, _] : input_signals())
  {
    names += (names.empty() ? "" : ", ") + name;
  }
  return names;
}

void print_breakdown(const std::string &label, const lqo::H2Breakdown &b)
{
  std::cout << label << ": norm " << g6(b.norm()) << "  squared " << g6(b.total) << "  (linear "
            << g6(b.linear_part) << ", quadratic " << g6(b.quadratic_part) << ")\n";
}

void print_residuals(const lqo::InterpResiduals &r)
{
  std::cout << "right linear      max rel " << g6(r.right_linear_rel.maxCoeff()) << "\n"
            << "right quadratic   max rel " << g6(r.right_quadratic_rel.maxCoeff()) << "\n"
            << "left mixed        max rel " << g6(r.left_mixed_rel.maxCoeff()) << "\n"
            << "hermite mixed     max rel " << g6(r.hermite_mixed_rel.maxCoeff()) << "\n"
            << "overall           max rel " << g6(r.max_relative()) << "  max abs "
            << g6(r.max_absolute()) << "\n";
}

void check_compatible(const lqo::io::BundleInfo &full, const lqo::io::BundleInfo &red)
{
  if (full.m != red.m || full.p != red.p)
  {
    throw UsageError("bundles are incompatible: full has m=" + std::to_string(full.m) +
                     ", p=" + std::to_string(full.p) + "; reduced has m=" + std::to_string(red.m) +
                     ", p=" + std::to_string(red.p));
  }
}

// ---- generate ----

struct GenerateOpts
{
  std::string kind;
  fs::path out;
  lqo::Index n = 3000, m = 2, p = 1;
  double alpha = 1.0, beta = 1.0;
  std::uint64_t seed = 0;
};

void cmd_generate(const GenerateOpts &o)
{
  lqo::LqoSystem sys;
  json params;
  if (o.kind == "advec-diff")
  {
    if (!(o.alpha > 0.0))
    {
      throw UsageError("--alpha must be positive");
    }
    if (o.beta < 0.0)
    {
      throw UsageError("--beta must be nonnegative");
    }
    if (o.n < 2)
    {
      throw UsageError("--n must be at least 2");
    }
    sys = lqo::advection_diffusion({o.n, o.alpha, o.beta});
    params = {{"kind", o.kind}, {"n", o.n}, {"alpha", o.alpha}, {"beta", o.beta}};
  }
  else
  {
    if (o.n < 1 || o.m < 1 || o.p < 1)
    {
      throw UsageError("--n, --m and --p must be positive");
    }
    sys = lqo::random_stable_lqo(o.n, o.m, o.p, o.seed);
    params = {{"kind", o.kind}, {"n", o.n}, {"m", o.m}, {"p", o.p}, {"seed", o.seed}};
  }
  const auto info = lqo::io::write_bundle(o.out, sys, {{"generator", params}});
  RunManifest run("generate", o.out);
  run.j["params"] = params;
  run.j["seed"] = o.seed;
  run.artifact(o.out / "manifest.json");
  run.write(o.out);
  std::cout << "wrote " << info.kind << " bundle " << o.out.string() << "  n=" << info.n
            << " m=" << info.m << " p=" << info.p << "  hash " << info.hash << "\n";
}

// ---- reduce ----

struct ReduceOpts
{
  fs::path bundle, out;
  lqo::Index r = 0;
  std::string init = "eigs";
  fs::path init_file;
  double tol = 1e-10;
  int max_iter = 200;
  bool one_step = false;
  bool track_h2 = false;
  bool no_residuals = false;
  double imag_lo = 0.0, imag_hi = 3.0;
};

void cmd_reduce(const ReduceOpts &o)
{
  const auto info = lqo::io::read_bundle_info(o.bundle);
  if (info.kind != "full")
  {
    throw UsageError(o.bundle.string() + " is a " + info.kind + " bundle; reduce needs a full one");
  }
  const lqo::LqoSystem sys = lqo::io::read_full_system(o.bundle);

  lqo::IrkaConfig cfg;
  cfg.r = o.r;
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  cfg.one_step = o.one_step;
  cfg.track_h2 = o.track_h2;
  cfg.compute_residuals = !o.no_residuals;
  cfg.imag_lo = o.imag_lo;
  cfg.imag_hi = o.imag_hi;
  if (o.init == "eigs")
  {
    cfg.init = lqo::InitStrategy::Eigs;
  }
  else if (o.init == "imag")
  {
    cfg.init = lqo::InitStrategy::Imag;
  }
  else
  {
    cfg.init = lqo::InitStrategy::Custom;
    cfg.custom_data = lqo::io::interpolation_data_from_json(lqo::io::read_json(o.init_file));
  }
  std::optional<lqo::H2Reference> ref;
  if (o.track_h2)
  {
    ref = lqo::io::cached_h2_reference(sys, info.hash);
    cfg.reference = &*ref;
  }

  const auto t0 = std::chrono::steady_clock::now();
  const lqo::IrkaResult res = lqo::lqo_irka(sys, cfg);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ensure_dir(o.out);
  const fs::path red_dir = o.out / "reduced";
  json origin = {{"source_bundle", o.bundle.string()}, {"source_hash", info.hash}};
  lqo::io::write_bundle(red_dir, res.reduced, {{"reduced_from", origin}});
  json report = lqo::io::to_json(res.report);
  report["seconds"] = seconds;
  lqo::io::write_json(o.out / "report.json", report);
  lqo::io::write_pole_history_csv(o.out / "poles.csv", res.report);

  RunManifest run("reduce", o.out);
  run.input(o.bundle, info.hash);
  run.j["params"] = {{"r", o.r},         {"init", o.init},         {"tol", o.tol},
                     {"max_iter", o.max_iter}, {"one_step", o.one_step}, {"track_h2", o.track_h2},
                     {"threads", lqo::max_threads()}};
  run.artifact(red_dir / "manifest.json");
  run.artifact(o.out / "report.json");
  run.artifact(o.out / "poles.csv");
  run.write(o.out);

  const auto &rep = res.report;
  std::cout << "stop reason       " << rep.stop_reason << "\n"
            << "iterations        " << rep.iterations << " (returned " << rep.returned_iteration
            << ")\n"
            << "final pole change " << g6(rep.pole_change_history.empty() ? 0.0 : rep.pole_change_history.back())
            << "\n"
            << "time [s]          " << g6(seconds) << "\n";
  if (rep.final_optimality_residuals)
  {
    std::cout << "optimality max rel residual " << g6(rep.final_optimality_residuals->max_relative())
              << "\n";
  }
  if (!rep.h2_history.empty())
  {
    std::cout << "final relerr_H2   " << g6(rep.h2_history.back()) << "\n";
  }
  std::cout << "wrote " << red_dir.string() << "\n";
}

// ---- verify ----

struct VerifyOpts
{
  fs::path full, reduced, out;
  double threshold = 1e-6;
};

void cmd_verify(const VerifyOpts &o)
{
  const auto finfo = lqo::io::read_bundle_info(o.full);
  const auto rinfo = lqo::io::read_bundle_info(o.reduced);
  check_compatible(finfo, rinfo);
  const lqo::LqoSystem full = lqo::io::read_full_system(o.full);
  const lqo::ReducedLqoSystem red = lqo::io::read_reduced_system(o.reduced);
  const lqo::InterpResiduals res = lqo::verify_h2_optimality(full, red);

  const bool ok = res.max_relative() <= o.threshold;
  json j = lqo::io::to_json(res);
  j["threshold"] = o.threshold;
  j["satisfied"] = ok;
  std::cout << "H2-optimality interpolation residuals at the mirrored reduced poles\n";
  print_residuals(res);
  if (!ok)
  {
    std::cerr << "WARN: residual " << g6(res.max_relative()) << " exceeds threshold "
              << g6(o.threshold) << "; the reduced model is not an H2-optimal interpolant\n";
  }
  else
  {
    std::cout << "OK: all residuals within " << g6(o.threshold) << "\n";
  }
  if (!o.out.empty())
  {
    ensure_dir(o.out);
    lqo::io::write_json(o.out / "residuals.json", j);
    RunManifest run("verify", o.out);
    run.input(o.full, finfo.hash);
    run.input(o.reduced, rinfo.hash);
    run.j["params"] = {{"threshold", o.threshold}};
    run.artifact(o.out / "residuals.json");
    run.write(o.out);
  }
}

// ---- evaluate ----

struct EvaluateOpts
{
  fs::path full, reduced, out;
  std::string input = "exp";
  int channel = 0;
  double t_max = 10.0;
  lqo::Index steps = 1000;
  bool skip_h2 = false;
};

void cmd_evaluate(const EvaluateOpts &o)
{
  const auto sig = input_signals().find(o.input);
  if (sig == input_signals().end())
  {
    throw UsageError("unknown input '" + o.input + "'; valid names: " + valid_input_names());
  }
  const auto finfo = lqo::io::read_bundle_info(o.full);
  const auto rinfo = lqo::io::read_bundle_info(o.reduced);
  check_compatible(finfo, rinfo);
  const int channel = o.channel > 0 ? o.channel : static_cast<int>(finfo.m);
  if (channel > finfo.m)
  {
    throw UsageError("--channel " + std::to_string(channel) + " exceeds m=" + std::to_string(finfo.m));
  }
  const lqo::LqoSystem full = lqo::io::read_full_system(o.full);
  const lqo::ReducedLqoSystem red = lqo::io::read_reduced_system(o.reduced);

  // The chosen channel carries the signal, every other input is held at zero.
  std::vector<lqo::InputSignal> inputs(static_cast<std::size_t>(finfo.m),
                                       [](double) { return 0.0; });
  inputs[static_cast<std::size_t>(channel - 1)] = sig->second;
  lqo::SimConfig sc;
  sc.t_max = o.t_max;
  sc.steps = o.steps;
  const lqo::Trajectory yf = lqo::simulate(full, inputs, sc);
  const lqo::Trajectory yr = lqo::simulate(red, inputs, sc);

  json metrics = {{"input", o.input},
                  {"channel", channel},
                  {"relerr_Linf", lqo::relerr_linf(yf.outputs, yr.outputs)},
                  {"relerr_L2", lqo::relerr_l2(yf.outputs, yr.outputs)},
                  {"abs_err_Linf", lqo::abs_err_linf(yf.outputs, yr.outputs)}};
  if (!o.skip_h2)
  {
    const lqo::H2Reference ref = lqo::io::cached_h2_reference(full, finfo.hash);
    const lqo::H2Error err = lqo::h2_error(ref, red, lqo::spectral_decompose(red));
    const double bound = lqo::output_error_bound(err.absolute, lqo::u_l2_norm(inputs, sc));
    metrics["relerr_H2"] = err.relative;
    metrics["h2_error"] = err.absolute;
    metrics["bound"] = bound;
    metrics["bound_satisfied"] = metrics["abs_err_Linf"].get<double>() <= bound;
  }

  ensure_dir(o.out);
  lqo::io::write_trajectory_csv(o.out / "full.csv", yf);
  lqo::io::write_trajectory_csv(o.out / "reduced.csv", yr);
  lqo::io::write_json(o.out / "metrics.json", metrics);
  RunManifest run("evaluate", o.out);
  run.input(o.full, finfo.hash);
  run.input(o.reduced, rinfo.hash);
  run.j["params"] = {{"input", o.input}, {"channel", channel}, {"t_max", o.t_max}, {"steps", o.steps}};
  for (const char *f : {"full.csv", "reduced.csv", "metrics.json"})
  {
    run.artifact(o.out / f);
  }
  run.write(o.out);

  for (const char *key : {"relerr_Linf", "relerr_L2", "abs_err_Linf", "relerr_H2", "bound"})
  {
    if (metrics.contains(key))
    {
      std::cout << key << " " << g6(metrics[key].get<double>()) << "\n";
    }
  }
}

// ---- norms ----

struct NormsOpts
{
  fs::path bundle;
  fs::path against;
  bool quadrature = false;
  bool as_json = false;
};

void cmd_norms(const NormsOpts &o)
{
  const auto info = lqo::io::read_bundle_info(o.bundle);
  json j;
  lqo::H2Reference ref;
  if (info.kind == "full")
  {
    const lqo::LqoSystem sys = lqo::io::read_full_system(o.bundle);
    ref = lqo::io::cached_h2_reference(sys, info.hash);
    if (o.quadrature)
    {
      const auto q = lqo::h2_norm_quadrature(sys);
      j["quadrature"] = {{"value", lqo::io::to_json(q.value)}, {"estimated_error", q.estimated_error},
                         {"points_per_decade", q.points_per_decade}};
    }
  }
  else
  {
    const lqo::ReducedLqoSystem sys = lqo::io::read_reduced_system(o.bundle);
    ref.spec = lqo::spectral_decompose(sys);
    ref.norm2 = lqo::h2_norm(sys, ref.spec);
  }
  print_breakdown("H2 " + o.bundle.string(), ref.norm2);
  j["h2"] = lqo::io::to_json(ref.norm2);
  if (j.contains("quadrature"))
  {
    std::cout << "quadrature norm " << g6(j["quadrature"]["value"]["norm"].get<double>()) << "  est. error "
              << g6(j["quadrature"]["estimated_error"].get<double>()) << "\n";
  }
  if (!o.against.empty())
  {
    const auto rinfo = lqo::io::read_bundle_info(o.against);
    check_compatible(info, rinfo);
    const lqo::ReducedLqoSystem red = lqo::io::read_reduced_system(o.against);
    const auto rspec = lqo::spectral_decompose(red);
    print_breakdown("H2 " + o.against.string(), lqo::h2_norm(red, rspec));
    const lqo::H2Error err = lqo::h2_error(ref, red, rspec);
    std::cout << "H2 error: absolute " << g6(err.absolute) << "  relative " << g6(err.relative)
              << "\n";
    j["error"] = {{"absolute", err.absolute}, {"relative", err.relative}};
  }
  if (o.as_json)
  {
    std::cout << j.dump(2) << "\n";
  }
}

int report_error(int code, const std::string &category, const std::string &message)
{
  json j = {{"error", category}, {"message", message}, {"exit_code", code}};
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"H2-optimal model reduction of linear quadratic-output systems"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Cap on intra-operation parallelism")
      ->check(CLI::PositiveNumber);

  GenerateOpts gen;
  auto *g = app.add_subcommand("generate", "Write a benchmark system bundle");
  g->add_option("kind", gen.kind, "advec-diff or random")
      ->required()
      ->check(CLI::IsMember({"advec-diff", "random"}));
  g->add_option("-o,--out", gen.out, "Output bundle directory")->required();
  g->add_option("--n", gen.n, "State dimension");
  g->add_option("--m", gen.m, "Inputs (random only)");
  g->add_option("--p", gen.p, "Outputs (random only)");
  g->add_option("--alpha", gen.alpha, "Diffusion coefficient");
  g->add_option("--beta", gen.beta, "Advection coefficient");
  g->add_option("--seed", gen.seed, "Seed (random only)");

  ReduceOpts red;
  auto *r = app.add_subcommand("reduce", "Run LQO-IRKA on a full bundle");
  r->add_option("bundle", red.bundle, "Full system bundle")->required();
  r->add_option("-o,--out", red.out, "Output directory")->required();
  r->add_option("--r", red.r, "Reduced order")->required()->check(CLI::PositiveNumber);
  auto *init_opt = r->add_option("--init", red.init, "eigs, imag or custom")
                       ->check(CLI::IsMember({"eigs", "imag", "custom"}));
  r->add_option("--init-file", red.init_file, "Interpolation data JSON for --init custom")
      ->needs(init_opt);
  r->add_option("--tol", red.tol, "Relative pole-change tolerance");
  r->add_option("--max-iter", red.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  r->add_flag("--one-step", red.one_step, "Stop after the first projection");
  r->add_flag("--track-h2", red.track_h2, "Record the relative H2 error per iteration");
  r->add_flag("--no-residuals", red.no_residuals, "Skip the final optimality residuals");
  r->add_option("--imag-lo", red.imag_lo, "Lowest decade of imaginary initial points");
  r->add_option("--imag-hi", red.imag_hi, "Highest decade of imaginary initial points");

  VerifyOpts ver;
  auto *v = app.add_subcommand("verify", "Check the H2-optimality interpolation conditions");
  v->add_option("full", ver.full, "Full system bundle")->required();
  v->add_option("reduced", ver.reduced, "Reduced system bundle")->required();
  v->add_option("-o,--out", ver.out, "Directory for residuals.json");
  v->add_option("--threshold", ver.threshold, "Relative residual threshold");

  EvaluateOpts ev;
  auto *e = app.add_subcommand("evaluate", "Simulate both systems and report error metrics");
  e->add_option("full", ev.full, "Full system bundle")->required();
  e->add_option("reduced", ev.reduced, "Reduced system bundle")->required();
  e->add_option("-o,--out", ev.out, "Output directory")->required();
  e->add_option("--input", ev.input, "Input signal name (sinc or exp)");
  e->add_option("--channel", ev.channel, "1-based input channel driven by the signal (default m)");
  e->add_option("--t-max", ev.t_max, "Final time");
  e->add_option("--steps", ev.steps, "Trapezoidal steps")->check(CLI::PositiveNumber);
  e->add_flag("--skip-h2", ev.skip_h2, "Skip the H2 error and bound");

  NormsOpts nm;
  auto *n = app.add_subcommand("norms", "Print H2 norm breakdowns");
  n->add_option("bundle", nm.bundle, "System bundle")->required();
  n->add_option("--against", nm.against, "Reduced bundle to measure the H2 error against");
  n->add_flag("--json", nm.as_json, "Also print the full-precision breakdown as JSON");
  n->add_flag("--quadrature", nm.quadrature, "Also evaluate the frequency-domain quadrature");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &err)
  {
    return app.exit(err) == 0 ? 0 : 2;
  }

  try
  {
    lqo::set_max_threads(threads);
    if (*g)
    {
      cmd_generate(gen);
    }
    else if (*r)
    {
      if (red.init == "custom" && red.init_file.empty())
      {
        throw UsageError("--init custom needs --init-file");
      }
      cmd_reduce(red);
    }
    else if (*v)
    {
      cmd_verify(ver);
    }
    else if (*e)
    {
      cmd_evaluate(ev);
    }
    else if (*n)
    {
      cmd_norms(nm);
    }
  }
  catch (const UsageError &err)
  {
    return report_error(2, "Usage", err.what());
  }
  catch (const lqo::Error &err)
  {
    const bool numerical = lqo::is_numerical(err.kind());
    return report_error(numerical ? 1 : 2, std::string(lqo::to_string(err.kind())), err.what());
  }
  catch (const std::exception &err)
  {
    return report_error(2, "Internal", err.what());
  }
  return 0;
}
