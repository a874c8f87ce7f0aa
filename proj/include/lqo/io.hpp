// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "lqo/h2.hpp"
#include "lqo/interpolation.hpp"
#include "lqo/irka.hpp"
#include "lqo/simulate.hpp"
#include "lqo/system.hpp"

namespace lqo::io
{

using nlohmann::json;
namespace fs = std::filesystem;

// Matrix Market: real matrices in coordinate or array format, general or symmetric.
SparseMatrix read_mtx_sparse(const fs::path &path);
Eigen::MatrixXd read_mtx_dense(const fs::path &path);
void write_mtx(const fs::path &path, const SparseMatrix &A);
void write_mtx(const fs::path &path, const Eigen::MatrixXd &A);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string &bytes);
std::string file_hash(const fs::path &path);

/// A system bundle is a directory holding manifest.json plus one .mtx file per matrix.
struct BundleInfo
{
  fs::path dir;
  std::string kind;  // "full" or "reduced"
  Index n = 0, m = 0, p = 0;
  std::string hash;
  json manifest;
};

BundleInfo write_bundle(const fs::path &dir, const LqoSystem &sys, const json &extra = json::object());
BundleInfo write_bundle(const fs::path &dir, const ReducedLqoSystem &sys,
                        const json &extra = json::object());

/// Accepts a bundle directory or the path of its manifest.
BundleInfo read_bundle_info(const fs::path &path);
LqoSystem read_full_system(const fs::path &path);
ReducedLqoSystem read_reduced_system(const fs::path &path);

json complex_json(Complex z);
Complex complex_from_json(const json &j);
json to_json(const Eigen::VectorXcd &v);
json to_json(const Eigen::MatrixXcd &A);
json to_json(const Eigen::VectorXd &v);
json to_json(const Eigen::MatrixXd &A);
json to_json(const H2Breakdown &b);
json to_json(const InterpResiduals &r);
json to_json(const IrkaReport &r);
json to_json(const InterpolationData &d);
InterpolationData interpolation_data_from_json(const json &j);

void write_json(const fs::path &path, const json &j);
json read_json(const fs::path &path);

/// Columns t, y_1..y_p.
void write_trajectory_csv(const fs::path &path, const Trajectory &tr);
/// Columns iteration, k, re, im, plus the relative pole change of that iteration.
void write_pole_history_csv(const fs::path &path, const IrkaReport &report);

/// Full-order H2 reference, cached under $LQO_MOR_CACHE_DIR (if set) keyed by bundle hash.
H2Reference cached_h2_reference(const LqoSystem &sys, const std::string &bundle_hash);

/// Binary serialization of an H2Reference.
void save_reference(const fs::path &path, const H2Reference &ref);
std::optional<H2Reference> load_reference(const fs::path &path);

}  // namespace lqo::io
