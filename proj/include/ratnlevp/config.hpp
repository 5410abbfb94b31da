// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_CONFIG_HPP
#define RATNLEVP_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ratnlevp/baseline.hpp"
#include "ratnlevp/contour.hpp"
#include "ratnlevp/nlevp.hpp"
#include "ratnlevp/solvers.hpp"

namespace ratnlevp
{

//
// Experiment configuration. Sections: problem, contour, approximation, solver,
// halo, output. Unset optional fields fall back to the gallery entry of the
// problem (contour, m, k) or to library defaults.
//
struct ProblemSpec
{
  std::string gallery;          // delay | fem | hadeler | quadratic
  std::filesystem::path path;   // problem directory, when gallery is empty
  nlohmann::json params = nlohmann::json::object();  // tau; n; n, b0; n

  SplitProblem build() const;
  bool operator==(const ProblemSpec &o) const = default;
};

struct ApproximationSpec
{
  std::optional<std::size_t> m;
  double inner_scale = 0.5;
  std::vector<std::size_t> m_values;  // approx-error sweep, halo runs

  bool operator==(const ApproximationSpec &o) const = default;
};

struct BeynSpec
{
  std::size_t N = 150;
  std::optional<std::size_t> ell, K;
  double rank_tol = 1e-10;

  bool operator==(const BeynSpec &o) const = default;
};

struct SolverSpec
{
  std::string method = "full-arnoldi";  // or "beyn"
  std::optional<cplx> sigma;
  std::optional<std::size_t> k;
  std::size_t nu = 0, q = 5, max_outer = 100;
  double tol = 1e-10;
  std::uint64_t seed = 42;
  BeynSpec beyn;

  bool operator==(const SolverSpec &o) const = default;
};

struct HaloSpec
{
  double tol_match = 1e-3;
  double delta = 0.05;
  std::size_t contour_samples = 400;
  std::string reference = "auto";  // auto | beyn | none

  bool operator==(const HaloSpec &o) const = default;
};

struct Config
{
  ProblemSpec problem;
  std::optional<Contour> contour;
  ApproximationSpec approximation;
  SolverSpec solver;
  HaloSpec halo;
  std::string output_dir = "out";

  // Throws ConfigError naming the offending field path.
  static Config from_json(const nlohmann::json &j);
  static Config load(const std::filesystem::path &file);
  nlohmann::json to_json() const;
  bool operator==(const Config &o) const;

  Contour resolved_contour() const;
  std::size_t resolved_m() const;
  std::size_t resolved_k() const;
  SolveConfig solve_config(const Contour &contour) const;
  BeynConfig beyn_config(std::size_t n) const;
  bool uses_beyn() const { return solver.method == "beyn"; }
};

}  // namespace ratnlevp

#endif  // RATNLEVP_CONFIG_HPP
