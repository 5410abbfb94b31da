// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_CLI_HPP
#define RATNLEVP_CLI_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "ratnlevp/config.hpp"
#include "ratnlevp/solvers.hpp"

namespace ratnlevp::cli
{

// Output file: name relative to the output directory plus its full content.
struct OutputFile
{
  std::string name;
  std::string content;
};

// Rows "m,e_1,..,e_p" with e_j = approx_error over the contour scaled by
// inner_scale. Throws ConfigError on an empty m range.
OutputFile approx_error_csv(const Config &cfg);

struct SolveOutput
{
  EigenReport report;
  std::vector<std::string> labels;  // one per pair
  nlohmann::json json;
  std::string csv;  // re,im,residual_T,inside,label
};
SolveOutput run_solve(const Config &cfg);

// One CSV per m (approximation.m_values, else the resolved m): surrogate
// eigenvalues with labels, reference spectra, pencil eigenvalues and the
// contour polyline, distinguished by the first column.
std::vector<OutputFile> halo_csvs(const Config &cfg);

// Greedy nearest matching of interior eigenvalues of the two runs.
// Throws IncompatibleRuns unless problem and contour agree.
nlohmann::json compare_runs(const Config &a, const Config &b);

std::string gallery_list();

// Writes every file to dir/name.tmp first, then renames all of them.
void write_outputs(const std::filesystem::path &dir, const std::vector<OutputFile> &files);

// 2 on ConvergenceFailure, 1 otherwise.
int exit_code(const std::exception &e);

// Greedy matching shared with tests: repeatedly pairs the globally closest
// unmatched values. Returns index pairs in matching order.
std::vector<std::pair<std::size_t, std::size_t>> greedy_match(const std::vector<cplx> &a,
                                                              const std::vector<cplx> &b);

}  // namespace ratnlevp::cli

#endif  // RATNLEVP_CLI_HPP
