// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

// Experiment runner: approx-error, solve, halo, compare, gallery-list.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ratnlevp/cli.hpp"
#include "ratnlevp/config.hpp"
#include "ratnlevp/kernels.hpp"

using namespace ratnlevp;

namespace
{

struct Options
{
  std::vector<std::string> configs;
  std::string out;
  std::optional<std::uint64_t> seed;
};

Config load(const std::string &file, const Options &o)
{
  Config c = Config::load(file);
  if (o.seed)
  {
    c.solver.seed = *o.seed;
  }
  if (!o.out.empty())
  {
    c.output_dir = o.out;
  }
  return c;
}

void apply_thread_cap()
{
  if (const char *env = std::getenv("RATNLEVP_THREADS"))
  {
    const int n = std::atoi(env);
    if (n > 0)
    {
      kernels::set_max_threads(n);
    }
  }
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Nonlinear eigenvalue solver by contour rational approximation"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App *sub, std::size_t nconfig) {
    auto *c = sub->add_option("--config", opt.configs, "config file (JSON)")->required();
    c->expected(static_cast<int>(nconfig));
    sub->add_option("--out", opt.out, "output directory (overrides output.dir)");
    sub->add_option("--seed", opt.seed, "random seed (overrides solver.seed)");
  };
  auto *approx = app.add_subcommand("approx-error", "rational approximation error versus m");
  add_common(approx, 1);
  auto *solve_cmd = app.add_subcommand("solve", "solve and write report.json and eigenvalues.csv");
  add_common(solve_cmd, 1);
  auto *halo = app.add_subcommand("halo", "surrogate spectra with halo labels, one CSV per m");
  add_common(halo, 1);
  auto *compare = app.add_subcommand("compare", "match the interior eigenvalues of two runs");
  add_common(compare, 2);
  auto *list = app.add_subcommand("gallery-list", "list built-in problems");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  apply_thread_cap();
  try
  {
    if (list->parsed())
    {
      std::cout << cli::gallery_list();
      return 0;
    }
    const Config cfg = load(opt.configs.at(0), opt);
    if (approx->parsed())
    {
      const auto f = cli::approx_error_csv(cfg);
      cli::write_outputs(cfg.output_dir, {f});
      std::cout << f.content;
    }
    else if (solve_cmd->parsed())
    {
      const auto r = cli::run_solve(cfg);
      cli::write_outputs(cfg.output_dir, {{"report.json", r.json.dump(2) + "\n"}, {"eigenvalues.csv", r.csv}});
      std::cout << r.csv;
    }
    else if (halo->parsed())
    {
      const auto files = cli::halo_csvs(cfg);
      cli::write_outputs(cfg.output_dir, files);
      for (const auto &f : files)
      {
        std::cout << (std::filesystem::path(cfg.output_dir) / f.name).string() << '\n';
      }
    }
    else if (compare->parsed())
    {
      const Config other = load(opt.configs.at(1), opt);
      const auto diff = cli::compare_runs(cfg, other);
      const std::string text = diff.dump(2) + "\n";
      cli::write_outputs(cfg.output_dir, {{"compare.json", text}});
      std::cout << text;
    }
    return 0;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code(e);
  }
}
