// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratnlevp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "ratnlevp/analysis.hpp"
#include "ratnlevp/baseline.hpp"
#include "ratnlevp/error.hpp"
#include "ratnlevp/gallery.hpp"
#include "ratnlevp/serialize.hpp"

namespace ratnlevp::cli
{

namespace
{

using nlohmann::json;

std::string num(double x)
{
  if (std::isnan(x))
  {
    return "nan";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json nullable(double x)
{
  return std::isfinite(x) ? json(x) : json(nullptr);
}

Surrogate surrogate_for(const SplitProblem &prob, const Contour &contour, std::size_t m)
{
  return build_surrogate(prob, build_rational_approx(quadrature_rule(contour, m), prob.f));
}

bool is_identity(const CMatrix &a)
{
  return norm_max(a - CMatrix::identity(a.rows())) == 0.0;
}

std::vector<cplx> finite_values(const CVector &v)
{
  std::vector<cplx> out;
  for (cplx z : v)
  {
    if (!is_infinite(z) && std::isfinite(z.real()) && std::isfinite(z.imag()))
    {
      out.push_back(z);
    }
  }
  return out;
}

EigOptions values_only()
{
  EigOptions o;
  o.vectors = false;
  return o;
}

// Reference spectrum for the halo plot; empty name when no oracle applies.
struct Reference
{
  std::string name;
  std::optional<std::vector<cplx>> values;
};

Reference reference_spectrum(const Config &cfg, const SplitProblem &prob, const Contour &contour)
{
  const std::string mode = cfg.halo.reference;
  if (mode == "none")
  {
    return {"none (disabled)", {}};
  }
  if (mode == "beyn")
  {
    const auto rep = beyn_solve(prob, contour, cfg.beyn_config(prob.n()));
    std::vector<cplx> v;
    for (const auto &p : rep.pairs)
    {
      v.push_back(p.lambda);
    }
    return {"beyn", v};
  }
  if (prob.p() == 0)
  {
    return {"linear pencil", finite_values(dense_geig(prob.B0, prob.A0, values_only()).values)};
  }
  if (prob.p() == 1 && prob.f[0].descriptor() == "poly(2)")
  {
    const auto c = quadratic_companion(prob.B0, prob.A0, prob.A[0]);
    return {"companion linearization", finite_values(dense_geig(c.A, c.M, values_only()).values)};
  }
  if (cfg.problem.gallery == "fem")
  {
    // The exact pencil adds the eigenvalue 1 with multiplicity n - 1.
    const auto lin = make_exact_fem_linearization(prob.n());
    std::vector<cplx> v;
    for (cplx z : finite_values(dense_geig(lin.A, lin.M, values_only()).values))
    {
      if (std::abs(z - 1.0) > 1e-6)
      {
        v.push_back(z);
      }
    }
    return {"exact linearization", v};
  }
  return {"none (no oracle for this problem; InteriorTrue is unmatched)", {}};
}

json pair_json(const ReportPair &p, const std::string &label)
{
  json u = json::array();
  for (cplx x : p.u)
  {
    u.push_back(complex_to_json(x));
  }
  return {{"lambda", {{"re", p.lambda.real()}, {"im", p.lambda.imag()}}},
          {"residual_T", nullable(p.residual_T)},
          {"residual_surrogate", nullable(p.residual_surrogate)},
          {"inside", p.inside},
          {"pole_flag", p.pole_flag},
          {"cond", p.cond ? json(*p.cond) : json(nullptr)},
          {"label", label},
          {"u", u}};
}

void attach_condition_numbers(EigenReport &rep, const Surrogate &s)
{
  if (!is_identity(s.A0) || s.n > 1000)
  {
    return;
  }
  for (auto &p : rep.pairs)
  {
    if (!p.inside || p.pole_flag)
    {
      continue;
    }
    try
    {
      const CVector y = left_eigvec(s, p.lambda);
      p.cond = condition_number(s, p.lambda, p.u, y).kappa;
    }
    catch (const Error &)
    {
      // Left vector or eigenpair check failed; the estimate is omitted.
    }
  }
}

}  // namespace

OutputFile approx_error_csv(const Config &cfg)
{
  if (cfg.approximation.m_values.empty())
  {
    throw Error(ErrorKind::ConfigError, "approximation.m_values: empty m range");
  }
  const SplitProblem prob = cfg.problem.build();
  const Contour contour = cfg.resolved_contour();
  const Contour inner = contour.scaled(cfg.approximation.inner_scale);
  std::ostringstream os;
  os << "m";
  for (std::size_t j = 0; j < prob.p(); ++j)
  {
    os << ",e_" << j + 1;
  }
  os << '\n';
  for (std::size_t m : cfg.approximation.m_values)
  {
    const auto ra = build_rational_approx(quadrature_rule(contour, m), prob.f);
    os << m;
    for (std::size_t j = 0; j < prob.p(); ++j)
    {
      os << ',' << num(approx_error(ra, j, inner));
    }
    os << '\n';
  }
  return {"approx_error.csv", os.str()};
}

SolveOutput run_solve(const Config &cfg)
{
  const SplitProblem prob = cfg.problem.build();
  const Contour contour = cfg.resolved_contour();
  SolveOutput out;
  if (cfg.uses_beyn())
  {
    out.report = beyn_solve(prob, contour, cfg.beyn_config(prob.n()));
    for (const auto &p : out.report.pairs)
    {
      out.labels.push_back(to_string(p.inside ? HaloLabel::InteriorTrue : HaloLabel::Halo));
    }
  }
  else
  {
    const std::size_t m = cfg.resolved_m();
    const Surrogate s = surrogate_for(prob, contour, m);
    out.report = solve(prob, s, cfg.solve_config(contour), contour);
    out.report.metadata["m"] = m;
    attach_condition_numbers(out.report, s);
    const auto cls = classify_halo(out.report, s, contour, cfg.halo.tol_match, {}, cfg.halo.delta);
    for (const auto &e : cls.entries)
    {
      out.labels.push_back(to_string(e.label));
    }
  }
  out.report.metadata["problem"] = prob.name;
  out.report.metadata["config"] = cfg.to_json();

  json pairs = json::array();
  std::ostringstream csv;
  csv << "re,im,residual_T,inside,label\n";
  for (std::size_t i = 0; i < out.report.pairs.size(); ++i)
  {
    const auto &p = out.report.pairs[i];
    pairs.push_back(pair_json(p, out.labels[i]));
    csv << num(p.lambda.real()) << ',' << num(p.lambda.imag()) << ',' << num(p.residual_T) << ','
        << (p.inside ? "true" : "false") << ',' << out.labels[i] << '\n';
  }
  out.json = {{"metadata", out.report.metadata}, {"iterations", out.report.iterations}, {"pairs", pairs}};
  out.csv = csv.str();
  return out;
}

std::vector<OutputFile> halo_csvs(const Config &cfg)
{
  const SplitProblem prob = cfg.problem.build();
  const Contour contour = cfg.resolved_contour();
  std::vector<std::size_t> ms = cfg.approximation.m_values;
  if (ms.empty())
  {
    ms.push_back(cfg.resolved_m());
  }
  const Reference ref = reference_spectrum(cfg, prob, contour);
  const auto poly = contour.polyline(cfg.halo.contour_samples);

  std::vector<OutputFile> files;
  for (std::size_t m : ms)
  {
    const Surrogate s = surrogate_for(prob, contour, m);
    const auto rep = solve_dense_linearization(s, contour);
    const auto cls = classify_halo(rep, s, contour, cfg.halo.tol_match, ref.values, cfg.halo.delta);
    std::ostringstream os;
    os << "# problem: " << prob.name << ", m: " << m << ", reference: " << ref.name << '\n';
    os << "kind,re,im,label,low_confidence,matched,boundary_distance\n";
    for (const auto &e : cls.entries)
    {
      os << "surrogate," << num(e.lambda.real()) << ',' << num(e.lambda.imag()) << ',' << to_string(e.label)
         << ',' << (e.low_confidence ? "true" : "false") << ',' << (e.matched ? "true" : "false") << ','
         << num(e.boundary_distance) << '\n';
    }
    auto plain = [&](const char *kind, cplx z) {
      os << kind << ',' << num(z.real()) << ',' << num(z.imag()) << ",,,," << num(contour.distance_to_boundary(z))
         << '\n';
    };
    if (ref.values)
    {
      for (cplx z : *ref.values)
      {
        plain("reference", z);
      }
    }
    for (cplx z : cls.pencil_eigenvalues)
    {
      plain("pencil", z);
    }
    for (cplx z : poly)
    {
      os << "contour," << num(z.real()) << ',' << num(z.imag()) << ",,,,0\n";
    }
    files.push_back({"halo_m" + std::to_string(m) + ".csv", os.str()});
  }
  return files;
}

std::vector<std::pair<std::size_t, std::size_t>> greedy_match(const std::vector<cplx> &a,
                                                              const std::vector<cplx> &b)
{
  struct Cand
  {
    double d;
    std::size_t i, j;
  };
  std::vector<Cand> all;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    for (std::size_t j = 0; j < b.size(); ++j)
    {
      all.push_back({std::abs(a[i] - b[j]), i, j});
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const Cand &x, const Cand &y) { return x.d < y.d; });
  std::vector<bool> ua(a.size()), ub(b.size());
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto &c : all)
  {
    if (!ua[c.i] && !ub[c.j])
    {
      ua[c.i] = ub[c.j] = true;
      out.emplace_back(c.i, c.j);
    }
  }
  return out;
}

json compare_runs(const Config &a, const Config &b)
{
  if (!(a.problem == b.problem))
  {
    throw Error(ErrorKind::IncompatibleRuns, "the two configs name different problems");
  }
  if (!(a.resolved_contour() == b.resolved_contour()))
  {
    throw Error(ErrorKind::IncompatibleRuns, "the two configs use different contours");
  }
  auto interior = [](const SolveOutput &o) {
    std::vector<cplx> v;
    for (const auto &p : o.report.pairs)
    {
      if (p.inside && !p.pole_flag)
      {
        v.push_back(p.lambda);
      }
    }
    return v;
  };
  const auto va = interior(run_solve(a)), vb = interior(run_solve(b));
  const auto match = greedy_match(va, vb);

  json pairs = json::array();
  double dmax = 0.0, dsum = 0.0;
  std::vector<bool> ma(va.size()), mb(vb.size());
  for (const auto &[i, j] : match)
  {
    const double d = std::abs(va[i] - vb[j]);
    dmax = std::max(dmax, d);
    dsum += d;
    ma[i] = mb[j] = true;
    pairs.push_back({{"a", complex_to_json(va[i])}, {"b", complex_to_json(vb[j])}, {"distance", d}});
  }
  json una = json::array(), unb = json::array();
  for (std::size_t i = 0; i < va.size(); ++i)
  {
    if (!ma[i])
    {
      una.push_back(complex_to_json(va[i]));
    }
  }
  for (std::size_t j = 0; j < vb.size(); ++j)
  {
    if (!mb[j])
    {
      unb.push_back(complex_to_json(vb[j]));
    }
  }
  return {{"method_a", a.solver.method},
          {"method_b", b.solver.method},
          {"pairs", pairs},
          {"max_distance", dmax},
          {"mean_distance", match.empty() ? 0.0 : dsum / static_cast<double>(match.size())},
          {"unmatched_a", una},
          {"unmatched_b", unb}};
}

std::string gallery_list()
{
  std::ostringstream os;
  for (const auto &e : gallery_entries())
  {
    os << e.name << "\tm=" << e.m << "\tk=" << e.k << "\tcontour=" << contour_to_json(e.contour).dump() << "\t"
       << e.description << '\n';
  }
  return os.str();
}

void write_outputs(const std::filesystem::path &dir, const std::vector<OutputFile> &files)
{
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<fs::path> tmp;
  try
  {
    for (const auto &f : files)
    {
      const fs::path t = dir / (f.name + ".tmp");
      std::ofstream out(t, std::ios::binary | std::ios::trunc);
      tmp.push_back(t);
      out << f.content;
      out.close();
      if (!out)
      {
        throw Error(ErrorKind::InvalidArgument, "cannot write " + t.string());
      }
    }
  }
  catch (...)
  {
    for (const auto &t : tmp)
    {
      std::error_code ec;
      fs::remove(t, ec);
    }
    throw;
  }
  for (std::size_t i = 0; i < files.size(); ++i)
  {
    fs::rename(tmp[i], dir / files[i].name);
  }
}

int exit_code(const std::exception &e)
{
  if (const auto *err = dynamic_cast<const Error *>(&e))
  {
    return err->kind() == ErrorKind::ConvergenceFailure ? 2 : 1;
  }
  return 1;
}

}  // namespace ratnlevp::cli
