// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratnlevp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ratnlevp/error.hpp"
#include "ratnlevp/gallery.hpp"
#include "ratnlevp/serialize.hpp"

namespace ratnlevp
{

namespace
{

using nlohmann::json;

[[noreturn]] void bad(const std::string &path, const std::string &msg)
{
  throw Error(ErrorKind::ConfigError, path + ": " + msg);
}

void only_keys(const json &j, const std::string &path, std::initializer_list<const char *> keys)
{
  if (!j.is_object())
  {
    bad(path, "expected an object");
  }
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto &[k, v] : j.items())
  {
    if (!allowed.count(k))
    {
      bad(path + "." + k, "unknown field");
    }
  }
}

double get_number(const json &j, const std::string &path)
{
  if (!j.is_number())
  {
    bad(path, "expected a number");
  }
  const double x = j.get<double>();
  if (!std::isfinite(x))
  {
    bad(path, "must be finite");
  }
  return x;
}

double get_positive(const json &j, const std::string &path)
{
  const double x = get_number(j, path);
  if (!(x > 0.0))
  {
    bad(path, "must be positive");
  }
  return x;
}

std::uint64_t get_unsigned(const json &j, const std::string &path)
{
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0))
  {
    bad(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::size_t get_count(const json &j, const std::string &path)
{
  const auto v = get_unsigned(j, path);
  if (v == 0)
  {
    bad(path, "must be at least 1");
  }
  return static_cast<std::size_t>(v);
}

std::string get_string(const json &j, const std::string &path)
{
  if (!j.is_string())
  {
    bad(path, "expected a string");
  }
  return j.get<std::string>();
}

const GalleryEntry *find_entry(const std::string &name)
{
  for (const auto &e : gallery_entries())
  {
    if (e.name == name)
    {
      return &e;
    }
  }
  return nullptr;
}

ProblemSpec parse_problem(const json &j)
{
  const std::string path = "problem";
  only_keys(j, path, {"gallery", "path", "params"});
  ProblemSpec p;
  if (j.contains("gallery") == j.contains("path"))
  {
    bad(path, "exactly one of 'gallery' and 'path' is required");
  }
  if (j.contains("path"))
  {
    p.path = get_string(j["path"], path + ".path");
    if (j.contains("params"))
    {
      bad(path + ".params", "only allowed with 'gallery'");
    }
    return p;
  }
  p.gallery = get_string(j["gallery"], path + ".gallery");
  if (!find_entry(p.gallery))
  {
    bad(path + ".gallery", "unknown problem '" + p.gallery + "' (delay, fem, hadeler, quadratic)");
  }
  const json params = j.value("params", json::object());
  const std::string pp = path + ".params";
  if (p.gallery == "delay")
  {
    only_keys(params, pp, {"tau"});
    if (params.contains("tau"))
    {
      get_positive(params["tau"], pp + ".tau");
    }
  }
  else if (p.gallery == "hadeler")
  {
    only_keys(params, pp, {"n", "b0"});
    if (params.contains("b0"))
    {
      get_number(params["b0"], pp + ".b0");
    }
  }
  else
  {
    only_keys(params, pp, {"n"});
  }
  if (params.contains("n"))
  {
    get_count(params["n"], pp + ".n");
  }
  p.params = params;
  return p;
}

}  // namespace

SplitProblem ProblemSpec::build() const
{
  if (gallery.empty())
  {
    return load_problem(path);
  }
  if (gallery == "delay")
  {
    return make_delay(params.value("tau", 1.0));
  }
  if (gallery == "fem")
  {
    return make_fem_string(params.value("n", std::size_t{100}));
  }
  if (gallery == "hadeler")
  {
    return make_hadeler(params.value("n", std::size_t{200}), params.value("b0", 100.0));
  }
  if (gallery == "quadratic")
  {
    return make_quadratic_halo(params.value("n", std::size_t{4}));
  }
  bad("problem.gallery", "unknown problem '" + gallery + "'");
}

Config Config::from_json(const json &j)
{
  only_keys(j, "config", {"problem", "contour", "approximation", "solver", "halo", "output"});
  Config c;
  if (!j.contains("problem"))
  {
    bad("problem", "missing");
  }
  c.problem = parse_problem(j["problem"]);
  if (j.contains("contour"))
  {
    c.contour = contour_from_json(j["contour"], "contour");
  }
  else if (c.problem.gallery.empty())
  {
    bad("contour", "required for a file problem");
  }

  if (j.contains("approximation"))
  {
    const auto &a = j["approximation"];
    only_keys(a, "approximation", {"m", "inner_scale", "m_values", "m_range"});
    if (a.contains("m"))
    {
      c.approximation.m = get_count(a["m"], "approximation.m");
    }
    if (a.contains("inner_scale"))
    {
      const double s = get_number(a["inner_scale"], "approximation.inner_scale");
      if (!(s > 0.0 && s < 1.0))
      {
        bad("approximation.inner_scale", "must lie in (0, 1)");
      }
      c.approximation.inner_scale = s;
    }
    if (a.contains("m_values") && a.contains("m_range"))
    {
      bad("approximation", "give either 'm_values' or 'm_range'");
    }
    if (a.contains("m_values"))
    {
      const auto &v = a["m_values"];
      if (!v.is_array() || v.empty())
      {
        bad("approximation.m_values", "expected a non-empty array");
      }
      for (std::size_t i = 0; i < v.size(); ++i)
      {
        c.approximation.m_values.push_back(get_count(v[i], "approximation.m_values[" + std::to_string(i) + "]"));
      }
    }
    if (a.contains("m_range"))
    {
      const auto &r = a["m_range"];
      const std::string rp = "approximation.m_range";
      only_keys(r, rp, {"start", "stop", "step"});
      if (!r.contains("start") || !r.contains("stop"))
      {
        bad(rp, "'start' and 'stop' are required");
      }
      const std::size_t start = get_count(r["start"], rp + ".start");
      const std::size_t stop = get_count(r["stop"], rp + ".stop");
      const std::size_t step = r.contains("step") ? get_count(r["step"], rp + ".step") : 1;
      if (stop < start)
      {
        bad(rp, "empty range (stop < start)");
      }
      for (std::size_t m = start; m <= stop; m += step)
      {
        c.approximation.m_values.push_back(m);
      }
    }
  }

  if (j.contains("solver"))
  {
    const auto &s = j["solver"];
    const std::string sp = "solver";
    only_keys(s, sp, {"method", "sigma", "k", "nu", "q", "tol", "max_outer", "seed", "beyn"});
    auto &o = c.solver;
    if (s.contains("method"))
    {
      o.method = get_string(s["method"], sp + ".method");
      if (o.method != "beyn")
      {
        try
        {
          parse_method(o.method);
        }
        catch (const Error &)
        {
          bad(sp + ".method", "unknown method '" + o.method +
                                  "' (full-arnoldi, full-subspace, reduced-subspace, dense, beyn)");
        }
      }
    }
    if (s.contains("sigma"))
    {
      o.sigma = complex_from_json(s["sigma"], sp + ".sigma");
    }
    if (s.contains("k"))
    {
      o.k = get_count(s["k"], sp + ".k");
    }
    if (s.contains("nu"))
    {
      o.nu = get_unsigned(s["nu"], sp + ".nu");
    }
    if (s.contains("q"))
    {
      o.q = get_count(s["q"], sp + ".q");
    }
    if (s.contains("tol"))
    {
      o.tol = get_positive(s["tol"], sp + ".tol");
    }
    if (s.contains("max_outer"))
    {
      o.max_outer = get_count(s["max_outer"], sp + ".max_outer");
    }
    if (s.contains("seed"))
    {
      o.seed = get_unsigned(s["seed"], sp + ".seed");
    }
    if (o.k && o.nu && *o.k > o.nu)
    {
      bad(sp + ".nu", "must be at least k");
    }
    if (s.contains("beyn"))
    {
      const auto &b = s["beyn"];
      const std::string bp = sp + ".beyn";
      only_keys(b, bp, {"N", "ell", "K", "rank_tol"});
      if (b.contains("N"))
      {
        o.beyn.N = get_count(b["N"], bp + ".N");
        if (o.beyn.N < 8)
        {
          bad(bp + ".N", "must be at least 8");
        }
      }
      if (b.contains("ell"))
      {
        o.beyn.ell = get_count(b["ell"], bp + ".ell");
      }
      if (b.contains("K"))
      {
        o.beyn.K = get_count(b["K"], bp + ".K");
      }
      if (b.contains("rank_tol"))
      {
        o.beyn.rank_tol = get_positive(b["rank_tol"], bp + ".rank_tol");
        if (o.beyn.rank_tol >= 1.0)
        {
          bad(bp + ".rank_tol", "must lie in (0, 1)");
        }
      }
    }
  }

  if (j.contains("halo"))
  {
    const auto &h = j["halo"];
    only_keys(h, "halo", {"tol_match", "delta", "contour_samples", "reference"});
    if (h.contains("tol_match"))
    {
      c.halo.tol_match = get_positive(h["tol_match"], "halo.tol_match");
    }
    if (h.contains("delta"))
    {
      c.halo.delta = get_positive(h["delta"], "halo.delta");
    }
    if (h.contains("contour_samples"))
    {
      c.halo.contour_samples = get_count(h["contour_samples"], "halo.contour_samples");
    }
    if (h.contains("reference"))
    {
      c.halo.reference = get_string(h["reference"], "halo.reference");
      if (c.halo.reference != "auto" && c.halo.reference != "beyn" && c.halo.reference != "none")
      {
        bad("halo.reference", "expected auto, beyn or none");
      }
    }
  }

  if (j.contains("output"))
  {
    only_keys(j["output"], "output", {"dir"});
    if (j["output"].contains("dir"))
    {
      c.output_dir = get_string(j["output"]["dir"], "output.dir");
    }
  }
  return c;
}

Config Config::load(const std::filesystem::path &file)
{
  std::ifstream in(file);
  if (!in)
  {
    throw Error(ErrorKind::ConfigError, file.string() + ": cannot open");
  }
  json j;
  try
  {
    j = json::parse(in);
  }
  catch (const json::parse_error &e)
  {
    throw Error(ErrorKind::ConfigError, file.string() + ": " + e.what());
  }
  return from_json(j);
}

json Config::to_json() const
{
  json j;
  auto &p = j["problem"];
  if (problem.gallery.empty())
  {
    p["path"] = problem.path.string();
  }
  else
  {
    p["gallery"] = problem.gallery;
    if (!problem.params.empty())
    {
      p["params"] = problem.params;
    }
  }
  if (contour)
  {
    j["contour"] = contour_to_json(*contour);
  }
  auto &a = j["approximation"];
  if (approximation.m)
  {
    a["m"] = *approximation.m;
  }
  a["inner_scale"] = approximation.inner_scale;
  if (!approximation.m_values.empty())
  {
    a["m_values"] = approximation.m_values;
  }
  auto &s = j["solver"];
  s["method"] = solver.method;
  if (solver.sigma)
  {
    s["sigma"] = complex_to_json(*solver.sigma);
  }
  if (solver.k)
  {
    s["k"] = *solver.k;
  }
  s["nu"] = solver.nu;
  s["q"] = solver.q;
  s["tol"] = solver.tol;
  s["max_outer"] = solver.max_outer;
  s["seed"] = solver.seed;
  auto &b = s["beyn"];
  b["N"] = solver.beyn.N;
  if (solver.beyn.ell)
  {
    b["ell"] = *solver.beyn.ell;
  }
  if (solver.beyn.K)
  {
    b["K"] = *solver.beyn.K;
  }
  b["rank_tol"] = solver.beyn.rank_tol;
  j["halo"] = {{"tol_match", halo.tol_match},
               {"delta", halo.delta},
               {"contour_samples", halo.contour_samples},
               {"reference", halo.reference}};
  j["output"]["dir"] = output_dir;
  return j;
}

bool Config::operator==(const Config &o) const
{
  return problem == o.problem && contour == o.contour && approximation == o.approximation &&
         solver == o.solver && halo == o.halo && output_dir == o.output_dir;
}

Contour Config::resolved_contour() const
{
  if (contour)
  {
    return *contour;
  }
  if (const auto *e = find_entry(problem.gallery))
  {
    return e->contour;
  }
  bad("contour", "required for a file problem");
}

std::size_t Config::resolved_m() const
{
  if (approximation.m)
  {
    return *approximation.m;
  }
  if (const auto *e = find_entry(problem.gallery))
  {
    return e->m;
  }
  bad("approximation.m", "required for a file problem");
}

std::size_t Config::resolved_k() const
{
  if (solver.k)
  {
    return *solver.k;
  }
  if (const auto *e = find_entry(problem.gallery))
  {
    return e->k;
  }
  return 5;
}

SolveConfig Config::solve_config(const Contour &c) const
{
  SolveConfig s;
  s.method = parse_method(solver.method);
  s.sigma = solver.sigma ? *solver.sigma : c.center();
  s.k = resolved_k();
  s.nu = solver.nu;
  s.q = solver.q;
  s.tol = solver.tol;
  s.max_outer = solver.max_outer;
  s.seed = solver.seed;
  try
  {
    s.validate();
  }
  catch (const Error &e)
  {
    bad("solver", e.what());
  }
  return s;
}

BeynConfig Config::beyn_config(std::size_t n) const
{
  BeynConfig b = beyn_defaults(n, resolved_k());
  b.N = solver.beyn.N;
  if (solver.beyn.ell)
  {
    b.ell = *solver.beyn.ell;
  }
  if (solver.beyn.K)
  {
    b.K = *solver.beyn.K;
  }
  else if (solver.beyn.ell)
  {
    const std::size_t want = resolved_k() + 5, ell = std::min(n, *solver.beyn.ell);
    b.K = (want + ell - 1) / ell;
  }
  b.rank_tol = solver.beyn.rank_tol;
  b.seed = solver.seed;
  return b;
}

}  // namespace ratnlevp
