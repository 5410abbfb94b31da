// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratnlevp/serialize.hpp"

#include <cmath>

#include "ratnlevp/error.hpp"

namespace ratnlevp
{

namespace
{

[[noreturn]] void bad(const std::string &path, const std::string &msg)
{
  throw Error(ErrorKind::ConfigError, path + ": " + msg);
}

double number(const nlohmann::json &j, const std::string &path)
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

const nlohmann::json &field(const nlohmann::json &j, const char *key, const std::string &path)
{
  if (!j.contains(key))
  {
    bad(path + "." + key, "missing");
  }
  return j.at(key);
}

}  // namespace

nlohmann::json complex_to_json(cplx z)
{
  return nlohmann::json::array({z.real(), z.imag()});
}

cplx complex_from_json(const nlohmann::json &j, const std::string &path)
{
  if (j.is_number())
  {
    return number(j, path);
  }
  if (j.is_array() && j.size() == 2)
  {
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
  }
  if (j.is_object() && j.contains("re"))
  {
    return {number(j.at("re"), path + ".re"), j.contains("im") ? number(j.at("im"), path + ".im") : 0.0};
  }
  bad(path, "expected a number, [re, im] or {\"re\", \"im\"}");
}

nlohmann::json contour_to_json(const Contour &c)
{
  nlohmann::json j;
  j["shape"] = c.kind();
  if (const auto *ci = std::get_if<Circle>(&c.shape()))
  {
    j["center"] = complex_to_json(ci->center);
    j["radius"] = ci->radius;
  }
  else if (const auto *el = std::get_if<Ellipse>(&c.shape()))
  {
    j["center"] = complex_to_json(el->center);
    j["semi_x"] = el->semi_x;
    j["semi_y"] = el->semi_y;
  }
  else
  {
    const auto &re = std::get<Rectangle>(c.shape());
    j["bottom_left"] = complex_to_json(re.bottom_left);
    j["top_right"] = complex_to_json(re.top_right);
  }
  return j;
}

Contour contour_from_json(const nlohmann::json &j, const std::string &path)
{
  if (!j.is_object())
  {
    bad(path, "expected an object");
  }
  const auto &shape = field(j, "shape", path);
  if (!shape.is_string())
  {
    bad(path + ".shape", "expected a string");
  }
  const std::string kind = shape.get<std::string>();
  try
  {
    if (kind == "circle")
    {
      return Contour::circle(complex_from_json(field(j, "center", path), path + ".center"),
                             number(field(j, "radius", path), path + ".radius"));
    }
    if (kind == "ellipse")
    {
      return Contour::ellipse(complex_from_json(field(j, "center", path), path + ".center"),
                              number(field(j, "semi_x", path), path + ".semi_x"),
                              number(field(j, "semi_y", path), path + ".semi_y"));
    }
    if (kind == "rectangle")
    {
      return Contour::rectangle(complex_from_json(field(j, "bottom_left", path), path + ".bottom_left"),
                                complex_from_json(field(j, "top_right", path), path + ".top_right"));
    }
  }
  catch (const Error &e)
  {
    if (e.kind() == ErrorKind::ConfigError)
    {
      throw;
    }
    bad(path, e.what());
  }
  bad(path + ".shape", "unknown shape '" + kind + "' (circle, ellipse, rectangle)");
}

std::string quadrature_scheme(const Contour &c)
{
  return c.kind() == "rectangle" ? "gauss-legendre-sides" : "gauss-legendre-global";
}

}  // namespace ratnlevp
