// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratnlevp/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "ratnlevp/error.hpp"
#include "ratnlevp/kernels.hpp"

namespace ratnlevp
{

namespace
{

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
// -1 / (2 pi i)
const cplx kCauchy = -1.0 / (2.0 * kPi * kI);

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};

double segment_distance(cplx z, cplx a, cplx b)
{
  const cplx d = b - a;
  const double len2 = std::norm(d);
  double t = len2 > 0.0 ? ((z - a) * std::conj(d)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

std::array<cplx, 5> rectangle_corners(const Rectangle &r)
{
  const cplx tl(r.bottom_left.real(), r.top_right.imag());
  const cplx br(r.top_right.real(), r.bottom_left.imag());
  return {tl, r.bottom_left, br, r.top_right, tl};
}

std::string format_double(double x)
{
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

Contour Contour::circle(cplx center, double radius)
{
  if (!(radius > 0.0) || !std::isfinite(radius))
  {
    throw Error(ErrorKind::InvalidArgument, "circle radius must be positive");
  }
  return Contour(Circle{center, radius});
}

Contour Contour::ellipse(cplx center, double semi_x, double semi_y)
{
  if (!(semi_x > 0.0) || !(semi_y > 0.0) || !std::isfinite(semi_x) || !std::isfinite(semi_y))
  {
    throw Error(ErrorKind::InvalidArgument, "ellipse semi-axes must be positive");
  }
  return Contour(Ellipse{center, semi_x, semi_y});
}

Contour Contour::rectangle(cplx bottom_left, cplx top_right)
{
  if (!(bottom_left.real() < top_right.real()) || !(bottom_left.imag() < top_right.imag()))
  {
    throw Error(ErrorKind::InvalidArgument,
                "rectangle needs Re(bl) < Re(tr) and Im(bl) < Im(tr)");
  }
  return Contour(Rectangle{bottom_left, top_right});
}

std::string Contour::kind() const
{
  return std::visit(overloaded{[](const Circle &) { return std::string("circle"); },
                               [](const Ellipse &) { return std::string("ellipse"); },
                               [](const Rectangle &) { return std::string("rectangle"); }},
                    shape_);
}

cplx Contour::center() const
{
  return std::visit(overloaded{[](const Circle &c) { return c.center; },
                               [](const Ellipse &e) { return e.center; },
                               [](const Rectangle &r) { return 0.5 * (r.bottom_left + r.top_right); }},
                    shape_);
}

double Contour::diameter() const
{
  return std::visit(
      overloaded{[](const Circle &c) { return 2.0 * c.radius; },
                 [](const Ellipse &e) { return 2.0 * std::max(e.semi_x, e.semi_y); },
                 [](const Rectangle &r) { return std::abs(r.top_right - r.bottom_left); }},
      shape_);
}

bool Contour::is_inside(cplx z) const
{
  return std::visit(overloaded{[&](const Circle &c) { return std::abs(z - c.center) < c.radius; },
                               [&](const Ellipse &e) {
                                 const double x = (z.real() - e.center.real()) / e.semi_x;
                                 const double y = (z.imag() - e.center.imag()) / e.semi_y;
                                 return x * x + y * y < 1.0;
                               },
                               [&](const Rectangle &r) {
                                 return z.real() > r.bottom_left.real() &&
                                        z.real() < r.top_right.real() &&
                                        z.imag() > r.bottom_left.imag() &&
                                        z.imag() < r.top_right.imag();
                               }},
                    shape_);
}

double Contour::distance_to_boundary(cplx z) const
{
  return std::visit(
      overloaded{[&](const Circle &c) { return std::abs(std::abs(z - c.center) - c.radius); },
                 [&](const Ellipse &e) {
                   // Coarse scan in the angle, then golden-section refinement.
                   auto dist = [&](double t) {
                     const cplx p = e.center + cplx(e.semi_x * std::cos(t), e.semi_y * std::sin(t));
                     return std::abs(z - p);
                   };
                   constexpr int samples = 720;
                   const double h = 2.0 * kPi / samples;
                   int best = 0;
                   double dbest = dist(0.0);
                   for (int s = 1; s < samples; ++s)
                   {
                     const double d = dist(s * h);
                     if (d < dbest)
                     {
                       dbest = d;
                       best = s;
                     }
                   }
                   const double g = (std::sqrt(5.0) - 1.0) / 2.0;
                   double a = (best - 1) * h, b = (best + 1) * h;
                   double c1 = b - g * (b - a), c2 = a + g * (b - a);
                   double f1 = dist(c1), f2 = dist(c2);
                   for (int it = 0; it < 80; ++it)
                   {
                     if (f1 < f2)
                     {
                       b = c2;
                       c2 = c1;
                       f2 = f1;
                       c1 = b - g * (b - a);
                       f1 = dist(c1);
                     }
                     else
                     {
                       a = c1;
                       c1 = c2;
                       f1 = f2;
                       c2 = a + g * (b - a);
                       f2 = dist(c2);
                     }
                   }
                   return std::min({dbest, f1, f2});
                 },
                 [&](const Rectangle &r) {
                   const auto c = rectangle_corners(r);
                   double d = segment_distance(z, c[0], c[1]);
                   for (int s = 1; s < 4; ++s)
                   {
                     d = std::min(d, segment_distance(z, c[s], c[s + 1]));
                   }
                   return d;
                 }},
      shape_);
}

Contour Contour::scaled(double factor) const
{
  return std::visit(overloaded{[&](const Circle &c) { return circle(c.center, c.radius * factor); },
                               [&](const Ellipse &e) {
                                 return ellipse(e.center, e.semi_x * factor, e.semi_y * factor);
                               },
                               [&](const Rectangle &r) {
                                 const cplx c = center();
                                 return rectangle(c + factor * (r.bottom_left - c),
                                                  c + factor * (r.top_right - c));
                               }},
                    shape_);
}

std::vector<cplx> Contour::polyline(std::size_t samples) const
{
  samples = std::max<std::size_t>(samples, 4);
  std::vector<cplx> pts;
  pts.reserve(samples + 1);
  std::visit(overloaded{[&](const Circle &c) {
                          for (std::size_t s = 0; s < samples; ++s)
                          {
                            pts.push_back(c.center + c.radius * std::exp(kI * (2.0 * kPi * s / samples)));
                          }
                        },
                        [&](const Ellipse &e) {
                          for (std::size_t s = 0; s < samples; ++s)
                          {
                            const double t = 2.0 * kPi * s / samples;
                            pts.push_back(e.center + cplx(e.semi_x * std::cos(t), e.semi_y * std::sin(t)));
                          }
                        },
                        [&](const Rectangle &r) {
                          const auto c = rectangle_corners(r);
                          std::array<double, 4> len{};
                          for (int k = 0; k < 4; ++k)
                          {
                            len[k] = std::abs(c[k + 1] - c[k]);
                          }
                          const auto counts = apportion(samples, len);
                          for (int k = 0; k < 4; ++k)
                          {
                            for (std::size_t s = 0; s < counts[k]; ++s)
                            {
                              pts.push_back(c[k] + (c[k + 1] - c[k]) * (double(s) / counts[k]));
                            }
                          }
                        }},
             shape_);
  pts.push_back(pts.front());
  return pts;
}

bool Contour::operator==(const Contour &o) const
{
  if (shape_.index() != o.shape_.index())
  {
    return false;
  }
  return std::visit(overloaded{[&](const Circle &c) {
                                 const auto &d = std::get<Circle>(o.shape_);
                                 return c.center == d.center && c.radius == d.radius;
                               },
                               [&](const Ellipse &e) {
                                 const auto &d = std::get<Ellipse>(o.shape_);
                                 return e.center == d.center && e.semi_x == d.semi_x &&
                                        e.semi_y == d.semi_y;
                               },
                               [&](const Rectangle &r) {
                                 const auto &d = std::get<Rectangle>(o.shape_);
                                 return r.bottom_left == d.bottom_left && r.top_right == d.top_right;
                               }},
                    shape_);
}

bool is_inside(const Contour &c, cplx z)
{
  return c.is_inside(z);
}

GaussLegendre gauss_legendre(std::size_t m)
{
  GaussLegendre gl;
  gl.x.resize(m);
  gl.w.resize(m);
  const double dm = static_cast<double>(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i)
  {
    double z = std::cos(kPi * (i + 0.75) / (dm + 0.5));
    double pp = 1.0;
    for (int it = 0; it < 100; ++it)
    {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 1; j <= m; ++j)
      {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = dm * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15)
      {
        // One more derivative at the converged root for the weight.
        p1 = 1.0;
        p2 = 0.0;
        for (std::size_t j = 1; j <= m; ++j)
        {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        pp = dm * (z * p1 - p2) / (z * z - 1.0);
        break;
      }
    }
    gl.x[i] = -z;
    gl.x[m - 1 - i] = z;
    gl.w[i] = gl.w[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  if (m % 2 == 1)
  {
    gl.x[m / 2] = 0.0;
  }
  return gl;
}

std::array<std::size_t, 4> apportion(std::size_t m, const std::array<double, 4> &lengths)
{
  if (m < 4)
  {
    throw Error(ErrorKind::InvalidNodeCount, "need at least one node per side (m >= 4)");
  }
  const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  std::array<std::size_t, 4> c{};
  std::array<double, 4> frac{};
  std::size_t used = 0;
  for (int k = 0; k < 4; ++k)
  {
    const double q = m * lengths[k] / total;
    c[k] = static_cast<std::size_t>(std::floor(q));
    frac[k] = q - c[k];
    used += c[k];
  }
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return frac[a] > frac[b] + 1e-12; });
  for (std::size_t r = 0; r < m - used; ++r)
  {
    ++c[order[r]];
  }
  for (int k = 0; k < 4; ++k)
  {
    if (c[k] == 0)
    {
      const auto donor = std::max_element(c.begin(), c.end()) - c.begin();
      --c[donor];
      c[k] = 1;
    }
  }
  return c;
}

QuadratureRule quadrature_rule(const Contour &contour, std::size_t m)
{
  QuadratureRule rule;
  rule.contour = contour;
  std::visit(
      overloaded{
          [&](const Circle &c) {
            if (m < 2)
            {
              throw Error(ErrorKind::InvalidNodeCount, "circle quadrature needs m >= 2");
            }
            const GaussLegendre gl = gauss_legendre(m);
            for (std::size_t k = 0; k < m; ++k)
            {
              const double t = kPi * (gl.x[k] + 1.0);
              const cplx e = std::exp(kI * t);
              rule.nodes.push_back(c.center + c.radius * e);
              rule.weights.push_back(kCauchy * (kPi * gl.w[k]) * (kI * c.radius * e));
            }
            rule.scheme = "gauss-legendre-global";
          },
          [&](const Ellipse &el) {
            if (m < 2)
            {
              throw Error(ErrorKind::InvalidNodeCount, "ellipse quadrature needs m >= 2");
            }
            const GaussLegendre gl = gauss_legendre(m);
            for (std::size_t k = 0; k < m; ++k)
            {
              const double t = kPi * (gl.x[k] + 1.0);
              rule.nodes.push_back(el.center + cplx(el.semi_x * std::cos(t), el.semi_y * std::sin(t)));
              const cplx dphi(-el.semi_x * std::sin(t), el.semi_y * std::cos(t));
              rule.weights.push_back(kCauchy * (kPi * gl.w[k]) * dphi);
            }
            rule.scheme = "gauss-legendre-global";
          },
          [&](const Rectangle &r) {
            const auto c = rectangle_corners(r);
            std::array<double, 4> len{};
            for (int k = 0; k < 4; ++k)
            {
              len[k] = std::abs(c[k + 1] - c[k]);
            }
            rule.side_counts = apportion(m, len);
            for (int k = 0; k < 4; ++k)
            {
              const GaussLegendre gl = gauss_legendre(rule.side_counts[k]);
              const cplx d = c[k + 1] - c[k];
              for (std::size_t s = 0; s < gl.x.size(); ++s)
              {
                rule.nodes.push_back(c[k] + d * (0.5 * (gl.x[s] + 1.0)));
                rule.weights.push_back(kCauchy * gl.w[s] * (0.5 * d));
              }
            }
            rule.scheme = "gauss-legendre-sides";
          }},
      contour.shape());
  return rule;
}

QuadratureRule trapezoid_rule(const Contour &contour, std::size_t m)
{
  if (std::holds_alternative<Rectangle>(contour.shape()))
  {
    return quadrature_rule(contour, m);
  }
  if (m < 2)
  {
    throw Error(ErrorKind::InvalidNodeCount, "trapezoid rule needs m >= 2");
  }
  QuadratureRule rule;
  rule.contour = contour;
  rule.scheme = "trapezoid";
  const double h = 2.0 * kPi / m;
  for (std::size_t k = 0; k < m; ++k)
  {
    const double t = h * k;
    if (const auto *c = std::get_if<Circle>(&contour.shape()))
    {
      const cplx e = std::exp(kI * t);
      rule.nodes.push_back(c->center + c->radius * e);
      rule.weights.push_back(kCauchy * h * (kI * c->radius * e));
    }
    else
    {
      const auto &el = std::get<Ellipse>(contour.shape());
      rule.nodes.push_back(el.center + cplx(el.semi_x * std::cos(t), el.semi_y * std::sin(t)));
      rule.weights.push_back(kCauchy * h * cplx(-el.semi_x * std::sin(t), el.semi_y * std::cos(t)));
    }
  }
  return rule;
}

ScalarFunction ScalarFunction::poly(int degree)
{
  if (degree < 0)
  {
    throw Error(ErrorKind::InvalidArgument, "poly degree must be >= 0");
  }
  return ScalarFunction("poly(" + std::to_string(degree) + ")",
                        [degree](cplx z) { return degree == 0 ? cplx(1.0) : std::pow(z, degree); });
}

ScalarFunction ScalarFunction::exp(double scale)
{
  return ScalarFunction("exp(" + format_double(scale) + ")",
                        [scale](cplx z) { return std::exp(scale * z); });
}

ScalarFunction ScalarFunction::recip(double shift)
{
  return ScalarFunction("recip(" + format_double(shift) + ")",
                        [shift](cplx z) { return 1.0 / (shift - z); },
                        {KnownPole{shift, -1.0}});
}

ScalarFunction ScalarFunction::expm1(double scale)
{
  return ScalarFunction("expm1(" + format_double(scale) + ")", [scale](cplx z) {
    const cplx w = scale * z;
    // exp(w) - 1 without cancellation for small |w|.
    if (std::abs(w) < 1e-5)
    {
      return w * (1.0 + w * (0.5 + w / 6.0));
    }
    return std::exp(w) - 1.0;
  });
}

cplx RationalApprox::evaluate(std::size_t j, cplx z) const
{
  cplx s = 0.0;
  for (std::size_t i = 0; i < poles.size(); ++i)
  {
    s += coeffs(i, j) / (z - poles[i]);
  }
  return s;
}

RationalApprox build_rational_approx(const QuadratureRule &rule,
                                     const std::vector<ScalarFunction> &functions,
                                     const ApproxOptions &opts)
{
  const std::size_t m = rule.m();
  const std::size_t p = functions.size();

  struct Extracted
  {
    cplx location;
    std::vector<cplx> residues;
  };
  std::vector<Extracted> extra;
  if (opts.extract_interior_poles)
  {
    for (std::size_t j = 0; j < p; ++j)
    {
      for (const auto &kp : functions[j].poles())
      {
        if (!rule.contour.is_inside(kp.location))
        {
          continue;
        }
        auto it = std::find_if(extra.begin(), extra.end(),
                               [&](const Extracted &e) { return e.location == kp.location; });
        if (it == extra.end())
        {
          extra.push_back({kp.location, std::vector<cplx>(p, 0.0)});
          it = extra.end() - 1;
        }
        it->residues[j] += kp.residue;
      }
    }
  }

  RationalApprox ra;
  ra.contour = rule.contour;
  ra.functions = functions;
  ra.quadrature_count = m;
  ra.poles = rule.nodes;
  ra.coeffs = CMatrix(m + extra.size(), p);
  for (std::size_t j = 0; j < p; ++j)
  {
    for (std::size_t k = 0; k < m; ++k)
    {
      const cplx s = rule.nodes[k];
      cplx g = functions[j](s);
      for (const auto &e : extra)
      {
        g -= e.residues[j] / (s - e.location);
      }
      if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
      {
        std::ostringstream os;
        os << "f_" << j + 1 << " = " << functions[j].descriptor() << " is not finite at node " << k
           << " (" << s.real() << (s.imag() < 0 ? "" : "+") << s.imag()
           << "i); move the contour off its pole";
        throw Error(ErrorKind::EvaluationFailure, os.str());
      }
      ra.coeffs(k, j) = rule.weights[k] * g;
    }
  }
  for (std::size_t e = 0; e < extra.size(); ++e)
  {
    ra.poles.push_back(extra[e].location);
    for (std::size_t j = 0; j < p; ++j)
    {
      ra.coeffs(m + e, j) = extra[e].residues[j];
    }
  }
  for (std::size_t a = 0; a < ra.poles.size(); ++a)
  {
    for (std::size_t b = a + 1; b < ra.poles.size(); ++b)
    {
      if (ra.poles[a] == ra.poles[b])
      {
        throw Error(ErrorKind::InvalidArgument, "rational approximation poles must be distinct");
      }
    }
  }
  return ra;
}

std::vector<cplx> interior_grid(const Contour &inner, std::size_t grid_density)
{
  if (grid_density < 2)
  {
    throw Error(ErrorKind::InvalidArgument, "grid_density must be >= 2");
  }
  double x0, x1, y0, y1;
  std::visit(overloaded{[&](const Circle &c) {
                          x0 = c.center.real() - c.radius;
                          x1 = c.center.real() + c.radius;
                          y0 = c.center.imag() - c.radius;
                          y1 = c.center.imag() + c.radius;
                        },
                        [&](const Ellipse &e) {
                          x0 = e.center.real() - e.semi_x;
                          x1 = e.center.real() + e.semi_x;
                          y0 = e.center.imag() - e.semi_y;
                          y1 = e.center.imag() + e.semi_y;
                        },
                        [&](const Rectangle &r) {
                          x0 = r.bottom_left.real();
                          x1 = r.top_right.real();
                          y0 = r.bottom_left.imag();
                          y1 = r.top_right.imag();
                        }},
             inner.shape());
  std::vector<cplx> pts;
  const double d = static_cast<double>(grid_density - 1);
  for (std::size_t b = 0; b < grid_density; ++b)
  {
    const double y = y0 + (y1 - y0) * (b / d);
    for (std::size_t a = 0; a < grid_density; ++a)
    {
      const cplx z(x0 + (x1 - x0) * (a / d), y);
      if (inner.is_inside(z))
      {
        pts.push_back(z);
      }
    }
  }
  return pts;
}

namespace
{

std::vector<cplx> checked_grid(const RationalApprox &ra, const Contour &inner, std::size_t density)
{
  std::vector<cplx> pts = interior_grid(inner, density);
  for (const cplx z : pts)
  {
    if (!ra.contour.is_inside(z))
    {
      throw Error(ErrorKind::RegionNotInterior, "inner region reaches outside the pole contour");
    }
    for (std::size_t i = 0; i < ra.quadrature_count; ++i)
    {
      if (std::abs(z - ra.poles[i]) <= 1e-12 * std::max(1.0, std::abs(ra.poles[i])))
      {
        throw Error(ErrorKind::RegionNotInterior, "grid point coincides with a pole");
      }
    }
  }
  return pts;
}

}  // namespace

double approx_error(const RationalApprox &ra, std::size_t j, const Contour &inner,
                    std::size_t grid_density)
{
  if (j >= ra.p() || ra.functions.size() != ra.p())
  {
    throw Error(ErrorKind::InvalidArgument, "approx_error: function index out of range");
  }
  const std::vector<cplx> pts = checked_grid(ra, inner, grid_density);
  const ScalarFunction &f = ra.functions[j];
  // Compare the analytic remainder with the quadrature part so extracted
  // principal parts cancel exactly rather than numerically.
  return kernels::max_abs(pts, [&](cplx z) {
    cplx g = f(z);
    cplx r = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i)
    {
      const cplx term = ra.coeffs(i, j) / (z - ra.poles[i]);
      if (i < ra.quadrature_count)
      {
        r += term;
      }
      else
      {
        g -= term;
      }
    }
    return g - r;
  });
}

double approx_error(const RationalApprox &ra, std::size_t j, const ScalarFunction::Eval &f,
                    const Contour &inner, std::size_t grid_density)
{
  if (j >= ra.p())
  {
    throw Error(ErrorKind::InvalidArgument, "approx_error: function index out of range");
  }
  const std::vector<cplx> pts = checked_grid(ra, inner, grid_density);
  return kernels::max_abs(pts, [&](cplx z) { return f(z) - ra.evaluate(j, z); });
}

}  // namespace ratnlevp
