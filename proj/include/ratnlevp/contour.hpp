// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_CONTOUR_HPP
#define RATNLEVP_CONTOUR_HPP

#include <array>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "ratnlevp/linalg.hpp"

namespace ratnlevp
{

struct Circle
{
  cplx center;
  double radius;
};

struct Ellipse
{
  cplx center;
  double semi_x, semi_y;
};

struct Rectangle
{
  cplx bottom_left, top_right;
};

//
// Closed, counterclockwise curve bounding the search region.
//
class Contour
{
public:
  using Shape = std::variant<Circle, Ellipse, Rectangle>;

  // Throw InvalidArgument on non-positive radii / degenerate rectangles.
  static Contour circle(cplx center, double radius);
  static Contour ellipse(cplx center, double semi_x, double semi_y);
  static Contour rectangle(cplx bottom_left, cplx top_right);

  const Shape &shape() const { return shape_; }
  std::string kind() const;  // "circle" | "ellipse" | "rectangle"

  cplx center() const;
  double diameter() const;
  // Strict interior test.
  bool is_inside(cplx z) const;
  // Euclidean distance from z to the curve.
  double distance_to_boundary(cplx z) const;
  // Concentric copy scaled about the center by factor.
  Contour scaled(double factor) const;
  // Closed polyline with the first point repeated at the end.
  std::vector<cplx> polyline(std::size_t samples) const;

  bool operator==(const Contour &o) const;

private:
  explicit Contour(Shape s) : shape_(s) {}
  Shape shape_;
};

bool is_inside(const Contour &c, cplx z);

// Nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendre
{
  std::vector<double> x, w;
};
GaussLegendre gauss_legendre(std::size_t m);

//
// Quadrature for (1/2 pi i) times a contour integral, with the sign folded in:
// r(z) = sum_k weights[k] * f(nodes[k]) / (z - nodes[k]) approximates f(z)
// for z inside.
//
struct QuadratureRule
{
  Contour contour = Contour::circle(0.0, 1.0);
  CVector nodes;
  CVector weights;
  std::string scheme;             // "gauss-legendre-global", "gauss-legendre-sides", "trapezoid"
  std::array<std::size_t, 4> side_counts{};  // rectangle only, sides tl->bl->br->tr->tl

  std::size_t m() const { return nodes.size(); }
};

// Gauss-Legendre in the angle for circles/ellipses, per side for rectangles.
QuadratureRule quadrature_rule(const Contour &c, std::size_t m);
// Trapezoid in the angle for circles/ellipses; rectangles fall back to
// quadrature_rule.
QuadratureRule trapezoid_rule(const Contour &c, std::size_t m);
// Largest-remainder apportionment of m over the given lengths, each >= 1;
// ties go to the lowest index.
std::array<std::size_t, 4> apportion(std::size_t m, const std::array<double, 4> &lengths);

//
// Scalar function of the split form with optional known simple poles.
//
struct KnownPole
{
  cplx location;
  cplx residue;
};

class ScalarFunction
{
public:
  using Eval = std::function<cplx(cplx)>;

  ScalarFunction(std::string descriptor, Eval f, std::vector<KnownPole> poles = {})
    : descriptor_(std::move(descriptor)), f_(std::move(f)), poles_(std::move(poles))
  {
  }

  // z^degree
  static ScalarFunction poly(int degree);
  // exp(scale * z)
  static ScalarFunction exp(double scale);
  // 1 / (shift - z), simple pole at shift with residue -1
  static ScalarFunction recip(double shift);
  // exp(scale * z) - 1
  static ScalarFunction expm1(double scale);

  cplx operator()(cplx z) const { return f_(z); }
  const std::string &descriptor() const { return descriptor_; }
  const std::vector<KnownPole> &poles() const { return poles_; }

private:
  std::string descriptor_;
  Eval f_;
  std::vector<KnownPole> poles_;
};

//
// Shared-pole rational approximation r_j(z) = sum_i coeffs(i, j) / (z - poles[i]).
// The first `quadrature_count` poles are the quadrature nodes; any further
// poles are known poles of the f_j lying inside the contour, carried exactly.
//
struct RationalApprox
{
  CVector poles;
  CMatrix coeffs;  // poles.size() x p
  std::size_t quadrature_count = 0;
  std::vector<ScalarFunction> functions;

  Contour contour = Contour::circle(0.0, 1.0);

  std::size_t p() const { return coeffs.cols(); }
  std::size_t size() const { return poles.size(); }
  cplx evaluate(std::size_t j, cplx z) const;
};

struct ApproxOptions
{
  // Split principal parts of known interior poles off before the Cauchy sum.
  bool extract_interior_poles = true;
};

// Throws EvaluationFailure if some f_j is non-finite at a node.
RationalApprox build_rational_approx(const QuadratureRule &rule,
                                     const std::vector<ScalarFunction> &functions,
                                     const ApproxOptions &opts = {});

// max |f_j(z) - r_j(z)| over a grid_density^2 tensor grid of the bounding box
// of `inner`, restricted to points inside `inner`.
double approx_error(const RationalApprox &ra, std::size_t j, const Contour &inner,
                    std::size_t grid_density = 200);
// Same, against an arbitrary evaluator f.
double approx_error(const RationalApprox &ra, std::size_t j, const ScalarFunction::Eval &f,
                    const Contour &inner, std::size_t grid_density = 200);
// Grid points used by approx_error, in row-major order.
std::vector<cplx> interior_grid(const Contour &inner, std::size_t grid_density);

}  // namespace ratnlevp

#endif  // RATNLEVP_CONTOUR_HPP
