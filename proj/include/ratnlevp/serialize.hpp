// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_SERIALIZE_HPP
#define RATNLEVP_SERIALIZE_HPP

#include <string>

#include "json.hpp"
#include "ratnlevp/contour.hpp"
#include "ratnlevp/linalg.hpp"

namespace ratnlevp
{

// [re, im]
nlohmann::json complex_to_json(cplx z);
// Accepts a number, [re, im] or {"re": .., "im": ..}; ConfigError names `path`.
cplx complex_from_json(const nlohmann::json &j, const std::string &path);

// {"shape": "circle", "center": [re, im], "radius": r}
// {"shape": "ellipse", "center": [re, im], "semi_x": a, "semi_y": b}
// {"shape": "rectangle", "bottom_left": [re, im], "top_right": [re, im]}
nlohmann::json contour_to_json(const Contour &c);
Contour contour_from_json(const nlohmann::json &j, const std::string &path);

// Scheme name recorded for quadrature_rule on this contour.
std::string quadrature_scheme(const Contour &c);

}  // namespace ratnlevp

#endif  // RATNLEVP_SERIALIZE_HPP
