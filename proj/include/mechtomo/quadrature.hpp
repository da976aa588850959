// Copyright 2026 The mechtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MECHTOMO_QUADRATURE_HPP
#define MECHTOMO_QUADRATURE_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace mechtomo {

/// Gauss–Hermite rule: Σ w_i f(x_i) ≈ ∫ e^{−x²} f(x) dx.
struct GaussHermiteRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Golub–Welsch nodes/weights; results are cached per order.
const GaussHermiteRule& gauss_hermite(int order);

/// Trapezoid rule over a (possibly non-uniform) sorted grid.
double trapezoid(std::span<const double> xs, std::span<const double> ys);

/// Trapezoid moments ∫ x^k y(x) dx for k = 0..max_k.
std::vector<double> trapezoid_moments(std::span<const double> xs,
                                      std::span<const double> ys, int max_k);

}  // namespace mechtomo

#endif
