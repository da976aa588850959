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

#ifndef MECHTOMO_CONDITIONING_HPP
#define MECHTOMO_CONDITIONING_HPP

#include <Eigen/Dense>
#include <array>

#include "mechtomo/probe.hpp"

namespace mechtomo {

/// Gaussian state of the mechanical mode: mean (x̄, p̄) and quadrature
/// covariance (vacuum = diag(1/2, 1/2)).
struct GaussianState {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    Eigen::Matrix2d cov = 0.5 * Eigen::Matrix2d::Identity();

    /// Symmetry, positivity, det ≥ 1/4 (Heisenberg). Throws on violation.
    void validate() const;

    /// Occupation of the thermal state with the same purity:
    /// 1 + 2n = 2√(det cov).
    double purity_occupation() const;
};

struct BathParams {
    double nbar = 0.0;     // bath mean occupation
    double quality = 1e9;  // mechanical quality factor Q

    void validate() const;
};

/// Zero-mean thermal state, cov = diag(n̄ + 1/2, n̄ + 1/2).
GaussianState thermal_gaussian(double nbar);

/// Conditional state after one pulsed measurement with outcome P_L:
/// Gaussian update of X against noise (1+2σ_P²)/(2χ²), momentum kicked by Ω
/// and diffused by the back-action variance χ²(1+2σ_X²)/2.
GaussianState condition_on_outcome(const GaussianState& g,
                                   const ProbeParams& p, double pl);

/// Phase-space rotation by θ plus bath diffusion θ·(n̄/Q) per quadrature
/// (a quarter period adds πn̄/(2Q) to each variance).
GaussianState free_evolution(const GaussianState& g, double theta,
                             const BathParams& bath);

struct CoolingResult {
    GaussianState after_pulse1;
    GaussianState after_evolution;
    GaussianState final_state;
    double n_eff = 0.0;
    double n_eff_closed_form = 0.0;
    /// Final mean with the deterministic Ω kicks subtracted (each kick
    /// propagated through the intervening quarter-period rotation).
    Eigen::Vector2d mean_kick_compensated = Eigen::Vector2d::Zero();
};

/// Two-pulse cooling: measure, wait a quarter period, measure again.
/// n_eff comes from the purity of the final covariance and is independent
/// of the outcomes.
CoolingResult cool_by_measurement(double nbar, const ProbeParams& p,
                                  const BathParams& bath, double pl1,
                                  double pl2);

/// Large-initial-occupation closed form:
/// 1 + 2n_eff = √(A(A + n̄π/Q + χ²(1+2σ_X²))), A = (1+2σ_P²)/χ².
double n_eff_closed_form(double chi, double sigma_p, double sigma_x,
                         double nbar, double quality);

}  // namespace mechtomo

#endif
