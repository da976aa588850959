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

#include "mechtomo/conditioning.hpp"

#include <cmath>

#include "mechtomo/errors.hpp"

namespace mechtomo {

void GaussianState::validate() const {
    if (std::abs(cov(0, 1) - cov(1, 0)) > 1e-12) {
        throw AccuracyError("covariance not symmetric");
    }
    double det = cov.determinant();
    if (cov(0, 0) <= 0 || cov(1, 1) <= 0 || det <= 0) {
        throw AccuracyError("covariance not positive definite");
    }
    if (det < 0.25 - 1e-9) {
        throw AccuracyError("covariance violates the Heisenberg bound: det " +
                            std::to_string(det));
    }
}

double GaussianState::purity_occupation() const {
    return std::sqrt(cov.determinant()) - 0.5;
}

void BathParams::validate() const {
    if (nbar < 0) throw ArgumentError("bath occupation must be >= 0");
    if (!(quality > 0)) throw ArgumentError("quality factor must be > 0");
}

GaussianState thermal_gaussian(double nbar) {
    if (nbar < 0) throw ArgumentError("thermal occupation must be >= 0");
    GaussianState g;
    g.mean.setZero();
    g.cov = (nbar + 0.5) * Eigen::Matrix2d::Identity();
    return g;
}

GaussianState condition_on_outcome(const GaussianState& g,
                                   const ProbeParams& p, double pl) {
    p.validate();
    g.validate();
    const double noise = p.measurement_noise_variance();
    const double y = pl / p.chi;  // scaled outcome estimates X directly

    GaussianState out = g;
    const double gain_denom = g.cov(0, 0) + noise;
    Eigen::Vector2d gain = g.cov.col(0) / gain_denom;
    out.mean += gain * (y - g.mean(0));
    out.cov -= gain * g.cov.row(0);
    out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();

    // Back-action feeds only the unmeasured momentum quadrature: quantum
    // part chi^2/2 plus classical amplitude noise chi^2 sigma_X^2, and the
    // deterministic kick Omega.
    out.cov(1, 1) += p.backaction_variance();
    out.mean(1) += p.omega;
    out.validate();
    return out;
}

GaussianState free_evolution(const GaussianState& g, double theta,
                             const BathParams& bath) {
    if (theta < 0) throw ArgumentError("evolution angle must be >= 0");
    bath.validate();
    g.validate();
    Eigen::Matrix2d rot;
    rot << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    GaussianState out;
    out.mean = rot * g.mean;
    out.cov = rot * g.cov * rot.transpose();
    // Isotropic bath diffusion: a quarter period adds pi*nbar/(2Q) per
    // quadrature.
    out.cov += theta * (bath.nbar / bath.quality) * Eigen::Matrix2d::Identity();
    out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
    out.validate();
    return out;
}

CoolingResult cool_by_measurement(double nbar, const ProbeParams& p,
                                  const BathParams& bath, double pl1,
                                  double pl2) {
    auto run = [&](const ProbeParams& probe) {
        CoolingResult r;
        GaussianState g = thermal_gaussian(nbar);
        r.after_pulse1 = condition_on_outcome(g, probe, pl1);
        r.after_evolution = free_evolution(r.after_pulse1, M_PI / 2.0, bath);
        r.final_state = condition_on_outcome(r.after_evolution, probe, pl2);
        return r;
    };
    CoolingResult result = run(p);
    result.n_eff = result.final_state.purity_occupation();
    result.n_eff_closed_form =
        n_eff_closed_form(p.chi, p.sigma_p, p.sigma_x, bath.nbar, bath.quality);

    // Kick-compensated mean: rerun the identical update chain with Omega = 0;
    // the covariances (and hence n_eff) are unchanged, only the deterministic
    // displacement drops out.
    ProbeParams quiet = p;
    quiet.omega = 0.0;
    result.mean_kick_compensated = run(quiet).final_state.mean;
    return result;
}

double n_eff_closed_form(double chi, double sigma_p, double sigma_x,
                         double nbar, double quality) {
    if (!(chi > 0)) throw ArgumentError("chi must be > 0");
    if (sigma_p < 0 || sigma_x < 0 || nbar < 0 || !(quality > 0)) {
        throw ArgumentError("invalid cooling parameters");
    }
    double a = (1.0 + 2.0 * sigma_p * sigma_p) / (chi * chi);
    double val = std::sqrt(
        a * (a + nbar * M_PI / quality +
             chi * chi * (1.0 + 2.0 * sigma_x * sigma_x)));
    return 0.5 * (val - 1.0);
}

}  // namespace mechtomo
