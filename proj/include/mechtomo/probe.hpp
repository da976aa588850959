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

#ifndef MECHTOMO_PROBE_HPP
#define MECHTOMO_PROBE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mechtomo/phasespace.hpp"

namespace mechtomo {

/// Pulsed back-action-evading probe with classical amplitude/phase noise.
///
/// chi is the measurement strength, omega the deterministic momentum kick,
/// sigma_x / sigma_p the classical noise widths of the probe's amplitude and
/// phase quadratures, xbar_l the mean probe amplitude. sigma_x, omega and
/// xbar_l never enter homodyne statistics (they act on the unmeasured
/// mechanical momentum); only the conditioning pipeline consumes them.
struct ProbeParams {
    double chi = 1.0;
    double omega = 0.0;
    double sigma_x = 0.0;
    double sigma_p = 0.0;
    double xbar_l = 0.0;

    void validate() const;

    /// Variance of the homodyne kernel in P_L: (1 + 2σ_P²)/2.
    double kernel_variance() const {
        return 0.5 * (1.0 + 2.0 * sigma_p * sigma_p);
    }
    /// Effective position-measurement noise variance (1 + 2σ_P²)/(2χ²).
    double measurement_noise_variance() const {
        return kernel_variance() / (chi * chi);
    }
    /// Momentum variance added per pulse: χ²(1 + 2σ_X²)/2.
    double backaction_variance() const {
        return 0.5 * chi * chi * (1.0 + 2.0 * sigma_x * sigma_x);
    }
};

/// Raw pulse parameters behind the derived probe constants. lambda is the
/// bare coupling of the pulse unitary e^{iλ â†â X̂}; it is carried through
/// for the linearisation diagnostics only.
struct PulseConfig {
    double photon_number = 0.0;     // mean photons per pulse N
    double g0_over_kappa = 0.0;
    double lambda = 0.0;

    void validate() const;
};

/// χ = √(20N)·g₀/κ, Ω = (3/√2)(g₀/κ)N.
ProbeParams derive_probe_params(const PulseConfig& cfg, double sigma_x,
                                double sigma_p, double xbar_l);

/// s = −(1 + 2σ_P²)/χ².
double s_parameter(const ProbeParams& p);

/// χ² > 1 + 2σ_P², i.e. the reconstruction lands above the Q-function.
bool negativity_possible(const ProbeParams& p);

/// Gaussian probe P-function evaluated at the optical quadrature point
/// (X_α, P_α).
double probe_pfunction(const ProbeParams& p, double x_alpha, double p_alpha);

/// Pr(P_L) = ∫ dX m(X) · N(P_L; χX, (1+2σ_P²)/2) on the given outcome grid.
/// Throws when the grid is too narrow to hold the distribution.
std::vector<double> homodyne_pdf(const Marginal& m, const ProbeParams& p,
                                 std::span<const double> pl_grid);

/// Default symmetric outcome grid wide enough for the pushed-forward marginal.
std::vector<double> default_pl_grid(const Marginal& m, const ProbeParams& p,
                                    int n_points = 2001);

/// Monte-Carlo homodyne outcomes: X ~ m via inverse CDF (monotone cubic
/// interpolation of the tabulated CDF), then P_L = χX + N(0, (1+2σ_P²)/2).
/// Deterministic for a fixed seed.
std::vector<double> sample_homodyne(const Marginal& m, const ProbeParams& p,
                                    int count, std::uint64_t seed);

/// Inverse-CDF sampler over a tabulated density; exposed for reuse by the
/// tomography driver.
class InverseCdfSampler {
public:
    explicit InverseCdfSampler(const Marginal& m);
    /// Quantile at u ∈ [0, 1].
    double quantile(double u) const;

private:
    std::vector<double> cdf_;   // strictly increasing, 0..1
    std::vector<double> xs_;    // matching positions (flat runs -> midpoint)
    std::vector<double> slope_; // monotone cubic tangents dx/du
};

struct LinearisationReport {
    double quadratic_ratio = 0.0;  // λ²σ²_X_M
    double noise_ratio = 0.0;      // 2λ²σ_X²σ²_X_M / (1 + 2σ_P²)
    bool valid = false;            // both ratios ≤ 0.1
};

/// Gaussian-operation validity margins for the pulse linearisation.
LinearisationReport linearisation_check(const PulseConfig& cfg,
                                        const ProbeParams& p,
                                        double state_xvar);

}  // namespace mechtomo

#endif
