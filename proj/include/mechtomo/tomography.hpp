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

#ifndef MECHTOMO_TOMOGRAPHY_HPP
#define MECHTOMO_TOMOGRAPHY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mechtomo/probe.hpp"

namespace mechtomo {

/// Synthetic pulsed-tomography dataset: homodyne outcomes per quadrature
/// angle, with full seed provenance.
struct TomogramDataset {
    ProbeParams probe;
    std::vector<double> angles;                // strictly increasing, [0, π)
    std::vector<std::vector<double>> samples;  // one block per angle
    std::uint64_t seed = 0;
    std::string state_label;

    void validate() const;
    std::size_t total_samples() const;
};

enum class MarginalEstimator { Histogram, Kde };

struct ReconstructionConfig {
    /// Target ordering parameter; defaults to the probe's natural s.
    std::optional<double> s_target;
    double eta_max = 8.0;
    int n_eta = 256;
    double half_extent = 4.0;
    int n = 256;
    MarginalEstimator estimator = MarginalEstimator::Histogram;

    void validate() const;
};

struct ReconstructionResult {
    QuasiProbGrid grid;
    double s_natural = 0.0;
    double s_target = 0.0;
    /// Set when the radial cutoff clips a still-significant spectrum.
    bool lowpass_flagged = false;
    double damping_at_cutoff = 0.0;
};

/// Protocol driver: for each angle θ the state is freshly prepared, evolves
/// by θ (realized exactly as the marginal-angle rotation) and is measured
/// per_angle times. Angle k draws from stream seed + k.
TomogramDataset run_protocol(const DensityMatrix& rho, const ProbeParams& p,
                             std::vector<double> angles, int per_angle,
                             std::uint64_t seed);

/// Density estimate of the scaled outcome P_L/χ. This estimates the true
/// marginal convolved with N(0, (1+2σ_P²)/(2χ²)); the convolution is kept,
/// which is exactly what makes the reconstruction s-parameterized.
Marginal estimate_scaled_marginal(std::span<const double> samples,
                                  const ProbeParams& p,
                                  MarginalEstimator estimator);

/// Back-projection of measured (already-convolved) marginals:
/// 𝒫(s_t, α) = (1/(2π²)) ∫η dη ∫dθ ∫dx M(x,θ)
///             e^{(s_t − s_nat)η²/4} e^{iη(x − √2(α_r cosθ + α_i sinθ))},
/// trapezoid in η and θ, θ folded to [0, π).
ReconstructionResult invert_from_scaled_marginals(
    const std::vector<Marginal>& marginals, double s_natural,
    const ReconstructionConfig& cfg);

/// Full pipeline: estimate scaled marginals from the dataset, then invert.
ReconstructionResult invert_marginals(const TomogramDataset& dataset,
                                      const ReconstructionConfig& cfg);

struct GridComparison {
    double l2 = 0.0;       // √(Σ (a−b)² Δ²)
    double max_abs = 0.0;  // max |a−b|
    double min_value_a = 0.0;
    double min_value_b = 0.0;
};

/// Difference metrics for two grids on identical specs.
GridComparison compare_grids(const QuasiProbGrid& a, const QuasiProbGrid& b);

}  // namespace mechtomo

#endif
