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

#ifndef MECHTOMO_PHASESPACE_HPP
#define MECHTOMO_PHASESPACE_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mechtomo/hilbert.hpp"

namespace mechtomo {

enum class GridProvenance { Direct, Convolved, Reconstructed };

/// s-parameterized quasi-probability distribution sampled on a square grid.
///
/// values(i, j) is 𝒫(s, α) at α_r = axis(i), α_i = axis(j) with
/// axis(k) = (k − n/2)·Δ, Δ = 2·half_extent/n. The origin sits exactly on
/// the node (n/2, n/2).
struct QuasiProbGrid {
    double s = 0.0;
    double half_extent = 0.0;
    int n = 0;
    Eigen::MatrixXd values;
    GridProvenance meta = GridProvenance::Direct;

    double delta() const { return 2.0 * half_extent / n; }
    double axis(int k) const { return (k - n / 2) * delta(); }
    int origin_index() const { return n / 2; }

    /// Riemann sum Σ values · Δ².
    double integral() const;
    double min_value() const { return values.minCoeff(); }
    double max_value() const { return values.maxCoeff(); }
    /// Largest |value| on the outermost ring of nodes.
    double boundary_magnitude() const;

    /// Normalization + positivity-for-s≤−1 checks; throws on violation.
    void validate() const;
};

/// Quadrature marginal M(x, θ) tabulated on a sorted grid.
struct Marginal {
    double theta = 0.0;
    std::vector<double> xs;
    std::vector<double> density;

    void validate() const;
    double integral() const;
    double mean() const;
    double variance() const;
};

/// C(s, ξ) = Tr[ρ D(ξ)] e^{s|ξ|²/2}.
cplx char_function(const DensityMatrix& rho, double s, cplx xi);

/// True when |ξ|² is small enough for the Fock cutoff to be negligible.
bool char_truncation_safe(const DensityMatrix& rho, cplx xi);

/// 𝒫(s, α) on an n×n grid via the 2D Fourier transform of C(s, ξ).
/// Requires s ≤ 0 and n a power of two; rejects grids whose boundary values
/// exceed the aliasing bound.
QuasiProbGrid quasiprob_grid(const DensityMatrix& rho, double s,
                             double half_extent, int n);

/// W(α) = (2/π) Tr[D†(α) ρ D(α) (−1)^n̂]  (displaced parity).
double wigner_point(const DensityMatrix& rho, cplx alpha);

/// Q(α) = ⟨α|ρ|α⟩/π.
double qfunction_point(const DensityMatrix& rho, cplx alpha);

/// W(α_r, α_i) = (2/π) ∫ dx e^{−i2√2 α_i x} ⟨√2α_r + x|ρ|√2α_r − x⟩
/// by Gauss–Hermite quadrature; independent of the displaced-parity route.
double wigner_quadrature_point(const DensityMatrix& rho, double alpha_r,
                               double alpha_i, int gh_order = 128);

/// Gaussian smoothing to a lower ordering parameter:
/// 𝒫(s') = 𝒫(s) ⊛ (2/(π(s−s'))) e^{−2|α|²/(s−s')}, s' < s.
QuasiProbGrid convolve_to_s(const QuasiProbGrid& grid, double s_target);

/// M(x, θ) = ⟨X_θ|ρ|X_θ⟩ on the given grid; Fock-coefficient rotation
/// ρ_mn → ρ_mn e^{−i(m−n)θ} followed by Hermite-function overlap.
Marginal marginal(const DensityMatrix& rho, double theta,
                  std::vector<double> xs);

/// Marginal on the default grid: n_points over ±(|mean| + 6σ_max).
Marginal marginal_auto(const DensityMatrix& rho, double theta,
                       int n_points = 1001);

/// C_m(η, θ) = Tr[ρ e^{iηX̂_θ}] = C(0, iηe^{iθ}/√2).
cplx marginal_char(const DensityMatrix& rho, double eta, double theta);

// ---- grid diagnostics ----------------------------------------------------

/// Values along the line α_i = 0 (axis = 0) or α_r = 0 (axis = 1),
/// together with the coordinate of each sample.
struct Profile {
    std::vector<double> coords;
    std::vector<double> values;
};

Profile axis_profile(const QuasiProbGrid& grid, int axis);

/// Azimuthal average binned by radius (bin width = 2Δ).
Profile radial_profile(const QuasiProbGrid& grid);

struct Peak {
    double coord = 0.0;
    double value = 0.0;
};

/// Local maxima that are separated from any previously accepted (higher)
/// peak by a dip of at least min_prominence × max(profile). Merged bumps on
/// a shared pedestal therefore count once.
std::vector<Peak> resolvable_peaks(const Profile& profile,
                                   double min_prominence = 0.05);

/// True when the radial profile peaks at (or immediately around) r = 0.
bool radially_unimodal(const QuasiProbGrid& grid);

std::string to_string(GridProvenance p);
GridProvenance provenance_from_string(const std::string& name);

}  // namespace mechtomo

#endif
