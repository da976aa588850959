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

#ifndef MECHTOMO_HILBERT_HPP
#define MECHTOMO_HILBERT_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace mechtomo {

using cplx = std::complex<double>;

// Units used everywhere: hbar = 1, X = (a + a†)/√2, P = i(a† − a)/√2,
// vacuum quadrature variance 1/2.

/// Fock-basis operator on the truncated space |0⟩..|dim−1⟩.
using FockOperator = Eigen::MatrixXcd;

/// Density matrix of the mechanical mode in the truncated Fock basis.
///
/// Constructors record the truncation deficit (probability weight of the
/// exact state lying above the cutoff) instead of silently renormalizing.
struct DensityMatrix {
    Eigen::MatrixXcd elements;
    double truncation_deficit = 0.0;

    int dim() const { return static_cast<int>(elements.rows()); }

    /// Hermiticity / trace-window / positive-semidefiniteness checks.
    /// Throws on violation.
    void validate() const;

    /// Copy with trace scaled to exactly 1.
    DensityMatrix normalized() const;

    double trace_real() const { return elements.trace().real(); }
};

enum class StateKind { Fock, Coherent, Cat, Thermal, SqueezedVacuum };

/// Parameters for make_state. `amplitude` is α or β, `value` is n̄ or r,
/// `fock_n` the Fock index, depending on kind.
struct StateSpec {
    StateKind kind = StateKind::Fock;
    cplx amplitude = 0.0;
    double value = 0.0;
    int fock_n = 0;
    int dim = 0;
};

DensityMatrix fock_state(int n, int dim);
DensityMatrix coherent_state(cplx alpha, int dim);
/// Even cat (|β⟩ + |−β⟩)/norm.
DensityMatrix cat_state(cplx beta, int dim);
DensityMatrix thermal_state(double nbar, int dim);
/// Squeezed vacuum with Var(X) = e^{−2r}/2, Var(P) = e^{+2r}/2 for r > 0.
DensityMatrix squeezed_vacuum_state(double r, int dim);
DensityMatrix make_state(const StateSpec& spec);

/// Fock cutoff heuristic for coherent-type amplitudes; constructors verify
/// the actual deficit rather than trusting this.
int suggested_dim(double abs_amplitude);

FockOperator annihilation_op(int dim);
FockOperator creation_op(int dim);
FockOperator number_op(int dim);
/// X̂_θ = (â e^{−iθ} + â† e^{iθ})/√2.
FockOperator quadrature_op(double theta, int dim);
/// Diagonal of (−1)^n̂.
Eigen::VectorXd parity_diagonal(int dim);

/// ⟨m|D(α)|n⟩ via the scaled associated-Laguerre recurrence.
FockOperator displacement_matrix(cplx alpha, int dim);

/// Σ_n (−1)^n ρ_nn.
double parity_expectation(const DensityMatrix& rho);

enum class Ordering { Normal, Antinormal, Symmetric };

/// ⟨a†^q a^p⟩ in the requested operator ordering (symmetric = Weyl: average
/// over all distinct arrangements of the p+q factors).
cplx ordered_moment(const DensityMatrix& rho, int p, int q, Ordering ordering);

// Convenience moments used for grid/marginal extents.
double mean_occupation(const DensityMatrix& rho);
cplx mean_annihilation(const DensityMatrix& rho);
cplx mean_annihilation_sq(const DensityMatrix& rho);
/// Upper bound on the standard deviation of any quadrature X_θ.
double max_quadrature_std(const DensityMatrix& rho);
/// √⟨n̂⟩-style phase-space radius estimate for choosing grid extents.
double phase_space_radius(const DensityMatrix& rho);

/// ψ_n(x) = ⟨x|n⟩ for n < dim (real Hermite functions, X-quadrature units).
Eigen::VectorXd fock_position_amplitudes(int dim, double x);
/// Polynomial parts P_n with ψ_n(x) = P_n(x) e^{−x²/2}; needed when the
/// Gaussian factor must be handled analytically in quadratures.
Eigen::VectorXd fock_position_polys(int dim, double x);

std::string to_string(StateKind kind);
StateKind state_kind_from_string(const std::string& name);

}  // namespace mechtomo

#endif
