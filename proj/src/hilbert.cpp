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

#include "mechtomo/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mechtomo/errors.hpp"
#include "laguerre_table.hpp"

namespace mechtomo {

namespace {

constexpr double kDeficitThreshold = 1e-8;
constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = 1e-10;

void require_dim(int dim) {
    if (dim <= 0) throw ArgumentError("Fock dimension must be positive");
}

DensityMatrix from_pure(const Eigen::VectorXcd& psi, double deficit) {
    DensityMatrix rho;
    rho.elements = psi * psi.adjoint();
    rho.truncation_deficit = deficit;
    if (deficit > kDeficitThreshold) {
        throw TruncationError("Fock cutoff too small: truncation deficit " +
                              std::to_string(deficit));
    }
    return rho;
}

Eigen::VectorXcd coherent_amplitudes(cplx alpha, int dim) {
    Eigen::VectorXcd c(dim);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
    return c;
}

}  // namespace

void DensityMatrix::validate() const {
    if (dim() <= 0) throw ArgumentError("empty density matrix");
    double herm = (elements - elements.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermTol) {
        throw AccuracyError("density matrix not Hermitian: max asymmetry " +
                            std::to_string(herm));
    }
    double tr = trace_real();
    if (tr > 1.0 + 1e-9 || tr < 1.0 - truncation_deficit - 1e-9) {
        throw AccuracyError("density matrix trace " + std::to_string(tr) +
                            " outside [1 - deficit, 1]");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(elements,
                                                       Eigen::EigenvaluesOnly);
    double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < -kPsdTol) {
        throw AccuracyError("density matrix not positive semidefinite: " +
                            std::to_string(min_ev));
    }
}

DensityMatrix DensityMatrix::normalized() const {
    DensityMatrix out = *this;
    double tr = trace_real();
    if (tr <= 0) throw AccuracyError("cannot normalize: nonpositive trace");
    out.elements /= tr;
    return out;
}

DensityMatrix fock_state(int n, int dim) {
    require_dim(dim);
    if (n < 0) throw ArgumentError("Fock index must be >= 0");
    if (n >= dim) throw TruncationError("Fock index " + std::to_string(n) +
                                        " outside cutoff " + std::to_string(dim));
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi(n) = 1.0;
    return from_pure(psi, 0.0);
}

DensityMatrix coherent_state(cplx alpha, int dim) {
    require_dim(dim);
    Eigen::VectorXcd c = coherent_amplitudes(alpha, dim);
    double deficit = std::max(0.0, 1.0 - c.squaredNorm());
    return from_pure(c, deficit);
}

DensityMatrix cat_state(cplx beta, int dim) {
    require_dim(dim);
    Eigen::VectorXcd plus = coherent_amplitudes(beta, dim);
    Eigen::VectorXcd minus = coherent_amplitudes(-beta, dim);
    double norm_sq = 2.0 * (1.0 + std::exp(-2.0 * std::norm(beta)));
    Eigen::VectorXcd psi = (plus + minus) / std::sqrt(norm_sq);
    double deficit = std::max(0.0, 1.0 - psi.squaredNorm());
    return from_pure(psi, deficit);
}

DensityMatrix thermal_state(double nbar, int dim) {
    require_dim(dim);
    if (nbar < 0) throw ArgumentError("thermal occupation must be >= 0");
    DensityMatrix rho;
    rho.elements = Eigen::MatrixXcd::Zero(dim, dim);
    if (nbar == 0.0) {
        rho.elements(0, 0) = 1.0;
        rho.truncation_deficit = 0.0;
        return rho;
    }
    double ratio = nbar / (1.0 + nbar);
    double p = 1.0 / (1.0 + nbar);
    for (int n = 0; n < dim; ++n) {
        rho.elements(n, n) = p;
        p *= ratio;
    }
    rho.truncation_deficit = std::pow(ratio, dim);
    if (rho.truncation_deficit > kDeficitThreshold) {
        throw TruncationError("thermal cutoff too small: deficit " +
                              std::to_string(rho.truncation_deficit));
    }
    return rho;
}

DensityMatrix squeezed_vacuum_state(double r, int dim) {
    require_dim(dim);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    double th = std::tanh(r);
    double c = 1.0 / std::sqrt(std::cosh(r));
    psi(0) = c;
    for (int m = 0; 2 * (m + 1) < dim; ++m) {
        c *= -th * std::sqrt((2.0 * m + 1.0) * (2.0 * m + 2.0)) / (2.0 * (m + 1.0));
        psi(2 * (m + 1)) = c;
    }
    double deficit = std::max(0.0, 1.0 - psi.squaredNorm());
    return from_pure(psi, deficit);
}

DensityMatrix make_state(const StateSpec& spec) {
    switch (spec.kind) {
        case StateKind::Fock: return fock_state(spec.fock_n, spec.dim);
        case StateKind::Coherent: return coherent_state(spec.amplitude, spec.dim);
        case StateKind::Cat: return cat_state(spec.amplitude, spec.dim);
        case StateKind::Thermal: return thermal_state(spec.value, spec.dim);
        case StateKind::SqueezedVacuum:
            return squeezed_vacuum_state(spec.value, spec.dim);
    }
    throw ArgumentError("unknown state kind");
}

int suggested_dim(double abs_amplitude) {
    double a = std::abs(abs_amplitude);
    return static_cast<int>(std::ceil(a * a + 6.0 * a + 10.0));
}

FockOperator annihilation_op(int dim) {
    require_dim(dim);
    FockOperator a = FockOperator::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

FockOperator creation_op(int dim) { return annihilation_op(dim).adjoint(); }

FockOperator number_op(int dim) {
    require_dim(dim);
    FockOperator n = FockOperator::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    return n;
}

FockOperator quadrature_op(double theta, int dim) {
    FockOperator a = annihilation_op(dim);
    cplx ph = std::exp(cplx(0.0, -theta));
    return (ph * a + std::conj(ph) * a.adjoint()) / std::sqrt(2.0);
}

Eigen::VectorXd parity_diagonal(int dim) {
    require_dim(dim);
    Eigen::VectorXd d(dim);
    for (int n = 0; n < dim; ++n) d(n) = (n % 2 == 0) ? 1.0 : -1.0;
    return d;
}

FockOperator displacement_matrix(cplx alpha, int dim) {
    require_dim(dim);
    double x = std::norm(alpha);
    Eigen::MatrixXd table;
    detail::laguerre_disp_table(x, dim, table);
    FockOperator d(dim, dim);
    for (int k = 0; k < dim; ++k) d(k, k) = table(0, k);
    cplx up = 1.0;
    cplx down = 1.0;
    for (int a = 1; a < dim; ++a) {
        up *= alpha;
        down *= -std::conj(alpha);
        for (int k = 0; a + k < dim; ++k) {
            d(k + a, k) = table(a, k) * up;
            d(k, k + a) = table(a, k) * down;
        }
    }
    return d;
}

double parity_expectation(const DensityMatrix& rho) {
    double s = 0.0;
    for (int n = 0; n < rho.dim(); ++n) {
        double sign = (n % 2 == 0) ? 1.0 : -1.0;
        s += sign * rho.elements(n, n).real();
    }
    return s;
}

cplx ordered_moment(const DensityMatrix& rho, int p, int q, Ordering ordering) {
    if (p < 0 || q < 0) throw ArgumentError("moment orders must be >= 0");
    int dim = rho.dim();
    if (4 * (p + q) > dim) {
        throw TruncationError("moment order too high for Fock cutoff");
    }
    FockOperator a = annihilation_op(dim);
    FockOperator ad = a.adjoint();
    auto power = [&](const FockOperator& m, int k) {
        FockOperator out = FockOperator::Identity(dim, dim);
        for (int i = 0; i < k; ++i) out = out * m;
        return out;
    };
    FockOperator op;
    switch (ordering) {
        case Ordering::Normal: op = power(ad, q) * power(a, p); break;
        case Ordering::Antinormal: op = power(a, p) * power(ad, q); break;
        case Ordering::Symmetric: {
            // Weyl ordering: average over all distinct arrangements of the
            // p + q factors.
            std::vector<int> word(p, 0);
            word.insert(word.end(), q, 1);
            std::sort(word.begin(), word.end());
            FockOperator sum = FockOperator::Zero(dim, dim);
            long count = 0;
            do {
                FockOperator prod = FockOperator::Identity(dim, dim);
                for (int w : word) prod = prod * (w == 0 ? a : ad);
                sum += prod;
                ++count;
            } while (std::next_permutation(word.begin(), word.end()));
            op = sum / double(count);
            break;
        }
    }
    return (rho.elements * op).trace();
}

double mean_occupation(const DensityMatrix& rho) {
    double s = 0.0;
    for (int n = 0; n < rho.dim(); ++n) s += n * rho.elements(n, n).real();
    return s;
}

cplx mean_annihilation(const DensityMatrix& rho) {
    cplx s = 0.0;
    for (int n = 1; n < rho.dim(); ++n) {
        s += std::sqrt(double(n)) * rho.elements(n, n - 1);
    }
    return s;
}

cplx mean_annihilation_sq(const DensityMatrix& rho) {
    cplx s = 0.0;
    for (int n = 2; n < rho.dim(); ++n) {
        s += std::sqrt(double(n) * (n - 1.0)) * rho.elements(n, n - 2);
    }
    return s;
}

double max_quadrature_std(const DensityMatrix& rho) {
    double second = 0.5 * (1.0 + 2.0 * mean_occupation(rho)) +
                    std::abs(mean_annihilation_sq(rho));
    return std::sqrt(std::max(second, 0.5));
}

double phase_space_radius(const DensityMatrix& rho) {
    return std::max(std::abs(mean_annihilation(rho)),
                    std::sqrt(std::max(0.0, mean_occupation(rho))));
}

Eigen::VectorXd fock_position_amplitudes(int dim, double x) {
    require_dim(dim);
    Eigen::VectorXd psi(dim);
    psi(0) = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (dim > 1) psi(1) = std::sqrt(2.0) * x * psi(0);
    for (int n = 1; n + 1 < dim; ++n) {
        psi(n + 1) = std::sqrt(2.0 / (n + 1.0)) * x * psi(n) -
                     std::sqrt(n / (n + 1.0)) * psi(n - 1);
    }
    return psi;
}

Eigen::VectorXd fock_position_polys(int dim, double x) {
    require_dim(dim);
    Eigen::VectorXd p(dim);
    p(0) = std::pow(M_PI, -0.25);
    if (dim > 1) p(1) = std::sqrt(2.0) * x * p(0);
    for (int n = 1; n + 1 < dim; ++n) {
        p(n + 1) = std::sqrt(2.0 / (n + 1.0)) * x * p(n) -
                   std::sqrt(n / (n + 1.0)) * p(n - 1);
    }
    return p;
}

std::string to_string(StateKind kind) {
    switch (kind) {
        case StateKind::Fock: return "fock";
        case StateKind::Coherent: return "coherent";
        case StateKind::Cat: return "cat";
        case StateKind::Thermal: return "thermal";
        case StateKind::SqueezedVacuum: return "squeezed";
    }
    return "unknown";
}

StateKind state_kind_from_string(const std::string& name) {
    if (name == "fock") return StateKind::Fock;
    if (name == "coherent") return StateKind::Coherent;
    if (name == "cat") return StateKind::Cat;
    if (name == "thermal") return StateKind::Thermal;
    if (name == "squeezed") return StateKind::SqueezedVacuum;
    throw ArgumentError("unknown state kind: " + name);
}

}  // namespace mechtomo
