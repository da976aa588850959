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

#include "mechtomo/phasespace.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include "mechtomo/errors.hpp"
#include "mechtomo/quadrature.hpp"
#include "laguerre_table.hpp"

namespace mechtomo {

namespace {

constexpr double kNormTol = 1e-3;
constexpr double kAliasBound = 1e-4;
constexpr double kNegTolLowS = 1e-9;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// FFTW's planner is not thread-safe; execution is.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// In-place batched 1D transform along one axis of an n×n row-major array.
// axis 0 = leading (row) index, axis 1 = trailing (column) index.
// sign: FFTW_FORWARD (-1) or FFTW_BACKWARD (+1); unnormalized.
void fft_axis(std::vector<cplx>& data, int n, int axis, int sign) {
    int istride = (axis == 0) ? n : 1;
    int idist = (axis == 0) ? 1 : n;
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = nullptr;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_many_dft(1, &n, n, ptr, nullptr, istride, idist, ptr,
                                  nullptr, istride, idist, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw AccuracyError("FFT planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
}

// In-place 1D transform, unnormalized.
void fft_1d(std::vector<cplx>& data, int sign) {
    int n = static_cast<int>(data.size());
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = nullptr;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(n, ptr, ptr, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw AccuracyError("FFT planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
}

// Tr[rho D(xi)] through the scaled Laguerre table (workspace reused across
// calls to avoid reallocation inside grid loops).
cplx displaced_trace(const Eigen::MatrixXcd& rho, cplx xi,
                     Eigen::MatrixXd& table) {
    const int dim = static_cast<int>(rho.rows());
    double x = std::norm(xi);
    if (x > 2980.0) return 0.0;  // e^{-x/2} underflows; true value below 1e-300
    detail::laguerre_disp_table(x, dim, table);
    cplx tr = 0.0;
    for (int k = 0; k < dim; ++k) tr += rho(k, k) * table(0, k);
    cplx xp = 1.0;
    for (int a = 1; a < dim; ++a) {
        xp *= xi;
        double sign = (a % 2 == 0) ? 1.0 : -1.0;
        cplx acc = 0.0;
        for (int k = 0; k + a < dim; ++k) {
            cplx w = std::conj(rho(k + a, k)) * xp;
            acc += table(a, k) * (w + sign * std::conj(w));
        }
        tr += acc;
    }
    return tr;
}

}  // namespace

double QuasiProbGrid::integral() const {
    double d = delta();
    return values.sum() * d * d;
}

double QuasiProbGrid::boundary_magnitude() const {
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        m = std::max({m, std::abs(values(i, 0)), std::abs(values(i, n - 1)),
                      std::abs(values(0, i)), std::abs(values(n - 1, i))});
    }
    return m;
}

void QuasiProbGrid::validate() const {
    if (n <= 0 || values.rows() != n || values.cols() != n) {
        throw ArgumentError("grid shape mismatch");
    }
    double norm = integral();
    if (std::abs(norm - 1.0) > kNormTol) {
        throw AccuracyError("grid normalization off by " +
                            std::to_string(norm - 1.0));
    }
    if (s <= -1.0 && meta != GridProvenance::Reconstructed) {
        double mn = values.minCoeff();
        if (mn < -kNegTolLowS) {
            throw AccuracyError("negative values at s <= -1: min " +
                                std::to_string(mn));
        }
    }
}

void Marginal::validate() const {
    if (xs.size() != density.size() || xs.size() < 2) {
        throw ArgumentError("marginal grid mismatch");
    }
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (!(xs[i] < xs[i + 1])) {
            throw ArgumentError("marginal grid must be strictly increasing");
        }
    }
    for (double d : density) {
        if (d < -1e-12) throw AccuracyError("negative marginal density");
    }
    double norm = integral();
    if (std::abs(norm - 1.0) > kNormTol) {
        throw AccuracyError("marginal normalization off by " +
                            std::to_string(norm - 1.0));
    }
}

double Marginal::integral() const { return trapezoid(xs, density); }

double Marginal::mean() const {
    auto m = trapezoid_moments(xs, density, 1);
    return m[1] / m[0];
}

double Marginal::variance() const {
    auto m = trapezoid_moments(xs, density, 2);
    double mu = m[1] / m[0];
    return m[2] / m[0] - mu * mu;
}

cplx char_function(const DensityMatrix& rho, double s, cplx xi) {
    Eigen::MatrixXd table;
    cplx tr = displaced_trace(rho.elements, xi, table);
    return tr * std::exp(0.5 * s * std::norm(xi));
}

bool char_truncation_safe(const DensityMatrix& rho, cplx xi) {
    return std::norm(xi) <= 0.25 * rho.dim();
}

QuasiProbGrid quasiprob_grid(const DensityMatrix& rho, double s,
                             double half_extent, int n) {
    if (s > 1e-12) {
        throw ArgumentError(
            "quasiprob_grid requires s <= 0 (distributions above the Wigner "
            "function are generally singular)");
    }
    if (!is_power_of_two(n) || n < 8) {
        throw ArgumentError("grid size must be a power of two >= 8");
    }
    if (half_extent <= 0) throw ArgumentError("half_extent must be positive");

    const double dxi = M_PI / (2.0 * half_extent);  // reciprocity: dxi*dalpha = pi/n
    const double dalpha = 2.0 * half_extent / n;
    std::vector<cplx> buf(static_cast<std::size_t>(n) * n);

    // Characteristic function C(s, xi) sampled at xi = (p - n/2, q - n/2)*dxi,
    // scaled by (-1)^{p+q} so two plain DFT passes realize the phase-space
    // Fourier kernel e^{alpha xi* - alpha* xi}.
#pragma omp parallel
    {
        Eigen::MatrixXd table;
#pragma omp for schedule(static)
        for (int p = 0; p < n; ++p) {
            double xr = (p - n / 2) * dxi;
            for (int q = 0; q < n; ++q) {
                double xi_im = (q - n / 2) * dxi;
                cplx xi(xr, xi_im);
                cplx c = displaced_trace(rho.elements, xi, table) *
                         std::exp(0.5 * s * std::norm(xi));
                double sign = ((p + q) % 2 == 0) ? 1.0 : -1.0;
                buf[static_cast<std::size_t>(p) * n + q] = sign * c;
            }
        }
    }

    fft_axis(buf, n, 0, FFTW_BACKWARD);  // + kernel pairs xi_r with alpha_i
    fft_axis(buf, n, 1, FFTW_FORWARD);   // - kernel pairs xi_i with alpha_r

    QuasiProbGrid grid;
    grid.s = s;
    grid.half_extent = half_extent;
    grid.n = n;
    grid.meta = GridProvenance::Direct;
    grid.values.resize(n, n);
    const double scale = dxi * dxi / (M_PI * M_PI);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
            grid.values(j, k) =
                sign * scale * buf[static_cast<std::size_t>(k) * n + j].real();
        }
    }

    if (grid.boundary_magnitude() > kAliasBound) {
        throw ResolutionError(
            "grid extent too small: boundary magnitude " +
            std::to_string(grid.boundary_magnitude()) + " exceeds " +
            std::to_string(kAliasBound));
    }
    double norm = grid.integral();
    if (std::abs(norm - (1.0 - rho.truncation_deficit)) > kNormTol) {
        throw AccuracyError("quasiprob grid normalization off: " +
                            std::to_string(norm));
    }
    return grid;
}

double wigner_point(const DensityMatrix& rho, cplx alpha) {
    // Embed the state into a larger space first: the displaced state reaches
    // up to roughly (sqrt(dim) + |alpha|)^2, and the truncated displacement
    // algebra is only exact well below its own cutoff.
    const int dim = rho.dim();
    const int work = std::max(dim, suggested_dim(std::sqrt(double(dim)) +
                                                 std::abs(alpha)));
    Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(work, work);
    padded.topLeftCorner(dim, dim) = rho.elements;
    FockOperator d = displacement_matrix(alpha, work);
    Eigen::MatrixXcd b = padded * d;
    cplx tr = 0.0;
    for (int nn = 0; nn < work; ++nn) {
        double sign = (nn % 2 == 0) ? 1.0 : -1.0;
        tr += sign * d.col(nn).dot(b.col(nn));  // dot conjugates the left side
    }
    return 2.0 / M_PI * tr.real();
}

double qfunction_point(const DensityMatrix& rho, cplx alpha) {
    const int dim = rho.dim();
    Eigen::VectorXcd c(dim);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int nn = 1; nn < dim; ++nn) {
        c(nn) = c(nn - 1) * alpha / std::sqrt(double(nn));
    }
    cplx v = c.dot(rho.elements * c);
    return v.real() / M_PI;
}

namespace {

double wigner_formula_eval(const DensityMatrix& rho, double alpha_r,
                           double alpha_i, int order) {
    const auto& rule = gauss_hermite(order);
    const int dim = rho.dim();
    const double a = std::sqrt(2.0) * alpha_r;
    const double freq = 2.0 * std::sqrt(2.0) * alpha_i;
    const double damp = std::exp(-a * a);
    cplx sum = 0.0;
    for (int i = 0; i < rule.nodes.size(); ++i) {
        double x = rule.nodes(i);
        Eigen::VectorXd left = fock_position_polys(dim, a + x);
        Eigen::VectorXd right = fock_position_polys(dim, a - x);
        cplx form = left.cast<cplx>().transpose() * rho.elements *
                    right.cast<cplx>();
        sum += rule.weights(i) * damp * form * std::exp(cplx(0.0, -freq * x));
    }
    return 2.0 / M_PI * sum.real();
}

}  // namespace

double wigner_quadrature_point(const DensityMatrix& rho, double alpha_r,
                               double alpha_i, int gh_order) {
    double w1 = wigner_formula_eval(rho, alpha_r, alpha_i, gh_order);
    double w2 = wigner_formula_eval(rho, alpha_r, alpha_i, gh_order + 24);
    if (std::abs(w1 - w2) > 1e-7 * std::max(1.0, std::abs(w1))) {
        throw AccuracyError("Wigner quadrature did not converge at order " +
                            std::to_string(gh_order));
    }
    return w2;
}

QuasiProbGrid convolve_to_s(const QuasiProbGrid& grid, double s_target) {
    if (s_target >= grid.s) {
        throw OrderingError("convolution only lowers s: target " +
                            std::to_string(s_target) + " >= " +
                            std::to_string(grid.s));
    }
    const double t = grid.s - s_target;
    if (std::sqrt(t) > grid.half_extent) {
        throw ResolutionError("convolution kernel wider than grid extent");
    }
    const int n = grid.n;
    const int m = 2 * n;  // zero padding keeps the circular FFT linear
    const double d = grid.delta();

    std::vector<cplx> field(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            field[static_cast<std::size_t>(i) * m + j] = grid.values(i, j);
        }
    }
    fft_axis(field, m, 0, FFTW_FORWARD);
    fft_axis(field, m, 1, FFTW_FORWARD);

    // The Gaussian kernel acts as its exact spectral multiplier
    // e^{-t(u^2+v^2)/8} (u, v plain Fourier frequencies of the alpha plane),
    // which makes repeated convolutions compose exactly.
    std::vector<double> mult(m);
    for (int k = 0; k < m; ++k) {
        int kk = (k <= m / 2) ? k : k - m;
        double u = 2.0 * M_PI * kk / (m * d);
        mult[k] = std::exp(-t * u * u / 8.0);
    }
    for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) {
            field[static_cast<std::size_t>(p) * m + q] *= mult[p] * mult[q];
        }
    }
    fft_axis(field, m, 0, FFTW_BACKWARD);
    fft_axis(field, m, 1, FFTW_BACKWARD);

    QuasiProbGrid out;
    out.s = s_target;
    out.half_extent = grid.half_extent;
    out.n = n;
    out.meta = GridProvenance::Convolved;
    out.values.resize(n, n);
    const double inv = 1.0 / (static_cast<double>(m) * m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out.values(i, j) =
                field[static_cast<std::size_t>(i) * m + j].real() * inv;
        }
    }
    double norm = out.integral();
    if (norm <= 0.0) throw AccuracyError("convolution lost all mass");
    out.values /= norm;
    return out;
}

Marginal marginal(const DensityMatrix& rho, double theta,
                  std::vector<double> xs) {
    if (xs.size() < 2) throw ArgumentError("marginal grid needs >= 2 points");
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (!(xs[i] < xs[i + 1])) {
            throw ArgumentError("marginal grid must be strictly increasing");
        }
    }
    const int dim = rho.dim();
    // M(x, theta) = <X_theta| rho |X_theta>, realized by the Fock-phase
    // rotation rho_mn -> rho_mn e^{-i(m-n)theta}.
    Eigen::VectorXcd phase(dim);
    for (int nn = 0; nn < dim; ++nn) {
        phase(nn) = std::exp(cplx(0.0, -theta * nn));
    }
    Eigen::MatrixXcd rot =
        phase.asDiagonal() * rho.elements * phase.conjugate().asDiagonal();

    Marginal out;
    out.theta = theta;
    out.density.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Eigen::VectorXcd psi = fock_position_amplitudes(dim, xs[i]).cast<cplx>();
        double v = psi.dot(rot * psi).real();  // dot conjugates; psi is real
        if (v < 0.0) {
            if (v < -1e-12) {
                throw AccuracyError("marginal density negative: " +
                                    std::to_string(v));
            }
            v = 0.0;
        }
        out.density[i] = v;
    }
    out.xs = std::move(xs);
    double norm = out.integral();
    if (std::abs(norm - (1.0 - rho.truncation_deficit)) > kNormTol) {
        throw AccuracyError("marginal span too small: integral " +
                            std::to_string(norm));
    }
    return out;
}

Marginal marginal_auto(const DensityMatrix& rho, double theta, int n_points) {
    if (n_points < 2) throw ArgumentError("marginal needs >= 2 points");
    double span = std::sqrt(2.0) * std::abs(mean_annihilation(rho)) +
                  6.0 * max_quadrature_std(rho);
    std::vector<double> xs(n_points);
    for (int i = 0; i < n_points; ++i) {
        xs[i] = -span + 2.0 * span * i / (n_points - 1);
    }
    return marginal(rho, theta, std::move(xs));
}

cplx marginal_char(const DensityMatrix& rho, double eta, double theta) {
    cplx xi = cplx(0.0, eta / std::sqrt(2.0)) * std::exp(cplx(0.0, theta));
    return char_function(rho, 0.0, xi);
}

Profile axis_profile(const QuasiProbGrid& grid, int axis) {
    if (axis != 0 && axis != 1) throw ArgumentError("axis must be 0 or 1");
    Profile p;
    p.coords.resize(grid.n);
    p.values.resize(grid.n);
    int mid = grid.origin_index();
    for (int i = 0; i < grid.n; ++i) {
        p.coords[i] = grid.axis(i);
        p.values[i] = (axis == 0) ? grid.values(i, mid) : grid.values(mid, i);
    }
    return p;
}

Profile radial_profile(const QuasiProbGrid& grid) {
    double bin = 2.0 * grid.delta();
    int nbins = static_cast<int>(std::floor(grid.half_extent / bin)) + 1;
    std::vector<double> sum(nbins, 0.0);
    std::vector<int> count(nbins, 0);
    for (int i = 0; i < grid.n; ++i) {
        for (int j = 0; j < grid.n; ++j) {
            double r = std::hypot(grid.axis(i), grid.axis(j));
            int b = static_cast<int>(std::floor(r / bin));
            if (b < nbins) {
                sum[b] += grid.values(i, j);
                count[b] += 1;
            }
        }
    }
    Profile p;
    for (int b = 0; b < nbins; ++b) {
        if (count[b] == 0) continue;
        p.coords.push_back((b + 0.5) * bin);
        p.values.push_back(sum[b] / count[b]);
    }
    return p;
}

std::vector<Peak> resolvable_peaks(const Profile& profile,
                                   double min_prominence) {
    const auto& v = profile.values;
    const std::size_t len = v.size();
    if (len < 3) return {};
    double vmax = *std::max_element(v.begin(), v.end());
    if (vmax <= 0) return {};
    double dip_required = min_prominence * vmax;

    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < len; ++i) {
        if (v[i] > v[i - 1] && v[i] >= v[i + 1]) maxima.push_back(i);
    }
    std::sort(maxima.begin(), maxima.end(),
              [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });

    // Greedy merge: a candidate counts as its own peak only if the profile
    // dips far enough below both it and every already-accepted peak between
    // them.
    std::vector<std::size_t> accepted;
    for (std::size_t cand : maxima) {
        bool ok = true;
        for (std::size_t acc : accepted) {
            std::size_t lo = std::min(cand, acc);
            std::size_t hi = std::max(cand, acc);
            double valley = *std::min_element(v.begin() + lo, v.begin() + hi + 1);
            if (valley > std::min(v[cand], v[acc]) - dip_required) {
                ok = false;
                break;
            }
        }
        if (ok) accepted.push_back(cand);
    }
    std::sort(accepted.begin(), accepted.end());
    std::vector<Peak> peaks;
    for (std::size_t i : accepted) {
        peaks.push_back({profile.coords[i], v[i]});
    }
    return peaks;
}

bool radially_unimodal(const QuasiProbGrid& grid) {
    Profile p = radial_profile(grid);
    auto it = std::max_element(p.values.begin(), p.values.end());
    double argmax = p.coords[std::distance(p.values.begin(), it)];
    return argmax < 0.3;
}

std::string to_string(GridProvenance p) {
    switch (p) {
        case GridProvenance::Direct: return "direct";
        case GridProvenance::Convolved: return "convolved";
        case GridProvenance::Reconstructed: return "reconstructed";
    }
    return "unknown";
}

GridProvenance provenance_from_string(const std::string& name) {
    if (name == "direct") return GridProvenance::Direct;
    if (name == "convolved") return GridProvenance::Convolved;
    if (name == "reconstructed") return GridProvenance::Reconstructed;
    throw ArgumentError("unknown grid provenance: " + name);
}

}  // namespace mechtomo
