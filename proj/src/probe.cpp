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

#include "mechtomo/probe.hpp"

#include <algorithm>
#include <cmath>

#include "mechtomo/errors.hpp"
#include "mechtomo/quadrature.hpp"
#include "mechtomo/rng.hpp"

namespace mechtomo {

namespace {

double gauss_pdf(double x, double mean, double var) {
    double z = x - mean;
    return std::exp(-0.5 * z * z / var) / std::sqrt(2.0 * M_PI * var);
}

}  // namespace

void ProbeParams::validate() const {
    if (!(chi > 0)) throw ArgumentError("measurement strength chi must be > 0");
    if (sigma_x < 0 || sigma_p < 0) {
        throw ArgumentError("noise widths must be >= 0");
    }
}

void PulseConfig::validate() const {
    if (!(photon_number > 0)) {
        throw ArgumentError("photon number must be > 0");
    }
    if (!(g0_over_kappa > 0)) {
        throw ArgumentError("coupling ratio must be > 0");
    }
    if (lambda < 0) throw ArgumentError("lambda must be >= 0");
}

ProbeParams derive_probe_params(const PulseConfig& cfg, double sigma_x,
                                double sigma_p, double xbar_l) {
    cfg.validate();
    if (sigma_x < 0 || sigma_p < 0) {
        throw ArgumentError("noise widths must be >= 0");
    }
    ProbeParams p;
    p.chi = std::sqrt(20.0 * cfg.photon_number) * cfg.g0_over_kappa;
    p.omega = 3.0 / std::sqrt(2.0) * cfg.g0_over_kappa * cfg.photon_number;
    p.sigma_x = sigma_x;
    p.sigma_p = sigma_p;
    p.xbar_l = xbar_l;
    p.validate();
    return p;
}

double s_parameter(const ProbeParams& p) {
    p.validate();
    return -(1.0 + 2.0 * p.sigma_p * p.sigma_p) / (p.chi * p.chi);
}

bool negativity_possible(const ProbeParams& p) {
    p.validate();
    return p.chi * p.chi > 1.0 + 2.0 * p.sigma_p * p.sigma_p;
}

double probe_pfunction(const ProbeParams& p, double x_alpha, double p_alpha) {
    if (!(p.sigma_x > 0) || !(p.sigma_p > 0)) {
        throw ArgumentError("probe P-function needs positive noise widths");
    }
    double dx = x_alpha - p.xbar_l;
    return std::exp(-0.5 * dx * dx / (p.sigma_x * p.sigma_x) -
                    0.5 * p_alpha * p_alpha / (p.sigma_p * p.sigma_p)) /
           (2.0 * M_PI * p.sigma_x * p.sigma_p);
}

std::vector<double> homodyne_pdf(const Marginal& m, const ProbeParams& p,
                                 std::span<const double> pl_grid) {
    p.validate();
    m.validate();
    if (pl_grid.size() < 2) throw ArgumentError("outcome grid too small");
    const double var = p.kernel_variance();
    const std::size_t nx = m.xs.size();

    // Trapezoid weights of the marginal grid, folded into the density once.
    std::vector<double> wdens(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        double w = 0.0;
        if (i > 0) w += 0.5 * (m.xs[i] - m.xs[i - 1]);
        if (i + 1 < nx) w += 0.5 * (m.xs[i + 1] - m.xs[i]);
        wdens[i] = w * m.density[i];
    }

    std::vector<double> out(pl_grid.size());
    for (std::size_t j = 0; j < pl_grid.size(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < nx; ++i) {
            acc += wdens[i] * gauss_pdf(pl_grid[j], p.chi * m.xs[i], var);
        }
        out[j] = acc;
    }
    double norm = trapezoid(pl_grid, out);
    if (std::abs(norm - 1.0) > 1e-3) {
        throw AccuracyError("outcome grid too narrow: pdf integrates to " +
                            std::to_string(norm));
    }
    return out;
}

std::vector<double> default_pl_grid(const Marginal& m, const ProbeParams& p,
                                    int n_points) {
    if (n_points < 2) throw ArgumentError("outcome grid too small");
    double pad = 6.0 * std::sqrt(p.kernel_variance());
    double lo = p.chi * m.xs.front() - pad;
    double hi = p.chi * m.xs.back() + pad;
    std::vector<double> grid(n_points);
    for (int i = 0; i < n_points; ++i) {
        grid[i] = lo + (hi - lo) * i / (n_points - 1);
    }
    return grid;
}

InverseCdfSampler::InverseCdfSampler(const Marginal& m) {
    m.validate();
    const std::size_t nx = m.xs.size();
    std::vector<double> cum(nx, 0.0);
    for (std::size_t i = 1; i < nx; ++i) {
        cum[i] = cum[i - 1] + 0.5 * (m.density[i] + m.density[i - 1]) *
                                  (m.xs[i] - m.xs[i - 1]);
    }
    double total = cum.back();
    if (!(total > 0)) throw ArgumentError("marginal has no mass");
    for (double& c : cum) c /= total;

    // Collapse flat CDF runs to their midpoints so the node set is strictly
    // increasing in u.
    std::size_t i = 0;
    while (i < nx) {
        std::size_t j = i;
        while (j + 1 < nx && cum[j + 1] - cum[i] <= 1e-15) ++j;
        cdf_.push_back(cum[i]);
        xs_.push_back(0.5 * (m.xs[i] + m.xs[j]));
        i = j + 1;
    }
    if (cdf_.back() < 1.0) {
        cdf_.push_back(1.0);
        xs_.push_back(m.xs.back());
    }

    // Fritsch–Carlson monotone cubic tangents for x(u).
    const std::size_t nn = cdf_.size();
    slope_.assign(nn, 0.0);
    if (nn == 1) return;
    std::vector<double> h(nn - 1), d(nn - 1);
    for (std::size_t k = 0; k + 1 < nn; ++k) {
        h[k] = cdf_[k + 1] - cdf_[k];
        d[k] = (xs_[k + 1] - xs_[k]) / h[k];
    }
    slope_[0] = d[0];
    slope_[nn - 1] = d[nn - 2];
    for (std::size_t k = 1; k + 1 < nn; ++k) {
        if (d[k - 1] * d[k] <= 0) {
            slope_[k] = 0.0;
        } else {
            double w1 = 2.0 * h[k] + h[k - 1];
            double w2 = h[k] + 2.0 * h[k - 1];
            slope_[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
        }
    }
}

double InverseCdfSampler::quantile(double u) const {
    u = std::clamp(u, 0.0, 1.0);
    if (xs_.size() == 1) return xs_[0];
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t k = (it == cdf_.begin())
                        ? 0
                        : std::min<std::size_t>(std::distance(cdf_.begin(), it) - 1,
                                                cdf_.size() - 2);
    double h = cdf_[k + 1] - cdf_[k];
    double s = (u - cdf_[k]) / h;
    double s2 = s * s;
    double s3 = s2 * s;
    double h00 = 2 * s3 - 3 * s2 + 1;
    double h10 = s3 - 2 * s2 + s;
    double h01 = -2 * s3 + 3 * s2;
    double h11 = s3 - s2;
    return h00 * xs_[k] + h10 * h * slope_[k] + h01 * xs_[k + 1] +
           h11 * h * slope_[k + 1];
}

std::vector<double> sample_homodyne(const Marginal& m, const ProbeParams& p,
                                    int count, std::uint64_t seed) {
    p.validate();
    if (count < 1) throw ArgumentError("sample count must be >= 1");
    InverseCdfSampler sampler(m);
    SeededRng rng(seed);
    const double noise_sd = std::sqrt(p.kernel_variance());
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) {
        double x = sampler.quantile(rng.uniform());
        out[i] = p.chi * x + noise_sd * rng.gaussian();
    }
    return out;
}

LinearisationReport linearisation_check(const PulseConfig& cfg,
                                        const ProbeParams& p,
                                        double state_xvar) {
    if (state_xvar < 0) throw ArgumentError("state variance must be >= 0");
    LinearisationReport rep;
    double l2 = cfg.lambda * cfg.lambda;
    rep.quadratic_ratio = l2 * state_xvar;
    rep.noise_ratio = 2.0 * l2 * p.sigma_x * p.sigma_x * state_xvar /
                      (1.0 + 2.0 * p.sigma_p * p.sigma_p);
    rep.valid = rep.quadratic_ratio <= 0.1 && rep.noise_ratio <= 0.1;
    return rep;
}

}  // namespace mechtomo
