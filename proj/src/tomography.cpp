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

#include "mechtomo/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mechtomo/errors.hpp"
#include "mechtomo/quadrature.hpp"

namespace mechtomo {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double quantile_sorted(const std::vector<double>& sorted, double q) {
    double pos = q * (sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = pos - lo;
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

Marginal spike_marginal(double u) {
    // Degenerate sample set: all outcomes identical.
    double w = std::max(1e-9, std::abs(u) * 1e-9);
    Marginal m;
    m.xs = {u - w, u, u + w};
    m.density = {0.0, 1.0 / w, 0.0};
    return m;
}

}  // namespace

void TomogramDataset::validate() const {
    if (angles.empty()) throw ArgumentError("dataset has no angles");
    if (angles.size() != samples.size()) {
        throw ArgumentError("angle/sample block mismatch");
    }
    for (std::size_t k = 0; k < angles.size(); ++k) {
        if (angles[k] < 0.0 || angles[k] >= M_PI) {
            throw ArgumentError("angles must lie in [0, pi)");
        }
        if (k > 0 && !(angles[k] > angles[k - 1])) {
            throw ArgumentError("angles must be strictly increasing");
        }
        if (samples[k].empty()) {
            throw ArgumentError("every angle needs at least one sample");
        }
    }
    probe.validate();
}

std::size_t TomogramDataset::total_samples() const {
    std::size_t t = 0;
    for (const auto& block : samples) t += block.size();
    return t;
}

void ReconstructionConfig::validate() const {
    if (!(eta_max > 0)) throw ArgumentError("eta_max must be > 0");
    if (n_eta < 8) throw ArgumentError("n_eta must be >= 8");
    if (!is_power_of_two(n) || n < 8) {
        throw ArgumentError("output grid size must be a power of two >= 8");
    }
    if (!(half_extent > 0)) throw ArgumentError("half_extent must be > 0");
}

TomogramDataset run_protocol(const DensityMatrix& rho, const ProbeParams& p,
                             std::vector<double> angles, int per_angle,
                             std::uint64_t seed) {
    rho.validate();
    p.validate();
    if (per_angle < 1) throw ArgumentError("per_angle must be >= 1");
    if (angles.empty()) throw ArgumentError("need at least one angle");

    TomogramDataset ds;
    ds.probe = p;
    ds.seed = seed;
    ds.angles = std::move(angles);
    ds.samples.reserve(ds.angles.size());
    for (std::size_t k = 0; k < ds.angles.size(); ++k) {
        // Free evolution by theta realized exactly as the marginal-angle
        // rotation of a freshly prepared state; angle k draws from its own
        // stream.
        Marginal m = marginal_auto(rho, ds.angles[k]);
        ds.samples.push_back(
            sample_homodyne(m, p, per_angle, seed + static_cast<std::uint64_t>(k)));
    }
    ds.validate();
    return ds;
}

Marginal estimate_scaled_marginal(std::span<const double> samples,
                                  const ProbeParams& p,
                                  MarginalEstimator estimator) {
    p.validate();
    if (samples.size() < 100) {
        throw ArgumentError("need at least 100 samples for a density estimate");
    }
    std::vector<double> u(samples.begin(), samples.end());
    for (double& v : u) v /= p.chi;
    std::vector<double> sorted = u;
    std::sort(sorted.begin(), sorted.end());
    const double umin = sorted.front();
    const double umax = sorted.back();
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    const double count = static_cast<double>(u.size());

    if (umax - umin <= 0.0) return spike_marginal(umin);

    Marginal m;
    if (estimator == MarginalEstimator::Histogram) {
        // Freedman–Diaconis bins.
        double bw = 2.0 * iqr * std::pow(count, -1.0 / 3.0);
        if (!(bw > 0)) bw = (umax - umin) / std::max(1.0, std::sqrt(count));
        int nbins = static_cast<int>(std::ceil((umax - umin) / bw));
        nbins = std::clamp(nbins, 1, 8192);
        double width = (umax - umin) / nbins;
        std::vector<double> counts(nbins, 0.0);
        for (double v : u) {
            int b = std::min(nbins - 1,
                             static_cast<int>((v - umin) / width));
            counts[std::max(0, b)] += 1.0;
        }
        m.xs.push_back(umin - 0.5 * width);
        m.density.push_back(0.0);
        for (int b = 0; b < nbins; ++b) {
            m.xs.push_back(umin + (b + 0.5) * width);
            m.density.push_back(counts[b] / (count * width));
        }
        m.xs.push_back(umax + 0.5 * width);
        m.density.push_back(0.0);
    } else {
        // Gaussian KDE, Silverman bandwidth, evaluated by linear binning.
        double mean = std::accumulate(u.begin(), u.end(), 0.0) / count;
        double var = 0.0;
        for (double v : u) var += (v - mean) * (v - mean);
        var /= std::max(1.0, count - 1.0);
        double sd = std::sqrt(var);
        double scale = std::min(sd, iqr / 1.349);
        if (!(scale > 0)) scale = std::max(sd, (umax - umin) / 4.0);
        double bw = 0.9 * scale * std::pow(count, -0.2);
        if (!(bw > 0)) return spike_marginal(mean);

        double lo = umin - 4.0 * bw;
        double hi = umax + 4.0 * bw;
        int npts = std::clamp(static_cast<int>(std::ceil((hi - lo) / (bw / 3.0))),
                              257, 8193);
        double dx = (hi - lo) / (npts - 1);
        std::vector<double> weight(npts, 0.0);
        for (double v : u) {
            double pos = (v - lo) / dx;
            int b = static_cast<int>(std::floor(pos));
            double frac = pos - b;
            if (b >= 0 && b < npts) weight[b] += 1.0 - frac;
            if (b + 1 >= 0 && b + 1 < npts) weight[b + 1] += frac;
        }
        int halfwin = static_cast<int>(std::ceil(5.0 * bw / dx));
        std::vector<double> kernel(2 * halfwin + 1);
        for (int o = -halfwin; o <= halfwin; ++o) {
            double z = o * dx / bw;
            kernel[o + halfwin] = std::exp(-0.5 * z * z) /
                                  (bw * std::sqrt(2.0 * M_PI));
        }
        m.xs.resize(npts);
        m.density.assign(npts, 0.0);
        for (int i = 0; i < npts; ++i) m.xs[i] = lo + i * dx;
        for (int i = 0; i < npts; ++i) {
            if (weight[i] == 0.0) continue;
            double w = weight[i] / count;
            int jlo = std::max(0, i - halfwin);
            int jhi = std::min(npts - 1, i + halfwin);
            for (int j = jlo; j <= jhi; ++j) {
                m.density[j] += w * kernel[j - i + halfwin];
            }
        }
    }

    double norm = trapezoid(m.xs, m.density);
    if (!(norm > 0)) throw AccuracyError("empty density estimate");
    for (double& v : m.density) v /= norm;
    return m;
}

ReconstructionResult invert_from_scaled_marginals(
    const std::vector<Marginal>& marginals, double s_natural,
    const ReconstructionConfig& cfg) {
    cfg.validate();
    if (marginals.empty()) throw ArgumentError("no marginals to invert");
    const int nang = static_cast<int>(marginals.size());
    for (int k = 0; k < nang; ++k) {
        if (marginals[k].theta < 0 || marginals[k].theta >= M_PI) {
            throw ArgumentError("marginal angles must lie in [0, pi)");
        }
        if (k > 0 && !(marginals[k].theta > marginals[k - 1].theta)) {
            throw ArgumentError("marginal angles must be strictly increasing");
        }
    }

    const double s_target = cfg.s_target.value_or(s_natural);
    if (s_target > s_natural + 1e-12) {
        throw OrderingError(
            "cannot reconstruct above the natural ordering parameter "
            "(deconvolution): requested " + std::to_string(s_target) +
            ", natural " + std::to_string(s_natural));
    }
    const double ds = s_target - s_natural;  // <= 0

    // Radial grid and trapezoid weights.
    const int neta = cfg.n_eta;
    const double deta = cfg.eta_max / (neta - 1);
    std::vector<double> eta(neta), weta(neta);
    for (int j = 0; j < neta; ++j) {
        eta[j] = j * deta;
        weta[j] = deta * ((j == 0 || j == neta - 1) ? 0.5 : 1.0);
    }

    // Marginal characteristic functions C_m(eta, theta) by trapezoid in x.
    std::vector<std::vector<cplx>> cm(nang, std::vector<cplx>(neta));
    double cm_at_cutoff = 0.0;
    for (int k = 0; k < nang; ++k) {
        const auto& m = marginals[k];
        const std::size_t nx = m.xs.size();
        std::vector<double> w(nx, 0.0);
        for (std::size_t i = 0; i < nx; ++i) {
            if (i > 0) w[i] += 0.5 * (m.xs[i] - m.xs[i - 1]);
            if (i + 1 < nx) w[i] += 0.5 * (m.xs[i + 1] - m.xs[i]);
        }
        for (int j = 0; j < neta; ++j) {
            cplx acc = 0.0;
            for (std::size_t i = 0; i < nx; ++i) {
                acc += w[i] * m.density[i] *
                       std::exp(cplx(0.0, eta[j] * m.xs[i]));
            }
            cm[k][j] = acc;
        }
        cm_at_cutoff = std::max(cm_at_cutoff, std::abs(cm[k][neta - 1]));
    }

    // Periodic trapezoid in theta on [0, pi); the other half-plane enters
    // through M(x, theta+pi) = M(-x, theta), which folds into 2 Re(...).
    std::vector<double> wtheta(nang);
    if (nang == 1) {
        wtheta[0] = M_PI;
    } else {
        for (int k = 0; k < nang; ++k) {
            double next = (k + 1 < nang) ? marginals[k + 1].theta
                                         : marginals[0].theta + M_PI;
            double prev = (k > 0) ? marginals[k - 1].theta
                                  : marginals[nang - 1].theta - M_PI;
            wtheta[k] = 0.5 * (next - prev);
        }
    }

    // Combined per-(angle, eta) complex coefficients, including the ramp,
    // the Gaussian reordering factor and the 1/pi^2 prefactor (the factor 2
    // from folding cancels the 1/2 of the polar measure d^2 xi = eta/2 ...).
    std::vector<std::vector<cplx>> coef(nang, std::vector<cplx>(neta));
    for (int k = 0; k < nang; ++k) {
        for (int j = 0; j < neta; ++j) {
            double damp = std::exp(0.25 * ds * eta[j] * eta[j]);
            coef[k][j] = wtheta[k] * weta[j] * eta[j] * damp * cm[k][j] /
                         (M_PI * M_PI);
        }
    }

    QuasiProbGrid grid;
    grid.s = s_target;
    grid.half_extent = cfg.half_extent;
    grid.n = cfg.n;
    grid.meta = GridProvenance::Reconstructed;
    grid.values.resize(cfg.n, cfg.n);

    std::vector<double> cosv(nang), sinv(nang);
    for (int k = 0; k < nang; ++k) {
        cosv[k] = std::cos(marginals[k].theta);
        sinv[k] = std::sin(marginals[k].theta);
    }
    const double root2 = std::sqrt(2.0);

#pragma omp parallel for schedule(static)
    for (int ir = 0; ir < cfg.n; ++ir) {
        double ar = grid.axis(ir);
        for (int ii = 0; ii < cfg.n; ++ii) {
            double ai = grid.axis(ii);
            double total = 0.0;
            for (int k = 0; k < nang; ++k) {
                double t = root2 * (ar * cosv[k] + ai * sinv[k]);
                cplx base = std::exp(cplx(0.0, -deta * t));
                cplx phase = 1.0;
                cplx acc = 0.0;
                for (int j = 0; j < neta; ++j) {
                    acc += coef[k][j] * phase;
                    phase *= base;
                }
                total += acc.real();
            }
            grid.values(ir, ii) = total;
        }
    }

    double norm = grid.integral();
    if (!(norm > 0)) throw AccuracyError("reconstruction lost all mass");
    grid.values /= norm;

    ReconstructionResult res;
    res.grid = std::move(grid);
    res.s_natural = s_natural;
    res.s_target = s_target;
    res.damping_at_cutoff = std::exp(0.25 * ds * cfg.eta_max * cfg.eta_max);
    res.lowpass_flagged = res.damping_at_cutoff > 1e-3 && cm_at_cutoff > 1e-3;
    return res;
}

ReconstructionResult invert_marginals(const TomogramDataset& dataset,
                                      const ReconstructionConfig& cfg) {
    dataset.validate();
    std::vector<Marginal> est;
    est.reserve(dataset.angles.size());
    for (std::size_t k = 0; k < dataset.angles.size(); ++k) {
        Marginal m = estimate_scaled_marginal(dataset.samples[k], dataset.probe,
                                              cfg.estimator);
        m.theta = dataset.angles[k];
        est.push_back(std::move(m));
    }
    return invert_from_scaled_marginals(est, s_parameter(dataset.probe), cfg);
}

GridComparison compare_grids(const QuasiProbGrid& a, const QuasiProbGrid& b) {
    if (a.n != b.n || std::abs(a.half_extent - b.half_extent) > 1e-12 ||
        std::abs(a.s - b.s) > 1e-9) {
        throw ArgumentError("grid specs do not match");
    }
    GridComparison c;
    double d = a.delta();
    double sq = (a.values - b.values).squaredNorm();
    c.l2 = std::sqrt(sq) * d;
    c.max_abs = (a.values - b.values).cwiseAbs().maxCoeff();
    c.min_value_a = a.min_value();
    c.min_value_b = b.min_value();
    return c;
}

}  // namespace mechtomo
