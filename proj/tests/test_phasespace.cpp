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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mechtomo/errors.hpp"
#include "mechtomo/phasespace.hpp"
#include "oracle_helpers.hpp"

using namespace mechtomo;

TEST_CASE("characteristic function fixed points") {
    DensityMatrix vac = fock_state(0, 16);
    SUBCASE("vacuum at s = 0 is a Gaussian in |xi|") {
        for (cplx xi : {cplx(0.5, 0.0), cplx(0.3, -0.8), cplx(0.0, 1.2)}) {
            cplx c = char_function(vac, 0.0, xi);
            CHECK(std::abs(c - std::exp(-0.5 * std::norm(xi))) < 1e-12);
        }
    }
    SUBCASE("xi = 0 gives 1 for any state and s") {
        for (double s : {0.0, -1.0, -5.7}) {
            CHECK(std::abs(char_function(vac, s, 0.0) - 1.0) < 1e-14);
            CHECK(std::abs(char_function(cat_state(cplx(0, 1.7), 32), s, 0.0) -
                           1.0) < 1e-8);
        }
    }
    SUBCASE("Fock |1> vanishes at |xi| = 1 for s = 0") {
        DensityMatrix one = fock_state(1, 16);
        cplx c = char_function(one, 0.0, cplx(1.0, 0.0));
        CHECK(std::abs(c) < 1e-12);
        // general value (1 - |xi|^2) e^{-|xi|^2/2}
        cplx xi(0.4, 0.6);
        cplx expected = (1.0 - std::norm(xi)) * std::exp(-0.5 * std::norm(xi));
        CHECK(std::abs(char_function(one, 0.0, xi) - expected) < 1e-12);
    }
    SUBCASE("Hermitian symmetry C(s, -xi) = conj C(s, xi)") {
        std::mt19937_64 gen(11);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        DensityMatrix rho = cat_state(cplx(0.4, 1.2), 32);
        for (int i = 0; i < 50; ++i) {
            cplx xi(u(gen), u(gen));
            double s = -std::abs(u(gen));
            cplx a = char_function(rho, s, xi);
            cplx b = char_function(rho, s, -xi);
            CHECK(std::abs(b - std::conj(a)) < 1e-12);
        }
    }
}

TEST_CASE("quasiprob grid fixed points") {
    DensityMatrix vac = fock_state(0, 16);
    SUBCASE("vacuum Wigner") {
        QuasiProbGrid g = quasiprob_grid(vac, 0.0, 4.0, 128);
        CHECK(g.values(g.origin_index(), g.origin_index()) ==
              doctest::Approx(2.0 / M_PI).epsilon(1e-10));
        CHECK(g.integral() == doctest::Approx(1.0).epsilon(1e-9));
        // Entire grid vs the analytic Gaussian.
        double err = 0.0;
        for (int i = 0; i < g.n; ++i) {
            for (int j = 0; j < g.n; ++j) {
                double r2 = g.axis(i) * g.axis(i) + g.axis(j) * g.axis(j);
                err = std::max(err, std::abs(g.values(i, j) -
                                             2.0 / M_PI * std::exp(-2.0 * r2)));
            }
        }
        CHECK(err < 1e-10);
    }
    SUBCASE("vacuum Q function") {
        QuasiProbGrid g = quasiprob_grid(vac, -1.0, 4.0, 128);
        CHECK(g.values(g.origin_index(), g.origin_index()) ==
              doctest::Approx(1.0 / M_PI).epsilon(1e-10));
        CHECK_NOTHROW(g.validate());
    }
    SUBCASE("coherent state Wigner is the displaced Gaussian") {
        cplx a0(0.9, -0.6);
        QuasiProbGrid g = quasiprob_grid(coherent_state(a0, 24), 0.0, 5.0, 128);
        double err = 0.0;
        for (int i = 0; i < g.n; ++i) {
            for (int j = 0; j < g.n; ++j) {
                cplx al(g.axis(i), g.axis(j));
                double want = 2.0 / M_PI * std::exp(-2.0 * std::norm(al - a0));
                err = std::max(err, std::abs(g.values(i, j) - want));
            }
        }
        CHECK(err < 1e-8);
    }
    SUBCASE("cat state Wigner has deep negative fringes") {
        QuasiProbGrid g =
            quasiprob_grid(cat_state(cplx(0.0, 1.7), 32), 0.0, 5.7, 256);
        CHECK(g.min_value() < -0.1);
        CHECK(g.integral() == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("positive s rejected") {
        CHECK_THROWS_AS(quasiprob_grid(vac, 0.5, 4.0, 64), ArgumentError);
    }
    SUBCASE("non power-of-two grid rejected") {
        CHECK_THROWS_AS(quasiprob_grid(vac, 0.0, 4.0, 100), ArgumentError);
    }
    SUBCASE("insufficient extent is caught by the boundary check") {
        CHECK_THROWS_AS(quasiprob_grid(coherent_state(2.5, 32), 0.0, 3.0, 64),
                        ResolutionError);
    }
}

TEST_CASE("wigner and q point evaluations") {
    DensityMatrix vac = fock_state(0, 24);
    DensityMatrix one = fock_state(1, 24);
    CHECK(wigner_point(vac, 0.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-12));
    CHECK(wigner_point(one, 0.0) == doctest::Approx(-2.0 / M_PI).epsilon(1e-12));
    CHECK(wigner_point(coherent_state(0.8, 24), 0.8) ==
          doctest::Approx(2.0 / M_PI).epsilon(1e-9));

    CHECK(qfunction_point(vac, 0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
    CHECK(qfunction_point(vac, 1.0) ==
          doctest::Approx(std::exp(-1.0) / M_PI).epsilon(1e-12));
    CHECK(qfunction_point(one, 0.0) == doctest::Approx(0.0).epsilon(1e-14));

    CHECK(wigner_quadrature_point(vac, 0.0, 0.0) ==
          doctest::Approx(2.0 / M_PI).epsilon(1e-10));
    CHECK(wigner_quadrature_point(one, 0.0, 0.0) ==
          doctest::Approx(-2.0 / M_PI).epsilon(1e-10));
    DensityMatrix cat = cat_state(cplx(0.0, 1.7), 32);
    CHECK(std::abs(wigner_quadrature_point(cat, 0.0, 0.0) -
                   wigner_point(cat, 0.0)) < 1e-6);
}

TEST_CASE("oracle triangle: grid, displaced parity and quadrature formula") {
    // 5x5 probe set of exact grid nodes for four states.
    std::vector<DensityMatrix> states;
    states.push_back(fock_state(0, 24));
    states.push_back(fock_state(1, 24));
    states.push_back(coherent_state(0.8, 24));
    states.push_back(cat_state(cplx(0.0, 1.7), 32));
    for (const auto& rho : states) {
        QuasiProbGrid g = quasiprob_grid(rho, 0.0, 4.0, 128);
        int mid = g.origin_index();
        int step = 16;  // probe coords -2,-1,0,1,2
        for (int di = -2; di <= 2; ++di) {
            for (int dj = -2; dj <= 2; ++dj) {
                int i = mid + di * step;
                int j = mid + dj * step;
                cplx alpha(g.axis(i), g.axis(j));
                double w_grid = g.values(i, j);
                double w_parity = wigner_point(rho, alpha);
                double w_quad =
                    wigner_quadrature_point(rho, alpha.real(), alpha.imag());
                CHECK(std::abs(w_grid - w_parity) < 1e-4);
                CHECK(std::abs(w_parity - w_quad) < 1e-4);
                CHECK(std::abs(w_grid - w_quad) < 1e-4);
            }
        }
    }
}

TEST_CASE("convolution between ordering parameters") {
    DensityMatrix vac = fock_state(0, 16);
    QuasiProbGrid w = quasiprob_grid(vac, 0.0, 4.0, 128);
    SUBCASE("vacuum W -> Q by convolution") {
        QuasiProbGrid q = convolve_to_s(w, -1.0);
        CHECK(q.s == doctest::Approx(-1.0));
        CHECK(q.meta == GridProvenance::Convolved);
        double origin = q.values(q.origin_index(), q.origin_index());
        CHECK(std::abs(origin - qfunction_point(vac, 0.0)) < 1e-3);
        CHECK_NOTHROW(q.validate());
    }
    SUBCASE("delta-kernel limit is the identity") {
        QuasiProbGrid same = convolve_to_s(w, -1e-12);
        CHECK((same.values - w.values).cwiseAbs().maxCoeff() < 1e-6);
    }
    SUBCASE("Fock |1> W -> Q is everywhere nonnegative") {
        QuasiProbGrid w1 = quasiprob_grid(fock_state(1, 16), 0.0, 5.0, 128);
        QuasiProbGrid q1 = convolve_to_s(w1, -1.0);
        CHECK(q1.min_value() >= -1e-9);
    }
    SUBCASE("semigroup property") {
        QuasiProbGrid two_step = convolve_to_s(convolve_to_s(w, -0.5), -1.2);
        QuasiProbGrid one_step = convolve_to_s(w, -1.2);
        CHECK((two_step.values - one_step.values).cwiseAbs().maxCoeff() < 1e-4);
    }
    SUBCASE("ordering violations rejected") {
        CHECK_THROWS_AS(convolve_to_s(w, 0.0), OrderingError);
        CHECK_THROWS_AS(convolve_to_s(w, 0.5), OrderingError);
    }
    SUBCASE("kernel wider than the grid rejected") {
        CHECK_THROWS_AS(convolve_to_s(w, -17.0), ResolutionError);
    }
}

TEST_CASE("marginals") {
    SUBCASE("vacuum marginal is the ground-state Gaussian at any angle") {
        DensityMatrix vac = fock_state(0, 16);
        for (double th : {0.0, 0.7, 2.2}) {
            Marginal m = marginal_auto(vac, th);
            CHECK(m.integral() == doctest::Approx(1.0).epsilon(1e-6));
            CHECK(m.mean() == doctest::Approx(0.0).epsilon(1e-10));
            CHECK(m.variance() == doctest::Approx(0.5).epsilon(1e-8));
        }
    }
    SUBCASE("Fock |1> marginal matches the Hermite-function oracle") {
        DensityMatrix one = fock_state(1, 16);
        Marginal m = marginal_auto(one, 0.0, 2001);
        for (std::size_t i = 0; i < m.xs.size(); i += 50) {
            double x = m.xs[i];
            double want = 2.0 * x * x * std::exp(-x * x) / std::sqrt(M_PI);
            CHECK(std::abs(m.density[i] - want) < 1e-12);
        }
        // zero at the origin
        Marginal mz = marginal(one, 0.0, {-1.0, 0.0, 1.0, 2.0, 3.0, 4.0});
        CHECK(mz.density[1] < 1e-15);
    }
    SUBCASE("rotated coherent state lands at sqrt(2) Re(alpha e^{-i theta})") {
        cplx a0 = 0.8 * std::exp(cplx(0.0, 0.6));
        DensityMatrix rho = coherent_state(a0, 24);
        double theta = 0.7;
        Marginal m = marginal_auto(rho, theta);
        double want_mean = std::sqrt(2.0) * (a0 * std::exp(cplx(0, -theta))).real();
        CHECK(m.mean() == doctest::Approx(want_mean).epsilon(1e-9));
        CHECK(m.variance() == doctest::Approx(0.5).epsilon(1e-7));
        // Full profile against the analytic Gaussian pins the rotation sign.
        for (std::size_t i = 0; i < m.xs.size(); i += 100) {
            double x = m.xs[i];
            double want = std::exp(-(x - want_mean) * (x - want_mean)) /
                          std::sqrt(M_PI);
            CHECK(std::abs(m.density[i] - want) < 1e-10);
        }
    }
    SUBCASE("marginal equals the Wigner grid integrated over the conjugate axis") {
        DensityMatrix cat = cat_state(cplx(0.0, 1.7), 32);
        QuasiProbGrid g = quasiprob_grid(cat, 0.0, 5.7, 256);
        // X marginal: integrate over alpha_i, x = sqrt(2) alpha_r.
        std::vector<double> xs, grid_density;
        for (int i = 0; i < g.n; ++i) {
            xs.push_back(std::sqrt(2.0) * g.axis(i));
            grid_density.push_back(g.values.row(i).sum() * g.delta() /
                                   std::sqrt(2.0));
        }
        Marginal m = marginal(cat, 0.0, xs);
        double err = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            err = std::max(err, std::abs(m.density[i] - grid_density[i]));
        }
        CHECK(err < 1e-3);
        // P marginal: integrate over alpha_r at theta = pi/2.
        std::vector<double> ps, grid_p;
        for (int j = 0; j < g.n; ++j) {
            ps.push_back(std::sqrt(2.0) * g.axis(j));
            grid_p.push_back(g.values.col(j).sum() * g.delta() / std::sqrt(2.0));
        }
        Marginal mp = marginal(cat, M_PI / 2.0, ps);
        err = 0.0;
        for (std::size_t j = 0; j < ps.size(); ++j) {
            err = std::max(err, std::abs(mp.density[j] - grid_p[j]));
        }
        CHECK(err < 1e-3);
    }
    SUBCASE("span too small raises") {
        CHECK_THROWS_AS(marginal(fock_state(0, 8), 0.0, {-0.5, 0.0, 0.5}),
                        AccuracyError);
    }
}

TEST_CASE("marginal characteristic function") {
    DensityMatrix vac = fock_state(0, 16);
    CHECK(std::abs(marginal_char(vac, 0.0, 0.3) - 1.0) < 1e-14);
    for (double eta : {0.5, 1.0, 2.0}) {
        CHECK(std::abs(marginal_char(vac, eta, 0.9) -
                       std::exp(-eta * eta / 4.0)) < 1e-12);
    }
    SUBCASE("relation between full and marginal characteristic functions") {
        DensityMatrix cat = cat_state(cplx(0.0, 1.7), 32);
        double eta = 1.3, theta = 0.7;
        for (double s : {0.0, -0.4, -1.0}) {
            cplx xi = cplx(0.0, eta / std::sqrt(2.0)) * std::exp(cplx(0, theta));
            cplx lhs = char_function(cat, s, xi);
            cplx rhs = marginal_char(cat, eta, theta) *
                       std::exp(0.25 * s * eta * eta);
            CHECK(std::abs(lhs - rhs) < 1e-8);
        }
    }
}

TEST_CASE("grid moments match operator orderings") {
    DensityMatrix rho = coherent_state(cplx(0.7, 0.2), 24);
    auto grid_moment = [](const QuasiProbGrid& g, int p, int q) {
        cplx acc = 0.0;
        for (int i = 0; i < g.n; ++i) {
            for (int j = 0; j < g.n; ++j) {
                cplx al(g.axis(i), g.axis(j));
                cplx term = g.values(i, j);
                for (int k = 0; k < p; ++k) term *= al;
                for (int k = 0; k < q; ++k) term *= std::conj(al);
                acc += term;
            }
        }
        return acc * g.delta() * g.delta();
    };
    QuasiProbGrid w = quasiprob_grid(rho, 0.0, 6.0, 128);
    QuasiProbGrid q = quasiprob_grid(rho, -1.0, 6.0, 128);
    for (int p = 0; p <= 2; ++p) {
        for (int qq = 0; qq <= 2; ++qq) {
            if (p + qq == 0) continue;
            cplx sym = ordered_moment(rho, p, qq, Ordering::Symmetric);
            cplx anti = ordered_moment(rho, p, qq, Ordering::Antinormal);
            CHECK(std::abs(grid_moment(w, p, qq) - sym) < 1e-3);
            CHECK(std::abs(grid_moment(q, p, qq) - anti) < 1e-3);
        }
    }
}

TEST_CASE("reflection symmetry for real Fock coefficients") {
    for (const auto& rho :
         {fock_state(1, 16), coherent_state(0.8, 24),
          squeezed_vacuum_state(0.5, 32)}) {
        QuasiProbGrid g = quasiprob_grid(rho, 0.0, 5.0, 128);
        double err = 0.0;
        int mid = g.origin_index();
        for (int i = 0; i < g.n; ++i) {
            for (int dj = 1; dj < g.n / 2; ++dj) {
                err = std::max(err, std::abs(g.values(i, mid + dj) -
                                             g.values(i, mid - dj)));
            }
        }
        CHECK(err < 1e-10);
    }
}

TEST_CASE("profiles and peak resolution") {
    DensityMatrix cat = cat_state(cplx(0.0, 1.7), 32);
    SUBCASE("Q function shows two resolvable lobes along the imaginary axis") {
        QuasiProbGrid q = quasiprob_grid(cat, -1.0, 5.7, 256);
        auto peaks = resolvable_peaks(axis_profile(q, 1));
        REQUIRE(peaks.size() == 2);
        CHECK(std::abs(peaks[1].coord - peaks[0].coord) > 2.0);
    }
    SUBCASE("Fock |1> ring vs blob") {
        QuasiProbGrid ring = quasiprob_grid(fock_state(1, 16), -1.0, 5.0, 128);
        CHECK_FALSE(radially_unimodal(ring));
        QuasiProbGrid blob = quasiprob_grid(fock_state(1, 16), -5.7, 8.0, 128);
        CHECK(radially_unimodal(blob));
    }
}
