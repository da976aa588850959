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
#include "mechtomo/hilbert.hpp"
#include "oracle_helpers.hpp"

using namespace mechtomo;

namespace {

void check_valid(const DensityMatrix& rho) {
    CHECK_NOTHROW(rho.validate());
}

}  // namespace

TEST_CASE("vacuum is the alpha=0 coherent state") {
    DensityMatrix rho = coherent_state(0.0, 8);
    check_valid(rho);
    CHECK(rho.elements(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rho.elements.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-14));
    DensityMatrix fock0 = fock_state(0, 8);
    CHECK((rho.elements - fock0.elements).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("cat state matches its occupation oracle") {
    DensityMatrix rho = cat_state(cplx(0.0, 1.7), 32);
    check_valid(rho);
    CHECK(rho.truncation_deficit < 1e-8);
    CHECK(mean_occupation(rho) ==
          doctest::Approx(oracle::cat_mean_occupation(1.7)).epsilon(1e-9));
    // Even cat: odd Fock amplitudes vanish.
    for (int n = 1; n < 32; n += 2) {
        CHECK(std::abs(rho.elements(n, n)) < 1e-20);
    }
}

TEST_CASE("thermal state diagonal equals the geometric series") {
    DensityMatrix rho = thermal_state(0.5, 40);
    check_valid(rho);
    auto weights = oracle::thermal_weights(0.5, 40);
    for (int n = 0; n < 40; ++n) {
        CHECK(rho.elements(n, n).real() == doctest::Approx(weights[n]).epsilon(1e-12));
    }
    double sum = 0;
    for (double w : weights) sum += w;
    CHECK(1.0 - sum == doctest::Approx(rho.truncation_deficit).epsilon(1e-9));
    CHECK(rho.truncation_deficit < 1e-8);
}

TEST_CASE("squeezed vacuum has variance e^{-2r}/2 in X") {
    double r = 0.6;
    DensityMatrix rho = squeezed_vacuum_state(r, 64);
    check_valid(rho);
    double n = mean_occupation(rho);
    double a2 = mean_annihilation_sq(rho).real();
    double var_x = 0.5 * (1.0 + 2.0 * n + 2.0 * a2);
    double var_p = 0.5 * (1.0 + 2.0 * n - 2.0 * a2);
    CHECK(var_x == doctest::Approx(std::exp(-2 * r) / 2).epsilon(1e-9));
    CHECK(var_p == doctest::Approx(std::exp(2 * r) / 2).epsilon(1e-9));
}

TEST_CASE("state constructors reject bad arguments") {
    CHECK_THROWS_AS(fock_state(3, 0), ArgumentError);
    CHECK_THROWS_AS(fock_state(-1, 8), ArgumentError);
    CHECK_THROWS_AS(fock_state(8, 8), TruncationError);
    CHECK_THROWS_AS(coherent_state(3.0, 6), TruncationError);
    CHECK_THROWS_AS(thermal_state(-0.5, 8), ArgumentError);
    CHECK_THROWS_AS(thermal_state(2.0, 10), TruncationError);
}

TEST_CASE("suggested cutoff keeps the deficit below threshold") {
    for (double a : {0.5, 1.0, 1.7, 2.5}) {
        DensityMatrix rho = coherent_state(a, suggested_dim(a));
        CHECK(rho.truncation_deficit < 1e-8);
    }
}

TEST_CASE("displacement matrix basics") {
    SUBCASE("alpha = 0 gives the identity") {
        FockOperator d = displacement_matrix(0.0, 12);
        CHECK((d - FockOperator::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("column 0 holds coherent amplitudes") {
        cplx alpha(0.7, -0.4);
        FockOperator d = displacement_matrix(alpha, 24);
        cplx c = std::exp(-0.5 * std::norm(alpha));
        for (int n = 0; n < 24; ++n) {
            CHECK(std::abs(d(n, 0) - c) < 1e-12);
            c *= alpha / std::sqrt(double(n + 1));
        }
    }
    SUBCASE("D(a) D(-a) is the identity away from the cutoff edge") {
        // At dim 40 the product is exact on the bulk (indices well below the
        // cutoff); rows near the edge carry truncation error by construction.
        for (cplx a : {cplx(2.0, 0.0), cplx(0.8, 1.1), cplx(0.0, -2.0)}) {
            FockOperator prod =
                displacement_matrix(a, 40) * displacement_matrix(-a, 40);
            double err = (prod.topLeftCorner(10, 10) -
                          FockOperator::Identity(10, 10)).cwiseAbs().maxCoeff();
            CHECK(err < 1e-8);
        }
    }
    SUBCASE("group law with phase") {
        cplx a(0.4, 0.3), b(-0.2, 0.6);
        int dim = 40;
        FockOperator lhs = displacement_matrix(a, dim) * displacement_matrix(b, dim);
        cplx phase = std::exp(0.5 * (a * std::conj(b) - std::conj(a) * b));
        FockOperator rhs = phase * displacement_matrix(a + b, dim);
        double err = (lhs.topLeftCorner(24, 24) - rhs.topLeftCorner(24, 24))
                         .cwiseAbs().maxCoeff();
        CHECK(err < 1e-6);
    }
}

TEST_CASE("parity expectation") {
    CHECK(parity_expectation(fock_state(0, 8)) == doctest::Approx(1.0));
    CHECK(parity_expectation(fock_state(1, 8)) == doctest::Approx(-1.0));
    // Coherent alpha = 1: Poisson alternating series gives e^{-2}.
    double parity = parity_expectation(coherent_state(1.0, 32));
    CHECK(parity == doctest::Approx(oracle::poisson_alternating_parity(1.0)).epsilon(1e-10));
    CHECK(parity == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
}

TEST_CASE("parity expectation equals the diagonal-operator trace") {
    DensityMatrix rho = cat_state(cplx(0.3, 1.1), 32);
    Eigen::VectorXd par = parity_diagonal(32);
    cplx tr = 0.0;
    for (int n = 0; n < 32; ++n) tr += par(n) * rho.elements(n, n);
    CHECK(std::abs(parity_expectation(rho) - tr.real()) < 1e-12);
}

TEST_CASE("quadrature operators match the ladder combinations") {
    int dim = 16;
    FockOperator a = annihilation_op(dim);
    FockOperator x0 = quadrature_op(0.0, dim);
    FockOperator expected_x = (a + a.adjoint()) / std::sqrt(2.0);
    CHECK((x0 - expected_x).cwiseAbs().maxCoeff() < 1e-15);
    FockOperator xq = quadrature_op(M_PI / 2.0, dim);
    FockOperator expected_p = cplx(0.0, 1.0) * (a.adjoint() - a) / std::sqrt(2.0);
    CHECK((xq - expected_p).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("ordered moments") {
    SUBCASE("vacuum antinormal <a a^dag> = 1") {
        cplx m = ordered_moment(fock_state(0, 16), 1, 1, Ordering::Antinormal);
        CHECK(m.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(m.imag()) < 1e-14);
    }
    SUBCASE("coherent normal <a> = alpha") {
        cplx alpha(0.6, -0.3);
        cplx m = ordered_moment(coherent_state(alpha, 24), 1, 0, Ordering::Normal);
        CHECK(std::abs(m - alpha) < 1e-10);
    }
    SUBCASE("thermal symmetric (p=q=1) = nbar + 1/2") {
        cplx m = ordered_moment(thermal_state(1.0, 60), 1, 1, Ordering::Symmetric);
        CHECK(m.real() == doctest::Approx(1.5).epsilon(1e-8));
    }
    SUBCASE("order too high for the cutoff") {
        CHECK_THROWS_AS(ordered_moment(fock_state(0, 8), 2, 1, Ordering::Normal),
                        TruncationError);
    }
}

TEST_CASE("every constructor output passes the validity checks") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> amp(-1.5, 1.5);
    for (int i = 0; i < 25; ++i) {
        cplx a(amp(gen), amp(gen));
        check_valid(coherent_state(a, suggested_dim(std::abs(a))));
        check_valid(cat_state(a, suggested_dim(std::abs(a)) + 8));
        check_valid(thermal_state(std::abs(amp(gen)), 80));
        check_valid(squeezed_vacuum_state(0.8 * amp(gen) / 1.5, 48));
        check_valid(fock_state(i % 6, 12));
    }
}

TEST_CASE("state kind round trip") {
    for (auto kind : {StateKind::Fock, StateKind::Coherent, StateKind::Cat,
                      StateKind::Thermal, StateKind::SqueezedVacuum}) {
        CHECK(state_kind_from_string(to_string(kind)) == kind);
    }
    CHECK_THROWS_AS(state_kind_from_string("bogus"), ArgumentError);
}
