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

#include "mechtomo/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "mechtomo/errors.hpp"

namespace mechtomo {

const GaussHermiteRule& gauss_hermite(int order) {
    if (order < 2) throw ArgumentError("Gauss-Hermite order must be >= 2");
    static std::mutex mtx;
    static std::map<int, GaussHermiteRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    // Golub-Welsch for the nodes: Jacobi matrix of the e^{-x^2} weight has
    // zero diagonal and off-diagonals sqrt(k/2).
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        double b = std::sqrt(0.5 * k);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi,
                                                      Eigen::EigenvaluesOnly);
    GaussHermiteRule rule;
    rule.nodes = es.eigenvalues();
    rule.weights.resize(order);

    // Orthonormal Hermite polynomials p_k (psi_k = p_k e^{-x^2/2}); the
    // eigensolver's first-component weights lose all relative accuracy in the
    // tails, so polish the nodes with Newton (p_n'(x) = sqrt(2n) p_{n-1}(x))
    // and take weights from the Christoffel function 1/sum_k p_k(x)^2.
    auto polys = [order](double x, Eigen::VectorXd& p) {
        p(0) = std::pow(M_PI, -0.25);
        if (order >= 1) p(1) = std::sqrt(2.0) * x * p(0);
        for (int k = 1; k < order; ++k) {
            p(k + 1) = std::sqrt(2.0 / (k + 1.0)) * x * p(k) -
                       std::sqrt(k / (k + 1.0)) * p(k - 1);
        }
    };
    Eigen::VectorXd p(order + 1);
    for (int i = 0; i < order; ++i) {
        double x = rule.nodes(i);
        for (int it = 0; it < 3; ++it) {
            polys(x, p);
            double deriv = std::sqrt(2.0 * order) * p(order - 1);
            if (deriv == 0.0) break;
            x -= p(order) / deriv;
        }
        polys(x, p);
        rule.nodes(i) = x;
        rule.weights(i) = 1.0 / p.head(order).squaredNorm();
    }
    return cache.emplace(order, std::move(rule)).first->second;
}

double trapezoid(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw ArgumentError("trapezoid needs matching grids of >= 2 points");
    }
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        s += 0.5 * (ys[i] + ys[i + 1]) * (xs[i + 1] - xs[i]);
    }
    return s;
}

std::vector<double> trapezoid_moments(std::span<const double> xs,
                                      std::span<const double> ys, int max_k) {
    std::vector<double> out;
    std::vector<double> wy(ys.begin(), ys.end());
    for (int k = 0; k <= max_k; ++k) {
        out.push_back(trapezoid(xs, wy));
        for (std::size_t i = 0; i < wy.size(); ++i) wy[i] *= xs[i];
    }
    return out;
}

}  // namespace mechtomo
