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

#ifndef MECHTOMO_SRC_LAGUERRE_TABLE_HPP
#define MECHTOMO_SRC_LAGUERRE_TABLE_HPP

#include <Eigen/Dense>
#include <cmath>

namespace mechtomo::detail {

// Scaled associated-Laguerre table for displacement matrix elements:
//   F(a, k) = e^{-x/2} sqrt(k!/(k+a)!) L_k^{(a)}(x),  a + k < dim,
// so that <k+a|D(alpha)|k> = F(a, k) alpha^a and
//         <k|D(alpha)|k+a> = F(a, k) (-conj(alpha))^a  with x = |alpha|^2.
//
// The e^{-x/2} factor is folded into the recurrence seed so entries decay
// to zero instead of overflowing when x is large; a final non-finite guard
// flushes the (physically negligible) pathological corners.
inline void laguerre_disp_table(double x, int dim, Eigen::MatrixXd& table) {
    table.resize(dim, dim);
    table.setZero();
    for (int a = 0; a < dim; ++a) {
        double f0 = std::exp(-0.5 * x - 0.5 * std::lgamma(a + 1.0));
        table(a, 0) = f0;
        if (a + 1 >= dim) continue;
        double f1 = (1.0 + a - x) * f0 / std::sqrt(1.0 + a);
        table(a, 1) = f1;
        for (int k = 1; a + k + 1 < dim; ++k) {
            double denom = std::sqrt((k + 1.0) * (k + 1.0 + a));
            double f2 = (2.0 * k + 1.0 + a - x) * f1 / denom -
                        std::sqrt(k * (k + a) / ((k + 1.0) * (k + 1.0 + a))) * f0;
            if (!std::isfinite(f2)) f2 = 0.0;
            table(a, k + 1) = f2;
            f0 = f1;
            f1 = f2;
        }
    }
}

}  // namespace mechtomo::detail

#endif
