/*
 * Copyright 2026 The pfkernel authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "pfkernel/errors.hpp"
#include "pfkernel/measures.hpp"
#include "pfkernel/pfaffian.hpp"
#include "pfkernel/polynomial.hpp"
#include "pfkernel/quadrature.hpp"

namespace pfkernel {

/**
 * @brief Pairwise skew-moment matrix U, the border integrals, and the bordered
 *        odd-N matrix W whose Pfaffian carries the partition function.
 */
struct MomentMatrices {
    SkewMatrix u;      ///< N x N, u(j,k) = <p_j | p_k>
    Eigen::VectorXd border; ///< border(j) = int p_j dnu_1
    SkewMatrix w;      ///< (N+1) x (N+1) bordered form
    int n = 0;
    double scale = 1.0; ///< N! for real-line kinds, 1 for real-asymmetric
};

inline void require_odd_n(int n) {
    if (n < 1 || n % 2 == 0)
        throw ConfigurationError("this construction targets odd N >= 1");
}

inline void require_monic_basis(const std::vector<Polynomial>& basis, int n) {
    if (static_cast<int>(basis.size()) < n)
        throw ConfigurationError("basis too short for requested N");
    for (int k = 0; k < n; ++k) {
        if (basis[static_cast<std::size_t>(k)].degree() != k ||
            !basis[static_cast<std::size_t>(k)].is_monic(1e-12))
            throw ConfigurationError("basis polynomial " + std::to_string(k) +
                                     " is not monic of degree " + std::to_string(k));
    }
}

inline MomentMatrices build_moment_matrices(const WeightedMeasure& m,
                                            const std::vector<Polynomial>& basis, int n) {
    require_odd_n(n);
    require_monic_basis(basis, n);

    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            const double v = m.skew_form(basis[static_cast<std::size_t>(j)],
                                         basis[static_cast<std::size_t>(k)]);
            u(j, k) = v;
            u(k, j) = -v;
        }

    Eigen::VectorXd border(n);
    for (int j = 0; j < n; ++j) border[j] = m.border_integral(basis[static_cast<std::size_t>(j)]);

    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n + 1, n + 1);
    w.topLeftCorner(n, n) = u;
    w.topRightCorner(n, 1) = border;
    w.bottomLeftCorner(1, n) = -border.transpose();

    return MomentMatrices{SkewMatrix(u), border, SkewMatrix(w), n, m.partition_scale(n)};
}

/// Partition function via the bordered Pfaffian.
inline double z_pfaffian(const MomentMatrices& mm) { return mm.scale * pf(mm.w); }

namespace detail {

/// N! int_{a1<...<aN} prod_{i<j}(aj - ai) prod w(ai), nested Gauss-Legendre on
/// the ordered simplex where the integrand is a smooth polynomial times w.
template <typename W>
double z_real_ordered(int n, W&& w, double lo, double hi, int nodes) {
    const QuadratureRule ref = gauss_legendre(nodes, 0.0, 1.0);
    auto map = [&ref](double a, double b, Eigen::VectorXd& x, Eigen::VectorXd& wt) {
        x = (ref.nodes.array() * (b - a) + a).matrix();
        wt = ref.weights * (b - a);
    };
    if (n == 1) {
        Eigen::VectorXd x, wt;
        map(lo, hi, x, wt);
        double acc = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) acc += wt[i] * w(x[i]);
        return acc;
    }
    // n == 3
    Eigen::VectorXd xa, wa, xb, wb, xc, wc;
    map(lo, hi, xa, wa);
    double total = 0.0;
    for (Eigen::Index ia = 0; ia < xa.size(); ++ia) {
        const double a = xa[ia];
        map(a, hi, xb, wb);
        double acc_a = 0.0;
        for (Eigen::Index ib = 0; ib < xb.size(); ++ib) {
            const double b = xb[ib];
            map(b, hi, xc, wc);
            double acc_b = 0.0;
            for (Eigen::Index ic = 0; ic < xc.size(); ++ic) {
                const double cv = xc[ic];
                acc_b += wc[ic] * (cv - a) * (cv - b) * w(cv);
            }
            acc_a += wb[ib] * (b - a) * w(b) * acc_b;
        }
        total += wa[ia] * w(a) * acc_a;
    }
    return 6.0 * total;
}

/// int_R int_{C+} |Delta(alpha, beta, conj beta)| w(alpha) rho2(beta), on a
/// dense independent grid; the integrand is smooth.
inline double asym_mixed_sector(const WeightedMeasure& m, int n_alpha = 200, int n_x = 200,
                                int n_y = 128) {
    const double ymax = detail::erfc_cutoff_im();
    const QuadratureRule ra = gauss_legendre(n_alpha, -13.0, 13.0);
    const QuadratureRule rx = gauss_legendre(n_x, -7.5, 7.5);
    const QuadratureRule ry = gauss_legendre(n_y, 0.0, ymax);
    double total = 0.0;
    for (Eigen::Index iy = 0; iy < ry.nodes.size(); ++iy) {
        const double y = ry.nodes[iy];
        double acc_y = 0.0;
        for (Eigen::Index ix = 0; ix < rx.nodes.size(); ++ix) {
            const double x = rx.nodes[ix];
            const double rho = m.complex_density({x, y});
            double acc_x = 0.0;
            for (Eigen::Index ia = 0; ia < ra.nodes.size(); ++ia) {
                const double al = ra.nodes[ia];
                const double d2 = (x - al) * (x - al) + y * y;
                acc_x += ra.weights[ia] * m.real_weight(al) * d2;
            }
            acc_y += rx.weights[ix] * rho * acc_x;
        }
        total += ry.weights[iy] * 2.0 * y * acc_y;
    }
    return total;
}

} // namespace detail

/**
 * @brief Independent partition-function oracle at desk scale (N = 1 or 3).
 *
 * Real-line kinds: the full N-cube integral of |Delta| prod w, evaluated as
 * N! times the ordered-simplex integral (where the integrand is smooth).
 * Real-asymmetric: sector sum over (L, M) with L + 2M = N,
 *   Z = sum 2^M/(L! M!) int_{R^L x C+^M} |Delta| dnu1^L dnu2^M.
 */
inline double z_bruteforce(const WeightedMeasure& m, int n, int nodes = 96) {
    require_odd_n(n);
    if (n > 3) throw SizeError("z_bruteforce: N capped at 3");
    double lo = -13.0, hi = 13.0;
    if (m.kind() == WeightKind::custom) {
        lo = m.real_rule().nodes.minCoeff();
        hi = m.real_rule().nodes.maxCoeff();
    }
    auto w = [&m](double x) { return m.real_weight(x); };
    if (m.kind() != WeightKind::real_asymmetric)
        return detail::z_real_ordered(n, w, lo, hi, nodes);

    if (n == 1) return m.moment(0);
    // (L,M) = (3,0): 1/3! of the cube = the ordered integral; (1,1): 2 * mixed sector
    const double real_sector = detail::z_real_ordered(3, w, lo, hi, nodes) / 6.0;
    const double mixed_sector = detail::asym_mixed_sector(m);
    return real_sector + 2.0 * mixed_sector;
}

} // namespace pfkernel
