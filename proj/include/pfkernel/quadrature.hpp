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
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pfkernel/errors.hpp"

namespace pfkernel {

/**
 * @brief Quadrature rule on the real line against a reference density rho:
 *        int f(x) rho(x) dx ~= sum_i weights[i] * f(nodes[i]).
 *
 * Monomials x^k are integrated exactly (to roundoff) for k <= exact_degree.
 */
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    int exact_degree = 0;

    template <typename F>
    auto integrate(F&& f) const -> decltype(f(0.0)) {
        using R = decltype(f(0.0));
        R acc{};
        for (Eigen::Index i = 0; i < nodes.size(); ++i)
            acc += R(weights[i]) * f(nodes[i]);
        return acc;
    }
};

/// Product rule on the open upper half-plane against a reference density:
/// int_{C+} f(beta) rho2(beta) dmu2 ~= sum_i weights[i] * f(nodes[i]).
struct PlaneQuadratureRule {
    std::vector<std::complex<double>> nodes;
    Eigen::VectorXd weights;
    double im_cutoff = 0.0;
    int exact_degree = 0;

    template <typename F>
    std::complex<double> integrate(F&& f) const {
        std::complex<double> acc{};
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[static_cast<Eigen::Index>(i)] * f(nodes[i]);
        return acc;
    }
};

namespace detail {

/// Golub-Welsch: nodes/weights from the symmetric tridiagonal Jacobi matrix of
/// the three-term recurrence (diagonal alpha, off-diagonal beta), total mass m0.
inline void golub_welsch(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta, double m0,
                         Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
    const Eigen::Index n = alpha.size();
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        jac(i, i) = alpha[i];
        if (i + 1 < n) {
            jac(i, i + 1) = beta[i];
            jac(i + 1, i) = beta[i];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    if (es.info() != Eigen::Success) throw NumericError("golub_welsch: eigensolver failed");
    nodes = es.eigenvalues();
    weights.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        weights[i] = m0 * v0 * v0;
    }
}

/// Hermite-type Gauss rule for the weight e^{-s x^2}: Golub-Welsch eigenvalues
/// refined by Newton iteration on the scaled orthonormal recurrence, weights
/// as Christoffel numbers. The Hermite-function scaling phi_k = htilde_k
/// w^{1/2} keeps every intermediate bounded, so tail weights come out with
/// full relative accuracy (eigenvector-based weights do not).
inline QuadratureRule gauss_hermite_weighted(int n, bool probabilists) {
    if (n < 1) throw ConfigurationError("gauss_hermite: need n >= 1");
    const double recur = probabilists ? 1.0 : 0.5; // b_k^2 = recur * k

    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd beta(n - 1 > 0 ? n - 1 : 0);
    for (int k = 1; k < n; ++k) beta[k - 1] = std::sqrt(recur * static_cast<double>(k));
    QuadratureRule rule;
    detail::golub_welsch(alpha, beta, 1.0, rule.nodes, rule.weights);

    // phi_k(x) = htilde_k(x) e^{-x^2/(4 recur... )}; recurrence
    // phi_{k+1} = (x phi_k - b_k phi_{k-1}) / b_{k+1}
    const double half_exp = probabilists ? 0.25 : 0.5;
    auto phi_all = [&](double x, Eigen::VectorXd& phi) {
        phi[0] = std::exp(-half_exp * x * x) *
                 (probabilists ? std::pow(2.0 * std::numbers::pi, -0.25)
                               : std::pow(std::numbers::pi, -0.25));
        phi[1] = x * phi[0] / std::sqrt(recur); // phi has n+1 >= 2 slots
        for (int k = 1; k + 1 <= n; ++k)
            phi[k + 1] = (x * phi[k] - std::sqrt(recur * k) * phi[k - 1]) /
                         std::sqrt(recur * (k + 1));
    };

    Eigen::VectorXd phi(n + 1);
    for (int i = 0; i < n; ++i) {
        double x = rule.nodes[i];
        for (int it = 0; it < 3; ++it) { // Newton on phi_n
            phi_all(x, phi);
            const double deriv =
                std::sqrt(recur * n) / recur * phi[n - 1] - (2.0 * half_exp * x) * phi[n];
            x -= phi[n] / deriv;
        }
        phi_all(x, phi);
        double christoffel = 0.0;
        for (int k = 0; k < n; ++k) christoffel += phi[k] * phi[k];
        rule.nodes[i] = x;
        rule.weights[i] = std::exp(-2.0 * half_exp * x * x) / christoffel;
    }

    // enforce exact +/- symmetry so odd moments cancel pairwise
    for (int i = 0, j = n - 1; i < j; ++i, --j) {
        const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.weights[i] = rule.weights[j] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    rule.exact_degree = 2 * n - 1;
    return rule;
}

} // namespace detail

/// Gauss rule for the weight e^{-x^2/2} on the real line (probabilists'
/// Hermite), exactness degree 2n-1.
inline QuadratureRule gauss_hermite_prob(int n) {
    return detail::gauss_hermite_weighted(n, true);
}

/// Gauss rule for the weight e^{-x^2} on the real line (physicists' Hermite).
inline QuadratureRule gauss_hermite_phys(int n) {
    return detail::gauss_hermite_weighted(n, false);
}

/// Gauss-Legendre rule on [a, b] (unit density), exactness degree 2n-1.
inline QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw ConfigurationError("gauss_legendre: need n >= 1");
    if (!(a < b)) throw ConfigurationError("gauss_legendre: need a < b");
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd beta(n - 1 > 0 ? n - 1 : 0);
    for (int k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        beta[k - 1] = kk / std::sqrt(4.0 * kk * kk - 1.0);
    }
    QuadratureRule rule;
    detail::golub_welsch(alpha, beta, 2.0, rule.nodes, rule.weights);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (Eigen::Index i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    rule.exact_degree = 2 * n - 1;
    return rule;
}

} // namespace pfkernel
