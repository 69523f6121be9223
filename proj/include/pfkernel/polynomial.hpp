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

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "pfkernel/errors.hpp"

namespace pfkernel {

/**
 * @brief Dense real polynomial with coefficients stored in ascending degree order.
 *
 * The zero polynomial has an empty coefficient vector. Trailing zero
 * coefficients are trimmed so degree() is well defined.
 */
class Polynomial {
  public:
    Polynomial() = default;

    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial monomial(int degree, double lead = 1.0) {
        std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
        c.back() = lead;
        return Polynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }

    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }

    double coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return 0.0;
        return c_[static_cast<std::size_t>(k)];
    }

    const std::vector<double>& coeffs() const { return c_; }

    double leading() const { return c_.empty() ? 0.0 : c_.back(); }

    bool is_monic(double tol = 0.0) const {
        return !c_.empty() && std::abs(c_.back() - 1.0) <= tol;
    }

    template <typename Scalar>
    Scalar eval(Scalar x) const {
        Scalar acc{};
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Scalar(c_[i]);
        return acc;
    }

    double operator()(double x) const { return eval<double>(x); }
    std::complex<double> operator()(std::complex<double> x) const {
        return eval<std::complex<double>>(x);
    }

    Polynomial& add_scaled(const Polynomial& other, double alpha) {
        if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), 0.0);
        for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] += alpha * other.c_[i];
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a.add_scaled(b, 1.0), a; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a.add_scaled(b, -1.0), a; }

    friend Polynomial operator*(const Polynomial& a, double s) {
        Polynomial out = a;
        for (double& v : out.c_) v *= s;
        out.trim();
        return out;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }

    /// Exact integral over [a, b].
    double integral(double a, double b) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            const double p = static_cast<double>(k) + 1.0;
            acc += c_[k] / p * (std::pow(b, p) - std::pow(a, p));
        }
        return acc;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }

    std::vector<double> c_;
};

/// Monic monomial basis 1, x, x^2, ... of length n.
inline std::vector<Polynomial> monomial_basis(int n) {
    std::vector<Polynomial> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out.push_back(Polynomial::monomial(k));
    return out;
}

/// Monic shifted basis (x - shift)^k of length n, expanded to monomial coefficients.
inline std::vector<Polynomial> shifted_monomial_basis(int n, double shift) {
    std::vector<Polynomial> out;
    const Polynomial lin({-shift, 1.0});
    Polynomial acc({1.0});
    for (int k = 0; k < n; ++k) {
        out.push_back(acc);
        acc = acc * lin;
    }
    return out;
}

} // namespace pfkernel
