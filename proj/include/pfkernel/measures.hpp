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
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pfkernel/errors.hpp"
#include "pfkernel/polynomial.hpp"
#include "pfkernel/quadrature.hpp"

namespace pfkernel {

enum class WeightKind { hermitian_beta1, real_asymmetric, custom };

inline const char* to_string(WeightKind k) {
    switch (k) {
        case WeightKind::hermitian_beta1: return "hermitian-beta1";
        case WeightKind::real_asymmetric: return "real-asymmetric";
        case WeightKind::custom: return "custom";
    }
    return "?";
}

inline WeightKind weight_kind_from_string(const std::string& s) {
    if (s == "hermitian-beta1") return WeightKind::hermitian_beta1;
    if (s == "real-asymmetric") return WeightKind::real_asymmetric;
    if (s == "custom") return WeightKind::custom;
    throw ConfigurationError("unknown ensemble kind: " + s);
}

/**
 * @brief A tagged eigenvalue location: either a real value or the upper
 *        half-plane representative of a complex-conjugate pair.
 */
class SpectralPoint {
  public:
    static SpectralPoint real(double x) { return SpectralPoint(true, {x, 0.0}); }

    /// Representative of a conjugate pair; a negative imaginary part is
    /// normalized to its conjugate. Real values are rejected.
    static SpectralPoint pair(std::complex<double> z) {
        if (z.imag() == 0.0) throw ConfigurationError("SpectralPoint::pair: point is real");
        if (z.imag() < 0.0) z = std::conj(z);
        return SpectralPoint(false, z);
    }

    bool is_real() const { return real_; }
    std::complex<double> value() const { return v_; }
    double real_value() const {
        if (!real_) throw DomainError("SpectralPoint: not a real point");
        return v_.real();
    }

  private:
    SpectralPoint(bool r, std::complex<double> v) : real_(r), v_(v) {}
    bool real_;
    std::complex<double> v_;
};

namespace detail {

/// Natural cubic spline through ascending knots; zero outside the knot range.
class CubicSpline {
  public:
    CubicSpline() = default;

    CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 3) throw ConfigurationError("custom weight table needs at least 3 points");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw ConfigurationError("custom weight table abscissae must be strictly increasing");
        // second derivatives, natural boundary (tridiagonal solve)
        std::vector<double> m(n, 0.0), diag(n, 0.0), rhs(n, 0.0), off(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
            diag[i] = 2.0 * (h0 + h1);
            off[i] = h1;
            rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
        }
        for (std::size_t i = 2; i + 1 < n; ++i) {
            const double w = (x_[i] - x_[i - 1]) / diag[i - 1];
            diag[i] -= w * off[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m[i] = (rhs[i] - off[i] * m[i + 1]) / diag[i];
            if (i == 1) break;
        }
        // per-interval polynomial in the global variable
        pieces_.reserve(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double h = x_[i + 1] - x_[i];
            const double a = y_[i];
            const double b = (y_[i + 1] - y_[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
            const double c = m[i] / 2.0;
            const double d = (m[i + 1] - m[i]) / (6.0 * h);
            // a + b t + c t^2 + d t^3, t = x - x_i, expanded in x
            const Polynomial t({-x_[i], 1.0});
            Polynomial p({a});
            p.add_scaled(t, b);
            p.add_scaled(t * t, c);
            p.add_scaled(t * t * t, d);
            pieces_.push_back(p);
        }
    }

    double lo() const { return x_.front(); }
    double hi() const { return x_.back(); }
    std::size_t intervals() const { return pieces_.size(); }
    double knot(std::size_t i) const { return x_[i]; }

    double operator()(double x) const {
        if (x < x_.front() || x > x_.back()) return 0.0;
        return pieces_[locate(x)](x);
    }

    /// Exact integral of x^k * s(x) over (-inf, y].
    double partial_moment(int k, double y) const {
        if (y <= x_.front()) return 0.0;
        const Polynomial mono = Polynomial::monomial(k);
        double acc = 0.0;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const double a = x_[i], b = x_[i + 1];
            if (y <= a) break;
            acc += (mono * pieces_[i]).integral(a, std::min(b, y));
        }
        return acc;
    }

    double moment(int k) const { return partial_moment(k, x_.back()); }

  private:
    std::size_t locate(double x) const {
        std::size_t lo = 0, hi = x_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (x_[mid] <= x) ? lo = mid : hi = mid;
        }
        return lo;
    }

    std::vector<double> x_, y_;
    std::vector<Polynomial> pieces_;
};

// The weight carries sqrt(erfc(sqrt(2) |Im|)); truncate the half-plane where
// that factor drops below 1e-18, i.e. erfc < 1e-36. The density beyond the
// cut is then below every tolerance in play even against growing polynomials.
inline double erfc_cutoff_im(double tol = 1e-36) {
    // smallest y with erfc(sqrt(2) y) < tol, by bisection
    double lo = 0.0, hi = 12.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::erfc(std::numbers::sqrt2 * mid) < tol) ? hi = mid : lo = mid;
    }
    return hi;
}

} // namespace detail

/**
 * @brief Weight specification plus quadrature rules: the analytic substrate
 *        for all moment integrals.
 *
 * Built-in kinds:
 *   - hermitian-beta1:  w(x) = e^{-x^2/2} on the real line.
 *   - real-asymmetric:  w(z) = e^{-z^2/2} sqrt(erfc(sqrt(2) |Im z|)); the real
 *     restriction is the same Gaussian, and the pair density on the upper
 *     half-plane is w(b) w(conj b) = e^{Im^2 - Re^2} erfc(sqrt(2) Im b).
 *   - custom: a nonnegative tabulated weight on the real line, interpolated by
 *     a natural cubic spline and treated as exactly piecewise cubic.
 *
 * Moment and incomplete-moment evaluations against the real weight are exact
 * (erf/exp recursion for the Gaussian, closed-form piecewise integration for
 * splines); the rules are used for smooth outer integrals only.
 */
class WeightedMeasure {
  public:
    static WeightedMeasure build(WeightKind kind, int n_real_nodes, int n_complex_nodes = 0) {
        if (kind == WeightKind::custom)
            throw ConfigurationError("custom measures are built from a table; use custom_from_table");
        if (n_real_nodes < 8) throw ConfigurationError("build_measure: need n_real_nodes >= 8");
        WeightedMeasure m;
        m.kind_ = kind;
        m.real_rule_ = gauss_hermite_prob(n_real_nodes);
        if (kind == WeightKind::real_asymmetric) {
            if (n_complex_nodes < 8)
                throw ConfigurationError("build_measure: need n_complex_nodes >= 8");
            m.plane_rule_ = make_plane_rule(n_complex_nodes);
        }
        m.check_conjugation_symmetry();
        return m;
    }

    /// Custom weight from tabulated (x, w) pairs.
    static WeightedMeasure custom_from_table(const std::vector<double>& x,
                                             const std::vector<double>& w,
                                             int nodes_per_interval = 16) {
        if (x.size() != w.size()) throw ConfigurationError("custom weight: x/w size mismatch");
        for (double v : w)
            if (!(v >= 0.0)) throw ConfigurationError("custom weight: negative or non-finite value");
        WeightedMeasure m;
        m.kind_ = WeightKind::custom;
        m.spline_ = detail::CubicSpline(x, w);
        // composite Gauss-Legendre per spline interval, weight absorbed
        std::vector<double> nodes, wts;
        for (std::size_t i = 0; i < m.spline_->intervals(); ++i) {
            const QuadratureRule gl =
                gauss_legendre(nodes_per_interval, m.spline_->knot(i), m.spline_->knot(i + 1));
            for (Eigen::Index j = 0; j < gl.nodes.size(); ++j) {
                const double ww = (*m.spline_)(gl.nodes[j]);
                if (ww < 0.0) throw ConfigurationError("custom weight: spline dips negative");
                nodes.push_back(gl.nodes[j]);
                wts.push_back(gl.weights[j] * ww);
            }
        }
        m.real_rule_.nodes = Eigen::Map<Eigen::VectorXd>(nodes.data(), static_cast<Eigen::Index>(nodes.size()));
        m.real_rule_.weights = Eigen::Map<Eigen::VectorXd>(wts.data(), static_cast<Eigen::Index>(wts.size()));
        // x^k * cubic integrated exactly by n-point Gauss when k + 3 <= 2n - 1
        m.real_rule_.exact_degree = 2 * nodes_per_interval - 4;
        return m;
    }

    /// Plain-text grammar: one "x w" pair per line, '#' starts a comment.
    static WeightedMeasure custom_from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigurationError("cannot open weight table: " + path);
        std::vector<double> xs, ws;
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            double x, w;
            if (ss >> x >> w) {
                xs.push_back(x);
                ws.push_back(w);
            }
        }
        return custom_from_table(xs, ws);
    }

    WeightKind kind() const { return kind_; }
    const QuadratureRule& real_rule() const { return real_rule_; }
    bool has_plane_rule() const { return plane_rule_.has_value(); }
    const PlaneQuadratureRule& plane_rule() const {
        if (!plane_rule_) throw ConfigurationError("measure has no upper half-plane rule");
        return *plane_rule_;
    }

    /// Weight restricted to the real line.
    double real_weight(double x) const {
        switch (kind_) {
            case WeightKind::custom: return (*spline_)(x);
            default: return std::exp(-0.5 * x * x);
        }
    }

    /// Weight at a complex argument (analytic continuation for the built-ins).
    std::complex<double> weight(std::complex<double> z) const {
        switch (kind_) {
            case WeightKind::hermitian_beta1:
                return std::exp(-0.5 * z * z);
            case WeightKind::real_asymmetric:
                return std::exp(-0.5 * z * z) *
                       std::sqrt(std::erfc(std::numbers::sqrt2 * std::abs(z.imag())));
            case WeightKind::custom:
                if (z.imag() != 0.0)
                    throw ConfigurationError("custom weights are defined on the real line only");
                return real_weight(z.real());
        }
        return {};
    }

    /// Pair density w(b) w(conj b) on the upper half-plane, real and >= 0.
    double complex_density(std::complex<double> b) const {
        if (kind_ != WeightKind::real_asymmetric)
            throw ConfigurationError("complex density requires the real-asymmetric measure");
        const double x = b.real(), y = std::abs(b.imag());
        return std::exp(y * y - x * x) * std::erfc(std::numbers::sqrt2 * y);
    }

    /// Exact int x^k w(x) dx over the real line.
    double moment(int k) const {
        if (kind_ == WeightKind::custom) return spline_->moment(k);
        if (k % 2 == 1) return 0.0;
        double v = std::sqrt(2.0 * std::numbers::pi);
        for (int j = 1; j < k; j += 2) v *= static_cast<double>(j);
        return v;
    }

    /// Exact int_{-inf}^{y} x^k w(x) dx.
    double partial_moment(int k, double y) const {
        if (kind_ == WeightKind::custom) return spline_->partial_moment(k, y);
        // I_0 = sqrt(pi/2)(1 + erf(y/sqrt2)), I_1 = -e^{-y^2/2},
        // I_k = -y^{k-1} e^{-y^2/2} + (k-1) I_{k-2}
        const double g = std::exp(-0.5 * y * y);
        double i0 = std::sqrt(0.5 * std::numbers::pi) * (1.0 + std::erf(y / std::numbers::sqrt2));
        if (k == 0) return i0;
        double i1 = -g;
        if (k == 1) return i1;
        double prev = i0, cur = i1, yk = y; // yk = y^{j-1} at step j
        for (int j = 2; j <= k; ++j) {
            const double next = -yk * g + static_cast<double>(j - 1) * prev;
            prev = cur;
            cur = next;
            yk *= y;
        }
        return cur;
    }

    /// int p w dmu_1 over the real line, exact.
    double border_integral(const Polynomial& p) const {
        double acc = 0.0;
        for (int k = 0; k <= p.degree(); ++k) acc += p.coeff(k) * moment(k);
        return acc;
    }

    /**
     * Half-signed moment of a polynomial against the real weight, exact:
     *   eps p (y) = 1/2 int p(xi) w(xi) sgn(xi - y) dxi.
     */
    double epsilon_poly_real(const Polynomial& p, double y) const {
        double acc = 0.0;
        for (int k = 0; k <= p.degree(); ++k)
            acc += p.coeff(k) * (moment(k) - 2.0 * partial_moment(k, y));
        return 0.5 * acc;
    }

    /// eps applied to the weighted polynomial at a spectral point. For a real
    /// point this is the exact half-signed moment; for a pair representative z
    /// it is the point evaluation i * p(conj z) w(conj z) sgn(Im z).
    std::complex<double> epsilon_weighted_poly(const Polynomial& p, const SpectralPoint& pt) const {
        if (pt.is_real()) return {epsilon_poly_real(p, pt.real_value()), 0.0};
        const std::complex<double> zc = std::conj(pt.value());
        const double s = pt.value().imag() > 0.0 ? 1.0 : -1.0;
        return std::complex<double>(0.0, s) * p(zc) * weight(zc);
    }

    /**
     * Generic eps operator on an arbitrary integrand, rule-based:
     *   real p:  1/2 sum_i weights[i] f(nodes[i]) sgn(nodes[i] - p)
     *   pair  p: i f(conj p) sgn(Im p)
     * The sgn kink limits the real branch to rule resolution; polynomial
     * callers should go through epsilon_weighted_poly.
     */
    std::complex<double> epsilon(const std::function<std::complex<double>(std::complex<double>)>& f,
                                 const SpectralPoint& pt) const {
        if (!pt.is_real()) {
            const double s = pt.value().imag() > 0.0 ? 1.0 : -1.0;
            return std::complex<double>(0.0, s) * f(std::conj(pt.value()));
        }
        const double y = pt.real_value();
        std::complex<double> acc{};
        for (Eigen::Index i = 0; i < real_rule_.nodes.size(); ++i) {
            const double x = real_rule_.nodes[i];
            const double sg = (x > y) ? 1.0 : (x < y ? -1.0 : 0.0);
            acc += real_rule_.weights[i] * sg * f({x, 0.0});
        }
        return 0.5 * acc;
    }

    /**
     * Skew-symmetric bilinear form <f|g> = int (f eps g - g eps f) dnu over the
     * real and (if present) upper half-plane components. Exact inner half-signed
     * moments, smooth outer integrals.
     */
    double skew_form(const Polynomial& f, const Polynomial& g) const {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < real_rule_.nodes.size(); ++i) {
            const double x = real_rule_.nodes[i];
            acc += real_rule_.weights[i] *
                   (f(x) * epsilon_poly_real(g, x) - g(x) * epsilon_poly_real(f, x));
        }
        if (plane_rule_) {
            // +2i int_{C+} [f(b) g(conj b) - f(conj b) g(b)] rho2 dmu2, real for
            // real-coefficient polynomials
            double cacc = 0.0;
            for (std::size_t i = 0; i < plane_rule_->nodes.size(); ++i) {
                const std::complex<double> b = plane_rule_->nodes[i];
                cacc += plane_rule_->weights[static_cast<Eigen::Index>(i)] *
                        std::imag(f(b) * std::conj(g(b)));
            }
            acc += -4.0 * cacc;
        }
        return acc;
    }

    /// Generic-callable skew form; asserts the imaginary residue is below
    /// 1e-9 relative before discarding it.
    double skew_form(const std::function<std::complex<double>(std::complex<double>)>& f,
                     const std::function<std::complex<double>(std::complex<double>)>& g) const {
        std::complex<double> acc{};
        for (Eigen::Index i = 0; i < real_rule_.nodes.size(); ++i) {
            const SpectralPoint p = SpectralPoint::real(real_rule_.nodes[i]);
            acc += real_rule_.weights[i] *
                   (f(p.value()) * epsilon(g, p) - g(p.value()) * epsilon(f, p));
        }
        if (plane_rule_) {
            std::complex<double> cacc{};
            for (std::size_t i = 0; i < plane_rule_->nodes.size(); ++i) {
                const std::complex<double> b = plane_rule_->nodes[i];
                const std::complex<double> bc = std::conj(b);
                cacc += plane_rule_->weights[static_cast<Eigen::Index>(i)] *
                        (f(b) * g(bc) - f(bc) * g(b));
            }
            acc += std::complex<double>(0.0, 2.0) * cacc;
        }
        if (std::abs(acc.imag()) > 1e-9 * std::abs(acc))
            throw ConsistencyError("skew_form: imaginary residue above tolerance");
        return acc.real();
    }

    /// Scale used by degeneracy thresholds: largest moment magnitude in play.
    double degeneracy_scale(int n) const {
        double s = 0.0;
        for (int k = 0; k <= 2 * n; ++k) s = std::max(s, std::abs(moment(k)));
        return s;
    }

    /// n! for real-line ensembles (their partition function integrates the
    /// full cube); 1 for the sector-sum normalization of the asymmetric case.
    double partition_scale(int n) const {
        if (kind_ == WeightKind::real_asymmetric) return 1.0;
        double f = 1.0;
        for (int k = 2; k <= n; ++k) f *= static_cast<double>(k);
        return f;
    }

  private:
    WeightedMeasure() = default;

    static PlaneQuadratureRule make_plane_rule(int n_im) {
        const int n_re = (3 * n_im) / 2;
        const double ymax = detail::erfc_cutoff_im();
        const QuadratureRule ghx = gauss_hermite_phys(n_re);
        const QuadratureRule glu = gauss_legendre(n_im, 0.0, 1.0);

        PlaneQuadratureRule rule;
        rule.im_cutoff = ymax;
        rule.exact_degree = 2 * n_re - 1;
        const double c = 1.0 - std::exp(-ymax);
        for (Eigen::Index iy = 0; iy < glu.nodes.size(); ++iy) {
            // exponential-decay map u -> y concentrating nodes near the axis
            const double u = glu.nodes[iy];
            const double y = -std::log1p(-u * c);
            const double jac = c / (1.0 - u * c);
            const double gy = std::exp(y * y) * std::erfc(std::numbers::sqrt2 * y);
            const double wy = glu.weights[iy] * jac * gy;
            for (Eigen::Index ix = 0; ix < ghx.nodes.size(); ++ix) {
                rule.nodes.emplace_back(ghx.nodes[ix], y);
                rule.weights.conservativeResize(rule.weights.size() + 1);
                rule.weights[rule.weights.size() - 1] = ghx.weights[ix] * wy;
            }
        }
        return rule;
    }

    void check_conjugation_symmetry() const {
        if (kind_ != WeightKind::real_asymmetric) return;
        for (double x : {-1.7, 0.3, 2.1}) {
            for (double y : {0.4, 1.1, 2.9}) {
                const std::complex<double> b{x, y};
                const double d = complex_density(b);
                if (std::abs(d - complex_density(std::conj(b))) > 1e-12 * std::max(1.0, d))
                    throw ConsistencyError("weight: conjugation symmetry violated");
                const std::complex<double> wv = weight(b);
                if (std::abs(weight(std::conj(b)) - std::conj(wv)) > 1e-12 * std::abs(wv))
                    throw ConsistencyError("weight: conjugate evaluation inconsistent");
            }
        }
    }

    WeightKind kind_ = WeightKind::hermitian_beta1;
    QuadratureRule real_rule_;
    std::optional<PlaneQuadratureRule> plane_rule_;
    std::optional<detail::CubicSpline> spline_;
};

} // namespace pfkernel
