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
#include <complex>
#include <utility>
#include <vector>

#include "pfkernel/errors.hpp"
#include "pfkernel/measures.hpp"
#include "pfkernel/partition.hpp"
#include "pfkernel/pfaffian.hpp"
#include "pfkernel/skeworth.hpp"

namespace pfkernel {

/// The four scalar entries of the 2x2 matrix kernel at a pair of spectral
/// points. sni is the smooth part; the assembled kernel adds 1/2 sgn(y - y')
/// to the sni slot for a pair of real points.
struct KernelEvaluation {
    std::complex<double> ds;
    std::complex<double> s;
    std::complex<double> s_swapped; ///< the transposed slot S(y', y)
    std::complex<double> sni;
    SpectralPoint y;
    SpectralPoint y2;
};

namespace detail {

using CVec = Eigen::VectorXcd;

inline std::complex<double> qtilde(const SkewOrthFamily& f, const WeightedMeasure& m, int k,
                                   std::complex<double> z) {
    return f.q[static_cast<std::size_t>(k)](z) * m.weight(z);
}

/// sqrt(2) * (qtilde_0(y), ..., qtilde_{N-1}(y), 0)
inline CVec col_value(const SkewOrthFamily& f, const WeightedMeasure& m, const SpectralPoint& pt) {
    CVec v = CVec::Zero(f.n + 1);
    for (int k = 0; k < f.n; ++k) v[k] = std::numbers::sqrt2 * qtilde(f, m, k, pt.value());
    return v;
}

/// sqrt(2) * (eps qtilde_0(y), ..., eps qtilde_{N-1}(y), 1/2 chi_R(y))
inline CVec col_eps(const SkewOrthFamily& f, const WeightedMeasure& m, const SpectralPoint& pt) {
    CVec v = CVec::Zero(f.n + 1);
    for (int k = 0; k < f.n; ++k)
        v[k] = std::numbers::sqrt2 * m.epsilon_weighted_poly(f.q[static_cast<std::size_t>(k)], pt);
    if (pt.is_real()) v[f.n] = std::numbers::sqrt2 * 0.5;
    return v;
}

/// sgn(y - y') for two real points, 0 whenever either is a pair representative.
inline double sgn_real(const SpectralPoint& a, const SpectralPoint& b) {
    if (!a.is_real() || !b.is_real()) return 0.0;
    const double d = a.real_value() - b.real_value();
    return d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
}

/// Per point, the two real-reduced columns of the correlation matrix: a real
/// point keeps its (value, eps) pair; a pair representative is replaced by
/// (sqrt2 Re, sqrt2 Im) of its value column, a determinant-one congruence
/// that keeps every entry real without changing the Pfaffian.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> reduced_columns(const SkewOrthFamily& f,
                                                                   const WeightedMeasure& m,
                                                                   const SpectralPoint& pt) {
    if (pt.is_real()) {
        const CVec a = col_value(f, m, pt);
        const CVec b = col_eps(f, m, pt);
        return {a.real(), b.real()};
    }
    const CVec a = col_value(f, m, pt);
    return {std::numbers::sqrt2 * a.real(), std::numbers::sqrt2 * a.imag()};
}

/// F^T C F with the 1/2 sgn correction on (eps, eps) slots of real point
/// pairs; the assembled matrix for correlation Pfaffians.
inline Eigen::MatrixXd correlation_matrix(const SkewOrthFamily& f, const InverseMatrix& c,
                                          const WeightedMeasure& m,
                                          const std::vector<SpectralPoint>& pts,
                                          const std::vector<double>& scales) {
    const int n = static_cast<int>(pts.size());
    Eigen::MatrixXd fcols(f.n + 1, 2 * n);
    for (int i = 0; i < n; ++i) {
        auto [u, v] = reduced_columns(f, m, pts[static_cast<std::size_t>(i)]);
        fcols.col(2 * i) = scales[static_cast<std::size_t>(i)] * u;
        fcols.col(2 * i + 1) = scales[static_cast<std::size_t>(i)] * v;
    }
    Eigen::MatrixXd mat = fcols.transpose() * c.c * fcols;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mat(2 * i + 1, 2 * j + 1) +=
                scales[static_cast<std::size_t>(i)] * scales[static_cast<std::size_t>(j)] * 0.5 *
                sgn_real(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
    const double asym = (mat + mat.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9)
        throw ConsistencyError("correlation matrix lost antisymmetry: " + std::to_string(asym));
    return 0.5 * (mat - mat.transpose());
}

} // namespace detail

/// The assembled perturbation matrices: A ((N+1) x 2T, complex for pair
/// points), the standard block form J, the sgn coupling E, and the perturbed
/// bordered matrix W.
struct TracyWidomMatrices {
    Eigen::MatrixXcd a;
    Eigen::MatrixXd j;
    Eigen::MatrixXd e;
    Eigen::MatrixXd w_perturbed;
};

/**
 * @brief Builds A, J, E for a point/coefficient configuration and the
 *        perturbed matrix W + A J A^T + A E A^T, verifying it against the
 *        directly assembled atomic-measure perturbation.
 */
inline TracyWidomMatrices assemble_tw_matrices(const WeightedMeasure& m, const SkewOrthFamily& f,
                                               const std::vector<SpectralPoint>& points,
                                               const std::vector<double>& c_vals) {
    const int t = static_cast<int>(points.size());
    if (t == 0 || t % 2 != 0) throw DimensionError("assemble_tw_matrices: need even T > 0");
    if (c_vals.size() != points.size())
        throw DimensionError("assemble_tw_matrices: one coefficient per point");
    for (double cv : c_vals)
        if (!(cv >= 0.0)) throw ConfigurationError("assemble_tw_matrices: coefficients must be >= 0");
    const int n = f.n;

    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n + 1, 2 * t);
    for (int tt = 0; tt < t; ++tt) {
        const double sc = std::sqrt(2.0 * c_vals[static_cast<std::size_t>(tt)]);
        const detail::CVec av = detail::col_value(f, m, points[static_cast<std::size_t>(tt)]);
        const detail::CVec bv = detail::col_eps(f, m, points[static_cast<std::size_t>(tt)]);
        // col_value/col_eps already carry sqrt(2); rescale to sqrt(2 c_t) and
        // chi_R sqrt(c_t/2) on the border slot
        a.col(2 * tt) = (sc / std::numbers::sqrt2) * av;
        a.col(2 * tt + 1) = (sc / std::numbers::sqrt2) * bv;
    }

    const Eigen::MatrixXd j = standard_block_form(t);
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(2 * t, 2 * t);
    for (int tt = 0; tt < t; ++tt)
        for (int uu = 0; uu < t; ++uu)
            e(2 * tt, 2 * uu) =
                0.5 *
                std::sqrt(c_vals[static_cast<std::size_t>(tt)] * c_vals[static_cast<std::size_t>(uu)]) *
                detail::sgn_real(points[static_cast<std::size_t>(uu)],
                                 points[static_cast<std::size_t>(tt)]);

    const Eigen::MatrixXcd pm = a * j.cast<std::complex<double>>() * a.transpose() +
                                a * e.cast<std::complex<double>>() * a.transpose();
    if (pm.imag().cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, pm.cwiseAbs().maxCoeff()))
        throw ConsistencyError("assemble_tw_matrices: perturbation has imaginary residue");
    const Eigen::MatrixXd pmat = pm.real();

    // direct assembly of the same perturbation from the atomic measure
    Eigen::MatrixXd pdir = Eigen::MatrixXd::Zero(n + 1, n + 1);
    std::vector<detail::CVec> qv(points.size()), qe(points.size());
    for (std::size_t tt = 0; tt < points.size(); ++tt) {
        qv[tt] = detail::col_value(f, m, points[tt]) / std::numbers::sqrt2;
        qe[tt] = detail::col_eps(f, m, points[tt]) / std::numbers::sqrt2;
    }
    for (int jj = 0; jj < n; ++jj)
        for (int kk = jj + 1; kk < n; ++kk) {
            std::complex<double> acc{};
            for (std::size_t tt = 0; tt < points.size(); ++tt)
                acc += 2.0 * c_vals[tt] * (qv[tt][jj] * qe[tt][kk] - qv[tt][kk] * qe[tt][jj]);
            for (std::size_t tt = 0; tt < points.size(); ++tt)
                for (std::size_t uu = 0; uu < points.size(); ++uu)
                    acc += c_vals[tt] * c_vals[uu] * qv[tt][jj] * qv[uu][kk] *
                           detail::sgn_real(points[uu], points[tt]);
            pdir(jj, kk) = acc.real();
            pdir(kk, jj) = -acc.real();
        }
    for (int jj = 0; jj < n; ++jj) {
        double acc = 0.0;
        for (std::size_t tt = 0; tt < points.size(); ++tt)
            if (points[tt].is_real()) acc += c_vals[tt] * qv[tt][jj].real();
        pdir(jj, n) += acc;
        pdir(n, jj) -= acc;
    }
    const double scale = std::max(1.0, pdir.cwiseAbs().maxCoeff());
    if ((pmat - pdir).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw ConsistencyError("assemble_tw_matrices: matrix-product and direct assemblies disagree");

    Eigen::MatrixXd wp = family_w(f) + pmat;
    wp = 0.5 * (wp - wp.transpose()).eval();
    return TracyWidomMatrices{std::move(a), j, std::move(e), std::move(wp)};
}

/**
 * @brief Kernel entries DS, S, S(y',y), SNI via the block-inverse sums over
 *        the skew-orthogonal family.
 */
inline KernelEvaluation kernel_entries(const SkewOrthFamily& f, const InverseMatrix&,
                                       const WeightedMeasure& m, const SpectralPoint& y,
                                       const SpectralPoint& y2) {
    using C = std::complex<double>;
    const int n = f.n;
    const int jmax = (n - 3) / 2;
    const double sN = f.s[n - 1];

    // evaluate qtilde / eps qtilde once per point
    std::vector<C> qy(static_cast<std::size_t>(n)), qy2(static_cast<std::size_t>(n));
    std::vector<C> ey(static_cast<std::size_t>(n)), ey2(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        qy[static_cast<std::size_t>(k)] = detail::qtilde(f, m, k, y.value());
        qy2[static_cast<std::size_t>(k)] = detail::qtilde(f, m, k, y2.value());
        ey[static_cast<std::size_t>(k)] = m.epsilon_weighted_poly(f.q[static_cast<std::size_t>(k)], y);
        ey2[static_cast<std::size_t>(k)] = m.epsilon_weighted_poly(f.q[static_cast<std::size_t>(k)], y2);
    }
    const double chi_y = y.is_real() ? 1.0 : 0.0;
    const double chi_y2 = y2.is_real() ? 1.0 : 0.0;

    auto block_sums = [&](const std::vector<C>& fy, const std::vector<C>& gy2) {
        // pair = sum_j [f_{2j}(y) g_{2j+1}(y') - f_{2j+1}(y) g_{2j}(y')] / r_j
        // sy'  = sum_j [s_{2j+1} g_{2j}(y') - s_{2j} g_{2j+1}(y')] / r_j
        // sy   = sum_j [s_{2j} f_{2j+1}(y) - s_{2j+1} f_{2j}(y)] / r_j
        C pair{}, border_y2{}, border_y{};
        for (int j = 0; j <= jmax; ++j) {
            const double r = f.r[j];
            const std::size_t e0 = static_cast<std::size_t>(2 * j);
            const std::size_t e1 = static_cast<std::size_t>(2 * j + 1);
            pair += (fy[e0] * gy2[e1] - fy[e1] * gy2[e0]) / r;
            border_y2 += (f.s[2 * j + 1] * gy2[e0] - f.s[2 * j] * gy2[e1]) / r;
            border_y += (f.s[2 * j] * fy[e1] - f.s[2 * j + 1] * fy[e0]) / r;
        }
        return std::array<C, 3>{pair, border_y2, border_y};
    };

    const std::size_t last = static_cast<std::size_t>(n - 1);

    const auto dsum = block_sums(qy, qy2);
    const C ds = 2.0 * dsum[0] + (2.0 * qy[last] / sN) * dsum[1] + (2.0 * qy2[last] / sN) * dsum[2];

    const auto ssum = block_sums(qy, ey2);
    const C s = 2.0 * ssum[0] + (2.0 * qy[last] / sN) * ssum[1] + (2.0 * ey2[last] / sN) * ssum[2] +
                qy[last] * chi_y2 / sN;

    const auto ssum_swapped = block_sums(qy2, ey);
    const C s_swapped = 2.0 * ssum_swapped[0] + (2.0 * qy2[last] / sN) * ssum_swapped[1] +
                        (2.0 * ey[last] / sN) * ssum_swapped[2] + qy2[last] * chi_y / sN;

    const auto isum = block_sums(ey, ey2);
    const C sni = 2.0 * isum[0] + (2.0 * ey[last] / sN) * isum[1] + (2.0 * ey2[last] / sN) * isum[2] +
                  (ey[last] * chi_y2 - ey2[last] * chi_y) / sN;

    return KernelEvaluation{ds, s, s_swapped, sni, y, y2};
}

/**
 * @brief Generic kernel entries from an arbitrary monic basis: the bordered
 *        matrix is built by quadrature and inverted by dense LU. Oracle for
 *        the block-inverse path and for basis independence.
 */
inline KernelEvaluation kernel_entries_generic(const std::vector<Polynomial>& basis,
                                               const WeightedMeasure& m, int n,
                                               const SpectralPoint& y, const SpectralPoint& y2) {
    const MomentMatrices mm = build_moment_matrices(m, basis, n);
    const Eigen::MatrixXd cgen =
        Eigen::PartialPivLU<Eigen::MatrixXd>(mm.w.data().transpose()).inverse();
    if (!cgen.allFinite()) throw SingularityError("kernel_entries_generic: singular W");

    using C = std::complex<double>;
    auto avec = [&](const SpectralPoint& pt) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n + 1);
        for (int k = 0; k < n; ++k)
            v[k] = std::numbers::sqrt2 * basis[static_cast<std::size_t>(k)](pt.value()) *
                   m.weight(pt.value());
        return v;
    };
    auto bvec = [&](const SpectralPoint& pt) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n + 1);
        for (int k = 0; k < n; ++k)
            v[k] = std::numbers::sqrt2 *
                   m.epsilon_weighted_poly(basis[static_cast<std::size_t>(k)], pt);
        if (pt.is_real()) v[n] = std::numbers::sqrt2 * 0.5;
        return v;
    };
    const Eigen::VectorXcd ay = avec(y), ay2 = avec(y2), by = bvec(y), by2 = bvec(y2);
    auto quad = [&cgen, n](const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
        C acc{};
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) acc += u[i] * cgen(i, j) * v[j];
        return acc;
    };
    return KernelEvaluation{quad(ay, ay2), quad(ay, by2), quad(ay2, by), quad(by, by2), y, y2};
}

/**
 * @brief n-point correlation of the real-line ensemble: the Pfaffian of the
 *        2n x 2n kernel block matrix at real points.
 */
inline double correlation_hermitian(const SkewOrthFamily& f, const InverseMatrix& c,
                                    const WeightedMeasure& m,
                                    const std::vector<SpectralPoint>& points) {
    if (points.empty()) throw DimensionError("correlation_hermitian: need at least one point");
    for (const auto& p : points)
        if (!p.is_real()) throw ConfigurationError("correlation_hermitian: points must be real");
    const std::vector<double> ones(points.size(), 1.0);
    const double val = pf(SkewMatrix(detail::correlation_matrix(f, c, m, points, ones)));
    if (val < -1e-9) throw ConsistencyError("correlation_hermitian: negative intensity");
    return val;
}

/**
 * @brief (l, m)-correlation of the real-asymmetric ensemble: l real points and
 *        m conjugate-pair representatives. Block order is all real points
 *        first, then all pairs, each in input order.
 */
inline double correlation_asymmetric(const SkewOrthFamily& f, const InverseMatrix& c,
                                     const WeightedMeasure& m, const std::vector<double>& x,
                                     const std::vector<std::complex<double>>& z) {
    const int l = static_cast<int>(x.size());
    const int mm = static_cast<int>(z.size());
    if (l + 2 * mm > f.n)
        throw DimensionError("correlation_asymmetric: need l + 2m <= N");
    if (l + mm == 0) throw DimensionError("correlation_asymmetric: need at least one point");
    std::vector<SpectralPoint> pts;
    pts.reserve(x.size() + z.size());
    for (double xv : x) pts.push_back(SpectralPoint::real(xv));
    for (std::complex<double> zv : z) pts.push_back(SpectralPoint::pair(zv));
    const std::vector<double> ones(pts.size(), 1.0);
    const double val = pf(SkewMatrix(detail::correlation_matrix(f, c, m, pts, ones)));
    if (val < -1e-8) throw ConsistencyError("correlation_asymmetric: negative intensity");
    return val;
}

/**
 * @brief End-to-end generating-function identity: the perturbed Pfaffian ratio
 *        (lhs) against Pf(J + K) built from the kernel (rhs).
 */
inline std::pair<double, double> generating_check(const WeightedMeasure& m,
                                                  const SkewOrthFamily& f, const InverseMatrix& c,
                                                  const std::vector<SpectralPoint>& points,
                                                  const std::vector<double>& c_vals) {
    const int t = static_cast<int>(points.size());
    if (t == 0 || t % 2 != 0 || t > 8) throw DimensionError("generating_check: need even T in [2, 8]");

    const TracyWidomMatrices tw = assemble_tw_matrices(m, f, points, c_vals);
    const double lhs = pf(SkewMatrix(tw.w_perturbed)) / pf(SkewMatrix(family_w(f)));

    std::vector<double> scales(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) scales[i] = std::sqrt(c_vals[i]);
    const Eigen::MatrixXd k = detail::correlation_matrix(f, c, m, points, scales);
    const double rhs = pf(SkewMatrix(standard_block_form(t) + k));
    return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// brute-force correlation oracles (desk scale, N <= 3)
// ---------------------------------------------------------------------------

namespace detail {

/// iint_{x1<x2} |(x1-y)(x2-y)| (x2-x1) w(x1) w(x2), split at y into three
/// smooth sign regions, nested Gauss-Legendre.
template <typename W>
double ordered_pair_integral(double y, W&& w, double lo, double hi, int nodes) {
    const QuadratureRule ref = gauss_legendre(nodes, 0.0, 1.0);
    auto inner = [&](double a, double b, auto&& g) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < ref.nodes.size(); ++i)
            acc += ref.weights[i] * (b - a) * g(a + (b - a) * ref.nodes[i]);
        return acc;
    };
    // x1 < x2 < y
    const double ra = inner(lo, y, [&](double x1) {
        return w(x1) * inner(x1, y, [&](double x2) {
            return (y - x1) * (y - x2) * (x2 - x1) * w(x2);
        });
    });
    // x1 < y < x2
    const double rb = inner(lo, y, [&](double x1) {
        return w(x1) * inner(y, hi, [&](double x2) {
            return (y - x1) * (x2 - y) * (x2 - x1) * w(x2);
        });
    });
    // y < x1 < x2
    const double rc = inner(y, hi, [&](double x1) {
        return w(x1) * inner(x1, hi, [&](double x2) {
            return (x1 - y) * (x2 - y) * (x2 - x1) * w(x2);
        });
    });
    return ra + rb + rc;
}

/// int_{C+} |Delta(x, b, conj b)| rho2(b) dmu2 = int |b - x|^2 2 Im(b) rho2.
inline double mixed_pair_integral(const WeightedMeasure& m, double x, int nx = 200, int ny = 128) {
    const double ymax = erfc_cutoff_im();
    const QuadratureRule rx = gauss_legendre(nx, -7.5, 7.5);
    const QuadratureRule ry = gauss_legendre(ny, 0.0, ymax);
    double acc = 0.0;
    for (Eigen::Index iy = 0; iy < ry.nodes.size(); ++iy) {
        const double yy = ry.nodes[iy];
        double ax = 0.0;
        for (Eigen::Index ix = 0; ix < rx.nodes.size(); ++ix) {
            const double xx = rx.nodes[ix];
            const double d2 = (xx - x) * (xx - x) + yy * yy;
            ax += rx.weights[ix] * d2 * m.complex_density({xx, yy});
        }
        acc += ry.weights[iy] * 2.0 * yy * ax;
    }
    return acc;
}

} // namespace detail

/// One-point intensity of the real-line ensemble by direct marginal
/// quadrature of the joint density (N = 1 or 3).
inline double r1_hermitian_bruteforce(const WeightedMeasure& m, int n, double y, int nodes = 160) {
    require_odd_n(n);
    if (n > 3) throw SizeError("r1_hermitian_bruteforce: N capped at 3");
    if (m.kind() == WeightKind::real_asymmetric)
        throw ConfigurationError("r1_hermitian_bruteforce: real-line measures only");
    const double z = z_bruteforce(m, n);
    if (n == 1) return m.real_weight(y) / z;
    double lo = -13.0, hi = 13.0;
    if (m.kind() == WeightKind::custom) {
        lo = m.real_rule().nodes.minCoeff();
        hi = m.real_rule().nodes.maxCoeff();
    }
    auto w = [&m](double x) { return m.real_weight(x); };
    const double tot = detail::ordered_pair_integral(y, w, lo, hi, nodes);
    return 6.0 * m.real_weight(y) * tot / z;
}

/// Real one-point intensity of the asymmetric ensemble by sector-sum marginal
/// quadrature (N = 3).
inline double r10_bruteforce(const WeightedMeasure& m, int n, double x, int nodes = 160) {
    if (m.kind() != WeightKind::real_asymmetric)
        throw ConfigurationError("r10_bruteforce: real-asymmetric measure required");
    if (n != 3) throw SizeError("r10_bruteforce: N = 3 only");
    const double z = z_bruteforce(m, n);
    auto w = [&m](double v) { return m.real_weight(v); };
    const double real_sector = detail::ordered_pair_integral(x, w, -13.0, 13.0, nodes);
    const double mixed_sector = detail::mixed_pair_integral(m, x);
    return m.real_weight(x) * (real_sector + 2.0 * mixed_sector) / z;
}

/// Pair intensity of the asymmetric ensemble by sector marginal quadrature
/// (N = 3): (2 rho2(z)/Z) int |z - a|^2 2 Im(z) w(a) da.
inline double r01_bruteforce(const WeightedMeasure& m, int n, std::complex<double> z,
                             int nodes = 400) {
    if (m.kind() != WeightKind::real_asymmetric)
        throw ConfigurationError("r01_bruteforce: real-asymmetric measure required");
    if (n != 3) throw SizeError("r01_bruteforce: N = 3 only");
    if (z.imag() < 0.0) z = std::conj(z);
    const double zc = z_bruteforce(m, n);
    const QuadratureRule ra = gauss_legendre(nodes, -13.0, 13.0);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < ra.nodes.size(); ++i) {
        const double a = ra.nodes[i];
        acc += ra.weights[i] * std::norm(z - a) * m.real_weight(a);
    }
    return 2.0 * m.complex_density(z) * 2.0 * z.imag() * acc / zc;
}

} // namespace pfkernel
