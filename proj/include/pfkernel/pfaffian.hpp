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
#include <cstdint>
#include <vector>

#include "pfkernel/errors.hpp"

namespace pfkernel {

/**
 * @brief Dense real antisymmetric matrix.
 *
 * The constructor verifies antisymmetry to absolute tolerance 1e-12 and then
 * stores the antisymmetrized matrix (M - M^T)/2, which absorbs assembly
 * rounding. Odd dimensions are valid as a container; only the Pfaffian
 * requires an even dimension.
 */
class SkewMatrix {
  public:
    static constexpr double kAsymmetryTol = 1e-12;

    explicit SkewMatrix(const Eigen::MatrixXd& m) {
        if (m.rows() != m.cols()) throw DimensionError("SkewMatrix: matrix must be square");
        if (m.size() == 0) {
            m_ = m;
            return;
        }
        if (!m.allFinite()) throw DomainError("SkewMatrix: non-finite entry");
        const double asym = (m + m.transpose()).cwiseAbs().maxCoeff();
        if (asym > kAsymmetryTol)
            throw DomainError("SkewMatrix: antisymmetry violated beyond 1e-12, max |M+M^T| = " +
                              std::to_string(asym));
        m_ = 0.5 * (m - m.transpose());
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXd& data() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

  private:
    Eigen::MatrixXd m_;
};

namespace detail {

/// Parlett-Reid skew-symmetric elimination with partial pivoting, O(n^3).
/// Destroys its argument. Assumes even dimension and finite entries.
inline double pfaffian_inplace(Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    if (n == 0) return 1.0;
    const double matmax = a.cwiseAbs().maxCoeff();
    if (matmax == 0.0) return 0.0;
    const double pivot_floor = 1e-14 * matmax;

    double result = 1.0;
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        // largest subdiagonal pivot in column k
        Eigen::Index kp = k + 1;
        for (Eigen::Index i = k + 2; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(kp, k))) kp = i;

        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            result = -result;
        }

        const double pivot = a(k, k + 1);
        if (std::abs(pivot) <= pivot_floor) return 0.0; // numerically singular, Pf vanishes
        result *= pivot;

        if (k + 2 < n) {
            const Eigen::Index r = n - (k + 2);
            const Eigen::VectorXd tau = a.row(k).segment(k + 2, r) / pivot;
            const Eigen::VectorXd col = a.col(k + 1).segment(k + 2, r);
            a.block(k + 2, k + 2, r, r).noalias() += tau * col.transpose();
            a.block(k + 2, k + 2, r, r).noalias() -= col * tau.transpose();
        }
    }
    return result;
}

} // namespace detail

/**
 * @brief Pfaffian of an even-dimensional antisymmetric matrix.
 *
 * Skew-symmetric Gaussian elimination (Parlett-Reid) with partial pivoting;
 * each row/column swap flips the sign. Pf of the empty matrix is 1.
 */
inline double pf(const SkewMatrix& m) {
    if (m.dim() % 2 != 0) throw DimensionError("pf: dimension must be even");
    Eigen::MatrixXd work = m.data();
    return detail::pfaffian_inplace(work);
}

/**
 * @brief Pfaffian by recursive first-row expansion over perfect matchings.
 *
 * Independent combinatorial oracle, exact up to floating rounding. The sum has
 * (dim-1)!! terms, so the dimension is capped at 12.
 */
inline double pf_oracle(const SkewMatrix& m) {
    if (m.dim() % 2 != 0) throw DimensionError("pf_oracle: dimension must be even");
    if (m.dim() > 12) throw SizeError("pf_oracle: dimension capped at 12");
    const Eigen::MatrixXd& a = m.data();

    std::vector<int> idx(static_cast<std::size_t>(m.dim()));
    for (int i = 0; i < m.dim(); ++i) idx[static_cast<std::size_t>(i)] = i;

    // Pf(A) = sum_j (-1)^j a(i0, ij) Pf(A with rows/cols i0, ij removed)
    auto rec = [&a](auto&& self, const std::vector<int>& ix) -> double {
        if (ix.empty()) return 1.0;
        const int i0 = ix[0];
        double total = 0.0;
        double sign = 1.0;
        for (std::size_t j = 1; j < ix.size(); ++j) {
            std::vector<int> rest;
            rest.reserve(ix.size() - 2);
            for (std::size_t t = 1; t < ix.size(); ++t)
                if (t != j) rest.push_back(ix[t]);
            total += sign * a(i0, ix[j]) * self(self, rest);
            sign = -sign;
        }
        return total;
    };
    return rec(rec, idx);
}

/// The standard 2T x 2T symplectic block form diag([[0,1],[-1,0]], ...).
inline Eigen::MatrixXd standard_block_form(int t) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * t, 2 * t);
    for (int i = 0; i < t; ++i) {
        j(2 * i, 2 * i + 1) = 1.0;
        j(2 * i + 1, 2 * i) = -1.0;
    }
    return j;
}

/**
 * @brief Minor expansion of Pf(J + K) over 2x2 block minors.
 *
 * Returns 1 + sum over all nonempty strictly increasing block index sets t of
 * Pf of the corresponding 2n x 2n minor of k. Requires j to be the standard
 * block form.
 */
inline double pf_minor_expansion(const SkewMatrix& j, const SkewMatrix& k) {
    if (j.dim() != k.dim()) throw DimensionError("pf_minor_expansion: dimension mismatch");
    if (j.dim() % 2 != 0) throw DimensionError("pf_minor_expansion: dimension must be even");
    const int t = j.dim() / 2;
    if (t > 12) throw SizeError("pf_minor_expansion: 2^T subsets, T capped at 12");
    if ((j.data() - standard_block_form(t)).cwiseAbs().maxCoeff() > 1e-12)
        throw DomainError("pf_minor_expansion: first argument must be the standard block form");

    double total = 1.0;
    for (std::uint32_t mask = 1; mask < (1u << t); ++mask) {
        std::vector<int> blocks;
        for (int b = 0; b < t; ++b)
            if (mask & (1u << b)) blocks.push_back(b);
        const int n = static_cast<int>(blocks.size());
        Eigen::MatrixXd minor(2 * n, 2 * n);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                minor.block<2, 2>(2 * p, 2 * q) =
                    k.data().block<2, 2>(2 * blocks[static_cast<std::size_t>(p)],
                                         2 * blocks[static_cast<std::size_t>(q)]);
        total += detail::pfaffian_inplace(minor);
    }
    return total;
}

} // namespace pfkernel
