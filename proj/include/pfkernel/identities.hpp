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
#include <utility>

#include "pfkernel/errors.hpp"
#include "pfkernel/pfaffian.hpp"

namespace pfkernel {

/**
 * @brief Sylvester-style determinant commutation: both sides of
 *        det(I_T - a b) = det(I_N - b a) for a T x N, b N x T.
 *
 * Returns (lhs, rhs); the caller asserts their agreement.
 */
inline std::pair<double, double> check_det_commutation(const Eigen::MatrixXd& a,
                                                       const Eigen::MatrixXd& b) {
    if (a.rows() != b.cols() || a.cols() != b.rows())
        throw DimensionError("check_det_commutation: a must be T x N and b N x T");
    if (!a.allFinite() || !b.allFinite())
        throw DomainError("check_det_commutation: non-finite entry");
    const Eigen::Index t = a.rows(), n = a.cols();
    const double lhs = (Eigen::MatrixXd::Identity(t, t) - a * b).determinant();
    const double rhs = (Eigen::MatrixXd::Identity(n, n) - b * a).determinant();
    return {lhs, rhs};
}

namespace detail {

/// Inverse transpose of an invertible antisymmetric matrix, with a condition
/// guard at 1e12. The result is antisymmetrized to absorb solver rounding.
inline SkewMatrix skew_inverse_transpose(const SkewMatrix& m) {
    if (m.dim() % 2 != 0)
        throw DimensionError("skew inverse: odd-dimensional antisymmetric matrices are singular");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m.data());
    const Eigen::MatrixXd inv = lu.inverse();
    const double cond = m.data().cwiseAbs().rowwise().sum().maxCoeff() *
                        inv.cwiseAbs().rowwise().sum().maxCoeff();
    if (!inv.allFinite() || cond > 1e12)
        throw SingularityError("antisymmetric matrix is numerically singular (cond > 1e12)");
    Eigen::MatrixXd it = inv.transpose();
    it = 0.5 * (it - it.transpose()).eval();
    return SkewMatrix(it);
}

} // namespace detail

/**
 * @brief Pfaffian Cauchy-Binet identity: evaluates
 *          lhs = Pf(c^{-T} - a b a^T) / Pf(c^{-T})
 *          rhs = Pf(b^{-T} - a^T c a) / Pf(b^{-T})
 *        for a rectangular a joining two even-dimensional invertible skew
 *        forms b (columns side) and c (rows side).
 *
 * If a is one row (column) short of c (b), it is padded internally with a zero
 * row (column), which is how an odd polynomial count is bordered into an
 * even-dimensional skew form.
 */
inline std::pair<double, double> check_rains(const Eigen::MatrixXd& a_in, const SkewMatrix& b,
                                             const SkewMatrix& c) {
    if (!a_in.allFinite()) throw DomainError("check_rains: non-finite entry");
    Eigen::MatrixXd a = a_in;
    if (a.rows() + 1 == c.dim()) {
        a.conservativeResize(a.rows() + 1, Eigen::NoChange);
        a.row(a.rows() - 1).setZero();
    }
    if (a.cols() + 1 == b.dim()) {
        a.conservativeResize(Eigen::NoChange, a.cols() + 1);
        a.col(a.cols() - 1).setZero();
    }
    if (a.rows() != c.dim() || a.cols() != b.dim())
        throw DimensionError("check_rains: a must be dim(c) x dim(b), up to one zero pad");

    const SkewMatrix cit = detail::skew_inverse_transpose(c);
    const SkewMatrix bit = detail::skew_inverse_transpose(b);
    const double pf_cit = pf(cit);
    const double pf_bit = pf(bit);
    if (pf_cit == 0.0 || pf_bit == 0.0)
        throw SingularityError("check_rains: vanishing Pfaffian of an inverse transpose");

    Eigen::MatrixXd lam = cit.data() - a * b.data() * a.transpose();
    lam = 0.5 * (lam - lam.transpose()).eval();
    Eigen::MatrixXd ram = bit.data() - a.transpose() * c.data() * a;
    ram = 0.5 * (ram - ram.transpose()).eval();
    const double lhs = pf(SkewMatrix(lam)) / pf_cit;
    const double rhs = pf(SkewMatrix(ram)) / pf_bit;
    return {lhs, rhs};
}

} // namespace pfkernel
