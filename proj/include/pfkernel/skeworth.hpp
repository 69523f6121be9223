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
#include "pfkernel/partition.hpp"
#include "pfkernel/pfaffian.hpp"
#include "pfkernel/polynomial.hpp"

namespace pfkernel {

/**
 * @brief Monic skew-orthogonal family for an odd-N measure.
 *
 * q_0..q_{N-1} are monic with deg q_k = k;
 *   <q_{2j} | q_{2j+1}> = r_j (j = 0..J, J = (N-3)/2), all other pairwise skew
 * products among q_0..q_{N-2} vanish, and q_{N-1} has vanishing skew product
 * against every lower member. s_k = int q_k dnu_1 are the border integrals.
 */
struct SkewOrthFamily {
    int n = 0;
    std::vector<Polynomial> q;
    Eigen::VectorXd r; ///< (N-1)/2 block normalizations
    Eigen::VectorXd s; ///< N border integrals
    WeightKind kind = WeightKind::hermitian_beta1;
    double partition_scale = 1.0;
    double degeneracy_scale = 1.0;
};

/**
 * @brief Skew Gram-Schmidt in degree order, pairing index 2j+1 against 2j.
 *
 * Each new polynomial is cleared against all completed (even, odd) pairs; the
 * gauge freedom within a pair is fixed by zeroing the coefficient of x^{2j} in
 * q_{2j+1}. A block normalization below 1e-10 * scale aborts with a
 * degeneracy error: the weight does not admit the family.
 */
inline SkewOrthFamily construct_family(const WeightedMeasure& m, int n,
                                       const std::vector<Polynomial>& start) {
    require_odd_n(n);
    require_monic_basis(start, n);
    const double scale = m.degeneracy_scale(n);

    SkewOrthFamily fam;
    fam.n = n;
    fam.kind = m.kind();
    fam.partition_scale = m.partition_scale(n);
    fam.degeneracy_scale = scale;
    fam.r.resize((n - 1) / 2);

    for (int deg = 0; deg < n; ++deg) {
        Polynomial v = start[static_cast<std::size_t>(deg)];
        const int pairs_done = deg / 2;
        for (int j = 0; j < pairs_done; ++j) {
            const Polynomial& q0 = fam.q[static_cast<std::size_t>(2 * j)];
            const Polynomial& q1 = fam.q[static_cast<std::size_t>(2 * j + 1)];
            const double a = m.skew_form(v, q1) / fam.r[j];
            const double b = -m.skew_form(v, q0) / fam.r[j];
            v.add_scaled(q0, -a);
            v.add_scaled(q1, -b);
        }
        if (deg % 2 == 1) {
            // gauge: no x^{deg-1} component in the odd member of the pair
            const Polynomial& q0 = fam.q.back();
            v.add_scaled(q0, -v.coeff(deg - 1));
            const double r = m.skew_form(q0, v);
            if (std::abs(r) < 1e-10 * scale)
                throw DegeneracyError("construct_family: vanishing block normalization r_" +
                                      std::to_string(deg / 2));
            fam.r[deg / 2] = r;
        }
        fam.q.push_back(v);
    }

    fam.s.resize(n);
    for (int k = 0; k < n; ++k) fam.s[k] = m.border_integral(fam.q[static_cast<std::size_t>(k)]);
    if (std::abs(fam.s[n - 1]) < 1e-10 * scale)
        throw DegeneracyError("construct_family: vanishing border integral s_{N-1}");
    return fam;
}

inline SkewOrthFamily construct_family(const WeightedMeasure& m, int n) {
    return construct_family(m, n, monomial_basis(n));
}

/// Partition function from the family data alone: scale * s_{N-1} prod r_j.
inline double z_from_rs(const SkewOrthFamily& f) {
    double prod = 1.0;
    for (Eigen::Index j = 0; j < f.r.size(); ++j) prod *= f.r[j];
    return f.partition_scale * f.s[f.n - 1] * prod;
}

/// The block display of W for a skew-orthogonal family: r-blocks on the
/// diagonal, the s border, zeros elsewhere.
inline Eigen::MatrixXd family_w(const SkewOrthFamily& f) {
    const int n = f.n;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (Eigen::Index j = 0; j < f.r.size(); ++j) {
        w(2 * j, 2 * j + 1) = f.r[j];
        w(2 * j + 1, 2 * j) = -f.r[j];
    }
    for (int k = 0; k < n; ++k) {
        w(k, n) = f.s[k];
        w(n, k) = -f.s[k];
    }
    return w;
}

/// Inverse transpose of W: c = (W)^{-T}, i.e. W^T c = I.
struct InverseMatrix {
    Eigen::MatrixXd c;
};

/**
 * @brief Closed-form inverse transpose of the family W, with an LU shadow check.
 *
 * Entry pattern (J = (N-3)/2):
 *   c(2j, 2m+1) = -c(2j+1, 2m) = delta_jm / r_j
 *   c(2j,  N-1) = -c(N-1, 2j)  = -s_{2j+1} / (r_j s_{N-1})
 *   c(2j+1,N-1) = -c(N-1,2j+1) =  s_{2j}   / (r_j s_{N-1})
 *   c(N-1, N)   = -c(N, N-1)   =  1 / s_{N-1}
 * A dense LU inversion of W^T is compared entrywise as a shadow check.
 */
inline InverseMatrix invert_w(const SkewOrthFamily& f) {
    const int n = f.n;
    const double scale = f.degeneracy_scale;
    for (Eigen::Index j = 0; j < f.r.size(); ++j)
        if (std::abs(f.r[j]) < 1e-10 * scale)
            throw DegeneracyError("invert_w: vanishing r_" + std::to_string(j));
    if (std::abs(f.s[n - 1]) < 1e-10 * scale)
        throw DegeneracyError("invert_w: vanishing s_{N-1}");

    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n + 1, n + 1);
    const double sN = f.s[n - 1];
    for (Eigen::Index j = 0; j < f.r.size(); ++j) {
        c(2 * j, 2 * j + 1) = 1.0 / f.r[j];
        c(2 * j + 1, 2 * j) = -1.0 / f.r[j];
        c(2 * j, n - 1) = -f.s[2 * j + 1] / (f.r[j] * sN);
        c(n - 1, 2 * j) = -c(2 * j, n - 1);
        c(2 * j + 1, n - 1) = f.s[2 * j] / (f.r[j] * sN);
        c(n - 1, 2 * j + 1) = -c(2 * j + 1, n - 1);
    }
    c(n - 1, n) = 1.0 / sN;
    c(n, n - 1) = -1.0 / sN;

    const Eigen::MatrixXd w = family_w(f);
    const Eigen::MatrixXd shadow = Eigen::PartialPivLU<Eigen::MatrixXd>(w.transpose()).inverse();
    const double gap = (c - shadow).cwiseAbs().maxCoeff();
    if (!shadow.allFinite() || gap > 1e-9 * std::max(1.0, c.cwiseAbs().maxCoeff()))
        throw ConsistencyError("invert_w: closed form disagrees with LU shadow inverse");
    return InverseMatrix{c};
}

} // namespace pfkernel
