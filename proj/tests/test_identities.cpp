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

#include <catch2/catch_amalgamated.hpp>

#include <limits>
#include <random>

#include "pfkernel/identities.hpp"

using namespace pfkernel;

namespace {

Eigen::MatrixXd random_mat(int r, int c, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = u(gen);
    return m;
}

SkewMatrix random_skew(int n, std::mt19937_64& gen) {
    const Eigen::MatrixXd m = random_mat(n, n, gen);
    return SkewMatrix(0.5 * (m - m.transpose()).eval());
}

} // namespace

TEST_CASE("det commutation: trivial anchors", "[identities]") {
    {
        const auto [lhs, rhs] =
            check_det_commutation(Eigen::MatrixXd::Zero(3, 5), Eigen::MatrixXd::Zero(5, 3));
        CHECK(lhs == 1.0);
        CHECK(rhs == 1.0);
    }
    {
        const auto [lhs, rhs] =
            check_det_commutation(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2));
        CHECK(lhs == 0.0);
        CHECK(rhs == 0.0);
    }
}

TEST_CASE("det commutation: seeded rectangular instance", "[identities]") {
    std::mt19937_64 gen(11);
    const auto a = random_mat(3, 5, gen);
    const auto b = random_mat(5, 3, gen);
    const auto [lhs, rhs] = check_det_commutation(a, b);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("det commutation: 200 random shape pairs", "[identities]") {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 200; ++trial) {
        const int t = 1 + static_cast<int>(gen() % 8);
        const int n = 1 + static_cast<int>(gen() % 8);
        const auto [lhs, rhs] = check_det_commutation(random_mat(t, n, gen), random_mat(n, t, gen));
        REQUIRE(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("det commutation rejects non-finite input", "[identities]") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(check_det_commutation(a, Eigen::MatrixXd::Zero(2, 2)), DomainError);
    CHECK_THROWS_AS(
        check_det_commutation(Eigen::MatrixXd::Zero(2, 3), Eigen::MatrixXd::Zero(2, 3)),
        DimensionError);
}

TEST_CASE("Pfaffian Cauchy-Binet: trivial anchors", "[identities]") {
    std::mt19937_64 gen(31);
    const SkewMatrix b = random_skew(4, gen);
    const SkewMatrix c = random_skew(6, gen);
    {
        const auto [lhs, rhs] = check_rains(Eigen::MatrixXd::Zero(6, 4), b, c);
        CHECK(lhs == Catch::Approx(1.0).margin(1e-12));
        CHECK(rhs == Catch::Approx(1.0).margin(1e-12));
    }
    {
        // identity embedding joining two standard block forms
        const SkewMatrix bj(standard_block_form(2));
        const SkewMatrix cj(standard_block_form(3));
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(6, 4);
        a.topLeftCorner(4, 4).setIdentity();
        const auto [lhs, rhs] = check_rains(a, bj, cj);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("Pfaffian Cauchy-Binet: seeded 6x4 instance", "[identities]") {
    std::mt19937_64 gen(41);
    const auto a = random_mat(6, 4, gen);
    const SkewMatrix b = random_skew(4, gen);
    const SkewMatrix c = random_skew(6, gen);
    const auto [lhs, rhs] = check_rains(a, b, c);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("Pfaffian Cauchy-Binet: 200 random instances", "[identities]") {
    std::mt19937_64 gen(51);
    int done = 0;
    int failures = 0;
    while (done < 200) {
        const int q = 2 * (1 + static_cast<int>(gen() % 5));
        const int p = 2 * (1 + static_cast<int>(gen() % 5));
        try {
            const auto [lhs, rhs] =
                check_rains(random_mat(p, q, gen), random_skew(q, gen), random_skew(p, gen));
            if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs))) ++failures;
            ++done;
        } catch (const SingularityError&) {
            // ill-conditioned draw; take the next one
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("odd-short a is zero-padded like the bordered construction", "[identities]") {
    std::mt19937_64 gen(61);
    const SkewMatrix b = random_skew(4, gen);
    const SkewMatrix c = random_skew(6, gen);
    const Eigen::MatrixXd a5 = random_mat(5, 4, gen);
    Eigen::MatrixXd a6 = Eigen::MatrixXd::Zero(6, 4);
    a6.topRows(5) = a5;
    const auto [l0, r0] = check_rains(a5, b, c);
    const auto [l1, r1] = check_rains(a6, b, c);
    CHECK(l0 == l1);
    CHECK(r0 == r1);
    CHECK_THROWS_AS(check_rains(random_mat(3, 4, gen), b, c), DimensionError);
}

TEST_CASE("singular skew forms are rejected", "[identities]") {
    std::mt19937_64 gen(71);
    const SkewMatrix zero(Eigen::MatrixXd::Zero(4, 4));
    CHECK_THROWS_AS(check_rains(random_mat(6, 4, gen), zero, random_skew(6, gen)),
                    SingularityError);
}

TEST_CASE("both sides invariant under a symplectic reparametrization", "[identities]") {
    std::mt19937_64 gen(81);
    int done = 0;
    while (done < 50) {
        const int tpairs = 1 + static_cast<int>(gen() % 3);
        const int q = 2 * tpairs;
        const int p = q + 2;
        const Eigen::MatrixXd j = standard_block_form(tpairs);
        Eigen::MatrixXd h = random_mat(q, q, gen);
        h = (0.25 * (h + h.transpose())).eval();
        Eigen::MatrixXd x = j * h;
        Eigen::MatrixXd qm = Eigen::MatrixXd::Identity(q, q), term = qm;
        for (int k = 1; k <= 24; ++k) {
            term = (term * x / static_cast<double>(k)).eval();
            qm += term;
        }
        REQUIRE((qm * j * qm.transpose() - j).cwiseAbs().maxCoeff() < 1e-12);
        try {
            const SkewMatrix b(j);
            const SkewMatrix c = random_skew(p, gen);
            const Eigen::MatrixXd a = random_mat(p, q, gen);
            const auto [l0, r0] = check_rains(a, b, c);
            const auto [l1, r1] = check_rains((a * qm).eval(), b, c);
            REQUIRE(std::abs(l0 - l1) <= 1e-8 * std::max(1.0, std::abs(l0)));
            REQUIRE(std::abs(r0 - r1) <= 1e-8 * std::max(1.0, std::abs(r0)));
            ++done;
        } catch (const SingularityError&) {
        }
    }
}
