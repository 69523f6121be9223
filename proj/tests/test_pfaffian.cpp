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

#include "pfkernel/pfaffian.hpp"

using namespace pfkernel;

namespace {

Eigen::MatrixXd random_skew(int n, std::mt19937_64& gen) {
    Eigen::MatrixXd m(n, n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = u(gen);
    return 0.5 * (m - m.transpose());
}

} // namespace

TEST_CASE("2x2 Pfaffian is the (1,2) entry", "[pfaffian]") {
    Eigen::MatrixXd m(2, 2);
    m << 0, 3, -3, 0;
    CHECK(pf(SkewMatrix(m)) == Catch::Approx(3.0).epsilon(1e-14));
    CHECK(pf_oracle(SkewMatrix(m)) == Catch::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("standard symplectic form has Pfaffian 1", "[pfaffian]") {
    for (int t : {1, 2, 3, 5}) CHECK(pf(SkewMatrix(standard_block_form(t))) == 1.0);
}

TEST_CASE("4x4 perfect-matching sum", "[pfaffian]") {
    Eigen::MatrixXd m(4, 4);
    m << 0, 1, 2, 3, -1, 0, 4, 5, -2, -4, 0, 6, -3, -5, -6, 0;
    // a12 a34 - a13 a24 + a14 a23 = 6 - 10 + 12 = 8
    CHECK(pf(SkewMatrix(m)) == Catch::Approx(8.0).epsilon(1e-14));
    CHECK(pf_oracle(SkewMatrix(m)) == Catch::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("empty and zero matrices", "[pfaffian]") {
    CHECK(pf(SkewMatrix(Eigen::MatrixXd::Zero(0, 0))) == 1.0);
    CHECK(pf(SkewMatrix(Eigen::MatrixXd::Zero(4, 4))) == 0.0);
    CHECK(pf_oracle(SkewMatrix(Eigen::MatrixXd::Zero(4, 4))) == 0.0);
}

TEST_CASE("odd dimension and non-finite entries are rejected", "[pfaffian]") {
    CHECK_THROWS_AS(pf(SkewMatrix(Eigen::MatrixXd::Zero(3, 3))), DimensionError);
    CHECK_THROWS_AS(pf_oracle(SkewMatrix(Eigen::MatrixXd::Zero(5, 5))), DimensionError);
    Eigen::MatrixXd bad(2, 2);
    bad << 0, std::numeric_limits<double>::quiet_NaN(), 0, 0;
    CHECK_THROWS_AS(SkewMatrix(bad), DomainError);
    CHECK_THROWS_AS(pf_oracle(SkewMatrix(Eigen::MatrixXd::Zero(14, 14))), SizeError);
}

TEST_CASE("constructor symmetrizes small asymmetry and rejects large", "[pfaffian]") {
    Eigen::MatrixXd m(2, 2);
    m << 0, 1.0, -1.0 + 5e-13, 2.5e-13;
    const SkewMatrix s(m);
    CHECK(s(0, 0) == 0.0);
    CHECK(s(0, 1) == -s(1, 0));
    Eigen::MatrixXd big(2, 2);
    big << 0, 1.0, -1.0 + 1e-6, 0;
    CHECK_THROWS_AS(SkewMatrix(big), DomainError);
}

TEST_CASE("elimination agrees with the matching oracle on dims 2..10", "[pfaffian]") {
    std::mt19937_64 gen(2024);
    for (int n = 2; n <= 10; n += 2) {
        for (int rep = 0; rep < 25; ++rep) {
            const SkewMatrix m(random_skew(n, gen));
            const double a = pf(m), b = pf_oracle(m);
            CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
        }
    }
}

TEST_CASE("Pfaffian squared equals the determinant", "[pfaffian]") {
    std::mt19937_64 gen(7);
    int count = 0;
    while (count < 500) {
        const int n = 2 * (1 + static_cast<int>(gen() % 6)); // 2..12
        const SkewMatrix m(random_skew(n, gen));
        const double p = pf(m);
        const double d = m.data().determinant();
        CHECK(std::abs(p * p - d) <= 1e-9 * std::max(1.0, std::abs(d)));
        ++count;
    }
}

TEST_CASE("row/column swap flips the sign", "[pfaffian]") {
    std::mt19937_64 gen(99);
    const SkewMatrix m(random_skew(6, gen));
    Eigen::MatrixXd sw = m.data();
    sw.row(1).swap(sw.row(4));
    sw.col(1).swap(sw.col(4));
    CHECK(pf(SkewMatrix(sw)) == Catch::Approx(-pf(m)).epsilon(1e-12));
}

TEST_CASE("scaling row and column i multiplies the Pfaffian by c", "[pfaffian]") {
    std::mt19937_64 gen(123);
    const SkewMatrix m(random_skew(8, gen));
    const double c = 2.75;
    Eigen::MatrixXd sc = m.data();
    sc.row(3) *= c;
    sc.col(3) *= c;
    CHECK(pf(SkewMatrix(sc)) == Catch::Approx(c * pf(m)).epsilon(1e-12));
}

TEST_CASE("minor expansion: trivial cases", "[pfaffian]") {
    const SkewMatrix j1(standard_block_form(1));
    CHECK(pf_minor_expansion(j1, SkewMatrix(Eigen::MatrixXd::Zero(2, 2))) == 1.0);
    Eigen::MatrixXd k(2, 2);
    k << 0, 0.7, -0.7, 0;
    CHECK(pf_minor_expansion(j1, SkewMatrix(k)) == Catch::Approx(1.7).epsilon(1e-14));
}

TEST_CASE("minor expansion equals Pf(J + K)", "[pfaffian]") {
    std::mt19937_64 gen(5);
    for (int t : {1, 2, 3, 4}) {
        for (int rep = 0; rep < 10; ++rep) {
            const SkewMatrix k(random_skew(2 * t, gen));
            const SkewMatrix j(standard_block_form(t));
            const double lhs = pf_minor_expansion(j, k);
            const double rhs = pf(SkewMatrix(j.data() + k.data()));
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("minor expansion input validation", "[pfaffian]") {
    std::mt19937_64 gen(6);
    CHECK_THROWS_AS(
        pf_minor_expansion(SkewMatrix(standard_block_form(2)), SkewMatrix(random_skew(6, gen))),
        DimensionError);
    CHECK_THROWS_AS(
        pf_minor_expansion(SkewMatrix(random_skew(4, gen)), SkewMatrix(random_skew(4, gen))),
        DomainError);
}
