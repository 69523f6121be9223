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
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pfkernel/errors.hpp"

namespace pfkernel {

/**
 * @brief Reproducible normal-variate stream.
 *
 * Generator: std::mt19937_64 (bit-exact across platforms by the standard).
 * Uniforms: ((x >> 11) + 1) * 2^-53 in (0, 1] and (x >> 11) * 2^-53 in [0, 1).
 * Normals: Box-Muller, both variates consumed in order (cos first, sin second).
 */
class NormalStream {
  public:
    explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

    double uniform_open() { return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53; }
    double uniform_half_open() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform_half_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64 step; chunk k of a master seed uses the (k+1)-th output.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t chunk_seed(std::uint64_t master, std::uint64_t chunk_index) {
    std::uint64_t s = master;
    std::uint64_t out = 0;
    for (std::uint64_t i = 0; i <= chunk_index; ++i) out = splitmix64_next(s);
    return out;
}

/// Eigenvalues of one matrix draw: sorted reals plus upper half-plane pair
/// representatives.
struct SpectralSample {
    std::vector<double> reals;
    std::vector<std::complex<double>> pairs;
};

namespace detail {

constexpr double kClassifyRel = 1e-9;

/// Classify eigenvalues of a real matrix into reals and conjugate pairs.
/// Threshold |Im| <= 1e-9 (1 + |lambda|); pairs matched greedily by conjugate
/// distance.
inline SpectralSample classify_spectrum(const Eigen::VectorXcd& ev, int n, std::uint64_t seed) {
    SpectralSample out;
    std::vector<std::complex<double>> complexes;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const std::complex<double> v = ev[i];
        if (std::abs(v.imag()) <= kClassifyRel * (1.0 + std::abs(v)))
            out.reals.push_back(v.real());
        else
            complexes.push_back(v);
    }
    std::vector<std::complex<double>> uppers, lowers;
    for (const auto& v : complexes) (v.imag() > 0.0 ? uppers : lowers).push_back(v);
    if (uppers.size() != lowers.size())
        throw NumericError("spectrum classification failed (unpaired complex eigenvalue), seed " +
                           std::to_string(seed));
    std::vector<bool> used(lowers.size(), false);
    for (const auto& u : uppers) {
        double best = 0.0;
        std::size_t bi = lowers.size();
        for (std::size_t j = 0; j < lowers.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(std::conj(u) - lowers[j]);
            if (bi == lowers.size() || d < best) {
                best = d;
                bi = j;
            }
        }
        used[bi] = true;
        out.pairs.push_back(u);
    }
    if (static_cast<int>(out.reals.size()) + 2 * static_cast<int>(out.pairs.size()) != n)
        throw NumericError("spectrum classification lost eigenvalues, seed " + std::to_string(seed));
    std::sort(out.reals.begin(), out.reals.end());
    std::sort(out.pairs.begin(), out.pairs.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

} // namespace detail

/**
 * @brief One GOE-type draw: G iid standard normal (row-major entry order),
 *        symmetrized as (G + G^T)/2, eigenvalues all real.
 *
 * Diagonal variance 1, off-diagonal 1/2, so the joint eigenvalue density is
 * proportional to prod e^{-l^2/2} |Delta(l)|.
 */
inline SpectralSample sample_goe(int n, std::uint64_t seed) {
    if (n < 1) throw ConfigurationError("sample_goe: need n >= 1");
    NormalStream rng(seed);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
    const Eigen::MatrixXd a = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success)
        throw NumericError("sample_goe: eigensolver failed, seed " + std::to_string(seed));
    SpectralSample out;
    out.reals.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(out.reals.begin(), out.reals.end());
    return out;
}

/// One real Ginibre draw: n x n iid standard normal entries (row-major order),
/// eigenvalues split into reals and conjugate-pair representatives.
inline SpectralSample sample_ginibre_real(int n, std::uint64_t seed) {
    if (n < 1) throw ConfigurationError("sample_ginibre_real: need n >= 1");
    NormalStream rng(seed);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
    Eigen::EigenSolver<Eigen::MatrixXd> es(g, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericError("sample_ginibre_real: eigensolver failed, seed " + std::to_string(seed));
    return detail::classify_spectrum(es.eigenvalues(), n, seed);
}

enum class Ensemble { goe, ginibre_real };

/**
 * @brief Draw `count` samples. Work is split into fixed-size chunks: chunk k
 *        runs a splitmix64 stream seeded by chunk_seed(master, k), and each
 *        draw inside the chunk gets the next splitmix64 output as its seed.
 *        Chunks are independent and merged in index order, so results do not
 *        depend on scheduling.
 */
inline std::vector<SpectralSample> sample_many(Ensemble e, int n, int count, std::uint64_t master,
                                               int chunk = 65536) {
    std::vector<SpectralSample> out;
    out.reserve(static_cast<std::size_t>(count));
    const int nchunks = (count + chunk - 1) / chunk;
    for (int ck = 0; ck < nchunks; ++ck) {
        std::uint64_t s = chunk_seed(master, static_cast<std::uint64_t>(ck));
        const int lo = ck * chunk, hi = std::min(count, lo + chunk);
        for (int i = lo; i < hi; ++i) {
            const std::uint64_t draw_seed = splitmix64_next(s);
            out.push_back(e == Ensemble::goe ? sample_goe(n, draw_seed)
                                             : sample_ginibre_real(n, draw_seed));
        }
    }
    return out;
}

/// Histogram of real-axis density: counts per sample per unit length, with
/// per-bin standard errors from the per-sample count variance.
struct Histogram {
    Eigen::VectorXd bin_lo, bin_hi, density, stderr_;
};

inline Histogram density_estimate(const std::vector<SpectralSample>& samples, double lo, double hi,
                                  int nbins) {
    if (!(lo < hi) || nbins < 1) throw ConfigurationError("density_estimate: empty region");
    if (samples.size() < 10000)
        throw ConfigurationError("density_estimate: need at least 1e4 samples");
    const double width = (hi - lo) / nbins;
    const auto s = static_cast<double>(samples.size());

    Eigen::VectorXd sum = Eigen::VectorXd::Zero(nbins);
    Eigen::VectorXd sumsq = Eigen::VectorXd::Zero(nbins);
    std::vector<int> cnt(static_cast<std::size_t>(nbins));
    for (const auto& sample : samples) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (double x : sample.reals) {
            if (x < lo || x >= hi) continue;
            const int b = std::min(nbins - 1, static_cast<int>((x - lo) / width));
            ++cnt[static_cast<std::size_t>(b)];
        }
        for (int b = 0; b < nbins; ++b) {
            sum[b] += cnt[static_cast<std::size_t>(b)];
            sumsq[b] += static_cast<double>(cnt[static_cast<std::size_t>(b)]) *
                        cnt[static_cast<std::size_t>(b)];
        }
    }

    Histogram h;
    h.bin_lo.resize(nbins);
    h.bin_hi.resize(nbins);
    h.density.resize(nbins);
    h.stderr_.resize(nbins);
    for (int b = 0; b < nbins; ++b) {
        h.bin_lo[b] = lo + b * width;
        h.bin_hi[b] = lo + (b + 1) * width;
        const double mean = sum[b] / s;
        const double var = std::max(0.0, sumsq[b] / s - mean * mean);
        h.density[b] = mean / width;
        h.stderr_[b] = std::sqrt(var / s) / width;
    }
    return h;
}

} // namespace pfkernel
