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

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pfkernel/identities.hpp"
#include "pfkernel/kernel.hpp"
#include "pfkernel/measures.hpp"
#include "pfkernel/partition.hpp"
#include "pfkernel/pfaffian.hpp"
#include "pfkernel/sampler.hpp"
#include "pfkernel/skeworth.hpp"
#include "pfkernel/version.hpp"

namespace {

using namespace pfkernel;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void emit(const Table& t, const std::string& out_path, const std::string& format) {
    std::ostringstream os;
    if (format == "csv") {
        os << "# pfkernel " << kVersion << "\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
        for (const auto& row : t.rows)
            for (std::size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "\n");
    } else {
        nlohmann::ordered_json j;
        j["tool"] = "pfkernel";
        j["version"] = kVersion;
        j["columns"] = t.columns;
        j["rows"] = t.rows;
        os << j.dump(2) << "\n";
    }
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ConfigurationError("cannot open output file: " + out_path);
        f << os.str();
    }
}

struct CommonOpts {
    std::string ensemble = "hermitian-beta1";
    int n = 3;
    int nodes_real = 80;
    int nodes_complex = 32;
    std::uint64_t seed = 1;
    double tol = 0.0;
    std::string out;
    std::string format = "csv";
    std::string weight_table;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_odd_n = true) {
    cmd->add_option("--ensemble", o.ensemble, "ensemble kind")
        ->check(CLI::IsMember({"hermitian-beta1", "real-asymmetric", "custom"}));
    auto* nopt = cmd->add_option("--n", o.n, "matrix size N (odd)");
    if (needs_odd_n)
        nopt->check([](const std::string& s) -> std::string {
            const int v = std::stoi(s);
            return (v >= 1 && v % 2 == 1) ? "" : "N must be odd and >= 1";
        });
    cmd->add_option("--nodes-real", o.nodes_real, "real-line quadrature nodes");
    cmd->add_option("--nodes-complex", o.nodes_complex, "half-plane quadrature nodes");
    cmd->add_option("--seed", o.seed, "random seed")->envname("PFKERNEL_SEED");
    cmd->add_option("--tol", o.tol, "tolerance override");
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--weight-table", o.weight_table, "custom weight table file (x w per line)");
}

WeightedMeasure make_measure(const CommonOpts& o) {
    const WeightKind kind = weight_kind_from_string(o.ensemble);
    if (kind == WeightKind::custom) {
        if (o.weight_table.empty())
            throw ConfigurationError("custom ensemble requires --weight-table");
        return WeightedMeasure::custom_from_file(o.weight_table);
    }
    return WeightedMeasure::build(kind, o.nodes_real, o.nodes_complex);
}

std::vector<double> parse_reals(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

std::complex<double> parse_complex(std::string tok) {
    // forms: "a+bi", "a-bi", "bi", "a"
    if (!tok.empty() && (tok.back() == 'i' || tok.back() == 'j')) {
        tok.pop_back();
        std::size_t split = tok.size();
        for (std::size_t i = tok.size(); i-- > 1;) {
            if ((tok[i] == '+' || tok[i] == '-') && tok[i - 1] != 'e' && tok[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == tok.size()) return {0.0, std::stod(tok.empty() ? "1" : tok)};
        const double re = std::stod(tok.substr(0, split));
        std::string im = tok.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return {re, std::stod(im)};
    }
    return {std::stod(tok), 0.0};
}

std::vector<std::complex<double>> parse_complexes(const std::string& s) {
    std::vector<std::complex<double>> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(parse_complex(tok));
    return out;
}

struct GridSpec {
    double lo = -3.0, hi = 3.0;
    int count = 13;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    if (s.empty()) return g;
    std::stringstream ss(s);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c, ':'))
        throw ConfigurationError("grid spec must be lo:hi:count");
    g.lo = std::stod(a);
    g.hi = std::stod(b);
    g.count = std::stoi(c);
    if (!(g.lo < g.hi) || g.count < 1) throw ConfigurationError("empty grid spec");
    return g;
}

// ---------------------------------------------------------------------------

int run_validate(const CommonOpts& o) {
    std::mt19937_64 gen(o.seed);
    auto unif = [&gen]() { return 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0; };
    auto randmat = [&](int r, int c) {
        Eigen::MatrixXd m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = unif();
        return m;
    };
    auto randskew = [&](int d) {
        const Eigen::MatrixXd m = randmat(d, d);
        return SkewMatrix(0.5 * (m - m.transpose()).eval());
    };

    Table t;
    t.columns = {"check", "trials", "max_rel_err", "status"};
    bool all_ok = true;

    {
        const double tol = o.tol > 0.0 ? o.tol : 1e-10;
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const int tt = 1 + static_cast<int>(gen() % 8), nn = 1 + static_cast<int>(gen() % 8);
            const auto [lhs, rhs] = check_det_commutation(randmat(tt, nn), randmat(nn, tt));
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
        const bool ok = worst <= tol;
        all_ok = all_ok && ok;
        t.rows.push_back({"det-commutation", "200", fmt(worst), ok ? "pass" : "FAIL"});
    }
    {
        const double tol = o.tol > 0.0 ? o.tol : 1e-9;
        double worst = 0.0;
        int done = 0;
        while (done < 200) {
            const int q = 2 * (1 + static_cast<int>(gen() % 5));
            const int p = 2 * (1 + static_cast<int>(gen() % 5));
            try {
                const auto [lhs, rhs] =
                    check_rains(randmat(p, q), randskew(q), randskew(p));
                worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
                ++done;
            } catch (const SingularityError&) {
                // ill-conditioned draw, take the next one
            }
        }
        const bool ok = worst <= tol;
        all_ok = all_ok && ok;
        t.rows.push_back({"pfaffian-cauchy-binet", "200", fmt(worst), ok ? "pass" : "FAIL"});
    }
    {
        // invariance of both sides under a -> a Q with Q J Q^T = J
        const double tol = o.tol > 0.0 ? o.tol : 1e-8;
        double worst = 0.0;
        int done = 0;
        while (done < 50) {
            const int tpairs = 1 + static_cast<int>(gen() % 3);
            const int q = 2 * tpairs;
            const int p = q + 2 * static_cast<int>(gen() % 2);
            const Eigen::MatrixXd jq = standard_block_form(tpairs);
            Eigen::MatrixXd h = randmat(q, q);
            h = (0.25 * (h + h.transpose())).eval();
            // Q = exp(J H), symplectic for symmetric H
            Eigen::MatrixXd x = jq * h, qm = Eigen::MatrixXd::Identity(q, q), term = qm;
            for (int k = 1; k <= 24; ++k) {
                term = (term * x / static_cast<double>(k)).eval();
                qm += term;
            }
            try {
                const SkewMatrix b(jq), c = randskew(p);
                const Eigen::MatrixXd a = randmat(p, q);
                const auto [l0, r0] = check_rains(a, b, c);
                const auto [l1, r1] = check_rains((a * qm).eval(), b, c);
                worst = std::max(worst, std::abs(l0 - l1) / std::max(1.0, std::abs(l0)));
                worst = std::max(worst, std::abs(r0 - r1) / std::max(1.0, std::abs(r0)));
                ++done;
            } catch (const SingularityError&) {
            }
        }
        const bool ok = worst <= tol;
        all_ok = all_ok && ok;
        t.rows.push_back({"symplectic-invariance", "50", fmt(worst), ok ? "pass" : "FAIL"});
    }

    emit(t, o.out, o.format);
    return all_ok ? 0 : 1;
}

int run_partition(const CommonOpts& o) {
    const WeightedMeasure m = make_measure(o);
    const MomentMatrices mm = build_moment_matrices(m, monomial_basis(o.n), o.n);
    const double zp = z_pfaffian(mm);
    const double zb = z_bruteforce(m, o.n);
    const double gap = std::abs(zp - zb) / std::max(1e-300, std::abs(zb));
    Table t;
    t.columns = {"ensemble", "n", "z_pfaffian", "z_bruteforce", "rel_gap"};
    t.rows.push_back({o.ensemble, std::to_string(o.n), fmt(zp), fmt(zb), fmt(gap)});
    emit(t, o.out, o.format);
    return 0;
}

int run_family(const CommonOpts& o) {
    const WeightedMeasure m = make_measure(o);
    const SkewOrthFamily f = construct_family(m, o.n);
    Table t;
    t.columns = {"record", "i", "j", "value"};
    for (int k = 0; k < f.n; ++k)
        for (int j = 0; j <= k; ++j)
            t.rows.push_back({"q", std::to_string(k), std::to_string(j),
                              fmt(f.q[static_cast<std::size_t>(k)].coeff(j))});
    for (Eigen::Index j = 0; j < f.r.size(); ++j)
        t.rows.push_back({"r", std::to_string(j), "", fmt(f.r[j])});
    for (Eigen::Index k = 0; k < f.s.size(); ++k)
        t.rows.push_back({"s", std::to_string(k), "", fmt(f.s[k])});
    emit(t, o.out, o.format);
    return 0;
}

int run_kernel(const CommonOpts& o, const std::string& grid_spec) {
    const WeightedMeasure m = make_measure(o);
    const SkewOrthFamily f = construct_family(m, o.n);
    const InverseMatrix c = invert_w(f);
    const GridSpec g = parse_grid(grid_spec);
    Table t;
    t.columns = {"y", "yp", "ds", "s", "s_swapped", "sni"};
    for (int i = 0; i < g.count; ++i) {
        const double y = g.count == 1 ? g.lo : g.lo + (g.hi - g.lo) * i / (g.count - 1);
        for (int j = 0; j < g.count; ++j) {
            const double yp = g.count == 1 ? g.lo : g.lo + (g.hi - g.lo) * j / (g.count - 1);
            const KernelEvaluation k =
                kernel_entries(f, c, m, SpectralPoint::real(y), SpectralPoint::real(yp));
            t.rows.push_back({fmt(y), fmt(yp), fmt(k.ds.real()), fmt(k.s.real()),
                              fmt(k.s_swapped.real()), fmt(k.sni.real())});
        }
    }
    emit(t, o.out, o.format);
    return 0;
}

int run_correlate(const CommonOpts& o, const std::string& points, const std::string& cpoints) {
    const WeightedMeasure m = make_measure(o);
    const SkewOrthFamily f = construct_family(m, o.n);
    const InverseMatrix c = invert_w(f);
    const std::vector<double> xs = parse_reals(points);
    const std::vector<std::complex<double>> zs = parse_complexes(cpoints);

    double value = 0.0;
    if (m.kind() == WeightKind::real_asymmetric) {
        value = correlation_asymmetric(f, c, m, xs, zs);
    } else {
        if (!zs.empty())
            throw ConfigurationError("complex points require the real-asymmetric ensemble");
        std::vector<SpectralPoint> pts;
        for (double x : xs) pts.push_back(SpectralPoint::real(x));
        value = correlation_hermitian(f, c, m, pts);
    }

    std::string pts_field;
    for (std::size_t i = 0; i < xs.size(); ++i)
        pts_field += (i ? ";" : "") + fmt(xs[i]);
    for (std::size_t i = 0; i < zs.size(); ++i)
        pts_field += (pts_field.empty() ? "" : ";") + fmt(zs[i].real()) + "+" + fmt(zs[i].imag()) + "i";

    Table t;
    t.columns = {"ensemble", "n", "ell", "m", "points", "value"};
    t.rows.push_back({o.ensemble, std::to_string(o.n), std::to_string(xs.size()),
                      std::to_string(zs.size()), pts_field, fmt(value)});
    emit(t, o.out, o.format);
    return 0;
}

Histogram make_histogram(const CommonOpts& o, int count, const GridSpec& bins) {
    const Ensemble e = weight_kind_from_string(o.ensemble) == WeightKind::real_asymmetric
                           ? Ensemble::ginibre_real
                           : Ensemble::goe;
    const auto samples = sample_many(e, o.n, count, o.seed);
    return density_estimate(samples, bins.lo, bins.hi, bins.count);
}

int run_sample(const CommonOpts& o, int count, const std::string& bins_spec) {
    const Histogram h = make_histogram(o, count, parse_grid(bins_spec));
    Table t;
    t.columns = {"bin_lo", "bin_hi", "density", "stderr"};
    for (Eigen::Index b = 0; b < h.density.size(); ++b)
        t.rows.push_back({fmt(h.bin_lo[b]), fmt(h.bin_hi[b]), fmt(h.density[b]), fmt(h.stderr_[b])});
    emit(t, o.out, o.format);
    return 0;
}

int run_compare(const CommonOpts& o, int count, const std::string& bins_spec) {
    if (weight_kind_from_string(o.ensemble) == WeightKind::custom)
        throw ConfigurationError("compare supports the built-in ensembles only");
    const GridSpec bins = parse_grid(bins_spec);
    const Histogram h = make_histogram(o, count, bins);

    const WeightedMeasure m = make_measure(o);
    const SkewOrthFamily f = construct_family(m, o.n);
    const InverseMatrix c = invert_w(f);
    auto intensity = [&](double x) {
        if (m.kind() == WeightKind::real_asymmetric)
            return correlation_asymmetric(f, c, m, {x}, {});
        return correlation_hermitian(f, c, m, {SpectralPoint::real(x)});
    };
    const QuadratureRule gl = gauss_legendre(5, 0.0, 1.0);

    Table t;
    t.columns = {"bin_lo", "bin_hi", "density", "stderr", "prediction", "zscore"};
    for (Eigen::Index b = 0; b < h.density.size(); ++b) {
        const double lo = h.bin_lo[b], hi = h.bin_hi[b];
        double pred = 0.0; // bin average of the predicted intensity
        for (Eigen::Index i = 0; i < gl.nodes.size(); ++i)
            pred += gl.weights[i] * intensity(lo + (hi - lo) * gl.nodes[i]);
        const double z = h.stderr_[b] > 0.0 ? (h.density[b] - pred) / h.stderr_[b] : 0.0;
        t.rows.push_back({fmt(lo), fmt(hi), fmt(h.density[b]), fmt(h.stderr_[b]), fmt(pred), fmt(z)});
    }
    emit(t, o.out, o.format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pfaffian partition functions, kernels and correlation functions for "
                 "beta=1 Hermitian and real asymmetric ensembles at odd N"};
    // flag-equivalent keys grouped in a [subcommand] section; flags win
    app.set_config("--config", "", "config file (given before the subcommand)");
    app.require_subcommand(1);

    CommonOpts o;
    std::string points, cpoints, grid = "-3:3:13", bins = "-4:4:40";
    int count = 100000;

    auto* v = app.add_subcommand("validate", "run the determinant/Pfaffian identity suites");
    add_common(v, o, false);
    auto* p = app.add_subcommand("partition", "partition function: Pfaffian vs brute force");
    add_common(p, o);
    auto* fam = app.add_subcommand("family", "skew-orthogonal family coefficients");
    add_common(fam, o);
    auto* k = app.add_subcommand("kernel", "tabulate kernel entries on a grid");
    add_common(k, o);
    k->add_option("--grid", grid, "grid spec lo:hi:count");
    auto* corr = app.add_subcommand("correlate", "correlation functions at given points");
    add_common(corr, o);
    corr->add_option("--points", points, "comma-separated real points");
    corr->add_option("--complex-points", cpoints, "comma-separated points a+bi");
    auto* smp = app.add_subcommand("sample", "Monte Carlo eigenvalue histogram");
    add_common(smp, o);
    smp->add_option("--count", count, "number of samples");
    smp->add_option("--bins", bins, "histogram spec lo:hi:nbins");
    auto* cmp = app.add_subcommand("compare", "overlay histogram and kernel prediction");
    add_common(cmp, o);
    cmp->add_option("--count", count, "number of samples");
    cmp->add_option("--bins", bins, "histogram spec lo:hi:nbins");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (v->parsed()) return run_validate(o);
        if (p->parsed()) return run_partition(o);
        if (fam->parsed()) return run_family(o);
        if (k->parsed()) return run_kernel(o, grid);
        if (corr->parsed()) return run_correlate(o, points, cpoints);
        if (smp->parsed()) return run_sample(o, count, bins);
        if (cmp->parsed()) return run_compare(o, count, bins);
    } catch (const ConfigurationError& e) {
        std::cerr << "error,configuration," << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error,numeric," << e.what() << "\n";
        return 1;
    }
    return 2;
}
