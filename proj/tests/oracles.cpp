// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <cmath>

#include "rismp/rng.hpp"

namespace rismp::oracle {

namespace {

using constants::eta0;
using constants::pi;

void gl_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(static_cast<std::size_t>(n));
    w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double xi = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (xi * p0 - p1) / (xi * xi - 1.0);
            const double dx = p0 / pp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[static_cast<std::size_t>(i)] = xi;
        w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - xi * xi) * pp * pp);
    }
}

// nodes/weights over [c-h, c+h] split at the center kink
void segment(double c, double h, int n_half, std::vector<double>& z, std::vector<double>& w) {
    std::vector<double> xs, ws;
    gl_nodes(n_half, xs, ws);
    z.clear();
    w.clear();
    for (const auto& [lo, hi] : {std::pair{c - h, c}, std::pair{c, c + h}}) {
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int i = 0; i < n_half; ++i) {
            z.push_back(mid + half * xs[static_cast<std::size_t>(i)]);
            w.push_back(half * ws[static_cast<std::size_t>(i)]);
        }
    }
}

}  // namespace

Complex emf_reaction_double_integral(const PlacedDipole& q, const PlacedDipole& p,
                                     double wavelength, int points_per_half) {
    const double k = 2.0 * pi / wavelength;
    const double hq = 0.5 * q.length, hp = 0.5 * p.length;
    const double rho_raw = std::hypot(q.center.x() - p.center.x(), q.center.y() - p.center.y());
    const double rho = std::max(rho_raw, 0.5 * (q.radius + p.radius));
    std::vector<double> zq, wq, zp, wp;
    segment(q.center.z(), hq, points_per_half, zq, wq);
    segment(p.center.z(), hp, points_per_half, zp, wp);

    const Complex j(0.0, 1.0);
    Complex acc(0.0, 0.0);
    for (std::size_t a = 0; a < zq.size(); ++a) {
        const double dq = zq[a] - q.center.z();
        const double iq = std::sin(k * (hq - std::abs(dq)));
        const double diq = -k * (dq >= 0.0 ? 1.0 : -1.0) * std::cos(k * (hq - std::abs(dq)));
        for (std::size_t b = 0; b < zp.size(); ++b) {
            const double dp = zp[b] - p.center.z();
            const double ip = std::sin(k * (hp - std::abs(dp)));
            const double dip = -k * (dp >= 0.0 ? 1.0 : -1.0) * std::cos(k * (hp - std::abs(dp)));
            const double r = std::hypot(rho, zq[a] - zp[b]);
            const Complex green = std::exp(-j * (k * r)) / r;
            acc += wq[a] * wp[b] * (k * k * iq * ip - diq * dip) * green;
        }
    }
    const double norm = std::sin(k * hq) * std::sin(k * hp);
    return j * eta0 / (4.0 * pi * k * norm) * acc;
}

CMat riemann_correlation(double phi_i, double delta, double beta, const RVec& positions_x,
                         double lambda, int n_points) {
    const double k = 2.0 * pi / lambda;
    const Eigen::Index m = positions_x.size();
    CMat acc = CMat::Zero(m, m);
    const double lo = phi_i - 0.5 * delta;
    const double dphi = delta / n_points;
    CVec a(m);
    for (int i = 0; i < n_points; ++i) {
        const double phi = lo + (i + 0.5) * dphi;
        const double f = 4.0 * std::abs(phi - phi_i) / (delta * delta);
        const double s = std::sin(phi);
        for (Eigen::Index r = 0; r < m; ++r) a[r] = std::exp(Complex(0.0, k * positions_x[r] * s));
        acc += (f * dphi) * (a * a.adjoint());
    }
    return beta * acc;
}

CMat random_psd(int size, int rank, std::uint64_t seed) {
    Rng rng(seed);
    CMat f(size, rank);
    for (Eigen::Index i = 0; i < f.rows(); ++i)
        for (Eigen::Index j = 0; j < f.cols(); ++j) f(i, j) = rng.cgaussian();
    return f * f.adjoint();
}

ChannelStatistics random_statistics(int m, int n_interferers, std::uint64_t seed) {
    ChannelStatistics stats;
    stats.r_x = random_psd(m, std::max(1, m / 3), seed);
    stats.r_w_sum = CMat::Zero(m, m);
    for (int i = 0; i < n_interferers; ++i) {
        CMat rw = random_psd(m, std::max(1, m / 4), seed + 1000 + static_cast<std::uint64_t>(i));
        stats.r_w_sum += rw;
        stats.r_w.push_back(std::move(rw));
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(stats.r_x);
    const RVec w = es.eigenvalues();
    const double w_max = w[m - 1];
    int rank = 0;
    for (Eigen::Index j = 0; j < m; ++j)
        if (w[j] > 1e-9 * w_max) ++rank;
    stats.rank = rank;
    stats.u.resize(m, rank);
    stats.d.resize(rank);
    for (int j = 0; j < rank; ++j) {
        stats.d[j] = w[m - 1 - j];
        stats.u.col(j) = es.eigenvectors().col(m - 1 - j);
    }
    return stats;
}

}  // namespace rismp::oracle
