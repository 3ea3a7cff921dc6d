// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#include "rismp/channel_stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rismp/rng.hpp"

namespace rismp {

namespace {

// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Newton iteration from the Chebyshev estimate
        double x = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = x;
        weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

// beta * Int f(phi) a a^H over one half-panel [lo, hi] of the kinked density.
void accumulate_panel(CMat& acc, double lo, double hi, double phi_i, double delta,
                      const RVec& xs, double k, int order) {
    std::vector<double> nodes, weights;
    gauss_legendre(order, nodes, weights);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    CVec a(xs.size());
    for (int q = 0; q < order; ++q) {
        const double phi = mid + half * nodes[static_cast<std::size_t>(q)];
        const double f = 4.0 * std::abs(phi - phi_i) / (delta * delta);
        const double w = weights[static_cast<std::size_t>(q)] * half * f;
        const double s = std::sin(phi);
        for (Eigen::Index m = 0; m < xs.size(); ++m)
            a[m] = std::exp(Complex(0.0, k * xs[m] * s));
        acc.selfadjointView<Eigen::Lower>().rankUpdate(a, w);
    }
}

CMat correlation_quadrature(double phi_i, double delta, double beta, const RVec& xs, double k) {
    const Eigen::Index m = xs.size();
    int order = 64;
    CMat prev = CMat::Zero(m, m);
    for (int pass = 0; pass < 6; ++pass) {
        CMat acc = CMat::Zero(m, m);
        accumulate_panel(acc, phi_i - 0.5 * delta, phi_i, phi_i, delta, xs, k, order);
        accumulate_panel(acc, phi_i, phi_i + 0.5 * delta, phi_i, delta, xs, k, order);
        CMat full = acc.selfadjointView<Eigen::Lower>();
        if (pass > 0) {
            const double change = (full - prev).norm();
            if (change <= 1e-8 * full.norm()) return beta * full;
        }
        prev = full;
        order *= 2;
    }
    return beta * prev;
}

}  // namespace

CVec steering_vector(const RVec& positions_x, double phi, double lambda) {
    const double k = 2.0 * constants::pi / lambda;
    const double s = std::sin(phi);
    CVec a(positions_x.size());
    for (Eigen::Index m = 0; m < positions_x.size(); ++m)
        a[m] = std::exp(Complex(0.0, k * positions_x[m] * s));
    return a;
}

CMat los_correlation(double phi_i, double delta_i, double beta_i, const RVec& positions_x,
                     double lambda) {
    if (delta_i < 0.0) throw std::invalid_argument("los_correlation: spread must be >= 0");
    if (beta_i <= 0.0) throw std::invalid_argument("los_correlation: gain must be > 0");
    const double k = 2.0 * constants::pi / lambda;
    if (delta_i == 0.0) {
        const CVec a = steering_vector(positions_x, phi_i, lambda);
        return beta_i * (a * a.adjoint());
    }
    return correlation_quadrature(phi_i, delta_i, beta_i, positions_x, k);
}

CMat nlos_correlation(double phi_i, double delta_m, double beta_i, double k1,
                      const RVec& positions_x, double lambda) {
    if (k1 <= 0.0) throw std::invalid_argument("nlos_correlation: Rician factor must be > 0");
    return los_correlation(phi_i, delta_m, beta_i / k1, positions_x, lambda);
}

ChannelStatistics build_statistics(const ScenarioGeometry& geometry, const RicianSpec& rician,
                                   const ImpedanceNetwork& network) {
    geometry.validate();
    rician.validate();
    if (network.t.size() != geometry.ues.size())
        throw std::invalid_argument("build_statistics: network UE count mismatch");

    const RVec xs = element_x_coordinates(geometry.ris);
    const double lambda = geometry.wavelength;
    ChannelStatistics stats;
    const Eigen::Index m = xs.size();
    stats.r_w_sum = CMat::Zero(m, m);

    for (std::size_t i = 0; i < geometry.ues.size(); ++i) {
        const UeSpec& ue = geometry.ues[i];
        const double phi_i = azimuth_of(ue.nominal_position, geometry.ris.center);
        const double delta_i = angular_spread(ue, geometry.ris.center);
        const double beta_i = network.t[i].squaredNorm() / static_cast<double>(m);
        CMat prior = los_correlation(phi_i, delta_i, beta_i, xs, lambda) +
                     nlos_correlation(phi_i, rician.nlos_spread, beta_i, rician.k_ris_ue, xs,
                                      lambda);
        prior *= ue.tx_power;
        if (i == 0) {
            stats.r_x = prior;
        } else {
            stats.r_w.push_back(prior);
            stats.r_w_sum += prior;
        }
    }

    Eigen::SelfAdjointEigenSolver<CMat> es(stats.r_x);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("build_statistics: eigendecomposition failed");
    const RVec w = es.eigenvalues();  // ascending
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

ChannelStatistics rank_one_statistics(const std::vector<CVec>& t_realized,
                                      const std::vector<double>& tx_powers) {
    if (t_realized.empty() || t_realized.size() != tx_powers.size())
        throw std::invalid_argument("rank_one_statistics: inconsistent inputs");
    ChannelStatistics stats;
    const Eigen::Index m = t_realized.front().size();
    stats.r_w_sum = CMat::Zero(m, m);
    stats.r_x = tx_powers[0] * (t_realized[0] * t_realized[0].adjoint());
    for (std::size_t i = 1; i < t_realized.size(); ++i) {
        CMat rw = tx_powers[i] * (t_realized[i] * t_realized[i].adjoint());
        stats.r_w_sum += rw;
        stats.r_w.push_back(std::move(rw));
    }
    // rank-1 factorization is available in closed form
    const double norm2 = t_realized[0].squaredNorm();
    stats.rank = 1;
    stats.u = t_realized[0] / std::sqrt(norm2);
    stats.d = RVec::Constant(1, tx_powers[0] * norm2);
    return stats;
}

namespace {

// Hermitian PSD square root via eigendecomposition, clipping tiny negatives.
CMat psd_sqrt(const CMat& w) {
    Eigen::SelfAdjointEigenSolver<CMat> es(w);
    if (es.info() != Eigen::Success) throw std::runtime_error("psd_sqrt: eigensolver failed");
    RVec ev = es.eigenvalues();
    const double floor = 0.0;
    CMat l = es.eigenvectors();
    for (Eigen::Index j = 0; j < ev.size(); ++j)
        l.col(j) *= std::sqrt(std::max(ev[j], floor));
    return l;
}

}  // namespace

RealizationSampler::RealizationSampler(const Scenario& scenario, const ImpedanceNetwork& network)
    : scenario_(scenario), network_(&network) {
    const ScenarioGeometry& g = scenario.geometry;
    g.validate();
    scenario.rician.validate();
    const RVec xs = element_x_coordinates(g.ris);
    const double lambda = g.wavelength;

    for (std::size_t i = 0; i < g.ues.size(); ++i) {
        const double phi_i = azimuth_of(g.ues[i].nominal_position, g.ris.center);
        const double beta_i = network.t[i].squaredNorm() / static_cast<double>(xs.size());
        CMat w = nlos_correlation(phi_i, scenario.rician.nlos_spread, beta_i,
                                  scenario.rician.k_ris_ue, xs, lambda);
        w_ue_sqrt_.push_back(psd_sqrt(w));
        w_ue_.push_back(std::move(w));
    }

    const double phi_bs = azimuth_of(g.bs.center, g.ris.center);
    const double beta_s = network.s.squaredNorm() /
                          static_cast<double>(network.s.rows() * network.s.cols());
    w_bs_ = nlos_correlation(phi_bs, scenario.rician.nlos_spread_bs, beta_s,
                             scenario.rician.k_bs_ris, xs, lambda);
    w_bs_sqrt_ = psd_sqrt(w_bs_);
}

ChannelRealization RealizationSampler::sample(std::uint64_t seed) const {
    const ScenarioGeometry& g = scenario_.geometry;
    Rng rng(seed);
    ChannelRealization real;
    const Eigen::Index m = network_->z_ss.rows();
    const auto ris_el = placed_dipoles(g.ris);

    // true positions first, then per-UE NLOS, then BS-side NLOS: fixed draw
    // order keeps realizations reproducible
    for (const auto& ue : g.ues) {
        const double rad = ue.uncertainty_radius * std::sqrt(rng.uniform());
        const double ang = rng.uniform(0.0, 2.0 * constants::pi);
        real.true_positions.push_back(ue.nominal_position +
                                      Vec3(rad * std::cos(ang), rad * std::sin(ang), 0.0));
    }
    for (std::size_t i = 0; i < g.ues.size(); ++i) {
        PlacedDipole d{real.true_positions[i], g.ris.element_length, g.ris.element_radius};
        CVec t = assemble_channel({d}, ris_el, g.wavelength).col(0);
        CVec z(m);
        for (Eigen::Index j = 0; j < m; ++j) z[j] = rng.cgaussian();
        t += w_ue_sqrt_[i] * z;
        real.t_e.push_back(std::move(t));
    }
    real.s_e = network_->s;
    for (Eigen::Index q = 0; q < real.s_e.rows(); ++q) {
        CVec z(m);
        for (Eigen::Index j = 0; j < m; ++j) z[j] = rng.cgaussian();
        real.s_e.row(q) += (w_bs_sqrt_ * z).transpose();
    }
    return real;
}

ChannelRealization sample_realization(const Scenario& scenario, const ImpedanceNetwork& network,
                                      std::uint64_t seed) {
    return RealizationSampler(scenario, network).sample(seed);
}

}  // namespace rismp
