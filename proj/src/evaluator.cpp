// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#include "rismp/evaluator.hpp"

#include <cmath>
#include <stdexcept>

#include "rismp/ris_response.hpp"
#include "rismp/rng.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace rismp {

double calibrate_noise(const ImpedanceNetwork& network, const ScenarioGeometry& geometry,
                       const CVec& v, const CalibrationOptions& options) {
    if (options.n_random_configs < 1)
        throw std::invalid_argument("calibrate_noise: need at least one random config");
    geometry.validate();
    const Eigen::Index m = network.z_ss.rows();
    const double n = static_cast<double>(network.s.rows());
    Rng rng(options.seed);
    double acc = 0.0;
    for (int c = 0; c < options.n_random_configs; ++c) {
        RVec phi(m);
        for (Eigen::Index i = 0; i < m; ++i)
            phi[i] = rng.uniform(kPhaseGuard, 2.0 * constants::pi - kPhaseGuard);
        const RisState state = RisState::from_phases(phi, network.z0);
        const CVec rx = delta_mp(network, state) * network.t[0];
        const CVec y = network.s * rx;
        if (options.reference == SnrReference::PerAntenna)
            acc += y.squaredNorm() / n;
        else
            acc += std::norm(v.dot(y)) / v.squaredNorm();
    }
    acc /= options.n_random_configs;
    const double snr_lin = std::pow(10.0, options.target_snr_db / 10.0);
    return acc * geometry.ues[0].tx_power / snr_lin;
}

double instantaneous_rate(const ChannelRealization& realization, const ImpedanceNetwork& network,
                          const ScenarioGeometry& geometry, const RVec& b, const CVec& v,
                          double noise_variance) {
    if (realization.t_e.size() != geometry.ues.size())
        throw std::invalid_argument("instantaneous_rate: UE count mismatch");
    const RisState state = RisState::from_reactances(b, network.z0);
    const CMat phi_e = realization.s_e * delta_mp(network, state);
    const CVec w = phi_e.adjoint() * v;  // so v^H Phi t = w^H t... conj below
    const double signal =
        std::norm(w.dot(realization.t_e[0])) * geometry.ues[0].tx_power;
    double interference = 0.0;
    for (std::size_t i = 1; i < realization.t_e.size(); ++i)
        interference += std::norm(w.dot(realization.t_e[i])) * geometry.ues[i].tx_power;
    const double gamma = signal / (interference + noise_variance * v.squaredNorm());
    return std::log2(1.0 + gamma);
}

EvaluationReport monte_carlo_rate(const Scenario& scenario, const ImpedanceNetwork& network,
                                  const RVec& b, const CVec& v, double noise_variance,
                                  int n_trials, std::uint64_t seed,
                                  const ChannelStatistics* stats) {
    if (n_trials < 1) throw std::invalid_argument("monte_carlo_rate: n_trials must be >= 1");
    const RealizationSampler sampler(scenario, network);
    const ScenarioGeometry& g = scenario.geometry;

    EvaluationReport rep;
    rep.n_trials = n_trials;
    rep.seed = seed;
    rep.noise_power = noise_variance * v.squaredNorm();
    rep.rate_samples.assign(static_cast<std::size_t>(n_trials), 0.0);
    std::vector<double> sig(static_cast<std::size_t>(n_trials), 0.0);
    std::vector<double> interf(static_cast<std::size_t>(n_trials), 0.0);

    const RisState state = RisState::from_reactances(b, network.z0);
    const CMat delta = delta_mp(network, state);

#pragma omp parallel for schedule(dynamic)
    for (int trial = 0; trial < n_trials; ++trial) {
        const ChannelRealization real = sampler.sample(mix_seed(seed, static_cast<std::uint64_t>(trial)));
        const CMat phi_e = real.s_e * delta;
        const CVec w = phi_e.adjoint() * v;
        const double s_pow = std::norm(w.dot(real.t_e[0])) * g.ues[0].tx_power;
        double i_pow = 0.0;
        for (std::size_t i = 1; i < real.t_e.size(); ++i)
            i_pow += std::norm(w.dot(real.t_e[i])) * g.ues[i].tx_power;
        const double gamma = s_pow / (i_pow + rep.noise_power);
        rep.rate_samples[static_cast<std::size_t>(trial)] = std::log2(1.0 + gamma);
        sig[static_cast<std::size_t>(trial)] = s_pow;
        interf[static_cast<std::size_t>(trial)] = i_pow;
    }

    double sum = 0.0, sum2 = 0.0, ssum = 0.0, isum = 0.0;
    for (int trial = 0; trial < n_trials; ++trial) {
        const double r = rep.rate_samples[static_cast<std::size_t>(trial)];
        sum += r;
        sum2 += r * r;
        ssum += sig[static_cast<std::size_t>(trial)];
        isum += interf[static_cast<std::size_t>(trial)];
    }
    rep.mean_rate = sum / n_trials;
    rep.mean_signal_power = ssum / n_trials;
    rep.mean_interference_power = isum / n_trials;
    const double var = std::max(0.0, sum2 / n_trials - rep.mean_rate * rep.mean_rate);
    rep.stderr_rate = std::sqrt(var / n_trials);
    if (stats != nullptr) {
        const CMat phi = network.s * delta;
        const CVec u = phi.adjoint() * v;
        const double s_prior = (u.adjoint() * (stats->r_x * u)).real()(0);
        const double i_prior =
            stats->r_w.empty() ? 0.0 : (u.adjoint() * (stats->r_w_sum * u)).real()(0);
        rep.rate_bound = std::log2(1.0 + s_prior / (i_prior + rep.noise_power));
    }
    return rep;
}

std::vector<std::pair<double, double>> beampattern(const ImpedanceNetwork& network,
                                                   const ScenarioGeometry& geometry,
                                                   const RVec& b, const CVec& v,
                                                   const std::vector<double>& angle_grid,
                                                   double distance, double probe_power) {
    const RisState state = RisState::from_reactances(b, network.z0);
    const CMat delta = delta_mp(network, state);
    const CVec w = (network.s * delta).adjoint() * v;  // v^H S Delta as a column
    const auto ris_el = placed_dipoles(geometry.ris);
    std::vector<std::pair<double, double>> pattern(angle_grid.size());

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(angle_grid.size()); ++i) {
        const double phi = angle_grid[static_cast<std::size_t>(i)];
        PlacedDipole probe{Vec3(distance * std::sin(phi), distance * std::cos(phi), 0.0),
                           geometry.ris.element_length, geometry.ris.element_radius};
        const CVec t = assemble_channel({probe}, ris_el, geometry.wavelength).col(0);
        const double p = std::norm(w.dot(t)) * probe_power;
        pattern[static_cast<std::size_t>(i)] = {phi, 10.0 * std::log10(p)};
    }
    return pattern;
}

}  // namespace rismp
