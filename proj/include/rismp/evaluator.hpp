// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#ifndef RISMP_EVALUATOR_HPP
#define RISMP_EVALUATOR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "rismp/channel_stats.hpp"
#include "rismp/em_network.hpp"
#include "rismp/scenario.hpp"
#include "rismp/types.hpp"

namespace rismp {

enum class SnrReference {
    PerAntenna,     // mean received power per BS antenna over noise (default)
    PostCombining,  // |v^H Phi t1|^2 over noise after the fixed beamformer
};

struct CalibrationOptions {
    double target_snr_db = -20.0;
    int n_random_configs = 1000;  // the config-power distribution is heavy-tailed
    std::uint64_t seed = 7;
    SnrReference reference = SnrReference::PerAntenna;
};

// Noise variance that puts a randomly configured RIS at the target SNR for
// the intended user's nominal channel. Random configurations are uniform
// phases pushed through the physical multiport response.
double calibrate_noise(const ImpedanceNetwork& network, const ScenarioGeometry& geometry,
                       const CVec& v, const CalibrationOptions& options = {});

// log2(1 + gamma) on one channel realization with exact channel knowledge,
// RIS fixed at b through the physical multiport response.
double instantaneous_rate(const ChannelRealization& realization, const ImpedanceNetwork& network,
                          const ScenarioGeometry& geometry, const RVec& b, const CVec& v,
                          double noise_variance);

struct EvaluationReport {
    double mean_rate = 0.0;             // bits/s/Hz
    double stderr_rate = 0.0;
    std::vector<double> rate_samples;
    double rate_bound = 0.0;            // R_b of the same configuration, if stats given
    double mean_signal_power = 0.0;
    double mean_interference_power = 0.0;
    double noise_power = 0.0;
    int n_trials = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo average of the achievable rate over channel realizations
// (positions + NLOS). Trials run in parallel with per-trial derived seeds;
// the result is independent of scheduling.
EvaluationReport monte_carlo_rate(const Scenario& scenario, const ImpedanceNetwork& network,
                                  const RVec& b, const CVec& v, double noise_variance,
                                  int n_trials, std::uint64_t seed,
                                  const ChannelStatistics* stats = nullptr);

// Received power at the BS versus probe azimuth: a single test transmitter
// at `distance` swept over angle_grid, through the nominal network.
std::vector<std::pair<double, double>> beampattern(const ImpedanceNetwork& network,
                                                   const ScenarioGeometry& geometry,
                                                   const RVec& b, const CVec& v,
                                                   const std::vector<double>& angle_grid,
                                                   double distance, double probe_power = 0.1);

}  // namespace rismp

#endif
