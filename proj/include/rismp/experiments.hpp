// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#ifndef RISMP_EXPERIMENTS_HPP
#define RISMP_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rismp/evaluator.hpp"
#include "rismp/optimizer.hpp"
#include "rismp/scenario.hpp"

namespace rismp {

enum class Variant { OptNoCsi, CtNoCsi, OptCsi };

const char* variant_name(Variant variant);
std::optional<Variant> variant_from_name(const std::string& name);

struct ExperimentConfig {
    std::string scenario_file;  // overrides the preset when set
    std::vector<double> dx_fractions = {0.5};
    std::vector<double> sigmas = {0.5};
    std::vector<Variant> variants = {Variant::OptNoCsi, Variant::CtNoCsi, Variant::OptCsi};
    bool body_angle_grid = false;  // i*pi/32 grid instead of pi/8 + (i-1)*pi/32
    int trials = 200;
    int csi_realizations = 20;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    AoConfig ao;
    CalibrationOptions calibration;
    double ue_distance = 10.0;

    void validate() const;
};

// Interferer azimuth grid of the angle-sweep figures.
std::vector<double> interferer_angle_grid(bool body_text_grid);

// Convergence traces (Fig.-3 protocol): three UEs at pi/8, pi/4, 3pi/8 on a
// 10 m arc; one CSV per (dx, sigma) cell with columns iteration, rate_bound.
// Returns the written file paths.
std::vector<std::string> run_convergence(const ExperimentConfig& config);

// Interferer sweep (Figs. 4-6): intended UE at pi/8, the interferer on the
// angle grid; per-cell CSV with columns interferer_index, variant, mean_rate,
// stderr, rate_bound.
std::vector<std::string> run_angle_sweep(const ExperimentConfig& config);

// Beampatterns (Figs. 7-8): optimize against an interferer at pi/4, then
// sweep a probe transmitter over 0..90 degrees. Writes one pattern CSV per
// (dx, sigma, variant) and a summary CSV with peak/null metrics.
std::vector<std::string> run_beampattern(const ExperimentConfig& config);

// Scenario construction shared by the experiment drivers.
Scenario experiment_scenario(const ExperimentConfig& config, double dx_fraction, double sigma,
                             const std::vector<double>& ue_azimuths);

struct BeamSummary {
    double peak_angle_deg = 0.0;
    double peak_db = 0.0;
    double null_depth_db_at_45 = 0.0;  // peak minus level at 45 degrees
    double width_3db_deg = 0.0;
};

BeamSummary summarize_beampattern(const std::vector<std::pair<double, double>>& pattern);

}  // namespace rismp

#endif
