// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rismp/experiments.hpp"

namespace {

using rismp::ExperimentConfig;
using rismp::Variant;

void add_common_options(CLI::App* cmd, ExperimentConfig& cfg, std::vector<std::string>& variants) {
    cmd->add_option("--scenario", cfg.scenario_file, "Scenario JSON file (overrides the preset)");
    std::string preset = "paper-default";
    cmd->add_option("--preset", preset, "Named scenario preset")
        ->check(CLI::IsMember({"paper-default"}));
    cmd->add_option("--dx", cfg.dx_fractions, "Element spacings as fractions of lambda")
        ->delimiter(',');
    cmd->add_option("--sigma", cfg.sigmas, "Position uncertainty radii in meters")
        ->delimiter(',');
    cmd->add_option("--variants", variants, "Subset of OPT-NoCSI, CT-NoCSI, OPT-CSI")
        ->delimiter(',');
    cmd->add_option("--trials", cfg.trials, "Monte Carlo trials per rate point");
    cmd->add_option("--csi-realizations", cfg.csi_realizations,
                    "Realizations averaged for OPT-CSI");
    cmd->add_option("--seed", cfg.seed, "Master seed");
    cmd->add_option("--out", cfg.out_dir, "Output directory");
    cmd->add_option("--epsilon", cfg.ao.epsilon, "Trust radius of the Neumann step");
    cmd->add_option("--max-iterations", cfg.ao.max_iterations, "Optimizer iteration cap");
    cmd->add_option("--mse-tolerance", cfg.ao.mse_tolerance, "Relative MSE stopping tolerance");
    cmd->add_option("--starts", cfg.ao.starts, "Random restarts per optimization");
    cmd->add_option("--target-snr-db", cfg.calibration.target_snr_db,
                    "Calibration SNR for the random RIS baseline");
    cmd->add_option("--calibration-configs", cfg.calibration.n_random_configs,
                    "Random configurations averaged in the calibration");
    cmd->add_flag("--post-combining-snr",
                  [&cfg](std::int64_t) {
                      cfg.calibration.reference = rismp::SnrReference::PostCombining;
                  },
                  "Calibrate against post-combining SNR instead of per-antenna SNR");
    cmd->add_flag("--body-grid", cfg.body_angle_grid,
                  "Use the i*pi/32 interferer grid from the running text");
}

void apply_variants(ExperimentConfig& cfg, const std::vector<std::string>& names) {
    if (names.empty()) return;
    cfg.variants.clear();
    for (const auto& n : names) {
        const auto v = rismp::variant_from_name(n);
        if (!v) throw CLI::ValidationError("--variants", "unknown variant: " + n);
        cfg.variants.push_back(*v);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiport-network RIS uplink simulator and CSI-free optimizer"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::vector<std::string> variant_names;

    auto* conv = app.add_subcommand("convergence", "Optimizer convergence traces (Fig. 3 setup)");
    auto* sweep = app.add_subcommand("angle-sweep", "Interferer angle sweep (Figs. 4-6 setup)");
    auto* beam = app.add_subcommand("beampattern", "Beampattern scans (Figs. 7-8 setup)");
    auto* calib = app.add_subcommand("calibrate", "Print the calibrated noise variance");
    for (auto* cmd : {conv, sweep, beam, calib}) add_common_options(cmd, cfg, variant_names);

    CLI11_PARSE(app, argc, argv);

    try {
        apply_variants(cfg, variant_names);
        std::vector<std::string> written;
        if (conv->parsed()) {
            written = rismp::run_convergence(cfg);
        } else if (sweep->parsed()) {
            written = rismp::run_angle_sweep(cfg);
        } else if (beam->parsed()) {
            written = rismp::run_beampattern(cfg);
        } else if (calib->parsed()) {
            for (double dx : cfg.dx_fractions) {
                for (double sigma : cfg.sigmas) {
                    const rismp::Scenario sc = rismp::experiment_scenario(
                        cfg, dx, sigma,
                        {rismp::constants::pi / 8.0, rismp::constants::pi / 4.0,
                         3.0 * rismp::constants::pi / 8.0});
                    rismp::NetworkOptions opts;
                    opts.z0 = sc.z0;
                    opts.r0 = sc.r0;
                    const auto net = rismp::assemble_network(sc.geometry, opts);
                    const auto v = rismp::bs_combiner(sc.geometry);
                    const double sn2 =
                        rismp::calibrate_noise(net, sc.geometry, v, cfg.calibration);
                    std::printf("dx_fraction=%g sigma=%g noise_variance=%.12e\n", dx, sigma,
                                sn2);
                }
            }
        }
        for (const auto& path : written) std::printf("wrote %s\n", path.c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: {\"message\": \"%s\"}\n", e.what());
        return 1;
    }
    return 0;
}
