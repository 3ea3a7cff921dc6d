// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#include "rismp/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "rismp/rng.hpp"

namespace rismp {

namespace fs = std::filesystem;
using constants::pi;

const char* variant_name(Variant variant) {
    switch (variant) {
        case Variant::OptNoCsi: return "OPT-NoCSI";
        case Variant::CtNoCsi: return "CT-NoCSI";
        case Variant::OptCsi: return "OPT-CSI";
    }
    return "?";
}

std::optional<Variant> variant_from_name(const std::string& name) {
    if (name == "OPT-NoCSI") return Variant::OptNoCsi;
    if (name == "CT-NoCSI") return Variant::CtNoCsi;
    if (name == "OPT-CSI") return Variant::OptCsi;
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    if (variants.empty()) throw std::invalid_argument("ExperimentConfig: empty variant set");
    if (dx_fractions.empty() || sigmas.empty())
        throw std::invalid_argument("ExperimentConfig: empty sweep");
    if (trials < 1 || csi_realizations < 1)
        throw std::invalid_argument("ExperimentConfig: trial counts must be >= 1");
    ao.validate();
    fs::create_directories(out_dir);
    if (!fs::is_directory(out_dir))
        throw std::invalid_argument("ExperimentConfig: output directory not writable");
}

std::vector<double> interferer_angle_grid(bool body_text_grid) {
    std::vector<double> grid;
    if (body_text_grid) {
        for (int i = 1; i <= 15; ++i) grid.push_back(i * pi / 32.0);
    } else {
        for (int i = 1; i <= 12; ++i) grid.push_back(pi / 8.0 + (i - 1) * pi / 32.0);
    }
    return grid;
}

Scenario experiment_scenario(const ExperimentConfig& config, double dx_fraction, double sigma,
                             const std::vector<double>& ue_azimuths) {
    if (!config.scenario_file.empty()) {
        Scenario sc = load_scenario(config.scenario_file);
        for (auto& ue : sc.geometry.ues) ue.uncertainty_radius = sigma;
        return sc;
    }
    return paper_default(dx_fraction, sigma, ue_azimuths, config.ue_distance);
}

namespace {

std::string format_cell(double dx_fraction, double sigma) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(4) << "dx" << dx_fraction << "_sigma"
       << std::setprecision(2) << sigma;
    return ss.str();
}

std::string provenance(const char* experiment, const Scenario& sc,
                       const ExperimentConfig& config, double dx_fraction, double sigma) {
    std::ostringstream ss;
    ss << "# rismp " << experiment << "\n";
    ss << "# scenario_hash=" << std::hex << std::setw(16) << std::setfill('0')
       << scenario_hash(sc) << std::dec << "\n";
    ss << "# seed=" << config.seed << " trials=" << config.trials
       << " csi_realizations=" << config.csi_realizations << "\n";
    ss << "# dx_fraction=" << dx_fraction << " sigma=" << sigma
       << " epsilon=" << config.ao.epsilon << " max_iterations=" << config.ao.max_iterations
       << " starts=" << config.ao.starts << " target_snr_db="
       << config.calibration.target_snr_db << "\n";
    return ss.str();
}

struct CellSetup {
    Scenario scenario;
    ImpedanceNetwork network;
    CVec v;
    double noise = 0.0;
    ChannelStatistics stats;
};

CellSetup prepare_cell(const ExperimentConfig& config, double dx_fraction, double sigma,
                       const std::vector<double>& azimuths) {
    CellSetup cell;
    cell.scenario = experiment_scenario(config, dx_fraction, sigma, azimuths);
    cell.scenario.rician.validate();
    NetworkOptions opts;
    opts.z0 = cell.scenario.z0;
    opts.r0 = cell.scenario.r0;
    cell.network = assemble_network(cell.scenario.geometry, opts);
    cell.v = bs_combiner(cell.scenario.geometry);
    cell.noise = calibrate_noise(cell.network, cell.scenario.geometry, cell.v,
                                 config.calibration);
    cell.stats = build_statistics(cell.scenario.geometry, cell.scenario.rician, cell.network);
    return cell;
}

}  // namespace

std::vector<std::string> run_convergence(const ExperimentConfig& config) {
    config.validate();
    const std::vector<double> angles = {pi / 8.0, pi / 4.0, 3.0 * pi / 8.0};
    std::vector<std::string> written;
    for (double dx : config.dx_fractions) {
        for (double sigma : config.sigmas) {
            CellSetup cell = prepare_cell(config, dx, sigma, angles);
            AoConfig ao = config.ao;
            ao.model = RisModel::MP;
            ao.seed = mix_seed(config.seed, scenario_hash(cell.scenario));
            const AoResult res = ao_optimize(cell.network, cell.stats, cell.v, cell.noise, ao);

            const fs::path path =
                fs::path(config.out_dir) / ("convergence_" + format_cell(dx, sigma) + ".csv");
            std::ofstream f(path);
            if (!f) throw std::runtime_error("run_convergence: cannot open " + path.string());
            f << provenance("convergence", cell.scenario, config, dx, sigma);
            f << "iteration,rate_bound\n";
            f.precision(17);
            for (const auto& it : res.trace) f << it.iteration << ',' << it.rate_bound << '\n';
            written.push_back(path.string());
        }
    }
    return written;
}

namespace {

struct SweepRow {
    int index = 0;
    Variant variant = Variant::OptNoCsi;
    double mean_rate = 0.0;
    double stderr_rate = 0.0;
    double rate_bound = 0.0;
};

SweepRow evaluate_nocsi(const ExperimentConfig& config, const CellSetup& cell, int index,
                        Variant variant) {
    AoConfig ao = config.ao;
    ao.model = (variant == Variant::CtNoCsi) ? RisModel::CT : RisModel::MP;
    ao.seed = mix_seed(config.seed, static_cast<std::uint64_t>(1000 + index));
    const AoResult res = ao_optimize(cell.network, cell.stats, cell.v, cell.noise, ao);
    const EvaluationReport rep =
        monte_carlo_rate(cell.scenario, cell.network, res.b, cell.v, cell.noise, config.trials,
                         mix_seed(config.seed, static_cast<std::uint64_t>(index)), &cell.stats);
    SweepRow row;
    row.index = index;
    row.variant = variant;
    row.mean_rate = rep.mean_rate;
    row.stderr_rate = rep.stderr_rate;
    row.rate_bound = res.rate_bound;
    return row;
}

SweepRow evaluate_csi(const ExperimentConfig& config, const CellSetup& cell, int index) {
    const RealizationSampler sampler(cell.scenario, cell.network);
    std::vector<double> powers;
    for (const auto& ue : cell.scenario.geometry.ues) powers.push_back(ue.tx_power);

    double sum = 0.0, sum2 = 0.0, bound = 0.0;
    for (int j = 0; j < config.csi_realizations; ++j) {
        const std::uint64_t rseed =
            mix_seed(config.seed, static_cast<std::uint64_t>(index) * 1000003ULL +
                                      static_cast<std::uint64_t>(j));
        const ChannelRealization real = sampler.sample(rseed);
        ImpedanceNetwork genie = cell.network;
        genie.s = real.s_e;  // exact channel knowledge includes the BS link
        const ChannelStatistics stats = rank_one_statistics(real.t_e, powers);

        AoConfig ao = config.ao;
        ao.model = RisModel::MP;
        ao.seed = rseed;
        const AoResult res = ao_optimize(genie, stats, cell.v, cell.noise, ao);
        const double rate = instantaneous_rate(real, cell.network, cell.scenario.geometry,
                                               res.b, cell.v, cell.noise);
        sum += rate;
        sum2 += rate * rate;
        bound += res.rate_bound;
    }
    const int n = config.csi_realizations;
    SweepRow row;
    row.index = index;
    row.variant = Variant::OptCsi;
    row.mean_rate = sum / n;
    const double var = std::max(0.0, sum2 / n - row.mean_rate * row.mean_rate);
    row.stderr_rate = std::sqrt(var / n);
    row.rate_bound = bound / n;
    return row;
}

}  // namespace

std::vector<std::string> run_angle_sweep(const ExperimentConfig& config) {
    config.validate();
    const std::vector<double> grid = interferer_angle_grid(config.body_angle_grid);
    std::vector<std::string> written;
    for (double sigma : config.sigmas) {
        for (double dx : config.dx_fractions) {
            std::vector<SweepRow> rows;
            for (std::size_t gi = 0; gi < grid.size(); ++gi) {
                const int index = static_cast<int>(gi) + 1;
                CellSetup cell =
                    prepare_cell(config, dx, sigma, {pi / 8.0, grid[gi]});
                for (Variant variant : config.variants) {
                    if (variant == Variant::OptCsi)
                        rows.push_back(evaluate_csi(config, cell, index));
                    else
                        rows.push_back(evaluate_nocsi(config, cell, index, variant));
                }
            }
            const Scenario sc_echo =
                experiment_scenario(config, dx, sigma, {pi / 8.0, grid[0]});
            const fs::path path =
                fs::path(config.out_dir) / ("angle_sweep_" + format_cell(dx, sigma) + ".csv");
            std::ofstream f(path);
            if (!f) throw std::runtime_error("run_angle_sweep: cannot open " + path.string());
            f << provenance("angle-sweep", sc_echo, config, dx, sigma);
            f << "interferer_index,variant,mean_rate,stderr,rate_bound\n";
            f.precision(17);
            for (const auto& row : rows)
                f << row.index << ',' << variant_name(row.variant) << ',' << row.mean_rate << ','
                  << row.stderr_rate << ',' << row.rate_bound << '\n';
            written.push_back(path.string());
        }
    }
    return written;
}

BeamSummary summarize_beampattern(const std::vector<std::pair<double, double>>& pattern) {
    if (pattern.empty()) throw std::invalid_argument("summarize_beampattern: empty pattern");
    BeamSummary s;
    std::size_t peak = 0;
    for (std::size_t i = 1; i < pattern.size(); ++i)
        if (pattern[i].second > pattern[peak].second) peak = i;
    s.peak_angle_deg = pattern[peak].first * 180.0 / pi;
    s.peak_db = pattern[peak].second;

    double at45 = -1e300;
    double best_dist = 1e300;
    for (const auto& [ang, db] : pattern) {
        const double dist = std::abs(ang - pi / 4.0);
        if (dist < best_dist) {
            best_dist = dist;
            at45 = db;
        }
    }
    s.null_depth_db_at_45 = s.peak_db - at45;

    // -3 dB width around the peak, linear interpolation at the crossings
    const double level = s.peak_db - 3.0;
    double lo = pattern.front().first, hi = pattern.back().first;
    for (std::size_t i = peak; i-- > 0;) {
        if (pattern[i].second < level) {
            const double t = (level - pattern[i].second) /
                             (pattern[i + 1].second - pattern[i].second);
            lo = pattern[i].first + t * (pattern[i + 1].first - pattern[i].first);
            break;
        }
    }
    for (std::size_t i = peak + 1; i < pattern.size(); ++i) {
        if (pattern[i].second < level) {
            const double t = (pattern[i - 1].second - level) /
                             (pattern[i - 1].second - pattern[i].second);
            hi = pattern[i - 1].first + t * (pattern[i].first - pattern[i - 1].first);
            break;
        }
    }
    s.width_3db_deg = (hi - lo) * 180.0 / pi;
    return s;
}

std::vector<std::string> run_beampattern(const ExperimentConfig& config) {
    config.validate();
    std::vector<double> grid;
    for (double a = 0.0; a <= 90.0001; a += 0.5) grid.push_back(a * pi / 180.0);

    std::vector<std::string> written;
    const fs::path summary_path = fs::path(config.out_dir) / "beampattern_summary.csv";
    std::ofstream summary(summary_path);
    if (!summary)
        throw std::runtime_error("run_beampattern: cannot open " + summary_path.string());
    summary << "# rismp beampattern summary\n";
    summary << "dx_fraction,sigma,variant,peak_angle_deg,peak_db,null_depth_db_at_45,"
               "width_3db_deg\n";
    summary.precision(17);

    for (double sigma : config.sigmas) {
        for (double dx : config.dx_fractions) {
            CellSetup cell = prepare_cell(config, dx, sigma, {pi / 8.0, pi / 4.0});
            for (Variant variant : config.variants) {
                if (variant == Variant::OptCsi) continue;  // pattern figures use the priors
                AoConfig ao = config.ao;
                ao.model = (variant == Variant::CtNoCsi) ? RisModel::CT : RisModel::MP;
                ao.seed = mix_seed(config.seed, variant == Variant::CtNoCsi ? 2u : 1u);
                const AoResult res =
                    ao_optimize(cell.network, cell.stats, cell.v, cell.noise, ao);
                const auto pattern =
                    beampattern(cell.network, cell.scenario.geometry, res.b, cell.v, grid,
                                config.ue_distance, cell.scenario.geometry.ues[0].tx_power);

                const fs::path path =
                    fs::path(config.out_dir) / ("beampattern_" + format_cell(dx, sigma) + "_" +
                                                variant_name(variant) + ".csv");
                std::ofstream f(path);
                if (!f)
                    throw std::runtime_error("run_beampattern: cannot open " + path.string());
                f << provenance("beampattern", cell.scenario, config, dx, sigma);
                f << "angle_deg,power_db\n";
                f.precision(17);
                for (const auto& [ang, db] : pattern)
                    f << ang * 180.0 / pi << ',' << db << '\n';
                written.push_back(path.string());

                const BeamSummary bs = summarize_beampattern(pattern);
                summary << dx << ',' << sigma << ',' << variant_name(variant) << ','
                        << bs.peak_angle_deg << ',' << bs.peak_db << ','
                        << bs.null_depth_db_at_45 << ',' << bs.width_3db_deg << '\n';
            }
        }
    }
    written.push_back(summary_path.string());
    return written;
}

}  // namespace rismp
