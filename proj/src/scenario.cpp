// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#include "rismp/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rismp {

using nlohmann::json;

void RicianSpec::validate() const {
    if (k_ris_ue <= 0.0 || k_bs_ris <= 0.0)
        throw std::invalid_argument("RicianSpec: K factors must be > 0");
    if (nlos_spread <= 0.0 || nlos_spread >= constants::pi || nlos_spread_bs <= 0.0 ||
        nlos_spread_bs >= constants::pi)
        throw std::invalid_argument("RicianSpec: NLOS spreads must lie in (0, pi)");
}

Scenario paper_default(double dx_fraction, double sigma, std::vector<double> ue_azimuths,
                       double ue_distance) {
    if (dx_fraction <= 0.0) throw std::invalid_argument("paper_default: dx fraction must be > 0");
    if (ue_azimuths.empty()) throw std::invalid_argument("paper_default: need at least one UE");
    Scenario sc;
    const double lambda = constants::speed_of_light / 30e9;
    sc.geometry.wavelength = lambda;

    ArraySpec& ris = sc.geometry.ris;
    ris.n_horizontal = static_cast<int>(std::lround(16.0 / dx_fraction));
    ris.n_vertical = 4;
    ris.spacing_x = dx_fraction * lambda;
    ris.spacing_z = 0.75 * lambda;
    ris.center = Vec3(0.0, 0.0, 3.0);
    ris.element_length = 0.46 * lambda;
    ris.element_radius = lambda / 500.0;

    ArraySpec& bs = sc.geometry.bs;
    bs.n_horizontal = 8;
    bs.n_vertical = 2;
    bs.spacing_x = 0.5 * lambda;
    bs.spacing_z = 0.75 * lambda;
    bs.center = Vec3(-7.0, 7.0, 2.0);
    bs.element_length = 0.46 * lambda;
    bs.element_radius = lambda / 500.0;

    for (double phi : ue_azimuths) {
        UeSpec ue;
        ue.nominal_position = Vec3(ue_distance * std::sin(phi), ue_distance * std::cos(phi), 0.0);
        ue.uncertainty_radius = sigma;
        ue.tx_power = 0.1;  // 20 dBm
        sc.geometry.ues.push_back(ue);
    }
    sc.geometry.validate();
    sc.rician.validate();
    return sc;
}

namespace {

json array_to_json(const ArraySpec& a) {
    return json{{"n_horizontal", a.n_horizontal},
                {"n_vertical", a.n_vertical},
                {"spacing_x", a.spacing_x},
                {"spacing_z", a.spacing_z},
                {"center", {a.center.x(), a.center.y(), a.center.z()}},
                {"element_length", a.element_length},
                {"element_radius", a.element_radius}};
}

ArraySpec array_from_json(const json& j) {
    ArraySpec a;
    a.n_horizontal = j.at("n_horizontal").get<int>();
    a.n_vertical = j.at("n_vertical").get<int>();
    a.spacing_x = j.at("spacing_x").get<double>();
    a.spacing_z = j.at("spacing_z").get<double>();
    const auto& c = j.at("center");
    a.center = Vec3(c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>());
    a.element_length = j.at("element_length").get<double>();
    a.element_radius = j.at("element_radius").get<double>();
    return a;
}

}  // namespace

std::string scenario_to_json(const Scenario& sc) {
    json j;
    j["wavelength"] = sc.geometry.wavelength;
    j["bs"] = array_to_json(sc.geometry.bs);
    j["ris"] = array_to_json(sc.geometry.ris);
    j["ues"] = json::array();
    for (const auto& ue : sc.geometry.ues) {
        j["ues"].push_back(
            json{{"position", {ue.nominal_position.x(), ue.nominal_position.y(),
                               ue.nominal_position.z()}},
                 {"uncertainty_radius", ue.uncertainty_radius},
                 {"tx_power", ue.tx_power}});
    }
    j["rician"] = json{{"k_ris_ue", sc.rician.k_ris_ue},
                       {"k_bs_ris", sc.rician.k_bs_ris},
                       {"nlos_spread", sc.rician.nlos_spread},
                       {"nlos_spread_bs", sc.rician.nlos_spread_bs}};
    j["z0"] = sc.z0;
    j["r0"] = sc.r0;
    return j.dump(2);
}

Scenario scenario_from_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    Scenario sc;
    sc.geometry.wavelength = j.at("wavelength").get<double>();
    sc.geometry.bs = array_from_json(j.at("bs"));
    sc.geometry.ris = array_from_json(j.at("ris"));
    for (const auto& ju : j.at("ues")) {
        UeSpec ue;
        const auto& p = ju.at("position");
        ue.nominal_position = Vec3(p.at(0).get<double>(), p.at(1).get<double>(),
                                   p.at(2).get<double>());
        ue.uncertainty_radius = ju.at("uncertainty_radius").get<double>();
        ue.tx_power = ju.at("tx_power").get<double>();
        sc.geometry.ues.push_back(ue);
    }
    if (j.contains("rician")) {
        const auto& jr = j.at("rician");
        sc.rician.k_ris_ue = jr.value("k_ris_ue", sc.rician.k_ris_ue);
        sc.rician.k_bs_ris = jr.value("k_bs_ris", sc.rician.k_bs_ris);
        sc.rician.nlos_spread = jr.value("nlos_spread", sc.rician.nlos_spread);
        sc.rician.nlos_spread_bs = jr.value("nlos_spread_bs", sc.rician.nlos_spread_bs);
    }
    sc.z0 = j.value("z0", sc.z0);
    sc.r0 = j.value("r0", sc.r0);
    sc.geometry.validate();
    sc.rician.validate();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_scenario: cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return scenario_from_json(ss.str());
}

std::uint64_t scenario_hash(const Scenario& scenario) {
    const std::string canon = scenario_to_json(scenario);
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace rismp
