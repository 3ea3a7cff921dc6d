// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#ifndef RISMP_SCENARIO_HPP
#define RISMP_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rismp/geometry.hpp"
#include "rismp/types.hpp"

namespace rismp {

// Rician fading model parameters shared by all links.
struct RicianSpec {
    double k_ris_ue = 10.0;                        // K1, linear
    double k_bs_ris = 20.0;                        // K0, linear
    double nlos_spread = constants::pi / 6.0;      // Delta_m, rad
    double nlos_spread_bs = constants::pi / 12.0;  // Delta_m^(BS), rad

    void validate() const;
};

// Full simulation scenario: geometry, fading priors and network constants.
struct Scenario {
    ScenarioGeometry geometry;
    RicianSpec rician;
    double z0 = 50.0;  // Ohm
    double r0 = 0.1;   // Ohm
};

// The Section-V setup: 30 GHz carrier, RIS at (0,0,3) facing +y, BS 8x2 at
// (-7,7,2), dipoles of length 0.46*lambda and radius lambda/500, d_z = 3/4
// lambda, M_V = 4 and M_H = round(16/dx_fraction) so the aperture stays at
// 50 lambda^2. UEs sit on a 10 m arc at the given broadside azimuths, first
// entry the intended user, all at 20 dBm.
Scenario paper_default(double dx_fraction = 0.5, double sigma = 0.0,
                       std::vector<double> ue_azimuths = {constants::pi / 8.0,
                                                          constants::pi / 4.0,
                                                          3.0 * constants::pi / 8.0},
                       double ue_distance = 10.0);

Scenario load_scenario(const std::string& path);           // JSON file
Scenario scenario_from_json(const std::string& json_text);
std::string scenario_to_json(const Scenario& scenario);

// FNV-1a over the canonical serialization; keys caches and CSV provenance.
std::uint64_t scenario_hash(const Scenario& scenario);

}  // namespace rismp

#endif
