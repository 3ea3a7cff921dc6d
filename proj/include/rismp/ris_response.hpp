// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#ifndef RISMP_RIS_RESPONSE_HPP
#define RISMP_RIS_RESPONSE_HPP

#include "rismp/em_network.hpp"
#include "rismp/types.hpp"

namespace rismp {

// Default guard band around phi = 0 mod 2pi, where b = Z0*cot(phi/2) diverges.
inline constexpr double kPhaseGuard = 1e-3;  // rad

// Tunable RIS termination. Reactances b and reflection phases phi are kept
// mutually consistent: Gamma(j b_m) = exp(j phi_m), b_m = Z0 cot(phi_m / 2),
// phi in (0, 2pi).
struct RisState {
    RVec b;    // Ohm
    RVec phi;  // rad

    static RisState from_phases(const RVec& phi, double z0, double guard = kPhaseGuard);
    static RisState from_reactances(const RVec& b, double z0);
};

// b = Z0 cot(phi/2); throws PhaseAtBranchPoint inside the guard band.
double phase_to_reactance(double phi, double z0, double guard = kPhaseGuard);

// phi = pi - 2 atan(b / Z0), principal value in (0, 2pi).
double reactance_to_phase(double b, double z0);

// d b / d phi = -(b^2 + Z0^2) / (2 Z0), the diagonal of F.
double reactance_jacobian(double b, double z0);

RVec phases_to_reactances(const RVec& phi, double z0, double guard = kPhaseGuard);
RVec reactances_to_phases(const RVec& b, double z0);
RVec reactance_jacobian(const RVec& b, double z0);

// Multiport reflection operator: -2 Y0 (Z_SS + r0 I + j diag(b))^-1.
// Dense because of mutual coupling. Throws SingularNetwork when the loaded
// network matrix is numerically singular.
CMat delta_mp(const ImpedanceNetwork& network, const RisState& state);

// Communication-theory operator: diag((Y0/Z0) exp(j phi_m)), with K0 pinned
// to Y0/Z0 so CT and MP responses share one power scale.
CMat delta_ct(const RisState& state, double z0, double y0);

// Ideal multiport operator for a decoupled RIS: diag(-2 Y0 / (Z0 + j b_m)).
CMat delta_imp(const RisState& state, double z0, double y0);

}  // namespace rismp

#endif
