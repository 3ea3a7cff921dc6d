// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#ifndef RISMP_EM_NETWORK_HPP
#define RISMP_EM_NETWORK_HPP

#include <string>
#include <vector>

#include "rismp/geometry.hpp"
#include "rismp/types.hpp"

namespace rismp {

// z-oriented thin-wire dipole with sinusoidal current profile.
struct PlacedDipole {
    Vec3 center = Vec3::Zero();  // m
    double length = 0.0;         // m
    double radius = 0.0;         // m
};

std::vector<PlacedDipole> placed_dipoles(const ArraySpec& array);

// Z-parameter description of the RIS-aided link. All blocks are in Ohm and
// refer to base currents of the sinusoidal-current dipole model.
struct ImpedanceNetwork {
    CMat z_ss;                 // M x M, complex-symmetric (reciprocity)
    CMat s;                    // N x M, RIS -> BS channel
    std::vector<CVec> t;       // M vectors, UE -> RIS channels, one per UE
    double z0 = 50.0;          // reference impedance, Ohm
    double r0 = 0.1;           // parasitic series resistance, Ohm
    double y0 = 1.0 / 50.0;    // reference admittance, 1/Ohm

    int ris_elements() const { return static_cast<int>(z_ss.rows()); }
    int bs_elements() const { return static_cast<int>(s.rows()); }
};

// Mutual impedance of two parallel z-oriented dipoles by the induced-EMF
// method (sinusoidal currents, exact three-term field kernel, adaptive
// quadrature to 1e-6 Ohm absolute). The self term uses the wire radius as
// lateral offset. Throws GeometryOverlap if distinct dipoles intersect.
Complex mutual_impedance(const PlacedDipole& a, const PlacedDipole& b, double wavelength);

// Pairwise self/mutual impedance matrix of the RIS array. Complex-symmetric
// by construction.
CMat assemble_z_ss(const ArraySpec& ris, double wavelength);

// Impedance channel between two arrays: entry (q, p) couples rx element q
// with tx element p. Arrays must be disjoint.
CMat assemble_channel(const std::vector<PlacedDipole>& tx, const std::vector<PlacedDipole>& rx,
                      double wavelength);

struct NetworkOptions {
    double z0 = 50.0;
    double r0 = 0.1;
};

// Z_SS, S and all t_i for the nominal UE positions.
ImpedanceNetwork assemble_network(const ScenarioGeometry& geometry,
                                  const NetworkOptions& options = {});

// Fixed BS-side beamforming vector steered at the RIS: the steering vector
// a(phi_BS) evaluated on the BS grid, with phi_BS the azimuth of the BS seen
// from the RIS. The BS array faces the RIS, so its local horizontal axis is
// the mirrored global x axis; with that orientation the vector is also the
// coherent (matched) combiner for the LOS S matrix.
CVec bs_combiner(const ScenarioGeometry& geometry);

// Binary cache of an assembled network, keyed by the scenario hash
// (dims + row-major re/im doubles). Returns false if no usable entry exists.
bool load_network_cache(const std::string& path, ImpedanceNetwork& network);
void save_network_cache(const std::string& path, const ImpedanceNetwork& network);

}  // namespace rismp

#endif
