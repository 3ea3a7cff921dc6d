// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#ifndef RISMP_GEOMETRY_HPP
#define RISMP_GEOMETRY_HPP

#include <vector>

#include "rismp/types.hpp"

namespace rismp {

// Uniform planar array of z-oriented thin-wire dipoles in the x-z plane.
struct ArraySpec {
    int n_horizontal = 1;           // elements along x
    int n_vertical = 1;             // elements along z
    double spacing_x = 0.0;         // m
    double spacing_z = 0.0;         // m
    Vec3 center = Vec3::Zero();     // m
    double element_length = 0.0;    // m
    double element_radius = 0.0;    // m

    int count() const { return n_horizontal * n_vertical; }
    void validate() const;  // throws std::invalid_argument
};

// Single-antenna user terminal with a circular position prior.
struct UeSpec {
    Vec3 nominal_position = Vec3::Zero();  // m, z = 0 by convention
    double uncertainty_radius = 0.0;       // m, disk radius sigma
    double tx_power = 0.1;                 // W (sigma_i^2)

    void validate() const;
};

struct ScenarioGeometry {
    ArraySpec bs;
    ArraySpec ris;
    std::vector<UeSpec> ues;  // index 0 = intended user
    double wavelength = 0.0;  // m

    void validate() const;
};

// Element centers on the regular grid, row-major with the horizontal index
// fastest. The grid centroid coincides with `center`.
std::vector<Vec3> element_positions(const ArraySpec& array);

// x-coordinates of the elements, same ordering as element_positions.
RVec element_x_coordinates(const ArraySpec& array);

// Azimuth of `point` seen from `reference`, measured from the +y broadside
// axis, positive toward +x (phase convention x*sin(phi)). Elevation ignored.
double azimuth_of(const Vec3& point, const Vec3& reference);

// Horizontal distance between two points.
double horizontal_distance(const Vec3& a, const Vec3& b);

// Full angular width subtended by the UE uncertainty disk at `reference`:
// 2*asin(sigma/d) with d the horizontal distance to the nominal position.
double angular_spread(const UeSpec& ue, const Vec3& reference);

}  // namespace rismp

#endif
