// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#ifndef RISMP_ERRORS_HPP
#define RISMP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rismp {

// Requested azimuth of a point with no horizontal displacement from the reference.
struct DegenerateDirection : std::runtime_error {
    explicit DegenerateDirection(const std::string& what) : std::runtime_error(what) {}
};

// Uncertainty disk radius reaches or exceeds the distance to the reference point.
struct UncertaintyTooLarge : std::runtime_error {
    explicit UncertaintyTooLarge(const std::string& what) : std::runtime_error(what) {}
};

// Two distinct dipoles intersect; impedance integrals are undefined.
struct GeometryOverlap : std::runtime_error {
    explicit GeometryOverlap(const std::string& what) : std::runtime_error(what) {}
};

// Loaded network matrix is numerically singular (condition number above 1e12).
struct SingularNetwork : std::runtime_error {
    explicit SingularNetwork(const std::string& what) : std::runtime_error(what) {}
};

// Reflection phase within the guard band of 0 mod 2pi, where the reactance diverges.
struct PhaseAtBranchPoint : std::runtime_error {
    explicit PhaseAtBranchPoint(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rismp

#endif
