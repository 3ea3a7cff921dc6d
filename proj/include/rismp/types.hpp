// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#ifndef RISMP_TYPES_HPP
#define RISMP_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace rismp {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double speed_of_light = 299792458.0;       // m/s
inline constexpr double eta0 = 376.730313668;               // free-space impedance, Ohm
}  // namespace constants

}  // namespace rismp

#endif
