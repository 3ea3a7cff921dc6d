// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#include "rismp/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "rismp/errors.hpp"

namespace rismp {

void ArraySpec::validate() const {
    if (n_horizontal < 1 || n_vertical < 1)
        throw std::invalid_argument("ArraySpec: element counts must be >= 1");
    if (n_horizontal > 1 && spacing_x <= 0.0)
        throw std::invalid_argument("ArraySpec: spacing_x must be > 0");
    if (n_vertical > 1 && spacing_z <= 0.0)
        throw std::invalid_argument("ArraySpec: spacing_z must be > 0");
    if (element_length <= 0.0 || element_radius <= 0.0)
        throw std::invalid_argument("ArraySpec: dipole length and radius must be > 0");
}

void UeSpec::validate() const {
    if (uncertainty_radius < 0.0)
        throw std::invalid_argument("UeSpec: uncertainty radius must be >= 0");
    if (tx_power <= 0.0)
        throw std::invalid_argument("UeSpec: tx power must be > 0");
}

void ScenarioGeometry::validate() const {
    bs.validate();
    ris.validate();
    if (ues.empty())
        throw std::invalid_argument("ScenarioGeometry: at least one UE required");
    for (const auto& ue : ues) ue.validate();
    if (wavelength <= 0.0)
        throw std::invalid_argument("ScenarioGeometry: wavelength must be > 0");
}

std::vector<Vec3> element_positions(const ArraySpec& array) {
    array.validate();
    std::vector<Vec3> pos;
    pos.reserve(static_cast<std::size_t>(array.count()));
    const double x0 = 0.5 * (array.n_horizontal - 1);
    const double z0 = 0.5 * (array.n_vertical - 1);
    for (int iv = 0; iv < array.n_vertical; ++iv) {
        for (int ih = 0; ih < array.n_horizontal; ++ih) {
            Vec3 p = array.center;
            p.x() += (ih - x0) * array.spacing_x;
            p.z() += (iv - z0) * array.spacing_z;
            pos.push_back(p);
        }
    }
    return pos;
}

RVec element_x_coordinates(const ArraySpec& array) {
    const auto pos = element_positions(array);
    RVec x(static_cast<Eigen::Index>(pos.size()));
    for (std::size_t i = 0; i < pos.size(); ++i) x[static_cast<Eigen::Index>(i)] = pos[i].x();
    return x;
}

double azimuth_of(const Vec3& point, const Vec3& reference) {
    const double dx = point.x() - reference.x();
    const double dy = point.y() - reference.y();
    if (std::hypot(dx, dy) < 1e-15)
        throw DegenerateDirection("azimuth_of: no horizontal displacement");
    return std::atan2(dx, dy);
}

double horizontal_distance(const Vec3& a, const Vec3& b) {
    return std::hypot(a.x() - b.x(), a.y() - b.y());
}

double angular_spread(const UeSpec& ue, const Vec3& reference) {
    if (ue.uncertainty_radius == 0.0) return 0.0;
    const double d = horizontal_distance(ue.nominal_position, reference);
    if (ue.uncertainty_radius >= d)
        throw UncertaintyTooLarge("angular_spread: uncertainty disk reaches the reference point");
    return 2.0 * std::asin(ue.uncertainty_radius / d);
}

}  // namespace rismp
