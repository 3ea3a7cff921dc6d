// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "rismp/errors.hpp"
#include "rismp/geometry.hpp"
#include "rismp/rng.hpp"
#include "rismp/scenario.hpp"

using namespace rismp;
using constants::pi;

namespace {
ArraySpec ris_spec(double lambda, int nh, int nv, double dx, double dz) {
    ArraySpec a;
    a.n_horizontal = nh;
    a.n_vertical = nv;
    a.spacing_x = dx;
    a.spacing_z = dz;
    a.element_length = 0.46 * lambda;
    a.element_radius = lambda / 500.0;
    return a;
}
}  // namespace

TEST_CASE("element_positions: single element sits at the center") {
    ArraySpec a = ris_spec(1.0, 1, 1, 0.5, 0.75);
    a.center = Vec3(0.0, 0.0, 0.0);
    const auto pos = element_positions(a);
    REQUIRE(pos.size() == 1);
    CHECK(pos[0].norm() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("element_positions: 2x1 array splits symmetrically about the center") {
    const double lambda = 1.0;
    ArraySpec a = ris_spec(lambda, 2, 1, lambda / 2.0, 0.75);
    const auto pos = element_positions(a);
    REQUIRE(pos.size() == 2);
    CHECK(pos[0].x() == doctest::Approx(-lambda / 4.0));
    CHECK(pos[1].x() == doctest::Approx(lambda / 4.0));
}

TEST_CASE("element_positions: paper RIS grid count, extent and centroid") {
    const double lambda = 0.01;
    ArraySpec a = ris_spec(lambda, 32, 4, lambda / 2.0, 0.75 * lambda);
    a.center = Vec3(0.0, 0.0, 3.0);
    const auto pos = element_positions(a);
    REQUIRE(pos.size() == 128);
    double min_x = 1e30, max_x = -1e30, min_z = 1e30, max_z = -1e30;
    Vec3 centroid = Vec3::Zero();
    for (const auto& p : pos) {
        min_x = std::min(min_x, p.x());
        max_x = std::max(max_x, p.x());
        min_z = std::min(min_z, p.z());
        max_z = std::max(max_z, p.z());
        centroid += p;
    }
    centroid /= 128.0;
    CHECK(max_x - min_x == doctest::Approx(15.5 * lambda));   // 31 gaps of lambda/2
    CHECK(max_z - min_z == doctest::Approx(2.25 * lambda));   // 3 gaps of 3 lambda/4
    CHECK((centroid - a.center).norm() < 1e-12);
    // row-major, horizontal fastest
    CHECK(pos[1].x() - pos[0].x() == doctest::Approx(lambda / 2.0));
    CHECK(pos[32].z() - pos[0].z() == doctest::Approx(0.75 * lambda));
}

TEST_CASE("element_positions: translation equivariance") {
    Rng rng(11);
    ArraySpec a = ris_spec(1.0, 5, 3, 0.4, 0.7);
    const auto base = element_positions(a);
    for (int t = 0; t < 20; ++t) {
        const Vec3 shift(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5));
        ArraySpec b = a;
        b.center += shift;
        const auto moved = element_positions(b);
        for (std::size_t i = 0; i < base.size(); ++i)
            CHECK((moved[i] - base[i] - shift).norm() == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("azimuth_of: broadside convention") {
    CHECK(azimuth_of(Vec3(0, 5, 0), Vec3::Zero()) == doctest::Approx(0.0));
    // paper geometry anchors
    const Vec3 ris(0, 0, 3);
    const Vec3 p(10 * std::cos(pi / 8), 10 * std::sin(pi / 8), 0);
    CHECK(azimuth_of(p, ris) == doctest::Approx(pi / 2 - pi / 8));
    CHECK(azimuth_of(Vec3(-7, 7, 2), ris) == doctest::Approx(-pi / 4));
    CHECK_THROWS_AS(azimuth_of(Vec3(0, 0, 9), Vec3::Zero()), DegenerateDirection);
}

TEST_CASE("angular_spread: exact subtended angle") {
    UeSpec ue;
    ue.nominal_position = Vec3(0, 10, 0);
    ue.uncertainty_radius = 0.0;
    CHECK(angular_spread(ue, Vec3::Zero()) == 0.0);
    ue.uncertainty_radius = 5.0;
    CHECK(angular_spread(ue, Vec3::Zero()) == doctest::Approx(pi / 3.0));
    ue.uncertainty_radius = 0.5;
    CHECK(angular_spread(ue, Vec3::Zero()) == doctest::Approx(2.0 * std::asin(0.05)));
    ue.uncertainty_radius = 10.0;
    CHECK_THROWS_AS(angular_spread(ue, Vec3::Zero()), UncertaintyTooLarge);
}

TEST_CASE("angular_spread: azimuth of any disk point stays inside the spread") {
    const Vec3 ref(0, 0, 3);
    UeSpec ue;
    ue.nominal_position = Vec3(10 * std::sin(0.7), 10 * std::cos(0.7), 0);
    ue.uncertainty_radius = 1.3;
    const double phi_c = azimuth_of(ue.nominal_position, ref);
    const double spread = angular_spread(ue, ref);
    Rng rng(5);
    for (int i = 0; i < 20000; ++i) {
        const double r = ue.uncertainty_radius * std::sqrt(rng.uniform());
        const double a = rng.uniform(0.0, 2.0 * pi);
        const Vec3 p = ue.nominal_position + Vec3(r * std::cos(a), r * std::sin(a), 0.0);
        const double phi = azimuth_of(p, ref);
        CHECK(phi >= phi_c - 0.5 * spread - 1e-12);
        CHECK(phi <= phi_c + 0.5 * spread + 1e-12);
    }
}

TEST_CASE("paper_default: Section-V constants") {
    const Scenario sc = paper_default(0.5, 0.0);
    const double lambda = constants::speed_of_light / 30e9;
    CHECK(sc.geometry.wavelength == doctest::Approx(lambda));
    CHECK(sc.geometry.ris.n_horizontal == 32);
    CHECK(sc.geometry.ris.n_vertical == 4);
    CHECK(sc.geometry.ris.count() == 128);
    CHECK(sc.geometry.ris.element_length == doctest::Approx(0.46 * lambda));
    CHECK(sc.geometry.ris.element_radius == doctest::Approx(lambda / 500));
    CHECK(sc.geometry.bs.count() == 16);
    CHECK(sc.geometry.bs.center.isApprox(Vec3(-7, 7, 2)));
    CHECK(sc.geometry.ues.size() == 3);
    CHECK(sc.geometry.ues[0].tx_power == doctest::Approx(0.1));
    // aperture stays 50 lambda^2 across spacings
    CHECK(paper_default(0.25).geometry.ris.n_horizontal == 64);
    CHECK(paper_default(0.125).geometry.ris.n_horizontal == 128);
}

TEST_CASE("scenario JSON round trip and hashing") {
    const Scenario sc = paper_default(0.25, 0.5);
    const Scenario back = scenario_from_json(scenario_to_json(sc));
    CHECK(scenario_hash(back) == scenario_hash(sc));
    Scenario other = sc;
    other.geometry.ues[0].uncertainty_radius = 1.0;
    CHECK(scenario_hash(other) != scenario_hash(sc));
}
