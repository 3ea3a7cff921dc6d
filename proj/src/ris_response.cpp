// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#include "rismp/ris_response.hpp"

#include <cmath>

#include "rismp/errors.hpp"

namespace rismp {

namespace {
constexpr double kTwoPi = 2.0 * constants::pi;

double wrap_phase(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}
}  // namespace

double phase_to_reactance(double phi, double z0, double guard) {
    const double w = wrap_phase(phi);
    if (w < guard || w > kTwoPi - guard)
        throw PhaseAtBranchPoint("phase_to_reactance: phase within guard band of 0 mod 2pi");
    return z0 / std::tan(0.5 * w);
}

double reactance_to_phase(double b, double z0) {
    if (!std::isfinite(b)) throw PhaseAtBranchPoint("reactance_to_phase: reactance not finite");
    return constants::pi - 2.0 * std::atan(b / z0);
}

double reactance_jacobian(double b, double z0) { return -(b * b + z0 * z0) / (2.0 * z0); }

RVec phases_to_reactances(const RVec& phi, double z0, double guard) {
    RVec b(phi.size());
    for (Eigen::Index i = 0; i < phi.size(); ++i) b[i] = phase_to_reactance(phi[i], z0, guard);
    return b;
}

RVec reactances_to_phases(const RVec& b, double z0) {
    RVec phi(b.size());
    for (Eigen::Index i = 0; i < b.size(); ++i) phi[i] = reactance_to_phase(b[i], z0);
    return phi;
}

RVec reactance_jacobian(const RVec& b, double z0) {
    RVec f(b.size());
    for (Eigen::Index i = 0; i < b.size(); ++i) f[i] = reactance_jacobian(b[i], z0);
    return f;
}

RisState RisState::from_phases(const RVec& phi, double z0, double guard) {
    RisState s;
    s.phi = phi.unaryExpr([](double p) { return wrap_phase(p); });
    s.b = phases_to_reactances(phi, z0, guard);
    return s;
}

RisState RisState::from_reactances(const RVec& b, double z0) {
    RisState s;
    s.b = b;
    s.phi = reactances_to_phases(b, z0);
    return s;
}

CMat delta_mp(const ImpedanceNetwork& network, const RisState& state) {
    const Eigen::Index m = network.z_ss.rows();
    CMat loaded = network.z_ss;
    loaded.diagonal().array() += Complex(network.r0, 0.0);
    for (Eigen::Index i = 0; i < m; ++i) loaded(i, i) += Complex(0.0, state.b[i]);
    Eigen::PartialPivLU<CMat> lu(loaded);
    if (lu.rcond() < 1e-12)
        throw SingularNetwork("delta_mp: loaded network matrix is numerically singular");
    return -2.0 * network.y0 * lu.inverse();
}

CMat delta_ct(const RisState& state, double z0, double y0) {
    const Eigen::Index m = state.phi.size();
    CMat d = CMat::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        d(i, i) = (y0 / z0) * std::exp(Complex(0.0, state.phi[i]));
    return d;
}

CMat delta_imp(const RisState& state, double z0, double y0) {
    const Eigen::Index m = state.b.size();
    CMat d = CMat::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) d(i, i) = -2.0 * y0 / Complex(z0, state.b[i]);
    return d;
}

}  // namespace rismp
