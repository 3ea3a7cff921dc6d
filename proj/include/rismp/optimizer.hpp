// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#ifndef RISMP_OPTIMIZER_HPP
#define RISMP_OPTIMIZER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rismp/channel_stats.hpp"
#include "rismp/em_network.hpp"
#include "rismp/ris_response.hpp"
#include "rismp/types.hpp"

namespace rismp {

enum class RisModel { MP, CT };

struct AoConfig {
    double epsilon = 0.1;            // trust radius of the Neumann step
    int max_iterations = 500;
    double mse_tolerance = 1e-6;     // relative MSE change stopping rule
    double mu_bisection_tol = 1e-6;  // relative tolerance on the active constraint
    RisModel model = RisModel::MP;
    std::uint64_t seed = 0;
    double phase_guard = kPhaseGuard;
    int max_halvings = 20;           // trust-region halvings before declaring convergence
    int starts = 1;                  // independent random restarts, best kept

    void validate() const;
};

struct AoIterate {
    int iteration = 0;
    double mse = 0.0;          // LMMSE-consistent MSE at the end of the iteration
    double rate_bound = 0.0;   // bits/s/Hz
    double trust_radius = 0.0;
    bool accepted = false;
};

struct AoResult {
    RVec b;             // final reactances
    CVec lambda;        // final LMMSE filter
    double mse = 0.0;
    double rate_bound = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<AoIterate> trace;
};

// Quadratic surrogate of the fixed-filter MSE in the phase perturbation:
// mse(delta) - mse(0) ~= delta^T curvature delta - 2 delta^T gradient_vector,
// valid while sum_m delta_m^2 theta_m^2 <= epsilon^2.
struct QuadraticModel {
    RMat curvature;        // symmetric PSD
    RVec gradient_vector;  // the paper's "v", renamed to avoid the combiner clash
    RVec theta;            // trust metric: row norms of P = F A
};

struct DeltaSolution {
    RVec delta;
    double mu = 0.0;               // Lagrange multiplier
    double constraint_value = 0.0; // sum delta^2 theta^2
};

// Effective channel Phi(b) of the given model. MP uses the physical network;
// CT sees a decoupled RIS (Z_SS = Z0 I) through pure phase shifts and is
// blind to structural scattering.
CMat effective_channel(const ImpedanceNetwork& network, const RVec& b, RisModel model);

// E[gamma] of Eq.-(14) form: prior SINR after combining.
double expected_sinr(const CMat& phi, const ChannelStatistics& stats, const CVec& v,
                     double noise_variance);

// LMMSE filter for estimating the whitened signal coordinates from v^H y.
CVec lmmse_filter(const CMat& phi, const ChannelStatistics& stats, const CVec& v,
                  double noise_variance);

// MSE of an arbitrary filter; equals the closed form at the LMMSE solution.
double mse_given_filter(const CVec& lambda, const CMat& phi, const ChannelStatistics& stats,
                        const CVec& v, double noise_variance);

// MSE bridge (Eq. 21): mse = r - 1 + 1/(E[gamma] + 1) and its inverse.
double mse_from_sinr(double sinr, int rank);
double sinr_from_mse(double mse, int rank);

QuadraticModel build_quadratic_model(const RVec& b, const CVec& lambda,
                                     const ImpedanceNetwork& network,
                                     const ChannelStatistics& stats, const CVec& v,
                                     RisModel model);

// Trust-region subproblem min d^T M d - 2 d^T g s.t. sum d^2 theta^2 <= eps^2,
// solved by eigendecomposition and bisection on the Lagrange multiplier.
// gradient_vector = 0 is stationary and returns delta = 0.
DeltaSolution solve_delta(const QuadraticModel& model, double epsilon,
                          double mu_bisection_tol = 1e-6);

// Alternating optimization of Problem (22): LMMSE filter step and
// trust-region-safeguarded Neumann reactance step. The recorded MSE sequence
// is non-increasing by construction.
AoResult ao_optimize(const ImpedanceNetwork& network, const ChannelStatistics& stats,
                     const CVec& v, double noise_variance, const AoConfig& config);

// Trace export: iteration, mse, rate_bound_bits, trust_radius, accepted.
void write_trace_csv(const std::string& path, const std::vector<AoIterate>& trace,
                     const std::string& provenance_header);

}  // namespace rismp

#endif
