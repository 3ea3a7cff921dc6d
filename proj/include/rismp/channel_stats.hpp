// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#ifndef RISMP_CHANNEL_STATS_HPP
#define RISMP_CHANNEL_STATS_HPP

#include <cstdint>
#include <vector>

#include "rismp/em_network.hpp"
#include "rismp/scenario.hpp"
#include "rismp/types.hpp"

namespace rismp {

// Prior correlation matrices and the eigenfactorization used by the
// optimizer. r_x and r_w_i carry the transmit powers sigma_i^2.
struct ChannelStatistics {
    CMat r_x;                 // M x M, intended signal (sigma_1^2 included)
    std::vector<CMat> r_w;    // interferers, i >= 2
    CMat r_w_sum;             // sum of r_w (zero matrix when no interferers)
    CMat u;                   // M x r eigenvectors of r_x
    RVec d;                   // r eigenvalues, descending
    int rank = 0;

    CMat r_total() const { return r_x + r_w_sum; }
};

// Plane-wave array response exp(j (2 pi / lambda) x_m sin(phi)).
CVec steering_vector(const RVec& positions_x, double phi, double lambda);

// beta * Int f(phi) a(phi) a^H(phi) dphi over [phi_i - D/2, phi_i + D/2]
// with the triangular density f = 4|phi - phi_i| / D^2 (unit mass). The
// D -> 0 limit is the rank-1 matrix beta a(phi_i) a^H(phi_i). Gauss-Legendre
// panels split at the density kink, order doubled from 64 until the result
// stabilizes below 1e-8 relative Frobenius.
CMat los_correlation(double phi_i, double delta_i, double beta_i, const RVec& positions_x,
                     double lambda);

// NLOS prior: los_correlation with spread delta_m and gain beta_i / k1.
CMat nlos_correlation(double phi_i, double delta_m, double beta_i, double k1,
                      const RVec& positions_x, double lambda);

// R_x = sigma_1^2 (R_1 + W_1), R_w_i = sigma_i^2 (R_i + W_i), plus the rank-r
// eigenfactorization of R_x (threshold 1e-9 relative). Channel gains beta_i
// are taken from the nominal-position LOS vectors so prior and realization
// scales agree.
ChannelStatistics build_statistics(const ScenarioGeometry& geometry, const RicianSpec& rician,
                                   const ImpedanceNetwork& network);

// Rank-1 exact-CSI statistics from realized channels (the OPT-CSI genie).
ChannelStatistics rank_one_statistics(const std::vector<CVec>& t_realized,
                                      const std::vector<double>& tx_powers);

struct ChannelRealization {
    CMat s_e;                        // N x M with BS-side NLOS
    std::vector<CVec> t_e;           // per UE, LOS at true position + NLOS
    std::vector<Vec3> true_positions;
};

// Draws true UE positions uniformly in their uncertainty disks, rebuilds the
// LOS channels there and adds circularly-symmetric Gaussian NLOS with the
// prior covariances. Precomputes covariance factors once; sample(seed) is
// deterministic and safe to call concurrently.
class RealizationSampler {
  public:
    RealizationSampler(const Scenario& scenario, const ImpedanceNetwork& network);

    ChannelRealization sample(std::uint64_t seed) const;

    const CMat& nlos_covariance(int ue_index) const { return w_ue_[static_cast<std::size_t>(ue_index)]; }
    const CMat& bs_nlos_covariance() const { return w_bs_; }

  private:
    const Scenario scenario_;
    const ImpedanceNetwork* network_;
    std::vector<CMat> w_ue_;       // NLOS covariance per UE
    std::vector<CMat> w_ue_sqrt_;  // factor L with L L^H = W
    CMat w_bs_;                    // RIS-side covariance of BS-link NLOS
    CMat w_bs_sqrt_;
};

// One-shot convenience wrapper around RealizationSampler.
ChannelRealization sample_realization(const Scenario& scenario, const ImpedanceNetwork& network,
                                      std::uint64_t seed);

}  // namespace rismp

#endif
