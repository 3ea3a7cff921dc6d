// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#include "rismp/optimizer.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "rismp/errors.hpp"
#include "rismp/rng.hpp"

namespace rismp {

namespace {

CMat loaded_network_matrix(const ImpedanceNetwork& network, const RVec& b, RisModel model) {
    const Eigen::Index m = network.z_ss.rows();
    CMat z = (model == RisModel::MP) ? network.z_ss
                                     : CMat(network.z0 * CMat::Identity(m, m));
    z.diagonal().array() += Complex(network.r0, 0.0);
    for (Eigen::Index i = 0; i < m; ++i) z(i, i) += Complex(0.0, b[i]);
    return z;
}

CMat network_inverse(const ImpedanceNetwork& network, const RVec& b, RisModel model) {
    Eigen::PartialPivLU<CMat> lu(loaded_network_matrix(network, b, model));
    if (lu.rcond() < 1e-12)
        throw SingularNetwork("optimizer: loaded network matrix is numerically singular");
    return lu.inverse();
}

// Shared per-configuration quantities of one optimization problem.
struct Workspace {
    const ImpedanceNetwork* net;
    const ChannelStatistics* stats;
    CVec v;
    double noise;  // sigma_n^2 ||v||^2
    CMat r_total;
    CVec s_h_v;    // S^H v
    RisModel model;

    // u = Phi(b)^H v given the network inverse A at b
    CVec receive_vector(const CMat& a) const {
        CVec u = -2.0 * net->y0 * (a.adjoint() * s_h_v);
        if (model == RisModel::CT) u += (net->y0 / net->z0) * s_h_v;
        return u;
    }

    // scalar Q = v^H (Phi (R_x + sum R_w) Phi^H + sigma_n^2 I) v and the
    // whitened signal s = D^(1/2) U^H Phi^H v
    void lmmse_parts(const CVec& u, double& q, CVec& s) const {
        q = (u.adjoint() * (r_total * u)).real()(0) + noise;
        s = stats->d.cwiseSqrt().asDiagonal() * (stats->u.adjoint() * u);
    }

    double lmmse_mse(const CVec& u) const {
        double q;
        CVec s;
        lmmse_parts(u, q, s);
        return stats->rank - s.squaredNorm() / q;
    }
};

}  // namespace

void AoConfig::validate() const {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("AoConfig: epsilon must lie in (0, 1)");
    if (max_iterations < 1) throw std::invalid_argument("AoConfig: max_iterations must be >= 1");
    if (mse_tolerance < 0.0) throw std::invalid_argument("AoConfig: mse_tolerance must be >= 0");
    if (mu_bisection_tol <= 0.0)
        throw std::invalid_argument("AoConfig: mu_bisection_tol must be > 0");
    if (max_halvings < 1) throw std::invalid_argument("AoConfig: max_halvings must be >= 1");
    if (starts < 1) throw std::invalid_argument("AoConfig: starts must be >= 1");
}

CMat effective_channel(const ImpedanceNetwork& network, const RVec& b, RisModel model) {
    const CMat a = network_inverse(network, b, model);
    CMat phi = -2.0 * network.y0 * (network.s * a);
    if (model == RisModel::CT) phi += (network.y0 / network.z0) * network.s;
    return phi;
}

double expected_sinr(const CMat& phi, const ChannelStatistics& stats, const CVec& v,
                     double noise_variance) {
    if (v.norm() <= 0.0) throw std::invalid_argument("expected_sinr: combiner must be nonzero");
    const CVec u = phi.adjoint() * v;
    const double sig = (u.adjoint() * (stats.r_x * u)).real()(0);
    const double interf = stats.r_w.empty()
                              ? 0.0
                              : (u.adjoint() * (stats.r_w_sum * u)).real()(0);
    return sig / (interf + noise_variance * v.squaredNorm());
}

CVec lmmse_filter(const CMat& phi, const ChannelStatistics& stats, const CVec& v,
                  double noise_variance) {
    const CVec u = phi.adjoint() * v;
    const CVec s = stats.d.cwiseSqrt().asDiagonal() * (stats.u.adjoint() * u);
    const double q = (u.adjoint() * ((stats.r_x + stats.r_w_sum) * u)).real()(0) +
                     noise_variance * v.squaredNorm();
    if (q <= 0.0) throw std::invalid_argument("lmmse_filter: non-positive denominator");
    return s / q;
}

double mse_given_filter(const CVec& lambda, const CMat& phi, const ChannelStatistics& stats,
                        const CVec& v, double noise_variance) {
    const CVec u = phi.adjoint() * v;
    const CVec s = stats.d.cwiseSqrt().asDiagonal() * (stats.u.adjoint() * u);
    const double q = (u.adjoint() * ((stats.r_x + stats.r_w_sum) * u)).real()(0) +
                     noise_variance * v.squaredNorm();
    return lambda.squaredNorm() * q - 2.0 * (s.adjoint() * lambda).real()(0) + stats.rank;
}

double mse_from_sinr(double sinr, int rank) { return rank - 1.0 + 1.0 / (sinr + 1.0); }

double sinr_from_mse(double mse, int rank) { return 1.0 / (mse - rank + 1.0) - 1.0; }

QuadraticModel build_quadratic_model(const RVec& b, const CVec& lambda,
                                     const ImpedanceNetwork& network,
                                     const ChannelStatistics& stats, const CVec& v,
                                     RisModel model) {
    const Eigen::Index m = b.size();
    const CMat a = network_inverse(network, b, model);
    const RVec f = reactance_jacobian(b, network.z0);
    const double y0 = network.y0;

    // G = j S A F;  f3 = G^H v;  f1 = 4 Y0^2 v^H G;  f4 = 2 Y0 v^H G
    const CVec s_h_v = network.s.adjoint() * v;
    const CVec a_h_s_v = a.adjoint() * s_h_v;                       // A^H S^H v
    const CVec g_h_v = Complex(0.0, -1.0) * f.cwiseProduct(a_h_s_v);  // (j S A F)^H v
    const CVec f1 = 4.0 * y0 * y0 * g_h_v.conjugate();
    const CVec f4 = 2.0 * y0 * g_h_v.conjugate();

    const CMat r = stats.r_x + stats.r_w_sum;
    const CMat ra = a * r * a.adjoint();

    // zeroth-order bracket: S A for MP, S A - S / (2 Z0) for CT (structural
    // term folded in, Eq.-(44) style)
    CVec bracket_h_v = a_h_s_v;
    if (model == RisModel::CT) bracket_h_v -= s_h_v / (2.0 * network.z0);
    const CVec f2 = a * (r * bracket_h_v);
    const CVec f5 = a * (stats.u * (stats.d.cwiseSqrt().asDiagonal() * lambda));

    const double lam2 = lambda.squaredNorm();
    const CMat t = f1.asDiagonal() * ra * g_h_v.asDiagonal();
    QuadraticModel qm;
    qm.curvature = lam2 * 0.5 * (t.real() + t.real().transpose());
    qm.gradient_vector =
        lam2 * (f1.cwiseProduct(f2)).real() + (f4.cwiseProduct(f5)).real();
    qm.theta.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) qm.theta[i] = std::abs(f[i]) * a.row(i).norm();
    return qm;
}

DeltaSolution solve_delta(const QuadraticModel& model, double epsilon, double mu_bisection_tol) {
    const Eigen::Index m = model.gradient_vector.size();
    DeltaSolution sol;
    sol.delta = RVec::Zero(m);
    if (model.gradient_vector.norm() == 0.0) return sol;  // stationary
    if ((model.theta.array() <= 0.0).any())
        throw std::invalid_argument("solve_delta: trust metric must be positive");

    // scale to the theta metric: minimize x^T Mt x - 2 x^T gt, ||x|| <= eps
    const RVec dinv = model.theta.cwiseInverse();
    const RMat mt = dinv.asDiagonal() * model.curvature * dinv.asDiagonal();
    const RVec gt = dinv.cwiseProduct(model.gradient_vector);

    Eigen::SelfAdjointEigenSolver<RMat> es(mt);
    if (es.info() != Eigen::Success) throw std::runtime_error("solve_delta: eigensolver failed");
    const RVec lam = es.eigenvalues();  // ascending
    const RVec c = es.eigenvectors().transpose() * gt;

    auto step_norm2 = [&](double mu) {
        double n2 = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            const double d = c[i] / (lam[i] + mu);
            n2 += d * d;
        }
        return n2;
    };
    auto assemble = [&](double mu, double extra, Eigen::Index dir) {
        RVec x(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double den = lam[i] + mu;
            x[i] = (std::abs(den) > 0.0) ? c[i] / den : 0.0;
        }
        if (extra != 0.0 && dir >= 0) x[dir] += extra;
        sol.delta = dinv.cwiseProduct(es.eigenvectors() * x);
        sol.mu = mu;
        sol.constraint_value = model.theta.cwiseProduct(sol.delta).squaredNorm();
    };

    const double eps2 = epsilon * epsilon;
    if (lam[0] > 0.0 && step_norm2(0.0) <= eps2) {
        assemble(0.0, 0.0, -1);
        return sol;
    }

    // boundary solution: mu in (mu_min, inf), ||x(mu)|| decreasing
    const double mu_min = std::max(0.0, -lam[0]);
    const double kick = 1e-12 * std::max(1.0, std::abs(lam[m - 1]));
    double lo = mu_min + kick;
    if (step_norm2(lo) < eps2) {
        // hard case: gradient nearly orthogonal to the bottom eigenspace;
        // fill the remaining norm along the bottom eigenvector
        const double have = step_norm2(lo);
        const double extra = std::sqrt(std::max(0.0, eps2 - have));
        assemble(lo, extra, 0);
        return sol;
    }
    double hi = std::max(1.0, 2.0 * lo);
    while (step_norm2(hi) > eps2) hi *= 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-16 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (step_norm2(mid) > eps2)
            lo = mid;
        else
            hi = mid;
        if (std::abs(std::sqrt(step_norm2(hi)) - epsilon) <= mu_bisection_tol * epsilon &&
            (hi - lo) <= 1e-12 * std::max(1.0, hi))
            break;
    }
    assemble(hi, 0.0, -1);  // feasible endpoint
    return sol;
}

AoResult ao_optimize(const ImpedanceNetwork& network, const ChannelStatistics& stats,
                     const CVec& v, double noise_variance, const AoConfig& config) {
    config.validate();
    if (stats.rank < 1) throw std::invalid_argument("ao_optimize: empty signal prior");

    Workspace ws;
    ws.net = &network;
    ws.stats = &stats;
    ws.v = v;
    ws.noise = noise_variance * v.squaredNorm();
    ws.r_total = stats.r_x + stats.r_w_sum;
    ws.s_h_v = network.s.adjoint() * v;
    ws.model = config.model;

    const Eigen::Index m = network.z_ss.rows();
    Rng master(config.seed);
    AoResult best;
    best.mse = std::numeric_limits<double>::infinity();

    for (int start = 0; start < config.starts; ++start) {
        Rng rng = master.fork(static_cast<std::uint64_t>(start));
        RVec phi0(m);
        for (Eigen::Index i = 0; i < m; ++i)
            phi0[i] = rng.uniform(config.phase_guard, 2.0 * constants::pi - config.phase_guard);
        RVec b = phases_to_reactances(phi0, network.z0, config.phase_guard);

        AoResult run;
        CMat a = network_inverse(network, b, config.model);
        CVec u = ws.receive_vector(a);
        double mse = ws.lmmse_mse(u);
        double trust = config.epsilon;
        bool locally_converged = false;

        for (int k = 0; k < config.max_iterations && !locally_converged; ++k) {
            // (1) filter step
            double q;
            CVec s;
            ws.lmmse_parts(u, q, s);
            const CVec lambda = s / q;

            // (2) linearized reactance step with exact-MSE safeguard
            const QuadraticModel qm =
                build_quadratic_model(b, lambda, network, stats, v, config.model);
            const RVec f = reactance_jacobian(b, network.z0);

            bool accepted = false;
            for (int halving = 0; halving <= config.max_halvings; ++halving) {
                const DeltaSolution ds = solve_delta(qm, trust, config.mu_bisection_tol);
                const RVec b_cand = b + f.cwiseProduct(ds.delta);
                CMat a_cand;
                try {
                    a_cand = network_inverse(network, b_cand, config.model);
                } catch (const SingularNetwork&) {
                    trust *= 0.5;
                    continue;
                }
                const CVec u_cand = ws.receive_vector(a_cand);
                const double mse_cand = ws.lmmse_mse(u_cand);
                if (mse_cand < mse) {
                    b = b_cand;
                    a = std::move(a_cand);
                    u = u_cand;
                    mse = mse_cand;
                    trust = std::min(config.epsilon, 2.0 * trust);
                    accepted = true;
                    break;
                }
                trust *= 0.5;
            }
            if (!accepted) locally_converged = true;

            const double sinr = sinr_from_mse(mse, stats.rank);
            AoIterate it;
            it.iteration = k;
            it.mse = mse;
            it.rate_bound = std::log2(1.0 + sinr);
            it.trust_radius = trust;
            it.accepted = accepted;
            run.trace.push_back(it);

            if (accepted && run.trace.size() >= 2) {
                const double prev = run.trace[run.trace.size() - 2].mse;
                if (std::abs(prev - mse) < config.mse_tolerance * prev) break;
            }
        }

        run.b = b;
        {
            double q;
            CVec s;
            ws.lmmse_parts(u, q, s);
            run.lambda = s / q;
        }
        run.mse = mse;
        run.rate_bound = std::log2(1.0 + sinr_from_mse(mse, stats.rank));
        run.iterations = static_cast<int>(run.trace.size());
        run.converged = locally_converged ||
                        (run.iterations > 1 &&
                         std::abs(run.trace[run.trace.size() - 2].mse - mse) <
                             config.mse_tolerance * run.trace[run.trace.size() - 2].mse);
        if (run.mse < best.mse) best = std::move(run);
    }
    return best;
}

void write_trace_csv(const std::string& path, const std::vector<AoIterate>& trace,
                     const std::string& provenance_header) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_trace_csv: cannot open " + path);
    if (!provenance_header.empty()) f << provenance_header;
    f << "iteration,mse,rate_bound_bits,trust_radius,accepted\n";
    f.precision(17);
    for (const auto& it : trace)
        f << it.iteration << ',' << it.mse << ',' << it.rate_bound << ',' << it.trust_radius
          << ',' << (it.accepted ? 1 : 0) << '\n';
}

}  // namespace rismp
