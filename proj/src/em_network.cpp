// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#include "rismp/em_network.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "rismp/errors.hpp"

namespace rismp {

namespace {

using constants::eta0;
using constants::pi;

// Adaptive Simpson quadrature for complex integrands, absolute tolerance.
template <typename F>
Complex simpson_step(const F& f, double a, double b, Complex fa, Complex fm, Complex fb,
                     Complex whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Complex flm = f(lm);
    const Complex frm = f(rm);
    const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const Complex delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
Complex integrate_adaptive(const F& f, double a, double b, double tol) {
    const Complex fa = f(a);
    const Complex fb = f(b);
    const Complex fm = f(0.5 * (a + b));
    const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 24);
}

constexpr double kQuadratureTol = 1e-6;  // Ohm

// Induced-EMF reaction integral for parallel z-oriented dipoles with equal
// sinusoidal current profiles: the source-side integral has the classic
// closed form (three spherical waves), leaving one integral over the
// receiving dipole. rho is the lateral offset, dz the center offset.
Complex emf_mutual(double rho, double dz, double half_q, double half_p, double k) {
    const Complex j(0.0, 1.0);
    const double z_top = dz + half_q;
    const double z_bot = dz - half_q;
    const double cos_khp = std::cos(k * half_p);
    auto integrand = [&](double z) {
        const double r1 = std::hypot(rho, z - half_p);
        const double r2 = std::hypot(rho, z + half_p);
        const double r0 = std::hypot(rho, z);
        const Complex kern = std::exp(-j * (k * r1)) / r1 + std::exp(-j * (k * r2)) / r2 -
                             2.0 * cos_khp * std::exp(-j * (k * r0)) / r0;
        return std::sin(k * (half_q - std::abs(z - dz))) * kern;
    };
    // split at the current kink (dipole center)
    const Complex integral = integrate_adaptive(integrand, z_bot, dz, kQuadratureTol) +
                             integrate_adaptive(integrand, dz, z_top, kQuadratureTol);
    const double norm = std::sin(k * half_q) * std::sin(k * half_p);
    return j * eta0 / (4.0 * pi * norm) * integral;
}

struct PairKey {
    std::int64_t rho;
    std::int64_t dz;
    bool operator==(const PairKey& o) const { return rho == o.rho && dz == o.dz; }
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const {
        std::uint64_t h = static_cast<std::uint64_t>(k.rho) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(k.dz) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

constexpr double kKeyQuantum = 1e-12;  // m; displacement classes on regular grids

PairKey make_key(double rho, double dz) {
    return {static_cast<std::int64_t>(std::llround(rho / kKeyQuantum)),
            static_cast<std::int64_t>(std::llround(std::abs(dz) / kKeyQuantum))};
}

// Memoizes impedances by displacement class; regular grids collapse the
// O(M^2) pair set to O(M) distinct integrals. One evaluator serves a fixed
// (rx, tx) dipole-geometry pair.
class PairEvaluator {
  public:
    PairEvaluator(double half_rx, double half_tx, double radius, double wavelength)
        : half_rx_(half_rx), half_tx_(half_tx), radius_(radius), k_(2.0 * pi / wavelength) {}

    Complex operator()(double rho, double dz) {
        const PairKey key = make_key(rho, dz);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const double rho_eff = std::max(rho, radius_);
        const Complex z = emf_mutual(rho_eff, std::abs(dz), half_rx_, half_tx_, k_);
        cache_.emplace(key, z);
        return z;
    }

  private:
    double half_rx_;
    double half_tx_;
    double radius_;
    double k_;
    std::unordered_map<PairKey, Complex, PairKeyHash> cache_;
};

void check_uniform(const std::vector<PlacedDipole>& v, const char* what) {
    for (const auto& d : v)
        if (d.length != v.front().length || d.radius != v.front().radius)
            throw std::invalid_argument(std::string("assemble_channel: ") + what +
                                        " dipoles must be identical");
}

void check_no_overlap(const PlacedDipole& a, const PlacedDipole& b) {
    const double rho = std::hypot(a.center.x() - b.center.x(), a.center.y() - b.center.y());
    if (rho >= a.radius + b.radius) return;
    const double gap = std::abs(a.center.z() - b.center.z()) - 0.5 * (a.length + b.length);
    if (gap < 0.0) throw GeometryOverlap("mutual_impedance: dipoles intersect");
}

}  // namespace

std::vector<PlacedDipole> placed_dipoles(const ArraySpec& array) {
    const auto pos = element_positions(array);
    std::vector<PlacedDipole> out;
    out.reserve(pos.size());
    for (const auto& p : pos) out.push_back({p, array.element_length, array.element_radius});
    return out;
}

Complex mutual_impedance(const PlacedDipole& a, const PlacedDipole& b, double wavelength) {
    if (a.length <= 0.0 || b.length <= 0.0 || a.radius <= 0.0 || b.radius <= 0.0)
        throw std::invalid_argument("mutual_impedance: invalid dipole");
    const double rho = std::hypot(a.center.x() - b.center.x(), a.center.y() - b.center.y());
    const double dz = a.center.z() - b.center.z();
    const bool same = rho < 1e-15 && std::abs(dz) < 1e-15;
    if (!same) check_no_overlap(a, b);
    const double rho_eff = std::max(rho, 0.5 * (a.radius + b.radius));
    const double k = 2.0 * pi / wavelength;
    return emf_mutual(rho_eff, dz, 0.5 * a.length, 0.5 * b.length, k);
}

CMat assemble_z_ss(const ArraySpec& ris, double wavelength) {
    const auto pos = element_positions(ris);
    const int m = static_cast<int>(pos.size());
    PairEvaluator eval(0.5 * ris.element_length, 0.5 * ris.element_length, ris.element_radius,
                       wavelength);
    CMat z(m, m);
    for (int q = 0; q < m; ++q) {
        for (int p = q; p < m; ++p) {
            const double rho = std::hypot(pos[q].x() - pos[p].x(), pos[q].y() - pos[p].y());
            const double dz = pos[q].z() - pos[p].z();
            const Complex v = eval(rho, dz);
            z(q, p) = v;
            z(p, q) = v;  // exact complex symmetry
        }
    }
    return z;
}

CMat assemble_channel(const std::vector<PlacedDipole>& tx, const std::vector<PlacedDipole>& rx,
                      double wavelength) {
    const int n_rx = static_cast<int>(rx.size());
    const int n_tx = static_cast<int>(tx.size());
    if (n_rx == 0 || n_tx == 0) throw std::invalid_argument("assemble_channel: empty array");
    check_uniform(rx, "rx");
    check_uniform(tx, "tx");
    PairEvaluator eval(0.5 * rx.front().length, 0.5 * tx.front().length,
                       0.5 * (rx.front().radius + tx.front().radius), wavelength);
    CMat c(n_rx, n_tx);
    for (int q = 0; q < n_rx; ++q) {
        for (int p = 0; p < n_tx; ++p) {
            check_no_overlap(rx[static_cast<std::size_t>(q)], tx[static_cast<std::size_t>(p)]);
            const double rho = std::hypot(rx[q].center.x() - tx[p].center.x(),
                                          rx[q].center.y() - tx[p].center.y());
            const double dz = rx[q].center.z() - tx[p].center.z();
            c(q, p) = eval(rho, dz);
        }
    }
    return c;
}

ImpedanceNetwork assemble_network(const ScenarioGeometry& geometry, const NetworkOptions& options) {
    geometry.validate();
    if (options.z0 <= 0.0) throw std::invalid_argument("NetworkOptions: z0 must be > 0");
    if (options.r0 < 0.0) throw std::invalid_argument("NetworkOptions: r0 must be >= 0");
    ImpedanceNetwork net;
    net.z0 = options.z0;
    net.r0 = options.r0;
    net.y0 = 1.0 / options.z0;
    net.z_ss = assemble_z_ss(geometry.ris, geometry.wavelength);
    const auto ris_el = placed_dipoles(geometry.ris);
    const auto bs_el = placed_dipoles(geometry.bs);
    net.s = assemble_channel(ris_el, bs_el, geometry.wavelength);
    net.t.reserve(geometry.ues.size());
    for (const auto& ue : geometry.ues) {
        PlacedDipole d{ue.nominal_position, geometry.ris.element_length,
                       geometry.ris.element_radius};
        net.t.push_back(assemble_channel({d}, ris_el, geometry.wavelength).col(0));
    }
    return net;
}

CVec bs_combiner(const ScenarioGeometry& geometry) {
    const double phi_bs = azimuth_of(geometry.bs.center, geometry.ris.center);
    const auto pos = element_positions(geometry.bs);
    const double k = 2.0 * pi / geometry.wavelength;
    const double s = std::sin(phi_bs);
    CVec v(static_cast<Eigen::Index>(pos.size()));
    for (std::size_t q = 0; q < pos.size(); ++q) {
        const double x_local = -(pos[q].x() - geometry.bs.center.x());
        v[static_cast<Eigen::Index>(q)] = std::exp(Complex(0.0, k * x_local * s));
    }
    return v;
}

namespace {

constexpr std::uint32_t kCacheMagic = 0x52495343;  // "RISC"

void write_matrix(std::ofstream& f, const CMat& m) {
    const std::uint64_t rows = static_cast<std::uint64_t>(m.rows());
    const std::uint64_t cols = static_cast<std::uint64_t>(m.cols());
    f.write(reinterpret_cast<const char*>(&rows), sizeof rows);
    f.write(reinterpret_cast<const char*>(&cols), sizeof cols);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const double re = m(r, c).real();
            const double im = m(r, c).imag();
            f.write(reinterpret_cast<const char*>(&re), sizeof re);
            f.write(reinterpret_cast<const char*>(&im), sizeof im);
        }
    }
}

bool read_matrix(std::ifstream& f, CMat& m) {
    std::uint64_t rows = 0, cols = 0;
    f.read(reinterpret_cast<char*>(&rows), sizeof rows);
    f.read(reinterpret_cast<char*>(&cols), sizeof cols);
    if (!f || rows == 0 || cols == 0 || rows > (1u << 20) || cols > (1u << 20)) return false;
    m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            double re = 0.0, im = 0.0;
            f.read(reinterpret_cast<char*>(&re), sizeof re);
            f.read(reinterpret_cast<char*>(&im), sizeof im);
            m(r, c) = Complex(re, im);
        }
    }
    return static_cast<bool>(f);
}

}  // namespace

void save_network_cache(const std::string& path, const ImpedanceNetwork& network) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save_network_cache: cannot open " + path);
    f.write(reinterpret_cast<const char*>(&kCacheMagic), sizeof kCacheMagic);
    const std::uint32_t n_ue = static_cast<std::uint32_t>(network.t.size());
    f.write(reinterpret_cast<const char*>(&n_ue), sizeof n_ue);
    f.write(reinterpret_cast<const char*>(&network.z0), sizeof network.z0);
    f.write(reinterpret_cast<const char*>(&network.r0), sizeof network.r0);
    f.write(reinterpret_cast<const char*>(&network.y0), sizeof network.y0);
    write_matrix(f, network.z_ss);
    write_matrix(f, network.s);
    for (const auto& t : network.t) write_matrix(f, t);
}

bool load_network_cache(const std::string& path, ImpedanceNetwork& network) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return false;
    std::uint32_t magic = 0, n_ue = 0;
    f.read(reinterpret_cast<char*>(&magic), sizeof magic);
    if (magic != kCacheMagic) return false;
    f.read(reinterpret_cast<char*>(&n_ue), sizeof n_ue);
    f.read(reinterpret_cast<char*>(&network.z0), sizeof network.z0);
    f.read(reinterpret_cast<char*>(&network.r0), sizeof network.r0);
    f.read(reinterpret_cast<char*>(&network.y0), sizeof network.y0);
    if (!read_matrix(f, network.z_ss)) return false;
    if (!read_matrix(f, network.s)) return false;
    network.t.clear();
    for (std::uint32_t i = 0; i < n_ue; ++i) {
        CMat col;
        if (!read_matrix(f, col) || col.cols() != 1) return false;
        network.t.push_back(col.col(0));
    }
    return true;
}

}  // namespace rismp
