// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#ifndef RISMP_RNG_HPP
#define RISMP_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace rismp {

// splitmix64 step; used to derive independent per-worker seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random stream. mt19937_64 output is fully specified by the
// standard; the uniform/gaussian transforms below are ours, so the same seed
// produces the same draws on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed), base_(seed) {}

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller (cached spare)
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double rad = std::sqrt(-2.0 * std::log(u1));
        double ang = 2.0 * 3.14159265358979323846 * u2;
        spare_ = rad * std::sin(ang);
        has_spare_ = true;
        return rad * std::cos(ang);
    }

    // circularly-symmetric complex gaussian, unit variance (E|x|^2 = 1)
    std::complex<double> cgaussian() {
        double re = gaussian();
        double im = gaussian();
        return {re * 0.7071067811865476, im * 0.7071067811865476};
    }

    // independent stream derived from the original seed; thread-safe to hand out
    Rng fork(std::uint64_t stream) const { return Rng(mix_seed(base_, stream)); }

  private:
    std::mt19937_64 eng_;
    std::uint64_t base_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rismp

#endif
