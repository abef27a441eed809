#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

#include "pullcurv/quaternion.hpp"

namespace pullcurv {

// Deterministic pseudo-random source (SplitMix64 + Box-Muller). The byte
// stream depends only on the seed, which keeps reports reproducible across
// standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    Eigen::VectorXd gaussian_vector(int n) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = gaussian();
        return v;
    }

    // Uniform point on the unit sphere of R^n.
    Eigen::VectorXd unit_vector(int n) {
        Eigen::VectorXd v = gaussian_vector(n);
        while (v.norm() < 1e-8) v = gaussian_vector(n);
        return v / v.norm();
    }

    Quaternion gaussian_quaternion() {
        return {gaussian(), gaussian(), gaussian(), gaussian()};
    }

    Quaternion unit_quaternion() {
        Quaternion q = gaussian_quaternion();
        while (q.norm() < 1e-8) q = gaussian_quaternion();
        return q.normalized();
    }

    // Derive an independent stream, e.g. one per sample index.
    Rng fork(std::uint64_t salt) {
        return Rng(next_u64() ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace pullcurv
