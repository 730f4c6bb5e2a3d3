// random.hpp
// Deterministic randomness. Every sampling operation takes a RandomSource
// explicitly; identical seeds reproduce identical traces bit for bit.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "mgate/common.hpp"
#include "mgate/matrix.hpp"
#include "mgate/state.hpp"

namespace mgate {

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Uniform in [0, 1), 53 mantissa bits; avoids distribution objects so the
    // stream is identical across standard library implementations.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        // Box-Muller; one draw consumed per call keeps traces auditable.
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform();
        while (u <= 0.0) u = uniform();
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 2.0 * std::numbers::pi * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Haar-ish random pure state: complex Gaussian amplitudes, normalized.
inline StateVector random_state(int n_qubits, RandomSource& rng) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<Amplitude> amps(dim);
    for (auto& a : amps) a = Amplitude{rng.gaussian(), rng.gaussian()};
    return normalized(StateVector(n_qubits, std::move(amps)));
}

// Random unitary via modified Gram-Schmidt on a complex Gaussian matrix.
inline CMatrix random_unitary(std::size_t dim, RandomSource& rng) {
    std::vector<std::vector<Amplitude>> cols(dim, std::vector<Amplitude>(dim));
    for (auto& col : cols) {
        for (auto& v : col) v = Amplitude{rng.gaussian(), rng.gaussian()};
    }
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            Amplitude overlap{};
            for (std::size_t r = 0; r < dim; ++r) overlap += std::conj(cols[p][r]) * cols[c][r];
            for (std::size_t r = 0; r < dim; ++r) cols[c][r] -= overlap * cols[p][r];
        }
        double n2 = 0.0;
        for (const auto& v : cols[c]) n2 += std::norm(v);
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& v : cols[c]) v *= inv;
    }
    CMatrix u(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) u.at(r, c) = cols[c][r];
    }
    return u;
}

}  // namespace mgate
