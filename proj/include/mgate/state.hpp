// state.hpp
// Dense complex state vectors of N qubits with projection and norm primitives.
//
// Index convention is big-endian: qubit 0 is the leftmost ket factor, so the
// basis state |x0 x1 ... x_{N-1}> sits at index sum x_k * 2^(N-1-k).
// States are immutable values; every operation returns a fresh vector.

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mgate/common.hpp"
#include "mgate/errors.hpp"

namespace mgate {

class StateVector {
public:
    // |00...0>
    explicit StateVector(int n_qubits) : n_(checked(n_qubits)), amps_(std::size_t{1} << n_) {
        amps_[0] = 1.0;
    }

    // Takes ownership of raw amplitudes; checks size and finiteness, not norm
    // (projection produces intentionally unnormalized vectors).
    StateVector(int n_qubits, std::vector<Amplitude> amps)
        : n_(checked(n_qubits)), amps_(std::move(amps)) {
        if (amps_.size() != dim()) {
            throw InputError("amplitude count does not match qubit count");
        }
        for (const auto& a : amps_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw InputError("non-finite amplitude");
            }
        }
    }

    int n_qubits() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }

    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }
    Amplitude& operator[](std::size_t i) { return amps_[i]; }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }

    double norm2() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    bool is_normalized(double tol = eps_norm) const {
        return std::abs(norm2() - 1.0) < tol;
    }

    // Bit mask of qubit q inside an amplitude index.
    std::size_t mask(int q) const {
        check_qubit(q);
        return std::size_t{1} << (n_ - 1 - q);
    }

    // Value of qubit q in basis index i.
    int bit(std::size_t i, int q) const { return (i & mask(q)) ? 1 : 0; }

    void check_qubit(int q) const {
        if (q < 0 || q >= n_) throw InputError("qubit index out of range");
    }

private:
    static int checked(int n) {
        if (n < 1) throw InputError("state needs at least one qubit");
        if (n > max_qubits) throw ResourceError("qubit count exceeds dense ceiling");
        return n;
    }

    int n_;
    std::vector<Amplitude> amps_;
};

// Basis state from a bit string, leftmost character = qubit 0.
inline StateVector basis_state(int n_qubits, std::string_view bits) {
    if (static_cast<int>(bits.size()) != n_qubits) {
        throw InputError("bit string length does not match qubit count");
    }
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw InputError("bit string must contain only 0/1");
        index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    StateVector s(n_qubits);
    s[0] = 0.0;
    s[index] = 1.0;
    return s;
}

inline StateVector basis_state(int n_qubits, std::size_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) throw InputError("basis index out of range");
    s[0] = 0.0;
    s[index] = 1.0;
    return s;
}

struct Projection {
    StateVector state;  // P_x |psi>, unnormalized
    double norm2;       // |a_x|^2
};

// Project qubit q onto outcome x: zero every amplitude whose q-th bit differs.
inline Projection project(const StateVector& state, int q, int x) {
    if (x != 0 && x != 1) throw InputError("projection outcome must be 0 or 1");
    const std::size_t m = state.mask(q);
    std::vector<Amplitude> amps(state.dim());
    double kept = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const bool hit = ((i & m) != 0) == (x == 1);
        if (hit) {
            amps[i] = state[i];
            kept += std::norm(state[i]);
        }
    }
    return {StateVector(state.n_qubits(), std::move(amps)), kept};
}

// Unit-norm vector parallel to the input. A vanishing norm means a
// zero-probability branch was materialized somewhere upstream.
inline StateVector normalized(const StateVector& state) {
    const double n = std::sqrt(state.norm2());
    if (n <= eps_zero) {
        throw DegenerateBranchError("cannot normalize a near-zero state");
    }
    std::vector<Amplitude> amps = state.amplitudes();
    for (auto& a : amps) a /= n;
    return StateVector(state.n_qubits(), std::move(amps));
}

inline Amplitude inner_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw InputError("inner product needs equal qubit counts");
    }
    Amplitude acc{};
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

// |<a|b>|^2; insensitive to global phase by construction.
inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() + b.n_qubits() > max_qubits) {
        throw ResourceError("tensor product exceeds dense ceiling");
    }
    std::vector<Amplitude> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            amps[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return StateVector(a.n_qubits() + b.n_qubits(), std::move(amps));
}

// Extract the pure state carried by `qubits` when the full state factors
// across that cut. The factor test is a Schmidt-rank-1 residual check; an
// entangled cut raises ComparisonError rather than silently tracing out.
inline StateVector subset_state(const StateVector& state, std::span<const int> qubits,
                                double tol = eps_schmidt) {
    const int n = state.n_qubits();
    if (qubits.empty()) throw InputError("subset must name at least one qubit");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int q : qubits) {
        state.check_qubit(q);
        if (seen[static_cast<std::size_t>(q)]) throw InputError("duplicate qubit in subset");
        seen[static_cast<std::size_t>(q)] = true;
    }
    const int k = static_cast<int>(qubits.size());
    if (k == n) {
        // Whole state requested; reorder wires if the subset permutes them.
        std::vector<Amplitude> amps(state.dim());
        for (std::size_t i = 0; i < state.dim(); ++i) {
            std::size_t r = 0;
            for (int j = 0; j < k; ++j) r |= std::size_t(state.bit(i, qubits[j])) << (k - 1 - j);
            amps[r] = state[i];
        }
        return StateVector(n, std::move(amps));
    }

    std::vector<int> rest;
    for (int q = 0; q < n; ++q) {
        if (!seen[static_cast<std::size_t>(q)]) rest.push_back(q);
    }
    const std::size_t rows = std::size_t{1} << k;
    const std::size_t cols = std::size_t{1} << rest.size();

    // m[r][c]: r gathers the subset bits (listed order), c the remaining bits.
    std::vector<Amplitude> m(rows * cols);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        std::size_t r = 0, c = 0;
        for (int j = 0; j < k; ++j) r |= std::size_t(state.bit(i, qubits[j])) << (k - 1 - j);
        for (std::size_t j = 0; j < rest.size(); ++j) {
            c |= std::size_t(state.bit(i, rest[j])) << (rest.size() - 1 - j);
        }
        m[r * cols + c] = state[i];
    }

    // Rank-1 means every column is a multiple of one fixed vector u.
    std::size_t best_col = 0;
    double best_norm = -1.0;
    for (std::size_t c = 0; c < cols; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) s += std::norm(m[r * cols + c]);
        if (s > best_norm) {
            best_norm = s;
            best_col = c;
        }
    }
    if (best_norm <= eps_zero) {
        throw DegenerateBranchError("subset extraction on a near-zero state");
    }
    std::vector<Amplitude> u(rows);
    const double inv = 1.0 / std::sqrt(best_norm);
    for (std::size_t r = 0; r < rows; ++r) u[r] = m[r * cols + best_col] * inv;

    double residual = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
        Amplitude overlap{};
        for (std::size_t r = 0; r < rows; ++r) overlap += std::conj(u[r]) * m[r * cols + c];
        for (std::size_t r = 0; r < rows; ++r) {
            residual = std::max(residual, std::abs(m[r * cols + c] - u[r] * overlap));
        }
    }
    if (residual > tol) {
        throw ComparisonError("subset state is entangled with the rest of the register");
    }
    return StateVector(k, std::move(u));
}

inline StateVector subset_state(const StateVector& state, std::initializer_list<int> qubits,
                                double tol = eps_schmidt) {
    return subset_state(state, std::span<const int>(qubits.begin(), qubits.size()), tol);
}

}  // namespace mgate
