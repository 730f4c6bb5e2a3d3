// common.hpp
// Shared scalar types and numeric limits for the mgate library.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace mgate {

using Amplitude = std::complex<double>;

// Unit-norm slack for state invariants and probability bookkeeping.
inline constexpr double eps_norm = 1e-10;

// Below this a norm or branch probability counts as exactly zero.
inline constexpr double eps_zero = 1e-12;

// Residual ceiling for the product-state (Schmidt rank 1) test.
inline constexpr double eps_schmidt = 1e-8;

// Dense amplitude vectors only; reject anything wider at construction.
inline constexpr int max_qubits = 20;

// Full 2^n x 2^n matrix embeddings are a verification tool, not a simulator.
inline constexpr int max_unitary_qubits = 12;

// Branch enumeration forks once per measurement gate.
inline constexpr int max_measurements = 24;

}  // namespace mgate
