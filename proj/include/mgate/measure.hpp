// measure.hpp
// The 1-qubit measurement gate. Measuring qubit q of |psi> = a0|0>|phi0> +
// a1|1>|phi1> flashes x with probability |a_x|^2 and leaves |x>|phi_x>.
// Everything else here (full-register measurement, measurement in a rotated
// basis, initialize-to-zero) is built from that one gate plus unitaries.

#pragma once

#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mgate/common.hpp"
#include "mgate/errors.hpp"
#include "mgate/gates.hpp"
#include "mgate/random.hpp"
#include "mgate/state.hpp"

namespace mgate {

struct MeasurementRecord {
    std::string label;
    int qubit = 0;
    int outcome = 0;
    double probability = 0.0;  // squared norm of the selected branch
};

struct MeasureResult {
    MeasurementRecord record;
    StateVector state;
};

// One 1-qubit measurement gate. Outcome 0 is drawn iff u < p0 for a single
// uniform draw u; a branch with probability below eps_zero is declared
// impossible and the other outcome is taken without consuming a draw, so
// deterministic circuits stay draw-free.
inline MeasureResult measure_qubit(const StateVector& state, int q, RandomSource& rng,
                                   std::string label = {}) {
    auto p0 = project(state, q, 0);
    auto p1 = project(state, q, 1);
    if (p0.norm2 < eps_zero && p1.norm2 < eps_zero) {
        throw DegenerateBranchError("both measurement branches vanished; state was not normalized");
    }
    int outcome;
    if (p0.norm2 < eps_zero) {
        outcome = 1;
    } else if (p1.norm2 < eps_zero) {
        outcome = 0;
    } else {
        outcome = rng.uniform() < p0.norm2 ? 0 : 1;
    }
    const auto& chosen = outcome == 0 ? p0 : p1;
    if (label.empty()) label = "m" + std::to_string(q);
    return {MeasurementRecord{std::move(label), q, outcome, chosen.norm2},
            normalized(chosen.state)};
}

struct MeasureAllResult {
    std::vector<MeasurementRecord> records;  // one per qubit, in measured order
    StateVector state;                       // a computational basis state
};

// Measure every qubit once, in the given order. The joint outcome statistics
// do not depend on the order; that is verified by the branch oracle in the
// test suite rather than assumed here.
inline MeasureAllResult measure_all(const StateVector& state, std::span<const int> order,
                                    RandomSource& rng) {
    const int n = state.n_qubits();
    if (static_cast<int>(order.size()) != n) {
        throw InputError("measurement order must cover every qubit exactly once");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int q : order) {
        state.check_qubit(q);
        if (seen[static_cast<std::size_t>(q)]) {
            throw InputError("measurement order repeats a qubit");
        }
        seen[static_cast<std::size_t>(q)] = true;
    }
    MeasureAllResult out{{}, state};
    out.records.reserve(order.size());
    for (int q : order) {
        auto step = measure_qubit(out.state, q, rng);
        out.records.push_back(std::move(step.record));
        out.state = std::move(step.state);
    }
    return out;
}

inline MeasureAllResult measure_all(const StateVector& state, RandomSource& rng) {
    std::vector<int> order(static_cast<std::size_t>(state.n_qubits()));
    std::iota(order.begin(), order.end(), 0);
    return measure_all(state, order, rng);
}

struct VonNeumannResult {
    int outcome = 0;  // big-endian index of the measured basis string
    StateVector state;
};

// Measurement in the basis |phi_x> = U|x>: apply U†, measure every qubit,
// apply U. Outcome x lands with probability |<phi_x|psi>|^2, post-state
// |phi_x>.
inline VonNeumannResult von_neumann_measure(const StateVector& state, const UnitaryGate& u,
                                            RandomSource& rng) {
    auto rotated = apply(u.adjoint(), state);
    auto measured = measure_all(rotated, rng);
    int outcome = 0;
    for (const auto& rec : measured.records) {
        outcome |= rec.outcome << (state.n_qubits() - 1 - rec.qubit);
    }
    return {outcome, apply(u, measured.state)};
}

// Send the qubit through a measurement gate, then through X iff the display
// showed 1. The qubit ends in |0>, unentangled from the rest; the remaining
// qubits keep whichever branch was drawn.
inline StateVector initialize_to_zero(const StateVector& state, int q, RandomSource& rng) {
    auto step = measure_qubit(state, q, rng, "init");
    if (step.record.outcome == 1) {
        return apply(UnitaryGate::x(q), step.state);
    }
    return step.state;
}

}  // namespace mgate
