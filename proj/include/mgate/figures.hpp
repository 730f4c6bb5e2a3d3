// figures.hpp
// Parameterized builders for the demo/verification circuit corpus:
// measurement apparatus chains, state preparation by measurement, parity and
// total-spin measurement of two qubits, and the 3-qubit bit-flip code with
// measured and measurement-free correction.
//
// Wire layouts are fixed per builder and documented at each one; tests and
// the CLI reference wires by these positions.

#pragma once

#include <string>
#include <vector>

#include "mgate/circuit.hpp"
#include "mgate/common.hpp"
#include "mgate/errors.hpp"
#include "mgate/state.hpp"

namespace mgate::figures {

// Which code-word qubit the injected bit-flip hits.
enum class ErrorLocation { None, Top, Middle, Bottom };

enum class CorrectionVariant { Measured, MeasurementFree };

enum class SpinVariant { HadamardTest, BellBasis };

inline const char* to_string(ErrorLocation e) {
    switch (e) {
        case ErrorLocation::None: return "none";
        case ErrorLocation::Top: return "top";
        case ErrorLocation::Middle: return "middle";
        case ErrorLocation::Bottom: return "bottom";
    }
    return "?";
}

// Elementary measurement apparatus: the measured qubit (wire 0) is coupled
// through a chain of `depth` fresh ancillas (wires 1..depth) by cNOT gates;
// only the last ancilla meets a measurement gate, label "m". The outcome
// statistics and the post-state of wire 0 match a direct measurement.
inline Circuit apparatus_chain(int depth) {
    if (depth < 1 || depth > 10) throw InputError("apparatus depth must be in [1, 10]");
    Circuit c(1 + depth);
    for (int i = 0; i < depth; ++i) c.add(UnitaryGate::cnot(i, i + 1));
    c.measure(depth, "m");
    return c;
}

// A single measurement gate on `qubit`, label "m"; the comparison partner
// for apparatus_chain on the same register width.
inline Circuit direct_measurement(int n_qubits, int qubit = 0) {
    Circuit c(n_qubits);
    c.measure(qubit, "m");
    return c;
}

// Apparatus chain followed by its mirror image, no measurement anywhere:
// cNOT is its own inverse, so the whole register returns to its input.
inline Circuit mirrored_chain(int depth) {
    if (depth < 1 || depth > 10) throw InputError("apparatus depth must be in [1, 10]");
    Circuit c(1 + depth);
    for (int i = 0; i < depth; ++i) c.add(UnitaryGate::cnot(i, i + 1));
    for (int i = depth; i-- > 0;) c.add(UnitaryGate::cnot(i, i + 1));
    return c;
}

// State preparation by measurement on a 1-qubit register: measure, then
// apply X iff the display showed 1. Always leaves |0>.
inline Circuit prepare_zero() {
    Circuit c(1);
    c.measure(0, "m");
    c.add(UnitaryGate::x(0), {{"m", 1}});
    return c;
}

// Measurement-based initialization with an apparatus. Wires: 0 = ancilla
// (starts |0>), 1 = the qubit being initialized, 2-3 = external block the
// qubit may be entangled with. The ancilla copies the qubit, is measured
// (label "m"), and the qubit is flipped iff the display showed 1 -- so the
// qubit ends in |0> without ever meeting a measurement gate itself.
inline Circuit measured_initialization() {
    Circuit c(4);
    c.add(UnitaryGate::cnot(1, 0));
    c.measure(0, "m");
    c.add(UnitaryGate::x(1), {{"m", 1}});
    return c;
}

// The fully deferred, measurement-free form of measured_initialization:
// two back-to-back cNOTs. The qubit (wire 1) ends in |0> and the ancilla
// (wire 0) inherits the qubit's entanglement with the external block.
inline Circuit swap_initialization() {
    Circuit c(4);
    c.add(UnitaryGate::cnot(1, 0));
    c.add(UnitaryGate::cnot(0, 1));
    return c;
}

// Degenerate parity measurement of two qubits. Wires: 0-1 = data,
// 2 = ancilla in |0>. The ancilla accumulates the data parity, is measured
// (label "p": 0 = even, 1 = odd), and two further cNOTs restore it to |0>.
// Outcome 0 projects the data onto span{|00>, |11>}, outcome 1 onto
// span{|10>, |01>}.
inline Circuit parity_measurement() {
    Circuit c(3);
    c.add(UnitaryGate::cnot(0, 2));
    c.add(UnitaryGate::cnot(1, 2));
    c.measure(2, "p");
    c.add(UnitaryGate::cnot(0, 2));
    c.add(UnitaryGate::cnot(1, 2));
    return c;
}

// Total-spin measurement of two qubits. Wires: 0-1 = data, 2 = ancilla.
// Label "s": 0 = antisymmetric (singlet, total spin 0), 1 = symmetric
// projection (total spin 1).
//
// HadamardTest: ancilla is prepared in H|1>, controls a SWAP of the data
// realized as cNOT / ancilla-controlled-cNOT / cNOT (three alternating
// cNOTs form SWAP; the outer pair cancels when the control is off), then a
// second H and the measurement.
//
// BellBasis: the H-sandwiched ancilla control is exchanged with the Toffoli
// target. The front gates rotate the Bell basis onto the computational
// basis (singlet -> |11>), a Toffoli flips the ancilla exactly on the
// singlet component, and the rotation is undone.
inline Circuit spin_measurement(SpinVariant variant) {
    Circuit c(3);
    c.add(UnitaryGate::x(2));
    if (variant == SpinVariant::HadamardTest) {
        c.add(UnitaryGate::h(2));
        c.add(UnitaryGate::cnot(0, 1));
        c.add(UnitaryGate::toffoli(2, 1, 0));
        c.add(UnitaryGate::cnot(0, 1));
        c.add(UnitaryGate::h(2));
    } else {
        c.add(UnitaryGate::cnot(0, 1));
        c.add(UnitaryGate::h(0));
        c.add(UnitaryGate::toffoli(0, 1, 2));
        c.add(UnitaryGate::h(0));
        c.add(UnitaryGate::cnot(0, 1));
    }
    c.measure(2, "s");
    return c;
}

// 3-qubit bit-flip code. Wires: 0-2 = top/middle/bottom code words,
// 3 = upper ancilla (syndrome "x", parity of 0,1), 4 = lower ancilla
// (syndrome "y", parity of 1,2). Wire 0 carries the state to protect; the
// encoder copies it across the code block, the chosen error injects one X,
// the two parity extractions diagnose it, and the correction stage repairs
// it: classically conditioned NOTs for Measured (none -> 00, top -> 10,
// bottom -> 01, middle -> 11) or two cNOTs plus a doubly-controlled
// triple-NOT (three Toffolis) for MeasurementFree.
inline Circuit bitflip_code(ErrorLocation error, CorrectionVariant variant) {
    Circuit c(5);
    c.add(UnitaryGate::cnot(0, 1));
    c.add(UnitaryGate::cnot(0, 2));
    switch (error) {
        case ErrorLocation::None: break;
        case ErrorLocation::Top: c.add(UnitaryGate::x(0)); break;
        case ErrorLocation::Middle: c.add(UnitaryGate::x(1)); break;
        case ErrorLocation::Bottom: c.add(UnitaryGate::x(2)); break;
    }
    c.add(UnitaryGate::cnot(0, 3));
    c.add(UnitaryGate::cnot(1, 3));
    c.add(UnitaryGate::cnot(1, 4));
    c.add(UnitaryGate::cnot(2, 4));
    if (variant == CorrectionVariant::Measured) {
        c.measure(3, "x");
        c.measure(4, "y");
        c.add(UnitaryGate::x(0), {{"x", 1}, {"y", 0}});
        c.add(UnitaryGate::x(2), {{"x", 0}, {"y", 1}});
        c.add(UnitaryGate::x(1), {{"x", 1}, {"y", 1}});
    } else {
        c.add(UnitaryGate::cnot(3, 0));
        c.add(UnitaryGate::cnot(4, 2));
        c.add(UnitaryGate::toffoli(3, 4, 0));
        c.add(UnitaryGate::toffoli(3, 4, 1));
        c.add(UnitaryGate::toffoli(3, 4, 2));
    }
    return c;
}

// --- projector reference oracles (independent of the gate/circuit path) ---

// Abstract parity gate on a 2-qubit state: branch "0" is the normalized
// projection onto the even subspace, "1" onto the odd one. Computed by
// direct amplitude bookkeeping, no gates involved.
inline BranchDistribution parity_reference(const StateVector& data) {
    if (data.n_qubits() != 2) throw InputError("parity reference expects 2 qubits");
    BranchDistribution dist({"p"});
    for (int parity : {0, 1}) {
        std::vector<Amplitude> amps(4);
        double p = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const int bits = static_cast<int>((i >> 1) ^ (i & 1));
            if (bits == parity) {
                amps[i] = data[i];
                p += std::norm(data[i]);
            }
        }
        if (p < eps_zero) continue;
        dist.add(parity == 0 ? "0" : "1", p, normalized(StateVector(2, std::move(amps))));
    }
    return dist;
}

// Abstract total-spin gate on a 2-qubit state via the projectors
// (1 -+ SWAP)/2: branch "0" is the antisymmetric component, "1" the
// symmetric one. SWAP acts by index bit exchange, again gate-free.
inline BranchDistribution spin_reference(const StateVector& data) {
    if (data.n_qubits() != 2) throw InputError("spin reference expects 2 qubits");
    BranchDistribution dist({"s"});
    for (int s : {0, 1}) {
        const double sign = (s == 0) ? -1.0 : 1.0;
        std::vector<Amplitude> amps(4);
        for (std::size_t i = 0; i < 4; ++i) {
            const std::size_t swapped = ((i & 1) << 1) | ((i >> 1) & 1);
            amps[i] = 0.5 * (data[i] + sign * data[swapped]);
        }
        StateVector proj(2, std::move(amps));
        const double p = proj.norm2();
        if (p < eps_zero) continue;
        dist.add(s == 0 ? "0" : "1", p, normalized(proj));
    }
    return dist;
}

}  // namespace mgate::figures
