// verify.hpp
// Named equivalence suites over the figure corpus. Each suite feeds both
// sides of a claimed equivalence from a fixed deterministic set of random
// inputs and compares the exact branch distributions.

#pragma once

#include <string>
#include <vector>

#include "mgate/circuit.hpp"
#include "mgate/figures.hpp"
#include "mgate/random.hpp"
#include "mgate/state.hpp"

namespace mgate {

struct VerifyOutcome {
    std::string pair;
    bool equivalent = true;
    double max_probability_deviation = 0.0;
    double min_state_fidelity = 1.0;
    int comparisons = 0;
    std::string counterexample;

    double max_deviation() const {
        return std::max(max_probability_deviation, 1.0 - min_state_fidelity);
    }
};

inline const std::vector<std::string>& named_verification_pairs() {
    static const std::vector<std::string> pairs = {
        "fig6-direct", "fig8-fig9", "fig12-fig13",
        "fig14-fig15", "fig17-fig18", "fig19-fig21",
    };
    return pairs;
}

namespace detail {

inline constexpr std::uint64_t verify_seed = 0x76657269667921ULL;

inline void fold(VerifyOutcome& out, const EquivalenceReport& report) {
    ++out.comparisons;
    out.max_probability_deviation =
        std::max(out.max_probability_deviation, report.max_probability_deviation);
    out.min_state_fidelity = std::min(out.min_state_fidelity, report.min_state_fidelity);
    if (!report.equivalent && out.equivalent) {
        out.equivalent = false;
        out.counterexample = report.counterexample;
    }
}

inline std::vector<int> all_qubits(int n) {
    std::vector<int> qs(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) qs[static_cast<std::size_t>(q)] = q;
    return qs;
}

}  // namespace detail

// Run one named suite. tol applies to probabilities and 1 - fidelity alike.
inline VerifyOutcome run_named_verification(const std::string& pair, double tol = 1e-10) {
    using namespace figures;
    VerifyOutcome out;
    out.pair = pair;
    RandomSource rng(detail::verify_seed);

    if (pair == "fig6-direct") {
        // apparatus chains of depth 1..5 against a bare measurement gate
        for (int depth = 1; depth <= 5; ++depth) {
            const Circuit chain = apparatus_chain(depth);
            const Circuit direct = direct_measurement(1 + depth);
            EquivalenceSpec spec{{{"m", "m"}}, {0}, {0}, tol};
            for (int s = 0; s < 20; ++s) {
                StateVector input = tensor(random_state(1, rng), StateVector(depth));
                detail::fold(out, compare_distributions(enumerate_branches(chain, input),
                                                        enumerate_branches(direct, input),
                                                        spec));
            }
        }
    } else if (pair == "fig8-fig9") {
        // mirrored chains equal the identity on arbitrary inputs
        for (int depth = 1; depth <= 5; ++depth) {
            const Circuit mirror = mirrored_chain(depth);
            const Circuit empty(1 + depth);
            const auto qs = detail::all_qubits(1 + depth);
            EquivalenceSpec spec{{}, qs, qs, tol};
            for (int s = 0; s < 20; ++s) {
                StateVector input = random_state(1 + depth, rng);
                detail::fold(out, compare_distributions(enumerate_branches(mirror, input),
                                                        enumerate_branches(empty, input),
                                                        spec));
            }
        }
    } else if (pair == "fig12-fig13") {
        // measured initialization vs its measurement-free rewrite; the
        // initialized qubit (wire 1) must end in |0> either way
        const Circuit measured = measured_initialization();
        const Circuit swapped = swap_initialization();
        EquivalenceSpec spec{{}, {1}, {1}, tol};
        for (int s = 0; s < 20; ++s) {
            StateVector input = tensor(StateVector(1), random_state(3, rng));
            detail::fold(out, compare_distributions(enumerate_branches(measured, input),
                                                    enumerate_branches(swapped, input), spec));
        }
    } else if (pair == "fig14-fig15") {
        // one-ancilla realization against the abstract parity projector
        const Circuit realization = parity_measurement();
        EquivalenceSpec spec{{{"p", "p"}}, {0, 1}, {0, 1}, tol};
        for (int s = 0; s < 50; ++s) {
            StateVector data = random_state(2, rng);
            detail::fold(out,
                         compare_distributions(
                             parity_reference(data),
                             enumerate_branches(realization, tensor(data, StateVector(1))),
                             spec));
        }
    } else if (pair == "fig17-fig18") {
        // the two spin-measurement variants against each other and against
        // the (1 -+ SWAP)/2 projector oracle
        const Circuit a = spin_measurement(SpinVariant::HadamardTest);
        const Circuit b = spin_measurement(SpinVariant::BellBasis);
        EquivalenceSpec cross{{{"s", "s"}}, {0, 1}, {0, 1}, tol};
        for (int s = 0; s < 50; ++s) {
            StateVector data = random_state(2, rng);
            StateVector input = tensor(data, StateVector(1));
            const auto da = enumerate_branches(a, input);
            const auto db = enumerate_branches(b, input);
            detail::fold(out, compare_distributions(da, db, cross));
            detail::fold(out, compare_distributions(spin_reference(data), da, cross));
            detail::fold(out, compare_distributions(spin_reference(data), db, cross));
        }
    } else if (pair == "fig19-fig21") {
        // measured vs measurement-free bit-flip correction, code block only
        for (ErrorLocation error : {ErrorLocation::None, ErrorLocation::Top,
                                    ErrorLocation::Middle, ErrorLocation::Bottom}) {
            const Circuit measured = bitflip_code(error, CorrectionVariant::Measured);
            const Circuit free = bitflip_code(error, CorrectionVariant::MeasurementFree);
            EquivalenceSpec spec{{}, {0, 1, 2}, {0, 1, 2}, tol};
            for (int s = 0; s < 20; ++s) {
                StateVector input = tensor(random_state(1, rng), StateVector(4));
                detail::fold(out, compare_distributions(enumerate_branches(measured, input),
                                                        enumerate_branches(free, input),
                                                        spec));
            }
        }
    } else {
        throw InputError("unknown verification pair: " + pair);
    }
    return out;
}

}  // namespace mgate
