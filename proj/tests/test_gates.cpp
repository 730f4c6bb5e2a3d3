#include <catch2/catch.hpp>

#include <cmath>

#include "mgate/gates.hpp"
#include "mgate/random.hpp"
#include "mgate/state.hpp"

using namespace mgate;

namespace {
const double r2 = 1.0 / std::sqrt(2.0);

StateVector apply_via_matrix(const UnitaryGate& g, const StateVector& s) {
    return StateVector(s.n_qubits(), gate_unitary(g, s.n_qubits()).apply_to(s.amplitudes()));
}
}  // namespace

TEST_CASE("named gate actions on basis states") {
    CHECK(fidelity(apply(UnitaryGate::x(0), basis_state(1, "0")), basis_state(1, "1")) ==
          Approx(1.0));

    const auto plus = apply(UnitaryGate::h(0), basis_state(1, "0"));
    CHECK(std::abs(plus[0] - Amplitude{r2}) < 1e-15);
    CHECK(std::abs(plus[1] - Amplitude{r2}) < 1e-15);

    CHECK(fidelity(apply(UnitaryGate::cnot(0, 1), basis_state(2, "10")),
                   basis_state(2, "11")) == Approx(1.0));

    // Toffoli flips the target iff both controls are 1
    CHECK(fidelity(apply(UnitaryGate::toffoli(0, 1, 2), basis_state(3, "110")),
                   basis_state(3, "111")) == Approx(1.0));
    CHECK(fidelity(apply(UnitaryGate::toffoli(0, 1, 2), basis_state(3, "100")),
                   basis_state(3, "100")) == Approx(1.0));

    CHECK(fidelity(apply(UnitaryGate::swap(0, 1), basis_state(2, "01")),
                   basis_state(2, "10")) == Approx(1.0));
}

TEST_CASE("gate validation") {
    CHECK_THROWS_AS(UnitaryGate::cnot(0, 0), InputError);
    CHECK_THROWS_AS(apply(UnitaryGate::x(3), StateVector(2)), InputError);
    // non-unitary custom matrix
    CHECK_THROWS_AS(UnitaryGate::custom(CMatrix::from_rows({{1, 1}, {0, 1}}), {0}),
                    InputError);
}

TEST_CASE("gate_unitary matches the defining matrices") {
    const auto x = gate_unitary(UnitaryGate::x(0), 1);
    CHECK(x.at(0, 1) == Amplitude{1.0});
    CHECK(x.at(1, 0) == Amplitude{1.0});
    CHECK(x.at(0, 0) == Amplitude{0.0});

    const auto z = gate_unitary(UnitaryGate::z(0), 1);
    CHECK(z.at(0, 0) == Amplitude{1.0});
    CHECK(z.at(1, 1) == Amplitude{-1.0});

    const auto swap = gate_unitary(UnitaryGate::swap(0, 1), 2);
    CHECK(swap.at(1, 2) == Amplitude{1.0});
    CHECK(swap.at(2, 1) == Amplitude{1.0});
    CHECK(swap.at(0, 0) == Amplitude{1.0});
    CHECK(swap.at(3, 3) == Amplitude{1.0});
    CHECK(swap.at(1, 1) == Amplitude{0.0});

    CHECK_THROWS_AS(gate_unitary(UnitaryGate::x(0), 13), ResourceError);
}

TEST_CASE("apply agrees with the full-matrix oracle") {
    RandomSource rng(23);
    const auto cu_block = random_unitary(4, rng);
    const std::vector<UnitaryGate> gates = {
        UnitaryGate::x(1),
        UnitaryGate::z(0),
        UnitaryGate::h(2),
        UnitaryGate::cnot(2, 0),
        UnitaryGate::toffoli(3, 1, 0),
        UnitaryGate::swap(1, 3),
        UnitaryGate::controlled(cu_block, {0}, {3, 2}),
        UnitaryGate::custom(random_unitary(2, rng), {2}),
    };
    for (const auto& g : gates) {
        for (int trial = 0; trial < 5; ++trial) {
            const StateVector s = random_state(4, rng);
            const auto direct = apply(g, s);
            const auto via_matrix = apply_via_matrix(g, s);
            CHECK(fidelity(direct, via_matrix) == Approx(1.0).margin(1e-12));
            // norm preserved
            CHECK(direct.norm2() == Approx(1.0).margin(1e-12));
            // elementwise, not just up to phase
            for (std::size_t i = 0; i < s.dim(); ++i) {
                CHECK(std::abs(direct[i] - via_matrix[i]) < 1e-12);
            }
        }
    }

    // widest register the matrix oracle is exercised at
    const std::vector<UnitaryGate> wide = {
        UnitaryGate::toffoli(5, 2, 0),
        UnitaryGate::controlled(random_unitary(2, rng), {4, 1}, {3}),
        UnitaryGate::custom(random_unitary(8, rng), {5, 0, 2}),
    };
    for (const auto& g : wide) {
        const StateVector s = random_state(6, rng);
        const auto direct = apply(g, s);
        const auto via_matrix = apply_via_matrix(g, s);
        for (std::size_t i = 0; i < s.dim(); ++i) {
            CHECK(std::abs(direct[i] - via_matrix[i]) < 1e-12);
        }
    }
}

TEST_CASE("catalog gates are self-inverse") {
    RandomSource rng(31);
    const std::vector<UnitaryGate> gates = {
        UnitaryGate::x(0),       UnitaryGate::z(1),           UnitaryGate::h(2),
        UnitaryGate::cnot(1, 2), UnitaryGate::toffoli(0, 1, 2), UnitaryGate::swap(0, 2),
    };
    for (const auto& g : gates) {
        const StateVector s = random_state(3, rng);
        const auto back = apply(g, apply(g, s));
        for (std::size_t i = 0; i < s.dim(); ++i) {
            CHECK(std::abs(back[i] - s[i]) < 1e-12);
        }
        CHECK(g.self_inverse());
    }
}

TEST_CASE("HZH equals X and friends") {
    CHECK(verify_identity_hzh());

    // the transposed claim, verified by direct 2x2 multiplication
    const CMatrix h = CMatrix::from_rows({{r2, r2}, {r2, -r2}});
    const CMatrix x = CMatrix::from_rows({{0, 1}, {1, 0}});
    const CMatrix z = CMatrix::from_rows({{1, 0}, {0, -1}});
    CHECK((h * x * h).max_abs_diff(z) < 1e-12);
    CHECK((h * h).max_abs_diff(CMatrix::identity(2)) < 1e-12);
}

TEST_CASE("three alternating cNOTs form SWAP") {
    CHECK(verify_identity_swap_from_cnots());

    auto alternate = [](const StateVector& s) {
        auto t = apply(UnitaryGate::cnot(0, 1), s);
        t = apply(UnitaryGate::cnot(1, 0), t);
        return apply(UnitaryGate::cnot(0, 1), t);
    };

    CHECK(fidelity(alternate(basis_state(2, "01")), basis_state(2, "10")) == Approx(1.0));

    // the antisymmetric combination is a -1 eigenvector of SWAP
    StateVector singlet(2, {0.0, r2, -r2, 0.0});
    const auto swapped = alternate(singlet);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(swapped[i] + singlet[i]) < 1e-12);
    }
}

TEST_CASE("multiply-controlled Z is role-symmetric, multiply-controlled X is not") {
    CHECK(verify_mcz_symmetry(1));
    CHECK(verify_mcz_symmetry(2));
    CHECK(verify_mcz_symmetry(3));
    CHECK_FALSE(verify_mcx_symmetry(2));
    CHECK_THROWS_AS(verify_mcz_symmetry(0), InputError);
    CHECK_THROWS_AS(verify_mcz_symmetry(5), InputError);
}

TEST_CASE("control and target of a cNOT exchange under H conjugation") {
    const CMatrix h0 = gate_unitary(UnitaryGate::h(0), 2);
    const CMatrix h1 = gate_unitary(UnitaryGate::h(1), 2);
    const CMatrix hh = h0 * h1;
    const CMatrix forward = gate_unitary(UnitaryGate::cnot(0, 1), 2);
    const CMatrix reverse = gate_unitary(UnitaryGate::cnot(1, 0), 2);
    CHECK((hh * forward * hh).max_abs_diff(reverse) < 1e-12);
}

TEST_CASE("controlled block leaves non-control subspace alone") {
    RandomSource rng(5);
    const auto block = random_unitary(2, rng);
    const auto gate = UnitaryGate::controlled(block, {0}, {1});
    // control off: identity
    const auto off = apply(gate, basis_state(2, "01"));
    CHECK(fidelity(off, basis_state(2, "01")) == Approx(1.0).margin(1e-12));
    // control on: block acts on the target
    const auto on = apply(gate, basis_state(2, "10"));
    CHECK(std::abs(on[2] - block.at(0, 0)) < 1e-12);
    CHECK(std::abs(on[3] - block.at(1, 0)) < 1e-12);
}
