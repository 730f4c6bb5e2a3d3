#include <catch2/catch.hpp>

#include <string>
#include <variant>
#include <vector>

#include "mgate/figures.hpp"
#include "mgate/random.hpp"
#include "mgate/rewrite.hpp"

using namespace mgate;
using namespace mgate::figures;

namespace {

bool op_is(const CircuitOp& op, GateKind kind, std::vector<int> targets) {
    const auto* g = std::get_if<GateOp>(&op);
    return g != nullptr && g->cond.empty() && g->gate.kind == kind &&
           g->gate.targets == targets;
}

bool op_is_measure(const CircuitOp& op, int qubit, const std::string& label) {
    const auto* m = std::get_if<MeasureOp>(&op);
    return m != nullptr && m->qubit == qubit && m->label == label;
}

int count_kind(const Circuit& c, GateKind kind) {
    int n = 0;
    for (const auto& op : c.ops()) {
        const auto* g = std::get_if<GateOp>(&op);
        if (g != nullptr && g->gate.kind == kind) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("defer turns measured initialization into the swap form") {
    const auto result = defer_measurements(measured_initialization());
    const auto& ops = result.circuit.ops();
    REQUIRE(ops.size() == 3);
    CHECK(op_is(ops[0], GateKind::CNOT, {1, 0}));
    CHECK(op_is(ops[1], GateKind::CNOT, {0, 1}));
    CHECK(op_is_measure(ops[2], 0, "m"));
    CHECK(result.certificate.checked);
    CHECK(result.certificate.max_deviation < 1e-10);

    // dropping the now-terminal measurement leaves exactly swap_initialization
    const auto dropped = drop_terminal_measurements(result.circuit, {"m"});
    const Circuit target = swap_initialization();
    REQUIRE(dropped.circuit.size() == target.size());
    CHECK(op_is(dropped.circuit.ops()[0], GateKind::CNOT, {1, 0}));
    CHECK(op_is(dropped.circuit.ops()[1], GateKind::CNOT, {0, 1}));
}

TEST_CASE("defer expands the syndrome corrections into cNOTs and Toffolis") {
    const auto before = bitflip_code(ErrorLocation::None, CorrectionVariant::Measured);
    const auto result = defer_measurements(before);
    const Circuit& after = result.circuit;

    CHECK_FALSE(after.has_conditions());
    // measurements are terminal, in original order
    REQUIRE(after.size() >= 2);
    CHECK(op_is_measure(after.ops()[after.size() - 2], 3, "x"));
    CHECK(op_is_measure(after.ops()[after.size() - 1], 4, "y"));

    // the three conditioned NOTs become two cNOTs plus a doubly-controlled
    // triple NOT realized as three Toffolis
    CHECK(count_kind(after, GateKind::TOFFOLI) == 3);
    CHECK(count_kind(after, GateKind::CNOT) == count_kind(before, GateKind::CNOT) + 2);

    // corrective gate set matches the measurement-free correction stage
    const auto free_form = bitflip_code(ErrorLocation::None, CorrectionVariant::MeasurementFree);
    int toffolis = 0;
    for (const auto& op : after.ops()) {
        const auto* g = std::get_if<GateOp>(&op);
        if (g != nullptr && g->gate.kind == GateKind::TOFFOLI) {
            CHECK(g->gate.targets[0] == 3);
            CHECK(g->gate.targets[1] == 4);
            ++toffolis;
        }
    }
    CHECK(toffolis == count_kind(free_form, GateKind::TOFFOLI));
}

TEST_CASE("defer on a condition-free circuit just postpones the measurements") {
    Circuit c(2);
    c.add(UnitaryGate::h(0));
    c.measure(0, "m");
    c.add(UnitaryGate::z(1));
    const auto result = defer_measurements(c);
    const auto& ops = result.circuit.ops();
    REQUIRE(ops.size() == 3);
    CHECK(op_is(ops[0], GateKind::H, {0}));
    CHECK(op_is(ops[1], GateKind::Z, {1}));
    CHECK(op_is_measure(ops[2], 0, "m"));
}

TEST_CASE("defer handles negated single-label conditions") {
    Circuit c(2);
    c.measure(0, "m");
    c.add(UnitaryGate::x(1), {{"m", 0}});  // flip iff the display showed 0
    const auto result = defer_measurements(c);
    const auto& ops = result.circuit.ops();
    REQUIRE(ops.size() == 3);
    CHECK(op_is(ops[0], GateKind::X, {1}));
    CHECK(op_is(ops[1], GateKind::CNOT, {0, 1}));
    CHECK(op_is_measure(ops[2], 0, "m"));
}

TEST_CASE("defer supports conditioned non-NOT gates through CU") {
    Circuit c(2);
    c.measure(0, "m");
    c.add(UnitaryGate::h(1), {{"m", 1}});
    const auto result = defer_measurements(c);
    int cu = count_kind(result.circuit, GateKind::CU);
    CHECK(cu == 1);
    CHECK(result.certificate.max_deviation < 1e-10);

    Circuit neg(2);
    neg.measure(0, "m");
    neg.add(UnitaryGate::h(1), {{"m", 0}});
    CHECK_THROWS_AS(defer_measurements(neg), RewriteError);
}

TEST_CASE("defer refuses unsupported shapes") {
    // conditioned gate targeting the measured wire itself
    CHECK_THROWS_AS(defer_measurements(prepare_zero()), RewriteError);

    // a gate disturbing a qubit after its measurement was deferred
    Circuit disturb(2);
    disturb.measure(0, "m");
    disturb.add(UnitaryGate::h(0));
    CHECK_THROWS_AS(defer_measurements(disturb), RewriteError);

    // three-label conjunction
    Circuit wide(4);
    wide.measure(0, "a");
    wide.measure(1, "b");
    wide.measure(2, "c");
    wide.add(UnitaryGate::x(3), {{"a", 1}, {"b", 1}, {"c", 1}});
    CHECK_THROWS_AS(defer_measurements(wide), RewriteError);

    // a Z on the measured wire is diagonal and therefore fine
    Circuit diag(2);
    diag.measure(0, "m");
    diag.add(UnitaryGate::z(0));
    diag.add(UnitaryGate::x(1), {{"m", 1}});
    CHECK_NOTHROW(defer_measurements(diag));
}

TEST_CASE("drop_terminal_measurements removes exactly the named gates") {
    Circuit c(2);
    c.add(UnitaryGate::cnot(1, 0));
    c.add(UnitaryGate::cnot(0, 1));
    c.measure(0, "m");
    const auto result = drop_terminal_measurements(c, {"m"});
    CHECK(result.circuit.size() == 2);
    CHECK(result.circuit.measurement_count() == 0);
    CHECK(result.certificate.checked);
    CHECK(result.certificate.max_deviation < 1e-10);
}

TEST_CASE("drop_terminal_measurements refuses non-terminal labels") {
    // a condition depends on the label
    CHECK_THROWS_AS(drop_terminal_measurements(measured_initialization(), {"m"}),
                    RewriteError);

    // the measured wire is used again afterwards
    Circuit reused(2);
    reused.measure(0, "m");
    reused.add(UnitaryGate::cnot(0, 1));
    CHECK_THROWS_AS(drop_terminal_measurements(reused, {"m"}), RewriteError);

    CHECK_THROWS_AS(drop_terminal_measurements(Circuit(1), {"ghost"}), InputError);
}

TEST_CASE("dropping the deferred syndrome measurements matches the unitary variant") {
    const auto deferred = defer_measurements(
        bitflip_code(ErrorLocation::Bottom, CorrectionVariant::Measured));
    const auto dropped = drop_terminal_measurements(deferred.circuit, {"x", "y"});
    CHECK(dropped.circuit.measurement_count() == 0);
    // what remains is exactly the measurement-free variant's op sequence,
    // up to the commuting order of the corrective gates
    const auto free_form =
        bitflip_code(ErrorLocation::Bottom, CorrectionVariant::MeasurementFree);
    RandomSource rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        const StateVector input = tensor(random_state(1, rng), StateVector(4));
        EquivalenceSpec spec{{}, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, 1e-10};
        CHECK(distributions_equivalent(enumerate_branches(dropped.circuit, input),
                                       enumerate_branches(free_form, input), spec));
    }
}

TEST_CASE("exchange_control_target rewrites an H-sandwiched cNOT") {
    Circuit c(2);
    c.add(UnitaryGate::h(0));
    c.add(UnitaryGate::cnot(0, 1));
    c.add(UnitaryGate::h(0));
    const auto result = exchange_control_target(c, 1);
    const auto& ops = result.circuit.ops();
    REQUIRE(ops.size() == 3);
    CHECK(op_is(ops[0], GateKind::H, {1}));
    CHECK(op_is(ops[1], GateKind::CNOT, {1, 0}));
    CHECK(op_is(ops[2], GateKind::H, {1}));
    // unitary-level equality
    CHECK(circuit_unitary(c).max_abs_diff(circuit_unitary(result.circuit)) < 1e-10);
    CHECK(result.certificate.matrix_checked);
    CHECK(result.certificate.matrix_deviation < 1e-10);
}

TEST_CASE("exchange_control_target maps one spin variant to the other") {
    const Circuit hadamard_form = spin_measurement(SpinVariant::HadamardTest);
    // the ancilla-controlled Toffoli sits between the two H gates
    std::size_t site = 0;
    for (std::size_t i = 0; i < hadamard_form.size(); ++i) {
        const auto* g = std::get_if<GateOp>(&hadamard_form.ops()[i]);
        if (g != nullptr && g->gate.kind == GateKind::TOFFOLI) site = i;
    }
    const auto result = exchange_control_target(hadamard_form, site);
    const Circuit expected = spin_measurement(SpinVariant::BellBasis);
    REQUIRE(result.circuit.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const auto* g = std::get_if<GateOp>(&expected.ops()[i]);
        if (g != nullptr) {
            CHECK(op_is(result.circuit.ops()[i], g->gate.kind, g->gate.targets));
        } else {
            const auto& m = std::get<MeasureOp>(expected.ops()[i]);
            CHECK(op_is_measure(result.circuit.ops()[i], m.qubit, m.label));
        }
    }
}

TEST_CASE("exchange_control_target rejects non-matching sites") {
    Circuit c(2);
    c.add(UnitaryGate::cnot(0, 1));  // no H sandwich anywhere
    CHECK_THROWS_AS(exchange_control_target(c, 0), RewriteError);

    Circuit half(2);
    half.add(UnitaryGate::h(0));
    half.add(UnitaryGate::cnot(0, 1));  // H only before
    CHECK_THROWS_AS(exchange_control_target(half, 1), RewriteError);

    Circuit notx(2);
    notx.add(UnitaryGate::h(0));
    notx.add(UnitaryGate::swap(0, 1));
    notx.add(UnitaryGate::h(0));
    CHECK_THROWS_AS(exchange_control_target(notx, 1), RewriteError);

    CHECK_THROWS_AS(exchange_control_target(c, 99), InputError);
}

TEST_CASE("cancel_inverse_pairs folds mirrors away") {
    SECTION("two Hadamards vanish") {
        Circuit c(1);
        c.add(UnitaryGate::h(0));
        c.add(UnitaryGate::h(0));
        CHECK(cancel_inverse_pairs(c).circuit.size() == 0);
    }
    SECTION("different wires are untouched") {
        Circuit c(2);
        c.add(UnitaryGate::x(0));
        c.add(UnitaryGate::x(1));
        CHECK(cancel_inverse_pairs(c).circuit.size() == 2);
    }
    SECTION("a full mirrored chain collapses to nothing") {
        const auto result = cancel_inverse_pairs(mirrored_chain(4));
        CHECK(result.circuit.size() == 0);
        CHECK(result.certificate.max_deviation < 1e-10);
    }
    SECTION("measurements block cancellation") {
        Circuit c(1);
        c.add(UnitaryGate::x(0));
        c.measure(0, "m");
        c.add(UnitaryGate::x(0));
        CHECK(cancel_inverse_pairs(c).circuit.size() == 3);
    }
    SECTION("conditions must match exactly") {
        Circuit c(2);
        c.measure(0, "m");
        c.add(UnitaryGate::x(1), {{"m", 1}});
        c.add(UnitaryGate::x(1), {{"m", 1}});
        CHECK(cancel_inverse_pairs(c).circuit.size() == 1);

        Circuit mixed(2);
        mixed.measure(0, "m");
        mixed.add(UnitaryGate::x(1), {{"m", 1}});
        mixed.add(UnitaryGate::x(1));
        CHECK(cancel_inverse_pairs(mixed).circuit.size() == 3);
    }
    SECTION("idempotent on random gate soup") {
        RandomSource rng(55);
        for (int trial = 0; trial < 10; ++trial) {
            Circuit c(3);
            for (int step = 0; step < 12; ++step) {
                switch (rng.raw() % 4) {
                    case 0: c.add(UnitaryGate::h(static_cast<int>(rng.raw() % 3))); break;
                    case 1: c.add(UnitaryGate::x(static_cast<int>(rng.raw() % 3))); break;
                    case 2: c.add(UnitaryGate::cnot(0, 1)); break;
                    default: c.add(UnitaryGate::swap(1, 2)); break;
                }
            }
            const auto once = cancel_inverse_pairs(c);
            const auto twice = cancel_inverse_pairs(once.circuit);
            REQUIRE(twice.circuit.size() == once.circuit.size());
            for (std::size_t i = 0; i < once.circuit.size(); ++i) {
                const auto& a = std::get<GateOp>(once.circuit.ops()[i]);
                CHECK(op_is(twice.circuit.ops()[i], a.gate.kind, a.gate.targets));
            }
        }
    }
}

TEST_CASE("fast mode skips certification") {
    RewriteOptions fast;
    fast.certify = false;
    const auto result = defer_measurements(measured_initialization(), fast);
    CHECK_FALSE(result.certificate.checked);
}
