#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "mgate/figures.hpp"
#include "mgate/io.hpp"
#include "mgate/random.hpp"

using namespace mgate;

namespace {

Circuit kitchen_sink_circuit() {
    RandomSource rng(67);
    Circuit c(4);
    c.add(UnitaryGate::h(0));
    c.add(UnitaryGate::z(3));
    c.add(UnitaryGate::cnot(0, 1));
    c.add(UnitaryGate::swap(1, 2));
    c.add(UnitaryGate::toffoli(0, 1, 2));
    c.add(UnitaryGate::custom(random_unitary(2, rng), {3}));
    c.measure(2, "x");
    c.add(UnitaryGate::controlled(random_unitary(4, rng), {0}, {1, 3}), {{"x", 1}});
    c.measure(0, "y");
    c.add(UnitaryGate::x(1), {{"x", 1}, {"y", 0}});
    return c;
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("circuit serialization round-trips") {
    const Circuit original = kitchen_sink_circuit();
    const json encoded = circuit_to_json(original);
    const Circuit reparsed = circuit_from_json(encoded);
    // serializing again reproduces the same document
    CHECK(circuit_to_json(reparsed) == encoded);

    // and the behavior is identical, branch for branch
    RandomSource rng(71);
    const StateVector input = random_state(4, rng);
    EquivalenceSpec spec;
    for (const auto& label : original.labels()) spec.label_map.emplace_back(label, label);
    spec.qubits_a = spec.qubits_b = {0, 1, 2, 3};
    CHECK(distributions_equivalent(enumerate_branches(original, input),
                                   enumerate_branches(reparsed, input), spec));
}

TEST_CASE("random circuits round-trip through JSON unchanged") {
    RandomSource rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c(4);
        int measurements = 0;
        for (int step = 0; step < 15; ++step) {
            const int q = static_cast<int>(rng.raw() % 4);
            ClassicalCondition cond;
            if (measurements > 0 && rng.raw() % 3 == 0) {
                const auto& label = c.labels()[rng.raw() % c.labels().size()];
                cond.push_back({label, static_cast<int>(rng.raw() % 2)});
            }
            switch (rng.raw() % 8) {
                case 0: c.add(UnitaryGate::x(q), cond); break;
                case 1: c.add(UnitaryGate::z(q), cond); break;
                case 2: c.add(UnitaryGate::h(q), cond); break;
                case 3: c.add(UnitaryGate::cnot(q, (q + 1) % 4), cond); break;
                case 4: c.add(UnitaryGate::swap(q, (q + 2) % 4), cond); break;
                case 5: c.add(UnitaryGate::toffoli(q, (q + 1) % 4, (q + 2) % 4), cond); break;
                case 6:
                    c.add(UnitaryGate::controlled(random_unitary(2, rng), {q},
                                                  {(q + 1) % 4}),
                          cond);
                    break;
                default:
                    c.measure(q, "m" + std::to_string(measurements++));
                    break;
            }
        }
        const json encoded = circuit_to_json(c);
        CHECK(circuit_to_json(circuit_from_json(encoded)) == encoded);
    }
}

TEST_CASE("figure builders round-trip through files") {
    const auto path = temp_file("mgate_roundtrip.json");
    for (const Circuit& c :
         {figures::bitflip_code(figures::ErrorLocation::Middle,
                                figures::CorrectionVariant::Measured),
          figures::spin_measurement(figures::SpinVariant::BellBasis),
          figures::measured_initialization()}) {
        save_circuit(c, path.string());
        const Circuit back = load_circuit(path.string());
        CHECK(circuit_to_json(back) == circuit_to_json(c));
    }
    std::filesystem::remove(path);
}

TEST_CASE("parser rejects malformed files") {
    CHECK_THROWS_AS(circuit_from_json(json::parse(R"({"ops": []})")), ParseError);
    CHECK_THROWS_AS(circuit_from_json(json::parse(R"({"qubits": 2})")), ParseError);
    CHECK_THROWS_AS(circuit_from_json(json::parse(R"({"qubits": 2, "ops": [{"targets":[0]}]})")),
                    ParseError);
    CHECK_THROWS_AS(
        circuit_from_json(json::parse(R"({"qubits": 2, "ops": [{"gate":"WAT","targets":[0]}]})")),
        ParseError);
    // out-of-range target is a file defect, surfaced as ParseError
    CHECK_THROWS_AS(
        circuit_from_json(json::parse(R"({"qubits": 1, "ops": [{"gate":"X","targets":[4]}]})")),
        ParseError);
    // condition on an undefined label
    CHECK_THROWS_AS(circuit_from_json(json::parse(
                        R"({"qubits": 1, "ops": [{"gate":"X","targets":[0],"cond":[["m",1]]}]})")),
                    ParseError);
    // measurement without a label
    CHECK_THROWS_AS(
        circuit_from_json(json::parse(R"({"qubits": 1, "ops": [{"gate":"M","targets":[0]}]})")),
        ParseError);
    // matrix of the wrong size
    CHECK_THROWS_AS(circuit_from_json(json::parse(
                        R"({"qubits": 1, "ops": [{"gate":"CUSTOM","targets":[0],
                             "matrix":[[1,0],[0,0]]}]})")),
                    ParseError);

    const auto path = temp_file("mgate_bad.json");
    std::ofstream(path) << "{ this is not json";
    CHECK_THROWS_AS(load_circuit(path.string()), ParseError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_circuit("/nonexistent/nope.json"), ParseError);
}

TEST_CASE("state and record dumps carry the documented fields") {
    const auto s = state_to_json(basis_state(2, "10"));
    CHECK(s["n_qubits"] == 2);
    REQUIRE(s["amps"].size() == 4);
    CHECK(s["amps"][2][0] == 1.0);
    CHECK(s["amps"][2][1] == 0.0);

    const auto r = record_to_json({"m", 1, 0, 0.25});
    CHECK(r["label"] == "m");
    CHECK(r["qubit"] == 1);
    CHECK(r["outcome"] == 0);
    CHECK(r["prob"] == 0.25);
}

TEST_CASE("distribution dump is keyed by outcome strings") {
    Circuit c(2);
    c.add(UnitaryGate::h(0));
    c.add(UnitaryGate::cnot(0, 1));
    c.measure(0, "a");
    c.measure(1, "b");
    const auto dist = enumerate_branches(c);
    const auto j = distribution_to_json(dist);
    CHECK(j["labels"] == json::array({"a", "b"}));
    CHECK(j["probabilities"].size() == 2);
    CHECK(j["probabilities"]["00"] == Approx(0.5));
    CHECK(j["states"]["11"]["n_qubits"] == 2);

    const auto counts = counts_to_json({{"00", 42}, {"11", 58}}, dist.labels(), 100);
    CHECK(counts["shots"] == 100);
    CHECK(counts["counts"]["00"] == 42);
}
