// io.hpp
// Circuit file format and JSON dumps.
//
// Circuit files: {"qubits": N, "ops": [...]} where each op is one of
//   {"gate":"H","targets":[0]}
//   {"gate":"CNOT","targets":[control,target]}
//   {"gate":"TOFFOLI","targets":[c1,c2,target]}
//   {"gate":"CU","controls":[...],"targets":[...],"matrix":[[re,im],...]}
//   {"gate":"CUSTOM","targets":[...],"matrix":[[re,im],...]}
//   {"gate":"M","targets":[q],"label":"x"}
// and any unitary op may carry "cond": [["x",1],["y",0]].
// Matrices are row-major [re, im] pairs.

#pragma once

#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mgate/circuit.hpp"
#include "mgate/errors.hpp"
#include "mgate/measure.hpp"
#include "mgate/state.hpp"

namespace mgate {

using json = nlohmann::json;

inline json state_to_json(const StateVector& state) {
    json amps = json::array();
    for (const auto& a : state.amplitudes()) {
        amps.push_back(json::array({a.real(), a.imag()}));
    }
    return json{{"n_qubits", state.n_qubits()}, {"amps", std::move(amps)}};
}

inline json record_to_json(const MeasurementRecord& rec) {
    return json{{"label", rec.label},
                {"qubit", rec.qubit},
                {"outcome", rec.outcome},
                {"prob", rec.probability}};
}

namespace detail {

inline json matrix_to_json(const CMatrix& m) {
    json out = json::array();
    for (const auto& v : m.entries()) out.push_back(json::array({v.real(), v.imag()}));
    return out;
}

inline CMatrix matrix_from_json(const json& j, std::size_t targets) {
    const std::size_t dim = std::size_t{1} << targets;
    if (!j.is_array() || j.size() != dim * dim) {
        throw ParseError("matrix must hold " + std::to_string(dim * dim) + " [re, im] pairs");
    }
    std::vector<Amplitude> entries;
    entries.reserve(j.size());
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2) {
            throw ParseError("matrix entries must be [re, im] pairs");
        }
        entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return CMatrix(dim, std::move(entries));
}

inline std::vector<int> int_list(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ParseError(std::string(what) + " must hold integers");
        out.push_back(v.get<int>());
    }
    return out;
}

}  // namespace detail

inline json circuit_to_json(const Circuit& circuit) {
    json ops = json::array();
    for (const auto& op : circuit.ops()) {
        json entry;
        if (const auto* m = std::get_if<MeasureOp>(&op)) {
            entry["gate"] = "M";
            entry["targets"] = json::array({m->qubit});
            entry["label"] = m->label;
        } else {
            const auto& g = std::get<GateOp>(op);
            entry["gate"] = gate_name(g.gate.kind);
            entry["targets"] = g.gate.targets;
            if (g.gate.kind == GateKind::CU) entry["controls"] = g.gate.controls;
            if (g.gate.kind == GateKind::CU || g.gate.kind == GateKind::CUSTOM) {
                entry["matrix"] = detail::matrix_to_json(g.gate.matrix);
            }
            if (!g.cond.empty()) {
                json cond = json::array();
                for (const auto& term : g.cond) {
                    cond.push_back(json::array({term.label, term.required}));
                }
                entry["cond"] = std::move(cond);
            }
        }
        ops.push_back(std::move(entry));
    }
    return json{{"qubits", circuit.n_qubits()}, {"ops", std::move(ops)}};
}

inline Circuit circuit_from_json(const json& j) {
    if (!j.is_object() || !j.contains("qubits") || !j.contains("ops")) {
        throw ParseError("circuit file needs top-level 'qubits' and 'ops'");
    }
    if (!j["qubits"].is_number_integer()) throw ParseError("'qubits' must be an integer");
    const int n = j["qubits"].get<int>();
    if (!j["ops"].is_array()) throw ParseError("'ops' must be an array");

    try {
        Circuit circuit(n);
        std::size_t index = 0;
        for (const auto& entry : j["ops"]) {
            ++index;
            if (!entry.is_object() || !entry.contains("gate")) {
                throw ParseError("op " + std::to_string(index) + " needs a 'gate' field");
            }
            const std::string kind = entry["gate"].get<std::string>();
            const auto targets = entry.contains("targets")
                                     ? detail::int_list(entry["targets"], "targets")
                                     : std::vector<int>{};
            if (kind == "M") {
                if (targets.size() != 1) throw ParseError("M takes exactly one target");
                if (!entry.contains("label") || !entry["label"].is_string()) {
                    throw ParseError("M needs a string 'label'");
                }
                circuit.measure(targets[0], entry["label"].get<std::string>());
                continue;
            }
            ClassicalCondition cond;
            if (entry.contains("cond")) {
                if (!entry["cond"].is_array()) throw ParseError("'cond' must be an array");
                for (const auto& term : entry["cond"]) {
                    if (!term.is_array() || term.size() != 2 || !term[0].is_string() ||
                        !term[1].is_number_integer()) {
                        throw ParseError("condition terms must be [label, bit] pairs");
                    }
                    cond.push_back({term[0].get<std::string>(), term[1].get<int>()});
                }
            }
            UnitaryGate gate;
            if (kind == "X") {
                gate = UnitaryGate::x(targets.at(0));
            } else if (kind == "Z") {
                gate = UnitaryGate::z(targets.at(0));
            } else if (kind == "H") {
                gate = UnitaryGate::h(targets.at(0));
            } else if (kind == "CNOT") {
                if (targets.size() != 2) throw ParseError("CNOT takes [control, target]");
                gate = UnitaryGate::cnot(targets[0], targets[1]);
            } else if (kind == "TOFFOLI") {
                if (targets.size() != 3) throw ParseError("TOFFOLI takes [c1, c2, target]");
                gate = UnitaryGate::toffoli(targets[0], targets[1], targets[2]);
            } else if (kind == "SWAP") {
                if (targets.size() != 2) throw ParseError("SWAP takes two targets");
                gate = UnitaryGate::swap(targets[0], targets[1]);
            } else if (kind == "CU") {
                if (!entry.contains("controls") || !entry.contains("matrix")) {
                    throw ParseError("CU needs 'controls' and 'matrix'");
                }
                gate = UnitaryGate::controlled(
                    detail::matrix_from_json(entry["matrix"], targets.size()),
                    detail::int_list(entry["controls"], "controls"), targets);
            } else if (kind == "CUSTOM") {
                if (!entry.contains("matrix")) throw ParseError("CUSTOM needs 'matrix'");
                gate = UnitaryGate::custom(
                    detail::matrix_from_json(entry["matrix"], targets.size()), targets);
            } else {
                throw ParseError("unknown gate '" + kind + "'");
            }
            circuit.add(std::move(gate), std::move(cond));
        }
        return circuit;
    } catch (const ParseError&) {
        throw;
    } catch (const SimError& e) {
        // semantic violations (ranges, labels, unitarity) are file defects too
        throw ParseError(e.what());
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

inline Circuit load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open circuit file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return circuit_from_json(j);
}

inline void save_circuit(const Circuit& circuit, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write circuit file: " + path);
    out << circuit_to_json(circuit).dump(2) << '\n';
}

// Exact distribution dump: probabilities plus per-branch state dumps, keyed
// by outcome strings over the labels in first-appearance order.
inline json distribution_to_json(const BranchDistribution& dist, bool include_states = true) {
    json probs = json::object();
    json states = json::object();
    for (const auto& [key, branch] : dist.branches()) {
        probs[key] = branch.probability;
        if (include_states) states[key] = state_to_json(branch.state);
    }
    json out{{"labels", dist.labels()}, {"probabilities", std::move(probs)}};
    if (include_states) out["states"] = std::move(states);
    return out;
}

inline json counts_to_json(const std::map<std::string, long long>& counts,
                           const std::vector<std::string>& labels, long long shots) {
    json c = json::object();
    for (const auto& [key, count] : counts) c[key] = count;
    return json{{"labels", labels}, {"shots", shots}, {"counts", std::move(c)}};
}

}  // namespace mgate
