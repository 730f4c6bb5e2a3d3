// circuit.hpp
// Circuit IR with classical feed-forward, a sampling executor, and an exact
// branch-enumeration oracle that forks at every measurement gate.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mgate/common.hpp"
#include "mgate/errors.hpp"
#include "mgate/gates.hpp"
#include "mgate/measure.hpp"
#include "mgate/state.hpp"

namespace mgate {

// One conjunct of a classical condition: a previously produced measurement
// label and the bit it must have shown.
struct CondTerm {
    std::string label;
    int required = 1;

    bool operator==(const CondTerm&) const = default;
};

// Conjunction of required outcomes; empty means unconditional.
using ClassicalCondition = std::vector<CondTerm>;

struct GateOp {
    UnitaryGate gate;
    ClassicalCondition cond;
};

struct MeasureOp {
    std::string label;
    int qubit = 0;
};

using CircuitOp = std::variant<GateOp, MeasureOp>;

inline bool is_measurement(const CircuitOp& op) {
    return std::holds_alternative<MeasureOp>(op);
}

// Every wire an op touches.
inline std::vector<int> op_qubits(const CircuitOp& op) {
    if (const auto* m = std::get_if<MeasureOp>(&op)) return {m->qubit};
    return std::get<GateOp>(op).gate.qubits();
}

class Circuit {
public:
    explicit Circuit(int n_qubits) : n_(n_qubits) {
        if (n_qubits < 1) throw InputError("circuit needs at least one qubit");
        if (n_qubits > max_qubits) throw ResourceError("qubit count exceeds dense ceiling");
    }

    Circuit(int n_qubits, std::vector<CircuitOp> ops) : Circuit(n_qubits) {
        for (auto& op : ops) push(std::move(op));
    }

    int n_qubits() const { return n_; }
    const std::vector<CircuitOp>& ops() const { return ops_; }
    std::size_t size() const { return ops_.size(); }

    Circuit& add(UnitaryGate gate, ClassicalCondition cond = {}) {
        push(GateOp{std::move(gate), std::move(cond)});
        return *this;
    }

    Circuit& measure(int qubit, std::string label) {
        push(MeasureOp{std::move(label), qubit});
        return *this;
    }

    // Measurement labels in order of first appearance.
    const std::vector<std::string>& labels() const { return labels_; }

    std::size_t measurement_count() const { return labels_.size(); }

    bool has_label(const std::string& label) const {
        return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
    }

    // Qubit measured under `label`.
    int label_qubit(const std::string& label) const {
        for (const auto& op : ops_) {
            if (const auto* m = std::get_if<MeasureOp>(&op)) {
                if (m->label == label) return m->qubit;
            }
        }
        throw InputError("unknown measurement label: " + label);
    }

    bool has_conditions() const {
        for (const auto& op : ops_) {
            if (const auto* g = std::get_if<GateOp>(&op)) {
                if (!g->cond.empty()) return true;
            }
        }
        return false;
    }

private:
    void push(CircuitOp op) {
        if (const auto* g = std::get_if<GateOp>(&op)) {
            g->gate.validate();
            g->gate.check_range(n_);
            std::vector<std::string> seen;
            for (const auto& term : g->cond) {
                if (term.required != 0 && term.required != 1) {
                    throw InputError("condition bit must be 0 or 1");
                }
                if (!has_label(term.label)) {
                    throw InputError("condition references undefined label: " + term.label);
                }
                if (std::find(seen.begin(), seen.end(), term.label) != seen.end()) {
                    throw InputError("condition repeats label: " + term.label);
                }
                seen.push_back(term.label);
            }
        } else {
            const auto& m = std::get<MeasureOp>(op);
            if (m.qubit < 0 || m.qubit >= n_) throw InputError("measured qubit out of range");
            if (m.label.empty()) throw InputError("measurement needs a label");
            if (has_label(m.label)) throw InputError("duplicate measurement label: " + m.label);
            labels_.push_back(m.label);
        }
        ops_.push_back(std::move(op));
    }

    int n_;
    std::vector<CircuitOp> ops_;
    std::vector<std::string> labels_;
};

inline bool condition_holds(const ClassicalCondition& cond,
                            const std::map<std::string, int>& outcomes) {
    for (const auto& term : cond) {
        const auto it = outcomes.find(term.label);
        if (it == outcomes.end()) throw InputError("condition label never measured: " + term.label);
        if (it->second != term.required) return false;
    }
    return true;
}

struct RunResult {
    std::vector<MeasurementRecord> trace;
    StateVector state;
};

// Execute once: gates in order, conditional gates applied iff their
// conjunction holds over the outcomes recorded so far.
inline RunResult run(const Circuit& circuit, const StateVector& initial, RandomSource& rng) {
    if (initial.n_qubits() != circuit.n_qubits()) {
        throw InputError("initial state does not match circuit width");
    }
    RunResult out{{}, initial};
    std::map<std::string, int> outcomes;
    for (const auto& op : circuit.ops()) {
        if (const auto* m = std::get_if<MeasureOp>(&op)) {
            auto step = measure_qubit(out.state, m->qubit, rng, m->label);
            outcomes[m->label] = step.record.outcome;
            out.trace.push_back(std::move(step.record));
            out.state = std::move(step.state);
        } else {
            const auto& g = std::get<GateOp>(op);
            if (condition_holds(g.cond, outcomes)) {
                out.state = apply(g.gate, out.state);
            }
        }
    }
    return out;
}

inline RunResult run(const Circuit& circuit, RandomSource& rng) {
    return run(circuit, StateVector(circuit.n_qubits()), rng);
}

struct Branch {
    double probability = 0.0;
    StateVector state;
};

// Exact map from joint measurement outcomes to (probability, final state).
// Keys are outcome bits concatenated in label order (first appearance).
class BranchDistribution {
public:
    explicit BranchDistribution(std::vector<std::string> labels) : labels_(std::move(labels)) {}

    const std::vector<std::string>& labels() const { return labels_; }
    const std::map<std::string, Branch>& branches() const { return branches_; }

    void add(const std::string& key, double probability, StateVector state) {
        if (key.size() != labels_.size()) {
            throw InputError("outcome key length does not match label count");
        }
        if (!branches_.emplace(key, Branch{probability, std::move(state)}).second) {
            throw InputError("duplicate branch key: " + key);
        }
    }

    double total_probability() const {
        double s = 0.0;
        for (const auto& [key, b] : branches_) s += b.probability;
        return s;
    }

    std::size_t label_position(const std::string& label) const {
        const auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) throw InputError("unknown label in distribution: " + label);
        return static_cast<std::size_t>(it - labels_.begin());
    }

private:
    std::vector<std::string> labels_;
    std::map<std::string, Branch> branches_;
};

namespace detail {

inline void enumerate_rec(const Circuit& circuit, std::size_t at, StateVector state,
                          double probability, std::string key,
                          std::map<std::string, int>& outcomes, BranchDistribution& out) {
    for (std::size_t i = at; i < circuit.size(); ++i) {
        const auto& op = circuit.ops()[i];
        if (const auto* g = std::get_if<GateOp>(&op)) {
            if (condition_holds(g->cond, outcomes)) state = apply(g->gate, state);
            continue;
        }
        const auto& m = std::get<MeasureOp>(op);
        for (int x : {0, 1}) {
            auto proj = project(state, m.qubit, x);
            const double p = probability * proj.norm2;
            if (proj.norm2 < eps_zero || p < eps_zero) continue;  // pruned branch
            outcomes[m.label] = x;
            enumerate_rec(circuit, i + 1, normalized(proj.state), p,
                          key + static_cast<char>('0' + x), outcomes, out);
            outcomes.erase(m.label);
        }
        return;
    }
    out.add(key, probability, std::move(state));
}

}  // namespace detail

// Depth-first exploration forking at every measurement into both outcomes
// with their exact projected probabilities. Branches below eps_zero are
// pruned, so deterministic circuits stay single-branch.
inline BranchDistribution enumerate_branches(const Circuit& circuit, const StateVector& initial) {
    if (initial.n_qubits() != circuit.n_qubits()) {
        throw InputError("initial state does not match circuit width");
    }
    if (circuit.measurement_count() > static_cast<std::size_t>(max_measurements)) {
        throw ResourceError("too many measurements to enumerate");
    }
    if (!initial.is_normalized()) {
        throw InputError("initial state must be normalized");
    }
    BranchDistribution out(circuit.labels());
    std::map<std::string, int> outcomes;
    detail::enumerate_rec(circuit, 0, initial, 1.0, "", outcomes, out);
    return out;
}

inline BranchDistribution enumerate_branches(const Circuit& circuit) {
    return enumerate_branches(circuit, StateVector(circuit.n_qubits()));
}

// Empirical outcome frequencies over repeated runs; values sum to `shots`.
inline std::map<std::string, long long> sample_distribution(const Circuit& circuit,
                                                            const StateVector& initial,
                                                            long long shots,
                                                            RandomSource& rng) {
    if (shots < 1) throw InputError("shots must be positive");
    std::map<std::string, long long> counts;
    for (long long s = 0; s < shots; ++s) {
        auto result = run(circuit, initial, rng);
        std::string key(result.trace.size(), '0');
        // trace order equals label first-appearance order: labels are unique
        // and each measurement op fires exactly once per run
        for (std::size_t i = 0; i < result.trace.size(); ++i) {
            key[i] = static_cast<char>('0' + result.trace[i].outcome);
        }
        ++counts[key];
    }
    return counts;
}

// Full unitary of a measurement-free, condition-free circuit. Oracle only.
inline CMatrix circuit_unitary(const Circuit& circuit) {
    if (circuit.n_qubits() > max_unitary_qubits) {
        throw ResourceError("circuit unitary limited to 12 qubits");
    }
    CMatrix u = CMatrix::identity(std::size_t{1} << circuit.n_qubits());
    for (const auto& op : circuit.ops()) {
        const auto* g = std::get_if<GateOp>(&op);
        if (g == nullptr || !g->cond.empty()) {
            throw InputError("circuit_unitary needs a purely unitary circuit");
        }
        u = gate_unitary(g->gate, circuit.n_qubits()) * u;
    }
    return u;
}

// --- distribution equivalence ---

// How to line up two distributions: matched label pairs (left circuit label,
// right circuit label); labels absent from the map are marginalized away.
// States are compared on the designated qubit subsets, which must carry a
// product factor in every branch; leave both subsets empty to compare
// probabilities only.
struct EquivalenceSpec {
    std::vector<std::pair<std::string, std::string>> label_map;
    std::vector<int> qubits_a;
    std::vector<int> qubits_b;
    double tol = 1e-10;
};

struct EquivalenceReport {
    bool equivalent = true;
    double max_probability_deviation = 0.0;
    double min_state_fidelity = 1.0;
    std::string counterexample;  // first failing group, empty when equivalent

    double max_deviation() const {
        return std::max(max_probability_deviation, 1.0 - min_state_fidelity);
    }
};

namespace detail {

struct MarginalGroup {
    double probability = 0.0;
    std::vector<const Branch*> members;
};

inline std::map<std::string, MarginalGroup> group_by(
    const BranchDistribution& dist, const std::vector<std::string>& kept_labels) {
    std::vector<std::size_t> positions;
    positions.reserve(kept_labels.size());
    for (const auto& label : kept_labels) positions.push_back(dist.label_position(label));
    std::map<std::string, MarginalGroup> groups;
    for (const auto& [key, branch] : dist.branches()) {
        std::string reduced(positions.size(), '0');
        for (std::size_t i = 0; i < positions.size(); ++i) reduced[i] = key[positions[i]];
        auto& g = groups[reduced];
        g.probability += branch.probability;
        g.members.push_back(&branch);
    }
    return groups;
}

}  // namespace detail

inline EquivalenceReport compare_distributions(const BranchDistribution& a,
                                               const BranchDistribution& b,
                                               const EquivalenceSpec& spec) {
    std::vector<std::string> labels_a, labels_b;
    for (const auto& [la, lb] : spec.label_map) {
        labels_a.push_back(la);
        labels_b.push_back(lb);
    }
    auto groups_a = detail::group_by(a, labels_a);
    auto groups_b = detail::group_by(b, labels_b);

    const bool compare_states = !spec.qubits_a.empty() || !spec.qubits_b.empty();
    if (compare_states && spec.qubits_a.size() != spec.qubits_b.size()) {
        throw InputError("designated qubit subsets must have equal size");
    }

    EquivalenceReport report;
    std::vector<std::string> keys;
    for (const auto& [key, g] : groups_a) keys.push_back(key);
    for (const auto& [key, g] : groups_b) {
        if (!groups_a.count(key)) keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());

    for (const auto& key : keys) {
        const auto* ga = groups_a.count(key) ? &groups_a.at(key) : nullptr;
        const auto* gb = groups_b.count(key) ? &groups_b.at(key) : nullptr;
        const double pa = ga ? ga->probability : 0.0;
        const double pb = gb ? gb->probability : 0.0;
        const double dev = std::abs(pa - pb);
        report.max_probability_deviation = std::max(report.max_probability_deviation, dev);
        if (dev > spec.tol && report.counterexample.empty()) {
            report.equivalent = false;
            report.counterexample = "outcome '" + key + "': probability " +
                                    std::to_string(pa) + " vs " + std::to_string(pb);
        }
        if (!compare_states || pa < eps_zero || pb < eps_zero) continue;

        // Every branch on either side must carry the same factor state on the
        // designated qubits.
        std::optional<StateVector> reference;
        auto visit = [&](const detail::MarginalGroup& g, const std::vector<int>& qubits) {
            for (const Branch* br : g.members) {
                StateVector part = subset_state(br->state, qubits);
                if (!reference) {
                    reference = std::move(part);
                    continue;
                }
                const double f = fidelity(*reference, part);
                report.min_state_fidelity = std::min(report.min_state_fidelity, f);
                if (f < 1.0 - spec.tol && report.counterexample.empty()) {
                    report.equivalent = false;
                    report.counterexample =
                        "outcome '" + key + "': subset states differ, fidelity " +
                        std::to_string(f);
                }
            }
        };
        visit(*ga, spec.qubits_a);
        visit(*gb, spec.qubits_b);
    }
    return report;
}

inline bool distributions_equivalent(const BranchDistribution& a, const BranchDistribution& b,
                                     const EquivalenceSpec& spec) {
    return compare_distributions(a, b, spec).equivalent;
}

}  // namespace mgate
