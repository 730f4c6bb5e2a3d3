// rewrite.hpp
// Circuit-to-circuit transformations, each paired with an equivalence
// certificate produced by the branch oracle. The passes:
//
//   defer_measurements       conditioned gates become quantum-controlled
//                            gates on the measured qubits; measurements
//                            move to the end of the circuit
//   drop_terminal_measurements  remove measurements nothing depends on
//   exchange_control_target  H-sandwiched control of a controlled-NOT
//                            swaps roles with the target
//   cancel_inverse_pairs     adjacent identical self-inverse gates vanish

#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mgate/circuit.hpp"
#include "mgate/common.hpp"
#include "mgate/errors.hpp"
#include "mgate/random.hpp"

namespace mgate {

struct RewriteOptions {
    bool certify = true;  // verify-then-return; disable for speed
    int samples = 20;
    std::uint64_t seed = 0x6d67617465ULL;
    double tol = 1e-10;
};

struct RewriteCertificate {
    bool checked = false;
    int samples = 0;
    double max_deviation = 0.0;
    bool matrix_checked = false;  // exchange pass, unitary-level comparison
    double matrix_deviation = 0.0;
};

struct RewriteResult {
    Circuit circuit;
    RewriteCertificate certificate;
};

namespace detail {

// Qubits where a gate acts non-diagonally in the computational basis; these
// are the wires whose deferred measurements the gate would disturb. Controls
// and Z are diagonal and therefore commute with measurement.
inline std::vector<int> nondiagonal_qubits(const UnitaryGate& g) {
    switch (g.kind) {
        case GateKind::Z: return {};
        case GateKind::X:
        case GateKind::H: return {g.targets[0]};
        case GateKind::CNOT: return {g.targets[1]};
        case GateKind::TOFFOLI: return {g.targets[2]};
        case GateKind::SWAP: return g.targets;
        case GateKind::CU:
        case GateKind::CUSTOM: return g.targets;
    }
    return g.targets;
}

inline bool is_x_family(GateKind k) {
    return k == GateKind::X || k == GateKind::CNOT || k == GateKind::TOFFOLI;
}

// X on `target` under positive controls, as the widest gate the catalog has.
inline UnitaryGate controlled_x(std::vector<int> controls, int target) {
    std::sort(controls.begin(), controls.end());
    switch (controls.size()) {
        case 0: return UnitaryGate::x(target);
        case 1: return UnitaryGate::cnot(controls[0], target);
        case 2: return UnitaryGate::toffoli(controls[0], controls[1], target);
        default:
            throw RewriteError("conditions requiring more than two controls are unsupported");
    }
}

// Expand one classically-conditioned gate into unconditional gates that are
// quantum-controlled by the measured qubits. X-family gates expand through
// the XOR-monomial form of the condition indicator, so a negated label
// contributes the lower-degree monomials (e.g. a=1, b=0 gives a + ab).
inline std::vector<UnitaryGate> expand_conditioned(const GateOp& op,
                                                   const std::vector<int>& cond_qubits) {
    const UnitaryGate& g = op.gate;
    for (int cq : cond_qubits) {
        if (g.touches(cq)) {
            throw RewriteError("conditioned gate acts on its own condition qubit");
        }
    }
    if (is_x_family(g.kind)) {
        std::vector<int> base_controls(g.targets.begin(), g.targets.end() - 1);
        const int target = g.targets.back();
        std::vector<UnitaryGate> out;
        const std::size_t terms = op.cond.size();
        // subset mask over condition labels: the XOR expansion of
        // prod_i (required_i ? a_i : 1 + a_i) keeps subset S iff every label
        // outside S is negated.
        for (std::size_t mask = 0; mask < (std::size_t{1} << terms); ++mask) {
            bool keep = true;
            for (std::size_t i = 0; i < terms; ++i) {
                if (!(mask & (std::size_t{1} << i)) && op.cond[i].required == 1) {
                    keep = false;
                    break;
                }
            }
            if (!keep) continue;
            std::vector<int> controls = base_controls;
            for (std::size_t i = 0; i < terms; ++i) {
                if (mask & (std::size_t{1} << i)) controls.push_back(cond_qubits[i]);
            }
            out.push_back(controlled_x(std::move(controls), target));
        }
        return out;
    }
    for (const auto& term : op.cond) {
        if (term.required != 1) {
            throw RewriteError("negated condition on a non-NOT gate is unsupported");
        }
    }
    std::vector<int> controls = g.controls;
    controls.insert(controls.end(), cond_qubits.begin(), cond_qubits.end());
    std::sort(controls.begin(), controls.end());
    const CMatrix block =
        (g.kind == GateKind::CU || g.kind == GateKind::CUSTOM) ? g.matrix : small_unitary(g);
    std::vector<int> targets =
        (g.kind == GateKind::CU || g.kind == GateKind::CUSTOM)
            ? g.targets
            : std::vector<int>(g.targets.begin(), g.targets.end());
    return {UnitaryGate::controlled(block, std::move(controls), std::move(targets))};
}

inline CMatrix reduced_density(const StateVector& state, const std::vector<int>& kept) {
    const int n = state.n_qubits();
    const std::size_t rows = std::size_t{1} << kept.size();
    std::vector<int> rest;
    std::vector<bool> is_kept(static_cast<std::size_t>(n), false);
    for (int q : kept) is_kept[static_cast<std::size_t>(q)] = true;
    for (int q = 0; q < n; ++q) {
        if (!is_kept[static_cast<std::size_t>(q)]) rest.push_back(q);
    }
    const std::size_t cols = std::size_t{1} << rest.size();
    std::vector<Amplitude> m(rows * cols);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        std::size_t r = 0, c = 0;
        for (std::size_t j = 0; j < kept.size(); ++j) {
            r |= std::size_t(state.bit(i, kept[j])) << (kept.size() - 1 - j);
        }
        for (std::size_t j = 0; j < rest.size(); ++j) {
            c |= std::size_t(state.bit(i, rest[j])) << (rest.size() - 1 - j);
        }
        m[r * cols + c] = state[i];
    }
    CMatrix rho(rows);
    for (std::size_t r1 = 0; r1 < rows; ++r1) {
        for (std::size_t r2 = 0; r2 < rows; ++r2) {
            Amplitude acc{};
            for (std::size_t c = 0; c < cols; ++c) {
                acc += m[r1 * cols + c] * std::conj(m[r2 * cols + c]);
            }
            rho.at(r1, r2) = acc;
        }
    }
    return rho;
}

// Branch-for-branch agreement on random full initial states. Valid whenever
// the rewrite preserves the circuit's action for arbitrary inputs, which
// defer/exchange/cancel do.
inline RewriteCertificate certify_branchwise(const Circuit& before, const Circuit& after,
                                             const RewriteOptions& opt,
                                             const char* pass_name) {
    EquivalenceSpec spec;
    for (const auto& label : before.labels()) spec.label_map.emplace_back(label, label);
    for (int q = 0; q < before.n_qubits(); ++q) {
        spec.qubits_a.push_back(q);
        spec.qubits_b.push_back(q);
    }
    spec.tol = opt.tol;

    RewriteCertificate cert;
    cert.checked = true;
    cert.samples = opt.samples;
    RandomSource rng(opt.seed);
    for (int s = 0; s < opt.samples; ++s) {
        const StateVector initial = random_state(before.n_qubits(), rng);
        const auto report = compare_distributions(enumerate_branches(before, initial),
                                                  enumerate_branches(after, initial), spec);
        cert.max_deviation = std::max(cert.max_deviation, report.max_deviation());
        if (!report.equivalent) {
            throw RewriteError(std::string(pass_name) +
                               ": certificate failed: " + report.counterexample);
        }
    }
    return cert;
}

// Marginal probabilities over kept labels plus reduced density matrices over
// kept qubits; sound for arbitrary inputs, including entangled cuts.
inline RewriteCertificate certify_reduced(const Circuit& before, const Circuit& after,
                                          const std::vector<int>& kept_qubits,
                                          const RewriteOptions& opt, const char* pass_name) {
    if (kept_qubits.size() > 10) {
        throw ResourceError("reduced-density certificate limited to 10 kept qubits; "
                            "disable certification for wider circuits");
    }
    EquivalenceSpec prob_spec;
    for (const auto& label : after.labels()) prob_spec.label_map.emplace_back(label, label);
    prob_spec.tol = opt.tol;

    RewriteCertificate cert;
    cert.checked = true;
    cert.samples = opt.samples;
    RandomSource rng(opt.seed);
    for (int s = 0; s < opt.samples; ++s) {
        const StateVector initial = random_state(before.n_qubits(), rng);
        const auto da = enumerate_branches(before, initial);
        const auto db = enumerate_branches(after, initial);
        const auto report = compare_distributions(da, db, prob_spec);
        cert.max_deviation = std::max(cert.max_deviation, report.max_probability_deviation);
        if (!report.equivalent) {
            throw RewriteError(std::string(pass_name) +
                               ": certificate failed: " + report.counterexample);
        }
        if (kept_qubits.empty()) continue;  // nothing left to compare states on
        auto groups_a = detail::group_by(da, after.labels());
        auto groups_b = detail::group_by(db, after.labels());
        for (const auto& [key, ga] : groups_a) {
            if (ga.probability < eps_zero || !groups_b.count(key)) continue;
            const auto& gb = groups_b.at(key);
            CMatrix rho_a(std::size_t{1} << kept_qubits.size());
            CMatrix rho_b(std::size_t{1} << kept_qubits.size());
            for (const Branch* br : ga.members) {
                const CMatrix rho = reduced_density(br->state, kept_qubits);
                for (std::size_t i = 0; i < rho.entries().size(); ++i) {
                    rho_a.at(i / rho.dim(), i % rho.dim()) +=
                        rho.entries()[i] * (br->probability / ga.probability);
                }
            }
            for (const Branch* br : gb.members) {
                const CMatrix rho = reduced_density(br->state, kept_qubits);
                for (std::size_t i = 0; i < rho.entries().size(); ++i) {
                    rho_b.at(i / rho.dim(), i % rho.dim()) +=
                        rho.entries()[i] * (br->probability / gb.probability);
                }
            }
            const double dev = rho_a.max_abs_diff(rho_b);
            cert.max_deviation = std::max(cert.max_deviation, dev);
            if (dev > opt.tol) {
                throw RewriteError(std::string(pass_name) +
                                   ": certificate failed: reduced state mismatch on '" + key +
                                   "'");
            }
        }
    }
    return cert;
}

}  // namespace detail

// Move every measurement to the end of the circuit, replacing classical
// feed-forward with quantum-controlled gates on the measured qubits. Unsound
// patterns (a gate disturbing an already-measured qubit, a conditioned gate
// targeting its own syndrome wire, three-label conjunctions) are refused.
inline RewriteResult defer_measurements(const Circuit& circuit,
                                        const RewriteOptions& opt = {}) {
    std::vector<CircuitOp> body;
    std::vector<MeasureOp> tail;
    std::set<int> deferred;  // qubits whose measurement has been passed

    auto emit_unitary = [&](const UnitaryGate& g) {
        for (int q : detail::nondiagonal_qubits(g)) {
            if (deferred.count(q)) {
                throw RewriteError("gate disturbs qubit " + std::to_string(q) +
                                   " after its deferred measurement");
            }
        }
        body.push_back(GateOp{g, {}});
    };

    for (const auto& op : circuit.ops()) {
        if (const auto* m = std::get_if<MeasureOp>(&op)) {
            tail.push_back(*m);
            deferred.insert(m->qubit);
            continue;
        }
        const auto& g = std::get<GateOp>(op);
        if (g.cond.empty()) {
            emit_unitary(g.gate);
            continue;
        }
        if (g.cond.size() > 2) {
            throw RewriteError("conjunctions of three or more labels are unsupported");
        }
        std::vector<int> cond_qubits;
        for (const auto& term : g.cond) cond_qubits.push_back(circuit.label_qubit(term.label));
        if (cond_qubits.size() == 2 && cond_qubits[0] == cond_qubits[1]) {
            throw RewriteError("condition labels share a measured qubit");
        }
        for (const auto& expanded : detail::expand_conditioned(g, cond_qubits)) {
            emit_unitary(expanded);
        }
    }

    Circuit out(circuit.n_qubits(), std::move(body));
    for (auto& m : tail) out.measure(m.qubit, m.label);

    RewriteCertificate cert;
    if (opt.certify) cert = detail::certify_branchwise(circuit, out, opt, "defer");
    return {std::move(out), cert};
}

// Remove the named measurements. Each must be terminal: nothing later
// conditions on its label or touches its qubit.
inline RewriteResult drop_terminal_measurements(const Circuit& circuit,
                                                const std::vector<std::string>& labels,
                                                const RewriteOptions& opt = {}) {
    std::set<std::string> dropping(labels.begin(), labels.end());
    for (const auto& label : labels) {
        if (!circuit.has_label(label)) throw InputError("unknown label: " + label);
    }
    std::set<int> dropped_qubits;
    std::vector<CircuitOp> kept;
    for (std::size_t i = 0; i < circuit.size(); ++i) {
        const auto& op = circuit.ops()[i];
        const auto* m = std::get_if<MeasureOp>(&op);
        if (m == nullptr || !dropping.count(m->label)) {
            kept.push_back(op);
            continue;
        }
        for (std::size_t j = i + 1; j < circuit.size(); ++j) {
            const auto& later = circuit.ops()[j];
            const auto qs = op_qubits(later);
            if (std::find(qs.begin(), qs.end(), m->qubit) != qs.end()) {
                throw RewriteError("measurement '" + m->label + "' is not terminal: qubit " +
                                   std::to_string(m->qubit) + " is used afterwards");
            }
            if (const auto* g = std::get_if<GateOp>(&later)) {
                for (const auto& term : g->cond) {
                    if (term.label == m->label) {
                        throw RewriteError("measurement '" + m->label +
                                           "' is not terminal: a condition depends on it");
                    }
                }
            }
        }
        dropped_qubits.insert(m->qubit);
    }

    Circuit out(circuit.n_qubits(), std::move(kept));

    RewriteCertificate cert;
    if (opt.certify) {
        std::vector<int> kept_qubits;
        for (int q = 0; q < circuit.n_qubits(); ++q) {
            if (!dropped_qubits.count(q)) kept_qubits.push_back(q);
        }
        cert = detail::certify_reduced(circuit, out, kept_qubits, opt, "drop-terminal");
    }
    return {std::move(out), cert};
}

inline RewriteResult drop_all_terminal_measurements(const Circuit& circuit,
                                                    const RewriteOptions& opt = {}) {
    return drop_terminal_measurements(circuit, circuit.labels(), opt);
}

// Swap the roles of an H-sandwiched control and the target of a
// (multiply-)controlled NOT: the two H gates are absorbed, the former target
// becomes a control wrapped in fresh H gates. The circuit's action is
// unchanged because HZH = X and a multiply-controlled Z is symmetric under
// control/target exchange.
inline RewriteResult exchange_control_target(const Circuit& circuit, std::size_t site,
                                             std::optional<int> designated_control = {},
                                             const RewriteOptions& opt = {}) {
    if (site >= circuit.size()) throw InputError("rewrite site out of range");
    const auto* g = std::get_if<GateOp>(&circuit.ops()[site]);
    if (g == nullptr || !g->cond.empty() ||
        (g->gate.kind != GateKind::CNOT && g->gate.kind != GateKind::TOFFOLI)) {
        throw RewriteError("site is not an unconditional controlled-NOT gate");
    }
    const std::vector<int> controls(g->gate.targets.begin(), g->gate.targets.end() - 1);
    const int target = g->gate.targets.back();

    // nearest op touching `q` on each side of the site
    auto neighbour = [&](int q, bool before) -> std::optional<std::size_t> {
        if (before) {
            for (std::size_t i = site; i-- > 0;) {
                const auto qs = op_qubits(circuit.ops()[i]);
                if (std::find(qs.begin(), qs.end(), q) != qs.end()) return i;
            }
        } else {
            for (std::size_t i = site + 1; i < circuit.size(); ++i) {
                const auto qs = op_qubits(circuit.ops()[i]);
                if (std::find(qs.begin(), qs.end(), q) != qs.end()) return i;
            }
        }
        return std::nullopt;
    };
    auto is_plain_h = [&](std::size_t i, int q) {
        const auto* h = std::get_if<GateOp>(&circuit.ops()[i]);
        return h != nullptr && h->cond.empty() && h->gate.kind == GateKind::H &&
               h->gate.targets[0] == q;
    };

    int chosen = -1;
    std::size_t h_before = 0, h_after = 0;
    for (int c : controls) {
        if (designated_control && *designated_control != c) continue;
        const auto before = neighbour(c, true);
        const auto after = neighbour(c, false);
        if (before && after && is_plain_h(*before, c) && is_plain_h(*after, c)) {
            chosen = c;
            h_before = *before;
            h_after = *after;
            break;
        }
    }
    if (chosen < 0) {
        throw RewriteError("no control at this site is sandwiched between H gates");
    }

    std::vector<int> new_controls;
    for (int c : controls) {
        if (c != chosen) new_controls.push_back(c);
    }
    new_controls.push_back(target);
    UnitaryGate replacement = detail::controlled_x(std::move(new_controls), chosen);

    std::vector<CircuitOp> ops;
    for (std::size_t i = 0; i < circuit.size(); ++i) {
        if (i == h_before || i == h_after) continue;
        if (i == site) {
            ops.push_back(GateOp{UnitaryGate::h(target), {}});
            ops.push_back(GateOp{replacement, {}});
            ops.push_back(GateOp{UnitaryGate::h(target), {}});
            continue;
        }
        ops.push_back(circuit.ops()[i]);
    }
    Circuit out(circuit.n_qubits(), std::move(ops));

    RewriteCertificate cert;
    if (opt.certify) {
        cert = detail::certify_branchwise(circuit, out, opt, "hxch");
        // unitary-level comparison when the affected window is purely unitary
        std::size_t first_measurement = circuit.size();
        for (std::size_t i = 0; i < circuit.size(); ++i) {
            if (is_measurement(circuit.ops()[i])) {
                first_measurement = i;
                break;
            }
        }
        if (first_measurement > h_after && circuit.n_qubits() <= 6 &&
            !circuit.has_conditions()) {
            Circuit prefix_a(circuit.n_qubits());
            Circuit prefix_b(out.n_qubits());
            for (std::size_t i = 0; i < first_measurement; ++i) {
                prefix_a.add(std::get<GateOp>(circuit.ops()[i]).gate);
            }
            for (std::size_t i = 0; i + (circuit.size() - first_measurement) < out.size(); ++i) {
                prefix_b.add(std::get<GateOp>(out.ops()[i]).gate);
            }
            cert.matrix_checked = true;
            cert.matrix_deviation =
                circuit_unitary(prefix_a).max_abs_diff(circuit_unitary(prefix_b));
            if (cert.matrix_deviation > opt.tol) {
                throw RewriteError("hxch: unitary certificate failed");
            }
        }
    }
    return {std::move(out), cert};
}

// Remove adjacent identical self-inverse gate pairs (equal conditions
// included), iterating to a fixed point.
inline RewriteResult cancel_inverse_pairs(const Circuit& circuit,
                                          const RewriteOptions& opt = {}) {
    std::vector<CircuitOp> out;
    for (const auto& op : circuit.ops()) {
        const auto* g = std::get_if<GateOp>(&op);
        if (g != nullptr && !out.empty()) {
            const auto* prev = std::get_if<GateOp>(&out.back());
            if (prev != nullptr && prev->cond == g->cond &&
                prev->gate.same_element(g->gate) && g->gate.self_inverse()) {
                out.pop_back();
                continue;
            }
        }
        out.push_back(op);
    }
    Circuit result(circuit.n_qubits(), std::move(out));

    RewriteCertificate cert;
    if (opt.certify) cert = detail::certify_branchwise(circuit, result, opt, "cancel");
    return {std::move(result), cert};
}

}  // namespace mgate
