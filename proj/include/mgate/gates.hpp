// gates.hpp
// The discrete unitary gate catalog and its action on state vectors.
//
// apply() works by amplitude-index bit manipulation. gate_unitary() builds
// the full 2^n x 2^n embedding from the gate's defining small matrix by pure
// index arithmetic; it shares no code with apply() and serves as its oracle.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mgate/common.hpp"
#include "mgate/errors.hpp"
#include "mgate/matrix.hpp"
#include "mgate/state.hpp"

namespace mgate {

enum class GateKind { X, Z, H, CNOT, TOFFOLI, SWAP, CU, CUSTOM };

inline const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::CNOT: return "CNOT";
        case GateKind::TOFFOLI: return "TOFFOLI";
        case GateKind::SWAP: return "SWAP";
        case GateKind::CU: return "CU";
        case GateKind::CUSTOM: return "CUSTOM";
    }
    return "?";
}

// One unitary circuit element. Controls live inside `targets` for the named
// controlled gates (CNOT = [control, target], TOFFOLI = [c1, c2, target]);
// CU keeps an explicit control list next to the targeted block. For CU and
// CUSTOM, `matrix` is the 2^k x 2^k block over the listed targets, with the
// first-listed target as the most significant sub-index bit.
struct UnitaryGate {
    GateKind kind = GateKind::X;
    std::vector<int> targets;
    std::vector<int> controls;  // CU only
    CMatrix matrix;             // CU / CUSTOM only

    static UnitaryGate x(int t) { return make(GateKind::X, {t}); }
    static UnitaryGate z(int t) { return make(GateKind::Z, {t}); }
    static UnitaryGate h(int t) { return make(GateKind::H, {t}); }
    static UnitaryGate cnot(int control, int target) {
        return make(GateKind::CNOT, {control, target});
    }
    static UnitaryGate toffoli(int c1, int c2, int target) {
        return make(GateKind::TOFFOLI, {c1, c2, target});
    }
    static UnitaryGate swap(int a, int b) { return make(GateKind::SWAP, {a, b}); }

    static UnitaryGate custom(CMatrix u, std::vector<int> targets) {
        UnitaryGate g{GateKind::CUSTOM, std::move(targets), {}, std::move(u)};
        g.validate();
        return g;
    }

    static UnitaryGate controlled(CMatrix u, std::vector<int> controls,
                                  std::vector<int> targets) {
        UnitaryGate g{GateKind::CU, std::move(targets), std::move(controls), std::move(u)};
        g.validate();
        return g;
    }

    // Every wire the gate touches, controls first.
    std::vector<int> qubits() const {
        std::vector<int> qs = controls;
        qs.insert(qs.end(), targets.begin(), targets.end());
        return qs;
    }

    bool touches(int q) const {
        const auto qs = qubits();
        return std::find(qs.begin(), qs.end(), q) != qs.end();
    }

    UnitaryGate adjoint() const {
        UnitaryGate g = *this;
        if (kind == GateKind::CU || kind == GateKind::CUSTOM) g.matrix = matrix.dagger();
        return g;  // the named gates are all self-adjoint
    }

    bool self_inverse() const {
        if (kind == GateKind::CU || kind == GateKind::CUSTOM) {
            return (matrix * matrix).max_abs_diff(CMatrix::identity(matrix.dim())) < eps_norm;
        }
        return true;
    }

    bool same_element(const UnitaryGate& o) const {
        if (kind != o.kind || targets != o.targets || controls != o.controls) return false;
        if (kind == GateKind::CU || kind == GateKind::CUSTOM) {
            return matrix.dim() == o.matrix.dim() && matrix.max_abs_diff(o.matrix) == 0.0;
        }
        return true;
    }

    void validate() const {
        const std::size_t arity = expected_arity(kind);
        if (arity != 0 && targets.size() != arity) {
            throw InputError(std::string(gate_name(kind)) + " expects " +
                             std::to_string(arity) + " target(s)");
        }
        if (kind == GateKind::CU && controls.empty()) {
            throw InputError("CU needs at least one control");
        }
        if (kind != GateKind::CU && !controls.empty()) {
            throw InputError("only CU carries an explicit control list");
        }
        if (kind == GateKind::CU || kind == GateKind::CUSTOM) {
            if (targets.empty()) throw InputError("matrix gate needs targets");
            const std::size_t want = std::size_t{1} << targets.size();
            if (matrix.dim() != want) {
                throw InputError("matrix dimension does not match target count");
            }
            if (!matrix.is_unitary(eps_norm)) throw InputError("matrix is not unitary");
        }
        auto qs = qubits();
        std::sort(qs.begin(), qs.end());
        if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) {
            throw InputError("gate qubits must be distinct");
        }
    }

    void check_range(int n_qubits) const {
        for (int q : qubits()) {
            if (q < 0 || q >= n_qubits) {
                throw InputError(std::string(gate_name(kind)) + " target out of range");
            }
        }
    }

private:
    static std::size_t expected_arity(GateKind k) {
        switch (k) {
            case GateKind::X:
            case GateKind::Z:
            case GateKind::H: return 1;
            case GateKind::CNOT:
            case GateKind::SWAP: return 2;
            case GateKind::TOFFOLI: return 3;
            default: return 0;
        }
    }

    static UnitaryGate make(GateKind k, std::vector<int> targets) {
        UnitaryGate g{k, std::move(targets), {}, {}};
        g.validate();
        return g;
    }
};

namespace detail {

inline const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

// Apply a k-qubit matrix block over `qs`, restricted to indices where all
// `control_mask` bits are set. Sub-index: first qubit in qs = MSB.
inline void apply_block(std::vector<Amplitude>& amps, int n, const CMatrix& u,
                        const std::vector<int>& qs, std::size_t control_mask) {
    const std::size_t k = qs.size();
    std::vector<std::size_t> bit(k);
    std::size_t target_mask = 0;
    for (std::size_t j = 0; j < k; ++j) {
        bit[j] = std::size_t{1} << (n - 1 - qs[j]);
        target_mask |= bit[j];
    }
    const std::size_t block = std::size_t{1} << k;
    std::vector<std::size_t> offsets(block);
    for (std::size_t s = 0; s < block; ++s) {
        std::size_t off = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (s & (std::size_t{1} << (k - 1 - j))) off |= bit[j];
        }
        offsets[s] = off;
    }
    std::vector<Amplitude> in(block), out(block);
    for (std::size_t base = 0; base < amps.size(); ++base) {
        if ((base & target_mask) != 0) continue;
        if ((base & control_mask) != control_mask) continue;
        for (std::size_t s = 0; s < block; ++s) in[s] = amps[base | offsets[s]];
        for (std::size_t r = 0; r < block; ++r) {
            Amplitude acc{};
            for (std::size_t c = 0; c < block; ++c) acc += u.at(r, c) * in[c];
            out[r] = acc;
        }
        for (std::size_t s = 0; s < block; ++s) amps[base | offsets[s]] = out[s];
    }
}

}  // namespace detail

// Gate action on the targeted qubits, identity elsewhere.
inline StateVector apply(const UnitaryGate& gate, const StateVector& state) {
    gate.check_range(state.n_qubits());
    const int n = state.n_qubits();
    std::vector<Amplitude> amps = state.amplitudes();
    const auto bitmask = [&](int q) { return std::size_t{1} << (n - 1 - q); };

    switch (gate.kind) {
        case GateKind::X: {
            const std::size_t m = bitmask(gate.targets[0]);
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if (!(i & m)) std::swap(amps[i], amps[i | m]);
            }
            break;
        }
        case GateKind::Z: {
            const std::size_t m = bitmask(gate.targets[0]);
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if (i & m) amps[i] = -amps[i];
            }
            break;
        }
        case GateKind::H: {
            const std::size_t m = bitmask(gate.targets[0]);
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if (i & m) continue;
                const Amplitude a0 = amps[i];
                const Amplitude a1 = amps[i | m];
                amps[i] = (a0 + a1) * detail::inv_sqrt2;
                amps[i | m] = (a0 - a1) * detail::inv_sqrt2;
            }
            break;
        }
        case GateKind::CNOT: {
            const std::size_t c = bitmask(gate.targets[0]);
            const std::size_t t = bitmask(gate.targets[1]);
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if ((i & c) && !(i & t)) std::swap(amps[i], amps[i | t]);
            }
            break;
        }
        case GateKind::TOFFOLI: {
            const std::size_t c = bitmask(gate.targets[0]) | bitmask(gate.targets[1]);
            const std::size_t t = bitmask(gate.targets[2]);
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if (((i & c) == c) && !(i & t)) std::swap(amps[i], amps[i | t]);
            }
            break;
        }
        case GateKind::SWAP: {
            const std::size_t a = bitmask(gate.targets[0]);
            const std::size_t b = bitmask(gate.targets[1]);
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if ((i & a) && !(i & b)) std::swap(amps[i], amps[(i ^ a) | b]);
            }
            break;
        }
        case GateKind::CU: {
            std::size_t control_mask = 0;
            for (int q : gate.controls) control_mask |= bitmask(q);
            detail::apply_block(amps, n, gate.matrix, gate.targets, control_mask);
            break;
        }
        case GateKind::CUSTOM: {
            detail::apply_block(amps, n, gate.matrix, gate.targets, 0);
            break;
        }
    }
    return StateVector(n, std::move(amps));
}

namespace detail {

// Defining small matrix over the gate's qubit list (controls first for CU).
inline CMatrix small_unitary(const UnitaryGate& g) {
    switch (g.kind) {
        case GateKind::X:
            return CMatrix::from_rows({{0, 1}, {1, 0}});
        case GateKind::Z:
            return CMatrix::from_rows({{1, 0}, {0, -1}});
        case GateKind::H:
            return CMatrix::from_rows({{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}});
        case GateKind::CNOT:
            return CMatrix::from_rows(
                {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
        case GateKind::SWAP:
            return CMatrix::from_rows(
                {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
        case GateKind::TOFFOLI: {
            CMatrix m = CMatrix::identity(8);
            m.at(6, 6) = 0;
            m.at(7, 7) = 0;
            m.at(6, 7) = 1;
            m.at(7, 6) = 1;
            return m;
        }
        case GateKind::CU: {
            const std::size_t blk = g.matrix.dim();
            const std::size_t dim = blk << g.controls.size();
            CMatrix m = CMatrix::identity(dim);
            const std::size_t base = dim - blk;  // all controls = 1
            for (std::size_t r = 0; r < blk; ++r) {
                for (std::size_t c = 0; c < blk; ++c) {
                    m.at(base + r, base + c) = g.matrix.at(r, c);
                }
            }
            return m;
        }
        case GateKind::CUSTOM:
            return g.matrix;
    }
    throw InputError("unknown gate kind");
}

}  // namespace detail

// Full-space embedding of a gate, by index arithmetic on the defining small
// matrix: entry (r, c) is small(sub(r), sub(c)) when r and c agree on every
// untouched qubit, else 0. Verification oracle only.
inline CMatrix gate_unitary(const UnitaryGate& gate, int n_qubits) {
    if (n_qubits > max_unitary_qubits) {
        throw ResourceError("full unitary embedding limited to 12 qubits");
    }
    gate.check_range(n_qubits);
    const auto qs = gate.qubits();
    const CMatrix small = detail::small_unitary(gate);
    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::size_t k = qs.size();

    std::size_t touched_mask = 0;
    std::vector<std::size_t> bit(k);
    for (std::size_t j = 0; j < k; ++j) {
        bit[j] = std::size_t{1} << (n_qubits - 1 - qs[j]);
        touched_mask |= bit[j];
    }
    const auto sub_index = [&](std::size_t i) {
        std::size_t s = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (i & bit[j]) s |= std::size_t{1} << (k - 1 - j);
        }
        return s;
    };

    CMatrix full(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const std::size_t rest = r & ~touched_mask;
        const std::size_t sr = sub_index(r);
        for (std::size_t sc = 0; sc < small.dim(); ++sc) {
            const Amplitude v = small.at(sr, sc);
            if (v == Amplitude{}) continue;
            std::size_t c = rest;
            for (std::size_t j = 0; j < k; ++j) {
                if (sc & (std::size_t{1} << (k - 1 - j))) c |= bit[j];
            }
            full.at(r, c) = v;
        }
    }
    return full;
}

// --- small identities the gate set is built on ---

// H Z H = X, elementwise within 1e-12.
inline bool verify_identity_hzh() {
    const CMatrix h = detail::small_unitary(UnitaryGate::h(0));
    const CMatrix z = detail::small_unitary(UnitaryGate::z(0));
    const CMatrix x = detail::small_unitary(UnitaryGate::x(0));
    return (h * z * h).max_abs_diff(x) < 1e-12;
}

// Three alternating cNOTs form SWAP.
inline bool verify_identity_swap_from_cnots() {
    const CMatrix a = gate_unitary(UnitaryGate::cnot(0, 1), 2);
    const CMatrix b = gate_unitary(UnitaryGate::cnot(1, 0), 2);
    const CMatrix s = gate_unitary(UnitaryGate::swap(0, 1), 2);
    return (a * b * a).max_abs_diff(s) < 1e-12;
}

namespace detail {

// Multiply-controlled Z (or X) on k+1 qubits with a designated target.
// For Z the matrix cannot depend on which qubit plays the target; for X it
// does, which is exactly what verify_mcz_symmetry distinguishes.
inline CMatrix multi_controlled(int k, int target, bool z_not_x) {
    const int n = k + 1;
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t tmask = std::size_t{1} << (n - 1 - target);
    const std::size_t all = dim - 1;
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const bool controls_on = ((i | tmask) & all) == all;  // every non-target bit set
        if (z_not_x) {
            m.at(i, i) = (controls_on && (i & tmask)) ? -1.0 : 1.0;
        } else {
            if (controls_on) {
                m.at(i, i ^ tmask) = 1.0;
            } else {
                m.at(i, i) = 1.0;
            }
        }
    }
    return m;
}

inline bool roles_symmetric(int k, bool z_not_x) {
    const CMatrix ref = multi_controlled(k, 0, z_not_x);
    for (int t = 1; t <= k; ++t) {
        if (multi_controlled(k, t, z_not_x).max_abs_diff(ref) > 1e-12) return false;
    }
    return true;
}

}  // namespace detail

// A multiply-controlled Z is unchanged under any control/target role swap.
inline bool verify_mcz_symmetry(int k) {
    if (k < 1 || k > 4) throw InputError("control count must be in [1, 4]");
    return detail::roles_symmetric(k, /*z_not_x=*/true);
}

// Negative control: the same symmetry fails for multiply-controlled X.
inline bool verify_mcx_symmetry(int k) {
    if (k < 1 || k > 4) throw InputError("control count must be in [1, 4]");
    return detail::roles_symmetric(k, /*z_not_x=*/false);
}

}  // namespace mgate
