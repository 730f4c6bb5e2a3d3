// mgate command-line front end.
//
// Subcommands: run, dist, verify, rewrite, demo. Structured output goes to
// stdout as JSON; diagnostics go to stderr. Exit codes: 0 ok, 1 verification
// failure, 2 parse error, 3 runtime error, 4 resource limit, 5 unsupported
// rewrite.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgate/mgate.hpp"

namespace {

using namespace mgate;

StateVector initial_state(const Circuit& circuit, const std::string& bits) {
    if (bits.empty()) return StateVector(circuit.n_qubits());
    return basis_state(circuit.n_qubits(), bits);
}

std::vector<int> parse_qubit_list(const std::string& csv) {
    std::vector<int> out;
    std::string token;
    for (char c : csv) {
        if (c == ',') {
            if (!token.empty()) out.push_back(std::stoi(token));
            token.clear();
        } else {
            token += c;
        }
    }
    if (!token.empty()) out.push_back(std::stoi(token));
    return out;
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::string token;
    for (char c : csv) {
        if (c == ',') {
            if (!token.empty()) out.push_back(token);
            token.clear();
        } else {
            token += c;
        }
    }
    if (!token.empty()) out.push_back(token);
    return out;
}

int cmd_run(const std::string& file, std::uint64_t seed, const std::string& bits) {
    const Circuit circuit = load_circuit(file);
    RandomSource rng(seed);
    const auto result = run(circuit, initial_state(circuit, bits), rng);
    for (const auto& rec : result.trace) {
        std::cout << record_to_json(rec).dump() << "\n";
    }
    std::cout << state_to_json(result.state).dump() << "\n";
    return 0;
}

int cmd_dist(const std::string& file, const std::string& bits,
             std::optional<long long> shots, std::optional<std::uint64_t> seed) {
    const Circuit circuit = load_circuit(file);
    const StateVector initial = initial_state(circuit, bits);
    if (shots) {
        if (!seed) throw InputError("--shots requires --seed");
        RandomSource rng(*seed);
        const auto counts = sample_distribution(circuit, initial, *shots, rng);
        std::cout << counts_to_json(counts, circuit.labels(), *shots).dump(2) << "\n";
    } else {
        const auto dist = enumerate_branches(circuit, initial);
        std::cout << distribution_to_json(dist).dump(2) << "\n";
    }
    return 0;
}

json verify_outcome_json(const VerifyOutcome& out, double tol) {
    return json{{"pair", out.pair},
                {"equivalent", out.equivalent},
                {"comparisons", out.comparisons},
                {"max_probability_deviation", out.max_probability_deviation},
                {"min_state_fidelity", out.min_state_fidelity},
                {"max_deviation", out.max_deviation()},
                {"tol", tol}};
}

int cmd_verify_named(const std::string& name, double tol) {
    const auto out = run_named_verification(name, tol);
    std::cout << verify_outcome_json(out, tol).dump(2) << "\n";
    if (!out.equivalent) {
        std::cerr << "counterexample: " << out.counterexample << "\n";
        return 1;
    }
    return 0;
}

int cmd_verify_files(const std::string& file_a, const std::string& file_b,
                     const std::string& map_csv, const std::string& qubits_a,
                     const std::string& qubits_b, const std::string& initial_a,
                     const std::string& initial_b, double tol) {
    const Circuit a = load_circuit(file_a);
    const Circuit b = load_circuit(file_b);

    EquivalenceSpec spec;
    spec.tol = tol;
    if (!map_csv.empty()) {
        for (const auto& pair : split_csv(map_csv)) {
            const auto eq = pair.find('=');
            if (eq == std::string::npos) throw InputError("--map entries look like a=b");
            spec.label_map.emplace_back(pair.substr(0, eq), pair.substr(eq + 1));
        }
    } else {
        for (const auto& label : a.labels()) {
            if (b.has_label(label)) spec.label_map.emplace_back(label, label);
        }
    }
    if (!qubits_a.empty() || !qubits_b.empty()) {
        spec.qubits_a = parse_qubit_list(qubits_a);
        spec.qubits_b = parse_qubit_list(qubits_b);
    } else if (a.n_qubits() == b.n_qubits()) {
        for (int q = 0; q < a.n_qubits(); ++q) {
            spec.qubits_a.push_back(q);
            spec.qubits_b.push_back(q);
        }
    } else {
        throw InputError("circuits differ in width; pass --qubits-a/--qubits-b");
    }

    const auto report = compare_distributions(
        enumerate_branches(a, initial_state(a, initial_a)),
        enumerate_branches(b, initial_state(b, initial_b)), spec);
    VerifyOutcome out{file_a + " vs " + file_b, report.equivalent,
                      report.max_probability_deviation, report.min_state_fidelity, 1,
                      report.counterexample};
    std::cout << verify_outcome_json(out, tol).dump(2) << "\n";
    if (!report.equivalent) {
        std::cerr << "counterexample: " << report.counterexample << "\n";
        return 1;
    }
    return 0;
}

json certificate_json(const RewriteCertificate& cert) {
    json out{{"checked", cert.checked}};
    if (cert.checked) {
        out["samples"] = cert.samples;
        out["max_deviation"] = cert.max_deviation;
        if (cert.matrix_checked) out["matrix_deviation"] = cert.matrix_deviation;
    }
    return out;
}

int cmd_rewrite(const std::string& file, const std::string& pass, const std::string& out_path,
                const std::string& labels_csv, std::optional<std::size_t> site,
                std::optional<int> control, bool certify) {
    const Circuit circuit = load_circuit(file);
    RewriteOptions opt;
    opt.certify = certify;

    RewriteResult result{Circuit(1), {}};
    if (pass == "defer") {
        result = defer_measurements(circuit, opt);
    } else if (pass == "drop-terminal") {
        if (labels_csv.empty()) {
            result = drop_all_terminal_measurements(circuit, opt);
        } else {
            result = drop_terminal_measurements(circuit, split_csv(labels_csv), opt);
        }
    } else if (pass == "hxch") {
        if (!site) throw InputError("--site is required for the hxch pass");
        result = exchange_control_target(circuit, *site,
                                         control ? std::optional<int>(*control) : std::nullopt,
                                         opt);
    } else if (pass == "cancel") {
        result = cancel_inverse_pairs(circuit, opt);
    } else {
        throw InputError("unknown pass '" + pass + "'");
    }

    save_circuit(result.circuit, out_path);
    std::cout << json{{"pass", pass},
                      {"ops_before", circuit.size()},
                      {"ops_after", result.circuit.size()},
                      {"out", out_path},
                      {"certificate", certificate_json(result.certificate)}}
                     .dump(2)
              << "\n";
    return 0;
}

StateVector bitflip_demo_input() {
    return tensor(StateVector(1, {0.6, 0.8}), StateVector(4));
}

StateVector swap_init_demo_input() {
    // ancilla |0>, qubit entangled with a 2-qubit external block:
    // 0.6 |0>|00> + 0.8 |1>(|00>+|11>)/sqrt(2) on wires 1..3
    const double r = 0.8 / std::sqrt(2.0);
    std::vector<Amplitude> q_ext(8);
    q_ext[0] = 0.6;  // |0 00>
    q_ext[4] = r;    // |1 00>
    q_ext[7] = r;    // |1 11>
    return tensor(StateVector(1), StateVector(3, std::move(q_ext)));
}

int cmd_demo(const std::string& name, int depth, const std::string& error_name,
             const std::string& variant_name, const std::string& emit) {
    using namespace figures;

    Circuit circuit(1);
    StateVector input(1);
    json extra;

    if (name == "apparatus") {
        circuit = apparatus_chain(depth);
        input = tensor(StateVector(1, {0.6, 0.8}), StateVector(depth));
    } else if (name == "parity") {
        circuit = parity_measurement();
        const double r = 1.0 / std::sqrt(2.0);
        input = tensor(StateVector(2, {r, r, 0.0, 0.0}), StateVector(1));
    } else if (name == "spin" || name == "spin-bell") {
        circuit = spin_measurement(name == "spin" ? SpinVariant::HadamardTest
                                                  : SpinVariant::BellBasis);
        input = tensor(basis_state(2, "01"), StateVector(1));
    } else if (name == "bitflip") {
        ErrorLocation error = ErrorLocation::None;
        if (error_name == "top") error = ErrorLocation::Top;
        else if (error_name == "middle") error = ErrorLocation::Middle;
        else if (error_name == "bottom") error = ErrorLocation::Bottom;
        else if (error_name != "none") throw InputError("unknown --error value");
        if (variant_name != "measured" && variant_name != "free") {
            throw InputError("unknown --variant value (measured | free)");
        }
        const CorrectionVariant variant = variant_name == "free"
                                              ? CorrectionVariant::MeasurementFree
                                              : CorrectionVariant::Measured;
        circuit = bitflip_code(error, variant);
        input = bitflip_demo_input();
        // restored code block should match 0.6|000> + 0.8|111> in every branch
        StateVector target(3);
        target[0] = 0.6;
        target[7] = 0.8;
        double worst = 1.0;
        const auto dist = enumerate_branches(circuit, input);
        for (const auto& [key, branch] : dist.branches()) {
            worst = std::min(worst, fidelity(subset_state(branch.state, {0, 1, 2}), target));
        }
        extra["code_fidelity"] = worst;
    } else if (name == "swap-init") {
        circuit = swap_initialization();
        input = swap_init_demo_input();
        const auto dist = enumerate_branches(circuit, input);
        const auto& branch = dist.branches().begin()->second;
        extra["qubit_in_zero_fidelity"] =
            fidelity(subset_state(branch.state, {1}), StateVector(1));
    } else {
        throw InputError("unknown demo '" + name +
                         "' (have: apparatus, parity, spin, spin-bell, bitflip, swap-init)");
    }

    if (!emit.empty()) save_circuit(circuit, emit);

    json out{{"demo", name},
             {"circuit", circuit_to_json(circuit)},
             {"initial", state_to_json(input)},
             {"distribution", distribution_to_json(enumerate_branches(circuit, input))}};
    for (auto& [k, v] : extra.items()) out[k] = v;
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"measurement-centric qubit circuit simulator and verifier"};
    app.require_subcommand(1);

    std::string file, bits, out_path, pass, labels_csv, map_csv;
    std::string file_b, qubits_a, qubits_b, initial_a, initial_b;
    std::string demo_name, error_name = "none", variant_name = "measured", emit;
    std::uint64_t seed = 0;
    long long shots = 0;
    double tol = 1e-10;
    int depth = 2;
    std::int64_t site = -1;
    int control = -1;
    bool no_certify = false;

    auto* c_run = app.add_subcommand("run", "execute a circuit once, printing the trace");
    c_run->add_option("file", file, "circuit JSON file")->required();
    c_run->add_option("--seed", seed, "random seed")->required();
    c_run->add_option("--initial", bits, "initial basis state as a bit string");

    auto* c_dist = app.add_subcommand("dist", "exact branch distribution or sampled counts");
    c_dist->add_option("file", file, "circuit JSON file")->required();
    c_dist->add_option("--initial", bits, "initial basis state as a bit string");
    auto* shots_opt = c_dist->add_option("--shots", shots, "sample instead of enumerating");
    c_dist->add_option("--seed", seed, "random seed (required with --shots)");

    auto* c_verify = app.add_subcommand("verify", "check a named or file-level equivalence");
    c_verify->add_option("pair", demo_name, "named pair or first circuit file")->required();
    c_verify->add_option("file_b", file_b, "second circuit file");
    c_verify->add_option("--tol", tol, "tolerance");
    c_verify->add_option("--map", map_csv, "label correspondence a=b,...");
    c_verify->add_option("--qubits-a", qubits_a, "designated qubits of the first circuit");
    c_verify->add_option("--qubits-b", qubits_b, "designated qubits of the second circuit");
    c_verify->add_option("--initial-a", initial_a, "initial bit string, first circuit");
    c_verify->add_option("--initial-b", initial_b, "initial bit string, second circuit");

    auto* c_rewrite = app.add_subcommand("rewrite", "apply a rewrite pass");
    c_rewrite->add_option("file", file, "circuit JSON file")->required();
    c_rewrite->add_option("--pass", pass, "defer | drop-terminal | hxch | cancel")->required();
    c_rewrite->add_option("--out", out_path, "output circuit file")->required();
    c_rewrite->add_option("--labels", labels_csv, "labels to drop (drop-terminal)");
    c_rewrite->add_option("--site", site, "op index of the controlled-NOT (hxch)");
    c_rewrite->add_option("--control", control, "designated control qubit (hxch)");
    c_rewrite->add_flag("--no-certify", no_certify, "skip the equivalence certificate");

    auto* c_demo = app.add_subcommand("demo", "build and run a library circuit");
    c_demo->add_option("name", demo_name,
                       "apparatus | parity | spin | spin-bell | bitflip | swap-init")
        ->required();
    c_demo->add_option("--depth", depth, "apparatus chain depth");
    c_demo->add_option("--error", error_name, "bitflip error: none | top | middle | bottom");
    c_demo->add_option("--variant", variant_name, "bitflip correction: measured | free");
    c_demo->add_option("--emit", emit, "also write the circuit to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_run->parsed()) return cmd_run(file, seed, bits);
        if (c_dist->parsed()) {
            std::optional<long long> maybe_shots;
            std::optional<std::uint64_t> maybe_seed;
            if (shots_opt->count() > 0) maybe_shots = shots;
            if (c_dist->count("--seed") > 0) maybe_seed = seed;
            return cmd_dist(file, bits, maybe_shots, maybe_seed);
        }
        if (c_verify->parsed()) {
            if (file_b.empty()) return cmd_verify_named(demo_name, tol);
            return cmd_verify_files(demo_name, file_b, map_csv, qubits_a, qubits_b, initial_a,
                                    initial_b, tol);
        }
        if (c_rewrite->parsed()) {
            return cmd_rewrite(file, pass, out_path, labels_csv,
                               site >= 0 ? std::optional<std::size_t>(site) : std::nullopt,
                               control >= 0 ? std::optional<int>(control) : std::nullopt,
                               !no_certify);
        }
        if (c_demo->parsed()) return cmd_demo(demo_name, depth, error_name, variant_name, emit);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 4;
    } catch (const RewriteError& e) {
        std::cerr << "rewrite unsupported: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
