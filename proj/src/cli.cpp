// Copyright 2026 The qmcreach Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmcreach/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qmcreach/errors.hpp"
#include "qmcreach/families.hpp"
#include "qmcreach/oracle.hpp"
#include "qmcreach/qasm.hpp"
#include "qmcreach/qmc.hpp"

namespace qmcreach::cli {

namespace {

using nlohmann::json;

// Residual allowed for the post-run closure and containment checks.
constexpr double kProofCheckTol = 1e-6;
constexpr double kPrintThreshold = 1e-10;

std::string read_file(const std::string &path, const char *what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(0, std::string("cannot read ") + what + " '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct LoadedChain {
    QuantumMarkovChain qmc;
    std::vector<StateVector> init;
};

LoadedChain load_chain(const RunConfig &config, std::ostream &err) {
    if (config.circuit_path.empty()) {
        throw UsageError("--circuit is required");
    }
    const std::string source = read_file(config.circuit_path, "circuit file");
    Circuit body;
    try {
        body = parse_qasm(source);
    } catch (const ParseError &e) {
        throw ParseError(e.line(), config.circuit_path + ": " + e.what());
    }
    std::vector<ChannelSite> sites;
    if (config.channels_path) {
        sites = parse_channels_json(read_file(*config.channels_path, "channel file"));
    }
    const int n = body.num_qubits;
    LoadedChain chain{build_qmc(std::move(body), std::move(sites)), {}};
    for (const auto &w : chain.qmc.warnings()) {
        err << "warning: " << w << '\n';
    }
    chain.init = resolve_init(config.init_spec, n, source,
                              std::filesystem::path(config.circuit_path).parent_path().string());
    return chain;
}

void verify_proof_steps(const QuantumMarkovChain &qmc, const ReachReport &report,
                        const std::vector<StateVector> &init, const Tolerances &tol) {
    if (report.iterations > report.subspace.basis.front().dim()) {
        throw InvariantViolation("loop ran more than d iterations");
    }
    if (const double r = closure_residual(qmc, report.subspace, tol); r > kProofCheckTol) {
        throw InvariantViolation("reachable subspace is not closed under the step "
                                 "(residual " + std::to_string(r) + ")");
    }
    for (const auto &v : init) {
        if (const double r = containment_residual(report.subspace, v); r > kProofCheckTol) {
            throw InvariantViolation("initial state not contained in the output "
                                     "(residual " + std::to_string(r) + ")");
        }
    }
}

std::string format_amplitudes(const StateVector &v) {
    std::ostringstream out;
    char buf[96];
    bool first = true;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (std::abs(v[i]) > kPrintThreshold) {
            std::snprintf(buf, sizeof buf, "(%zu, %.10g, %.10g)", i, v[i].real(), v[i].imag());
            out << (first ? "" : " ") << buf;
            first = false;
        }
    }
    return out.str();
}

json basis_to_json(const SubspaceBasis &subspace) {
    json basis = json::array();
    for (const auto &v : subspace.basis) {
        json vec = json::array();
        for (std::size_t i = 0; i < v.dim(); ++i) {
            if (std::abs(v[i]) > kPrintThreshold) {
                vec.push_back({{"index", i}, {"re", v[i].real()}, {"im", v[i].imag()}});
            }
        }
        basis.push_back(std::move(vec));
    }
    return basis;
}

void dump_basis(std::ostream &out, const char *label, const SubspaceBasis &subspace) {
    out << label << " basis:\n";
    for (std::size_t k = 0; k < subspace.dim(); ++k) {
        out << "  [" << k << "] " << format_amplitudes(subspace.basis[k]) << '\n';
    }
}

template <class F> int guarded(std::ostream &err, F &&body) {
    try {
        return body();
    } catch (const CapExceeded &e) {
        err << "error: " << e.what() << '\n';
        return kCapExceeded;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InvariantViolation &e) {
        err << "internal error: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kInvariantViolation;
    }
}

struct Agreement {
    std::size_t engine_dim;
    std::size_t oracle_dim;
    double distance;
    bool agree;
    ReachReport report;
    SubspaceBasis oracle;
};

Agreement compare_with_oracle(const QuantumMarkovChain &qmc,
                              const std::vector<StateVector> &init, const Tolerances &tol,
                              int cap) {
    check_qubit_cap(qmc.num_qubits(), std::min(cap, kOracleQubitCap));
    ReachReport report = reachable_subspace(qmc, init, tol, cap);
    SubspaceBasis oracle = oracle_reachable(qmc, DensityMatrix::mixture(init), tol);
    const double distance = span_distance(report.subspace, oracle);
    const bool agree = report.subspace.dim() == oracle.dim() && distance < kProofCheckTol;
    return {report.subspace.dim(), oracle.dim(), distance, agree, std::move(report),
            std::move(oracle)};
}

} // namespace

Tolerances tolerances_with_null_threshold(double null_threshold) {
    if (!(null_threshold > 0.0 && null_threshold < 1e-2)) {
        throw UsageError("--tol must lie in (0, 1e-2)");
    }
    Tolerances tol;
    tol.null_threshold = null_threshold;
    tol.branch_drop = std::min(tol.branch_drop, null_threshold * 1e-4);
    tol.ortho_check = std::max(tol.ortho_check, null_threshold * 10.0);
    tol.validate();
    return tol;
}

std::vector<StateVector> resolve_init(const std::vector<std::string> &init_spec,
                                      int num_qubits, std::string_view circuit_source,
                                      const std::string &circuit_dir) {
    std::vector<std::string> entries = init_spec;
    bool from_pragma = false;
    if (entries.empty()) {
        std::istringstream lines{std::string(circuit_source)};
        std::string line;
        while (std::getline(lines, line)) {
            const auto pos = line.find("// @init");
            if (pos != std::string::npos &&
                line.find_first_not_of(" \t") == pos) {
                std::istringstream words(line.substr(pos + 8));
                std::string w;
                while (words >> w) {
                    entries.push_back(w);
                }
                from_pragma = true;
                break;
            }
        }
    }
    if (entries.empty()) {
        entries.push_back(std::string(static_cast<std::size_t>(num_qubits), '0'));
    }

    std::vector<StateVector> out;
    for (const auto &entry : entries) {
        const bool product = !entry.empty() &&
                             entry.find_first_not_of("01+-") == std::string::npos;
        if (product) {
            if (static_cast<int>(entry.size()) != num_qubits) {
                throw ParseError(0, "init state \"" + entry + "\" has " +
                                        std::to_string(entry.size()) +
                                        " qubits, circuit has " +
                                        std::to_string(num_qubits));
            }
            out.push_back(product_state(entry));
            continue;
        }
        std::filesystem::path path(entry);
        if (from_pragma && path.is_relative() && !circuit_dir.empty()) {
            path = std::filesystem::path(circuit_dir) / path;
        }
        json doc;
        try {
            doc = json::parse(read_file(path.string(), "amplitude file"));
        } catch (const json::parse_error &e) {
            throw ParseError(0, "amplitude file '" + entry + "' is not valid JSON: " + e.what());
        }
        if (!doc.is_object() || doc.size() != 1 || !doc.contains("vectors") ||
            !doc["vectors"].is_array()) {
            throw ParseError(0, "amplitude file '" + entry +
                                    "' must be {\"vectors\": [[[re, im], ...], ...]}");
        }
        for (const auto &vec : doc["vectors"]) {
            const std::size_t d = std::size_t{1} << num_qubits;
            if (!vec.is_array() || vec.size() != d) {
                throw ParseError(0, "amplitude file '" + entry + "': each vector needs " +
                                        std::to_string(d) + " entries");
            }
            std::vector<Complex> amps;
            for (const auto &z : vec) {
                if (!z.is_array() || z.size() != 2 || !z[0].is_number() ||
                    !z[1].is_number()) {
                    throw ParseError(0, "amplitude file '" + entry +
                                            "': entries must be [re, im] pairs");
                }
                amps.emplace_back(z[0].get<double>(), z[1].get<double>());
            }
            out.emplace_back(num_qubits, std::move(amps));
        }
    }
    return out;
}

std::string report_to_json(const ReachReport &report) {
    json doc{{"reachable_dim", report.subspace.dim()},
             {"iterations", report.iterations},
             {"saturated", report.saturated},
             {"branch_evals", report.branch_evals},
             {"wall_time_s", report.wall_time.count()},
             {"basis", basis_to_json(report.subspace)}};
    return doc.dump();
}

ParsedReport parse_report_json(std::string_view text) {
    ParsedReport parsed;
    try {
        const json doc = json::parse(text);
        parsed.reachable_dim = doc.at("reachable_dim").get<std::size_t>();
        parsed.iterations = doc.at("iterations").get<std::size_t>();
        parsed.saturated = doc.at("saturated").get<bool>();
        for (const auto &vec : doc.at("basis")) {
            std::vector<ParsedReport::Entry> entries;
            for (const auto &e : vec) {
                entries.push_back({e.at("index").get<std::size_t>(), e.at("re").get<double>(),
                                   e.at("im").get<double>()});
            }
            parsed.basis.push_back(std::move(entries));
        }
    } catch (const json::exception &e) {
        throw ParseError(0, std::string("malformed report: ") + e.what());
    }
    return parsed;
}

int cmd_reach(const RunConfig &config, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        config.tolerances.validate();
        LoadedChain chain = load_chain(config, err);
        check_qubit_cap(chain.qmc.num_qubits(), config.qubit_cap);
        ReachReport report =
            reachable_subspace(chain.qmc, chain.init, config.tolerances, config.qubit_cap);
        verify_proof_steps(chain.qmc, report, chain.init, config.tolerances);

        if (config.output_format == OutputFormat::Json) {
            out << report_to_json(report) << '\n';
            return kOk;
        }
        out << "reachable_dim: " << report.subspace.dim() << '\n'
            << "iterations: " << report.iterations << '\n'
            << "branch_evals: " << report.branch_evals << '\n'
            << "saturated: " << (report.saturated ? "true" : "false") << '\n'
            << "wall_time_s: " << report.wall_time.count() << '\n';
        dump_basis(out, "reachable", report.subspace);
        return kOk;
    });
}

int cmd_check(const RunConfig &config, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        config.tolerances.validate();
        const bool json_out = config.output_format == OutputFormat::Json;
        if (config.random) {
            if (config.random_qubits < 1 || config.seeds < 1) {
                throw UsageError("--qubits and --seeds must be positive");
            }
            check_qubit_cap(config.random_qubits, std::min(config.qubit_cap, kOracleQubitCap));
            RandomInstanceOptions opts;
            opts.min_qubits = opts.max_qubits = config.random_qubits;
            int agreed = 0;
            for (int seed = 0; seed < config.seeds; ++seed) {
                const ChainInstance inst =
                    random_instance(static_cast<std::uint64_t>(seed), opts);
                const Agreement a =
                    compare_with_oracle(inst.qmc, inst.init, config.tolerances, config.qubit_cap);
                if (a.agree) {
                    ++agreed;
                } else {
                    err << "seed " << seed << ": engine " << a.engine_dim << ", oracle "
                        << a.oracle_dim << ", span distance " << a.distance << '\n';
                }
            }
            const bool all = agreed == config.seeds;
            if (json_out) {
                out << json{{"instances", config.seeds},
                            {"agree", agreed},
                            {"all_agree", all}}
                           .dump()
                    << '\n';
            } else {
                out << "random sweep (" << config.random_qubits << " qubits): " << agreed
                    << "/" << config.seeds << " agree\n";
            }
            return all ? kOk : kDisagree;
        }

        LoadedChain chain = load_chain(config, err);
        const Agreement a =
            compare_with_oracle(chain.qmc, chain.init, config.tolerances, config.qubit_cap);
        if (json_out) {
            json doc{{"engine_dim", a.engine_dim},
                     {"oracle_dim", a.oracle_dim},
                     {"agree", a.agree},
                     {"span_distance", a.distance}};
            if (!a.agree) {
                doc["engine_basis"] = basis_to_json(a.report.subspace);
                doc["oracle_basis"] = basis_to_json(a.oracle);
            }
            out << doc.dump() << '\n';
        } else {
            out << "engine: " << a.engine_dim << ", oracle: " << a.oracle_dim
                << ", agree: " << (a.agree ? "true" : "false") << '\n';
            if (!a.agree) {
                dump_basis(out, "engine", a.report.subspace);
                dump_basis(out, "oracle", a.oracle);
            }
        }
        return a.agree ? kOk : kDisagree;
    });
}

int cmd_bench(const RunConfig &config, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        config.tolerances.validate();
        const bool json_out = config.output_format == OutputFormat::Json;
        json rows = json::array();
        bool all_ok = true;
        if (!json_out) {
            char line[160];
            std::snprintf(line, sizeof line, "%-14s %7s  %-9s %9s %10s %14s  %s\n", "name",
                          "qubits", "operation", "init_dim", "time_s", "reachable_dim",
                          "expected");
            out << line;
        }
        for (const auto &inst : bench_instances()) {
            if (inst.qmc.num_qubits() > config.qubit_cap) {
                err << "skipping " << inst.name << ": exceeds qubit cap\n";
                continue;
            }
            const ReachReport report =
                reachable_subspace(inst.qmc, inst.init, config.tolerances, config.qubit_cap);
            const std::size_t init_dim = gram_schmidt(inst.init, config.tolerances).size();
            const bool ok = !inst.expected_dim || *inst.expected_dim == report.subspace.dim();
            all_ok = all_ok && ok;
            if (json_out) {
                json row{{"name", inst.name},
                         {"qubits", inst.qmc.num_qubits()},
                         {"operation", inst.operation},
                         {"initial_dim", init_dim},
                         {"time_s", report.wall_time.count()},
                         {"reachable_dim", report.subspace.dim()}};
                if (inst.expected_dim) {
                    row["expected_dim"] = *inst.expected_dim;
                }
                rows.push_back(std::move(row));
            } else {
                const std::string expected =
                    inst.expected_dim ? std::to_string(*inst.expected_dim) +
                                            (ok ? " ok" : " MISMATCH")
                                      : "-";
                char line[200];
                std::snprintf(line, sizeof line, "%-14s %7d  %-9s %9zu %10.4f %14zu  %s\n",
                              inst.name.c_str(), inst.qmc.num_qubits(),
                              inst.operation.c_str(), init_dim, report.wall_time.count(),
                              report.subspace.dim(), expected.c_str());
                out << line;
            }
        }
        if (json_out) {
            out << json{{"rows", rows}}.dump(2) << '\n';
        }
        return all_ok ? kOk : kDisagree;
    });
}

} // namespace qmcreach::cli
