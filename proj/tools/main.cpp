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

#include <iostream>

#include <CLI11.hpp>

#include "qmcreach/cli.hpp"
#include "qmcreach/errors.hpp"

using namespace qmcreach;

int main(int argc, char **argv) {
    CLI::App app{"Reachable-subspace analysis for quantum Markov chains"};
    app.require_subcommand(1);

    cli::RunConfig config;
    double null_tol = config.tolerances.null_threshold;
    std::string format = "text";
    std::string channels;

    auto add_common = [&](CLI::App *cmd, bool needs_circuit) {
        auto *circuit = cmd->add_option("--circuit", config.circuit_path,
                                        "OpenQASM 2.0 circuit body");
        if (needs_circuit) {
            circuit->required();
        }
        cmd->add_option("--channels", channels, "channel specification (JSON)");
        cmd->add_option("--init", config.init_spec,
                        "initial states: product strings over 0/1/+/- or amplitude files");
        cmd->add_option("--tol", null_tol, "null threshold for residual norms")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--cap", config.qubit_cap, "qubit cap")->check(CLI::PositiveNumber);
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    auto *reach = app.add_subcommand("reach", "compute the reachable subspace");
    add_common(reach, true);

    auto *check = app.add_subcommand("check", "compare the engine against the "
                                              "density-matrix oracle");
    add_common(check, false);
    check->add_flag("--random", config.random, "sweep seeded random instances");
    check->add_option("--qubits", config.random_qubits, "qubits per random instance");
    check->add_option("--seeds", config.seeds, "number of random instances");

    auto *bench = app.add_subcommand("bench", "run the bundled circuit families");
    bench->add_option("--tol", null_tol, "null threshold for residual norms")
        ->check(CLI::PositiveNumber);
    bench->add_option("--cap", config.qubit_cap, "qubit cap")->check(CLI::PositiveNumber);
    bench->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kInputError;
    }

    try {
        config.tolerances = cli::tolerances_with_null_threshold(null_tol);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kInputError;
    }
    if (!channels.empty()) {
        config.channels_path = channels;
    }
    config.output_format =
        format == "json" ? cli::OutputFormat::Json : cli::OutputFormat::Text;
    if (check->parsed() && !config.random && config.circuit_path.empty()) {
        std::cerr << "error: check needs --circuit or --random\n";
        return cli::kInputError;
    }

    if (reach->parsed()) {
        return cli::cmd_reach(config, std::cout, std::cerr);
    }
    if (check->parsed()) {
        return cli::cmd_check(config, std::cout, std::cerr);
    }
    return cli::cmd_bench(config, std::cout, std::cerr);
}
