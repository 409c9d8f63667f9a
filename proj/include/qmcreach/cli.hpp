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

/**
 * @file
 * Command implementations behind the `qmcreach` executable. Each command
 * writes its report to `out`, diagnostics to `err`, and returns the
 * process exit code.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmcreach/numerics.hpp"
#include "qmcreach/reach.hpp"

namespace qmcreach::cli {

enum ExitCode : int {
    kOk = 0,
    kDisagree = 1,
    kInputError = 2,
    kCapExceeded = 3,
    kInvariantViolation = 4,
};

enum class OutputFormat { Text, Json };

struct RunConfig {
    std::string circuit_path;
    std::optional<std::string> channels_path;
    /// Product-state strings ("000", "++0") or amplitude-file paths. Empty
    /// means the circuit's `// @init` line if present, else |0...0>.
    std::vector<std::string> init_spec;
    Tolerances tolerances;
    int qubit_cap = kDefaultQubitCap;
    OutputFormat output_format = OutputFormat::Text;
    /// `check --random`: sweep seeded random instances instead of a file.
    bool random = false;
    int random_qubits = 2;
    int seeds = 100;
};

/// Sets null_threshold and moves the other thresholds so the ordering
/// invariant still holds.
Tolerances tolerances_with_null_threshold(double null_threshold);

/**
 * Decodes init entries for a num_qubits register. Entries made only of
 * 0/1/+/- are product states; anything else is read as a JSON amplitude
 * file {"vectors": [[[re, im], ...], ...]}. `circuit_source` supplies the
 * default from a `// @init ...` comment line; relative file names there are
 * resolved against `circuit_dir`.
 */
std::vector<StateVector> resolve_init(const std::vector<std::string> &init_spec,
                                      int num_qubits, std::string_view circuit_source,
                                      const std::string &circuit_dir = "");

/// {"reachable_dim", "iterations", "saturated", "branch_evals",
///  "wall_time_s", "basis": [[{"index", "re", "im"}, ...], ...]}; amplitudes
/// with magnitude <= 1e-10 are omitted.
std::string report_to_json(const ReachReport &report);

struct ParsedReport {
    std::size_t reachable_dim = 0;
    std::size_t iterations = 0;
    bool saturated = false;
    struct Entry {
        std::size_t index;
        double re;
        double im;
    };
    std::vector<std::vector<Entry>> basis;
};

ParsedReport parse_report_json(std::string_view text);

int cmd_reach(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_check(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_bench(const RunConfig &config, std::ostream &out, std::ostream &err);

} // namespace qmcreach::cli
