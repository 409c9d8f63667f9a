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
 * Quantum Markov chain model: a unitary circuit body interleaved with
 * single-qubit channel sites. One chain step is the super-operator
 * E(rho) = sum_i E_i rho E_i^dagger whose Kraus operators E_i are the
 * products of gates and one Kraus factor chosen per site.
 */
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qmcreach/numerics.hpp"
#include "qmcreach/qasm.hpp"

namespace qmcreach {

struct BitFlip {
    double p = 0.0;
};
struct PhaseFlip {
    double p = 0.0;
};
struct AmplitudeDamping {
    double gamma = 0.0;
};
/// Projective Z measurement: {|0><0|, |1><1|}.
struct MeasureZ {};
/// Reset to |0>: {|0><0|, X|1><1|}.
struct Reset {};
/// Arbitrary 2x2 Kraus list; completeness is only warned on.
struct CustomKraus {
    std::vector<DenseMatrix> ops;
};

using ChannelKind = std::variant<BitFlip, PhaseFlip, AmplitudeDamping,
                                 MeasureZ, Reset, CustomKraus>;

/// Name used in channel files ("bitflip", "measure_z", ...).
std::string_view channel_name(const ChannelKind &kind);

/// Kraus matrices of a channel kind; throws UsageError on parameters
/// outside [0, 1] or malformed custom matrices.
std::vector<DenseMatrix> kraus_for(const ChannelKind &kind);

/// max |sum_j K_j^dagger K_j - I| over entries.
double completeness_defect(const std::vector<DenseMatrix> &kraus);

/// A channel firing on `qubit` immediately before body gate `position`
/// (position == number of gates means after the last gate).
struct ChannelSite {
    std::size_t position = 0;
    int qubit = 0;
    ChannelKind kind = MeasureZ{};
};

/// Per-site Kraus lists in firing order.
struct KrausBranchPlan {
    std::vector<std::vector<DenseMatrix>> site_kraus;

    std::size_t branch_count() const;
    /// Every choice of one Kraus index per site, lexicographic with the
    /// first-firing site most significant.
    std::vector<std::vector<int>> enumerate() const;
};

struct BuildOptions {
    /// Branch counts above this produce a warning.
    std::size_t branch_limit = 64;
};

class QuantumMarkovChain {
  public:
    const Circuit &body() const { return body_; }
    /// Sites sorted by (position, declaration order).
    const std::vector<ChannelSite> &sites() const { return sites_; }
    int num_qubits() const { return body_.num_qubits; }
    const KrausBranchPlan &plan() const { return plan_; }
    std::size_t branch_count() const { return plan_.branch_count(); }
    /// Non-fatal findings from build_qmc (branch limit, incomplete custom
    /// Kraus lists).
    const std::vector<std::string> &warnings() const { return warnings_; }
    /// True when every site's Kraus list is complete, so each branch
    /// factor is a contraction.
    bool trace_preserving() const { return trace_preserving_; }

  private:
    friend QuantumMarkovChain build_qmc(Circuit, std::vector<ChannelSite>,
                                        const BuildOptions &);
    Circuit body_;
    std::vector<ChannelSite> sites_;
    KrausBranchPlan plan_;
    std::vector<std::string> warnings_;
    bool trace_preserving_ = true;
};

/// Validates the body and sites and fixes the firing order. Throws
/// UsageError naming the first offending site.
QuantumMarkovChain build_qmc(Circuit body, std::vector<ChannelSite> sites,
                             const BuildOptions &options = {});

/**
 * Parses a channel specification document:
 *   {"channels": [{"kind": "bitflip", "position": 0, "qubit": 0, "p": 0.5},
 *                 {"kind": "measure_z", "position": 7, "qubit": 1},
 *                 {"kind": "custom", "position": 3, "qubit": 2,
 *                  "kraus": [[[re,im],[re,im],[re,im],[re,im]], ...]}]}
 * Kinds: bitflip, phaseflip (field p), amplitude_damping (field gamma),
 * measure_z, reset, custom (field kraus, row-major 2x2 entries).
 * Unknown fields are rejected with ParseError.
 */
std::vector<ChannelSite> parse_channels_json(std::string_view text);

/// Inverse of parse_channels_json.
std::string channels_to_json(const std::vector<ChannelSite> &sites);

} // namespace qmcreach
