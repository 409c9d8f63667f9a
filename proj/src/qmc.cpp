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

#include "qmcreach/qmc.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "qmcreach/errors.hpp"

namespace qmcreach {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

DenseMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    return DenseMatrix(2, 2, {a, b, c, d});
}

void require_probability(double value, const char *what) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw UsageError(std::string(what) + " must lie in [0, 1], got " +
                         std::to_string(value));
    }
}

constexpr double kCompletenessTol = 1e-10;

} // namespace

std::string_view channel_name(const ChannelKind &kind) {
    return std::visit(
        overloaded{[](const BitFlip &) { return std::string_view("bitflip"); },
                   [](const PhaseFlip &) { return std::string_view("phaseflip"); },
                   [](const AmplitudeDamping &) {
                       return std::string_view("amplitude_damping");
                   },
                   [](const MeasureZ &) { return std::string_view("measure_z"); },
                   [](const Reset &) { return std::string_view("reset"); },
                   [](const CustomKraus &) { return std::string_view("custom"); }},
        kind);
}

std::vector<DenseMatrix> kraus_for(const ChannelKind &kind) {
    return std::visit(
        overloaded{
            [](const BitFlip &c) {
                require_probability(c.p, "bitflip p");
                const double a = std::sqrt(1.0 - c.p), b = std::sqrt(c.p);
                return std::vector{mat2(a, 0, 0, a), mat2(0, b, b, 0)};
            },
            [](const PhaseFlip &c) {
                require_probability(c.p, "phaseflip p");
                const double a = std::sqrt(1.0 - c.p), b = std::sqrt(c.p);
                return std::vector{mat2(a, 0, 0, a), mat2(b, 0, 0, -b)};
            },
            [](const AmplitudeDamping &c) {
                require_probability(c.gamma, "amplitude_damping gamma");
                return std::vector{mat2(1, 0, 0, std::sqrt(1.0 - c.gamma)),
                                   mat2(0, std::sqrt(c.gamma), 0, 0)};
            },
            [](const MeasureZ &) {
                return std::vector{mat2(1, 0, 0, 0), mat2(0, 0, 0, 1)};
            },
            [](const Reset &) {
                // X * |1><1| = |0><1|
                return std::vector{mat2(1, 0, 0, 0), mat2(0, 1, 0, 0)};
            },
            [](const CustomKraus &c) {
                if (c.ops.empty()) {
                    throw UsageError("custom channel needs at least one Kraus matrix");
                }
                for (const auto &m : c.ops) {
                    if (m.rows() != 2 || m.cols() != 2) {
                        throw UsageError("custom Kraus matrices must be 2x2");
                    }
                    for (const auto &z : m.entries()) {
                        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                            throw UsageError("custom Kraus matrix has a non-finite entry");
                        }
                    }
                }
                return c.ops;
            }},
        kind);
}

double completeness_defect(const std::vector<DenseMatrix> &kraus) {
    if (kraus.empty()) {
        return 1.0;
    }
    DenseMatrix sum(kraus.front().cols(), kraus.front().cols());
    for (const auto &k : kraus) {
        sum += k.adjoint() * k;
    }
    return sum.max_abs_diff(DenseMatrix::identity(sum.rows()));
}

// ---------------------------------------------------------------------------

std::size_t KrausBranchPlan::branch_count() const {
    std::size_t n = 1;
    for (const auto &ks : site_kraus) {
        n *= ks.size();
    }
    return n;
}

std::vector<std::vector<int>> KrausBranchPlan::enumerate() const {
    std::vector<std::vector<int>> out;
    const std::size_t total = branch_count();
    out.reserve(total);
    std::vector<int> choice(site_kraus.size(), 0);
    for (std::size_t b = 0; b < total; ++b) {
        out.push_back(choice);
        // Mixed-radix increment, last site least significant.
        for (std::size_t s = site_kraus.size(); s-- > 0;) {
            if (++choice[s] < static_cast<int>(site_kraus[s].size())) {
                break;
            }
            choice[s] = 0;
        }
    }
    return out;
}

QuantumMarkovChain build_qmc(Circuit body, std::vector<ChannelSite> sites,
                             const BuildOptions &options) {
    body.validate();
    QuantumMarkovChain qmc;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const auto &site = sites[i];
        const std::string where =
            "channel site #" + std::to_string(i) + " (" +
            std::string(channel_name(site.kind)) + " at position " +
            std::to_string(site.position) + ", qubit " +
            std::to_string(site.qubit) + ")";
        if (site.position > body.ops.size()) {
            throw UsageError(where + ": position exceeds body length " +
                             std::to_string(body.ops.size()));
        }
        if (site.qubit < 0 || site.qubit >= body.num_qubits) {
            throw UsageError(where + ": qubit out of range");
        }
        std::vector<DenseMatrix> kraus;
        try {
            kraus = kraus_for(site.kind);
        } catch (const UsageError &e) {
            throw UsageError(where + ": " + e.what());
        }
        const double defect = completeness_defect(kraus);
        if (defect > kCompletenessTol) {
            if (!std::holds_alternative<CustomKraus>(site.kind)) {
                throw InvariantViolation(where + ": built-in Kraus list incomplete");
            }
            qmc.trace_preserving_ = false;
            qmc.warnings_.push_back(where + ": Kraus list is not complete "
                                            "(max |sum K^dag K - I| = " +
                                    std::to_string(defect) + ")");
        }
    }
    std::stable_sort(sites.begin(), sites.end(),
                     [](const ChannelSite &a, const ChannelSite &b) {
                         return a.position < b.position;
                     });
    for (const auto &site : sites) {
        qmc.plan_.site_kraus.push_back(kraus_for(site.kind));
    }
    qmc.body_ = std::move(body);
    qmc.sites_ = std::move(sites);
    if (qmc.branch_count() > options.branch_limit) {
        qmc.warnings_.push_back("branch count " +
                                std::to_string(qmc.branch_count()) +
                                " exceeds limit " +
                                std::to_string(options.branch_limit));
    }
    return qmc;
}

// ---------------------------------------------------------------------------
// Channel files
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

void reject_unknown(const json &obj, std::initializer_list<std::string_view> allowed,
                    const std::string &where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            throw ParseError(0, where + ": unknown field '" + it.key() + "'");
        }
    }
}

const json &field(const json &obj, const char *name, const std::string &where) {
    auto it = obj.find(name);
    if (it == obj.end()) {
        throw ParseError(0, where + ": missing field '" + name + "'");
    }
    return *it;
}

double number_field(const json &obj, const char *name, const std::string &where) {
    const json &v = field(obj, name, where);
    if (!v.is_number()) {
        throw ParseError(0, where + ": field '" + name + "' must be a number");
    }
    return v.get<double>();
}

long long index_field(const json &obj, const char *name, const std::string &where) {
    const json &v = field(obj, name, where);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ParseError(0, where + ": field '" + name +
                                "' must be a non-negative integer");
    }
    return v.get<long long>();
}

Complex complex_entry(const json &v, const std::string &where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ParseError(0, where + ": complex entries must be [re, im] pairs");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

} // namespace

std::vector<ChannelSite> parse_channels_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(0, std::string("channel file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError(0, "channel file must be a JSON object");
    }
    reject_unknown(doc, {"channels"}, "channel file");
    const json &list = field(doc, "channels", "channel file");
    if (!list.is_array()) {
        throw ParseError(0, "channel file: 'channels' must be an array");
    }
    std::vector<ChannelSite> sites;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const json &entry = list[i];
        const std::string where = "channels[" + std::to_string(i) + "]";
        if (!entry.is_object()) {
            throw ParseError(0, where + ": must be an object");
        }
        const json &kind_v = field(entry, "kind", where);
        if (!kind_v.is_string()) {
            throw ParseError(0, where + ": 'kind' must be a string");
        }
        const std::string kind = kind_v.get<std::string>();
        ChannelSite site;
        if (kind == "bitflip" || kind == "phaseflip") {
            reject_unknown(entry, {"kind", "position", "qubit", "p"}, where);
            const double p = number_field(entry, "p", where);
            site.kind = kind == "bitflip" ? ChannelKind{BitFlip{p}}
                                          : ChannelKind{PhaseFlip{p}};
        } else if (kind == "amplitude_damping") {
            reject_unknown(entry, {"kind", "position", "qubit", "gamma"}, where);
            site.kind = AmplitudeDamping{number_field(entry, "gamma", where)};
        } else if (kind == "measure_z") {
            reject_unknown(entry, {"kind", "position", "qubit"}, where);
            site.kind = MeasureZ{};
        } else if (kind == "reset") {
            reject_unknown(entry, {"kind", "position", "qubit"}, where);
            site.kind = Reset{};
        } else if (kind == "custom") {
            reject_unknown(entry, {"kind", "position", "qubit", "kraus"}, where);
            const json &mats = field(entry, "kraus", where);
            if (!mats.is_array() || mats.empty()) {
                throw ParseError(0, where + ": 'kraus' must be a non-empty array");
            }
            CustomKraus custom;
            for (const auto &m : mats) {
                if (!m.is_array() || m.size() != 4) {
                    throw ParseError(0, where + ": each Kraus matrix must list 4 "
                                                "row-major [re, im] entries");
                }
                std::vector<Complex> entries;
                for (const auto &z : m) {
                    entries.push_back(complex_entry(z, where));
                }
                custom.ops.emplace_back(2, 2, std::move(entries));
            }
            site.kind = std::move(custom);
        } else {
            throw ParseError(0, where + ": unknown channel kind '" + kind + "'");
        }
        site.position = static_cast<std::size_t>(index_field(entry, "position", where));
        const long long qubit = index_field(entry, "qubit", where);
        if (qubit > kMaxQubits) {
            throw ParseError(0, where + ": qubit index too large");
        }
        site.qubit = static_cast<int>(qubit);
        sites.push_back(std::move(site));
    }
    return sites;
}

std::string channels_to_json(const std::vector<ChannelSite> &sites) {
    json list = json::array();
    for (const auto &site : sites) {
        json entry;
        entry["kind"] = std::string(channel_name(site.kind));
        entry["position"] = site.position;
        entry["qubit"] = site.qubit;
        std::visit(overloaded{[&](const BitFlip &c) { entry["p"] = c.p; },
                              [&](const PhaseFlip &c) { entry["p"] = c.p; },
                              [&](const AmplitudeDamping &c) { entry["gamma"] = c.gamma; },
                              [](const MeasureZ &) {},
                              [](const Reset &) {},
                              [&](const CustomKraus &c) {
                                  json mats = json::array();
                                  for (const auto &m : c.ops) {
                                      json flat = json::array();
                                      for (const auto &z : m.entries()) {
                                          flat.push_back({z.real(), z.imag()});
                                      }
                                      mats.push_back(flat);
                                  }
                                  entry["kraus"] = mats;
                              }},
                   site.kind);
        list.push_back(entry);
    }
    return json{{"channels", list}}.dump(2);
}

} // namespace qmcreach
