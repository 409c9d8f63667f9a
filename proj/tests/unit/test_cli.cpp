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


#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "qmcreach/cli.hpp"
#include "qmcreach/errors.hpp"
#include "qmcreach/families.hpp"
#include "qmcreach/qasm.hpp"
#include "qmcreach/qmc.hpp"
#include "qmcreach/reach.hpp"

namespace qmcreach::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kCircuits = QMCREACH_CIRCUITS_DIR;

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qmcreach_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                  ->current_test_info()
                                                  ->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string &name, const std::string &text) {
        const auto path = dir_ / name;
        std::ofstream(path) << text;
        return path.string();
    }

    RunConfig config_for(const std::string &circuit) {
        RunConfig c;
        c.circuit_path = circuit;
        return c;
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

TEST_F(CliTest, ReachWalkText) {
    auto c = config_for(kCircuits + "/qrw3.qasm");
    c.init_spec = {"000"};
    EXPECT_EQ(cmd_reach(c, out_, err_), kOk);
    EXPECT_NE(out_.str().find("reachable_dim: 6"), std::string::npos) << out_.str();
    EXPECT_NE(out_.str().find("iterations:"), std::string::npos);
    EXPECT_NE(out_.str().find("branch_evals:"), std::string::npos);
}

TEST_F(CliTest, ReachGroverDefaultInit) {
    EXPECT_EQ(cmd_reach(config_for(kCircuits + "/grover5.qasm"), out_, err_), kOk);
    EXPECT_NE(out_.str().find("reachable_dim: 2"), std::string::npos) << out_.str();
}

TEST_F(CliTest, ReachIdentity) {
    auto c = config_for(kCircuits + "/identity2.qasm");
    c.init_spec = {"00"};
    EXPECT_EQ(cmd_reach(c, out_, err_), kOk);
    EXPECT_NE(out_.str().find("reachable_dim: 1"), std::string::npos);
}

TEST_F(CliTest, ReachRepeatUntilSuccess) {
    auto c = config_for(kCircuits + "/rus_v3.qasm");
    c.channels_path = kCircuits + "/rus_v3.channels.json";
    EXPECT_EQ(cmd_reach(c, out_, err_), kOk);
    EXPECT_NE(out_.str().find("reachable_dim: 2"), std::string::npos) << err_.str();
}

TEST_F(CliTest, JsonReportRoundTrips) {
    auto c = config_for(kCircuits + "/qrw3.qasm");
    c.output_format = OutputFormat::Json;
    c.channels_path = kCircuits + "/qrw3_bitflip.channels.json";
    ASSERT_EQ(cmd_reach(c, out_, err_), kOk) << err_.str();
    const json doc = json::parse(out_.str());
    const auto parsed = parse_report_json(out_.str());
    EXPECT_EQ(parsed.reachable_dim, doc["reachable_dim"].get<std::size_t>());
    EXPECT_EQ(parsed.basis.size(), parsed.reachable_dim);
    EXPECT_TRUE(doc.contains("iterations"));
    EXPECT_TRUE(doc.contains("saturated"));

    // Same run through the library: amplitudes must survive to 1e-12.
    const auto qmc = build_qmc(parse_qasm(R"(OPENQASM 2.0;
qreg q[1];
u3(0.3, 0.2, 0.1) q[0];
)"), {ChannelSite{0, 0, AmplitudeDamping{0.25}}});
    const auto report = reachable_subspace(qmc, std::vector<StateVector>{StateVector(1)});
    const auto back = parse_report_json(report_to_json(report));
    ASSERT_EQ(back.reachable_dim, report.subspace.dim());
    for (std::size_t k = 0; k < back.basis.size(); ++k) {
        StateVector rebuilt = StateVector::zero(1);
        for (const auto &e : back.basis[k]) {
            rebuilt[e.index] = Complex(e.re, e.im);
        }
        for (std::size_t i = 0; i < rebuilt.dim(); ++i) {
            const Complex want = report.subspace.basis[k][i];
            if (std::abs(want) > 1e-10) {
                EXPECT_LT(std::abs(rebuilt[i] - want), 1e-12);
            }
        }
    }
    EXPECT_THROW(parse_report_json("{"), ParseError);
    EXPECT_THROW(parse_report_json("{\"reachable_dim\": 1}"), ParseError);
}

TEST_F(CliTest, JsonModeKeepsDiagnosticsOffStdout) {
    const auto circ = write("big.qasm", "OPENQASM 2.0;\nqreg q[1];\nh q[0];\n");
    const auto chans = write("many.json", R"({"channels": [
        {"kind": "measure_z", "position": 0, "qubit": 0},
        {"kind": "measure_z", "position": 0, "qubit": 0},
        {"kind": "measure_z", "position": 0, "qubit": 0},
        {"kind": "measure_z", "position": 0, "qubit": 0},
        {"kind": "measure_z", "position": 0, "qubit": 0},
        {"kind": "measure_z", "position": 0, "qubit": 0},
        {"kind": "measure_z", "position": 1, "qubit": 0}]})");
    auto c = config_for(circ);
    c.channels_path = chans;
    c.output_format = OutputFormat::Json;
    EXPECT_EQ(cmd_reach(c, out_, err_), kOk);
    EXPECT_NO_THROW(json::parse(out_.str()));
    EXPECT_NE(err_.str().find("warning"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
    auto missing = config_for(kCircuits + "/missing.qasm");
    EXPECT_EQ(cmd_reach(missing, out_, err_), kInputError);

    auto bad = config_for(write("bad.qasm", "OPENQASM 2.0;\nqreg q[1];\nmeasure q[0];\n"));
    EXPECT_EQ(cmd_reach(bad, out_, err_), kInputError);
    EXPECT_NE(err_.str().find("line 3"), std::string::npos) << err_.str();

    auto capped = config_for(kCircuits + "/grover7.qasm");
    capped.qubit_cap = 6;
    EXPECT_EQ(cmd_reach(capped, out_, err_), kCapExceeded);
    EXPECT_EQ(cmd_check(config_for(kCircuits + "/grover7.qasm"), out_, err_), kCapExceeded);

    auto bad_channels = config_for(kCircuits + "/qrw3.qasm");
    bad_channels.channels_path = write("c.json", R"({"channels": [{"kind": "reset"}]})");
    EXPECT_EQ(cmd_reach(bad_channels, out_, err_), kInputError);

    auto bad_site = config_for(kCircuits + "/qrw3.qasm");
    bad_site.channels_path =
        write("s.json", R"({"channels": [{"kind": "reset", "position": 0, "qubit": 5}]})");
    EXPECT_EQ(cmd_reach(bad_site, out_, err_), kInputError);

    auto bad_tol = config_for(kCircuits + "/qrw3.qasm");
    bad_tol.tolerances.null_threshold = 1e-20;
    EXPECT_EQ(cmd_reach(bad_tol, out_, err_), kInputError);

    auto zero_init = config_for(kCircuits + "/identity2.qasm");
    zero_init.init_spec = {write("z.json", R"({"vectors": [[[0,0],[0,0],[0,0],[0,0]]]})")};
    EXPECT_EQ(cmd_reach(zero_init, out_, err_), kInputError);
}

TEST_F(CliTest, CheckReportsAgreement) {
    EXPECT_EQ(cmd_check(config_for(kCircuits + "/qrw3.qasm"), out_, err_), kOk);
    EXPECT_NE(out_.str().find("engine: 6, oracle: 6, agree: true"), std::string::npos)
        << out_.str();
    std::ostringstream o2;
    EXPECT_EQ(cmd_check(config_for(kCircuits + "/identity2.qasm"), o2, err_), kOk);
    EXPECT_NE(o2.str().find("engine: 1, oracle: 1, agree: true"), std::string::npos);
}

TEST_F(CliTest, CheckRandomSweep) {
    RunConfig c;
    c.random = true;
    c.random_qubits = 2;
    c.seeds = 100;
    EXPECT_EQ(cmd_check(c, out_, err_), kOk);
    EXPECT_NE(out_.str().find("100/100 agree"), std::string::npos) << out_.str();
    c.seeds = 0;
    EXPECT_EQ(cmd_check(c, out_, err_), kInputError);
}

TEST_F(CliTest, BenchTable) {
    RunConfig c;
    c.qubit_cap = 8;
    EXPECT_EQ(cmd_bench(c, out_, err_), kOk);
    const std::string table = out_.str();
    for (const char *name : {"grover-5", "grover-7", "qrw-3", "qrw-4-noise", "rus-v3"}) {
        EXPECT_NE(table.find(name), std::string::npos) << name;
    }
    EXPECT_EQ(table.find("MISMATCH"), std::string::npos);
    EXPECT_NE(err_.str().find("skipping qrw-9"), std::string::npos);
}

TEST(ResolveInit, ProductStringsAndDefaults) {
    const auto zero = resolve_init({}, 3, "");
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_EQ(zero[0], StateVector(3));
    const auto pair = resolve_init({"01", "+-"}, 2, "");
    ASSERT_EQ(pair.size(), 2u);
    EXPECT_EQ(pair[0], StateVector::basis_state(2, 1));
    const auto pragma = resolve_init({}, 2, "// walk\n  // @init 10 ++\nOPENQASM 2.0;\n");
    ASSERT_EQ(pragma.size(), 2u);
    EXPECT_EQ(pragma[0], StateVector::basis_state(2, 2));
    // Explicit entries win over the pragma.
    EXPECT_EQ(resolve_init({"11"}, 2, "// @init 10\n")[0], StateVector::basis_state(2, 3));
    EXPECT_THROW(resolve_init({"0"}, 2, ""), ParseError);
    EXPECT_THROW(resolve_init({"no_such_file.json"}, 2, ""), ParseError);
}

TEST_F(CliTest, ResolveInitAmplitudeFiles) {
    write("amps.json", R"({"vectors": [[[0.6,0],[0,0.8]], [[1,0],[0,0]]]})");
    const auto from_pragma = resolve_init({}, 1, "// @init amps.json\n", dir_.string());
    ASSERT_EQ(from_pragma.size(), 2u);
    EXPECT_EQ(from_pragma[0][1], Complex(0.0, 0.8));
    const auto direct = resolve_init({(dir_ / "amps.json").string()}, 1, "");
    EXPECT_EQ(direct.size(), 2u);
    const auto bad = write("bad.json", R"({"vectors": [[[1,0]]]})");
    EXPECT_THROW(resolve_init({bad}, 1, ""), ParseError);
    const auto extra = write("extra.json", R"({"vectors": [], "x": 1})");
    EXPECT_THROW(resolve_init({extra}, 1, ""), ParseError);
}

TEST(Tolerances, NullThresholdOverride) {
    const auto t = tolerances_with_null_threshold(1e-4);
    EXPECT_EQ(t.null_threshold, 1e-4);
    EXPECT_NO_THROW(t.validate());
    EXPECT_NO_THROW(tolerances_with_null_threshold(1e-14).validate());
    EXPECT_THROW(tolerances_with_null_threshold(0.0), UsageError);
    EXPECT_THROW(tolerances_with_null_threshold(0.5), UsageError);
}

} // namespace
} // namespace qmcreach::cli
