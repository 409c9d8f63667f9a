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

#include "qmcreach/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "qmcreach/errors.hpp"

namespace qmcreach {

namespace {

constexpr int kParserQubitLimit = 64;

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
    Tok type = Tok::End;
    std::string text;
    std::size_t line = 0;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space_and_comments();
        Token t;
        t.line = line_;
        if (pos_ >= src_.size()) {
            return t;
        }
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                    src_[pos_] == '_')) {
                ++pos_;
            }
            t.type = Tok::Ident;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                    src_[pos_] == '.')) {
                ++pos_;
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                std::size_t save = pos_;
                ++pos_;
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                    ++pos_;
                }
                if (pos_ < src_.size() &&
                    std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    while (pos_ < src_.size() &&
                           std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                        ++pos_;
                    }
                } else {
                    pos_ = save;
                }
            }
            t.type = Tok::Number;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        if (c == '"') {
            std::size_t start = ++pos_;
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                ++pos_;
            }
            if (pos_ >= src_.size() || src_[pos_] != '"') {
                throw ParseError(line_, "unterminated string literal");
            }
            t.type = Tok::String;
            t.text = std::string(src_.substr(start, pos_ - start));
            ++pos_;
            return t;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            pos_ += 2;
            t.type = Tok::Symbol;
            t.text = "->";
            return t;
        }
        static constexpr std::string_view kSymbols = ";,[](){}+-*/^=<>";
        if (kSymbols.find(c) != std::string_view::npos) {
            ++pos_;
            t.type = Tok::Symbol;
            t.text = std::string(1, c);
            return t;
        }
        throw ParseError(line_, std::string("unexpected character '") +
                                    (std::isprint(static_cast<unsigned char>(c))
                                         ? std::string(1, c)
                                         : std::string("\\x") + std::to_string(
                                               static_cast<unsigned char>(c))) +
                                    "'");
    }

  private:
    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
                pos_ += 2;
                while (pos_ + 1 < src_.size() &&
                       !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) {
                    if (src_[pos_] == '\n') {
                        ++line_;
                    }
                    ++pos_;
                }
                if (pos_ + 1 >= src_.size()) {
                    throw ParseError(line_, "unterminated block comment");
                }
                pos_ += 2;
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

struct Register {
    int offset;
    int size;
};

// Gate names accepted in the body, before lowering.
enum class Surface { Native, U2, U1, RX, RY, RZ, Id };

struct GateSpec {
    Surface surface;
    GateKind kind;
    int num_params;
    int num_qubits;
};

const std::unordered_map<std::string, GateSpec> &gate_table() {
    static const std::unordered_map<std::string, GateSpec> table = {
        {"x", {Surface::Native, GateKind::X, 0, 1}},
        {"y", {Surface::Native, GateKind::Y, 0, 1}},
        {"z", {Surface::Native, GateKind::Z, 0, 1}},
        {"h", {Surface::Native, GateKind::H, 0, 1}},
        {"s", {Surface::Native, GateKind::S, 0, 1}},
        {"sdg", {Surface::Native, GateKind::SDG, 0, 1}},
        {"t", {Surface::Native, GateKind::T, 0, 1}},
        {"tdg", {Surface::Native, GateKind::TDG, 0, 1}},
        {"u3", {Surface::Native, GateKind::U3, 3, 1}},
        {"u", {Surface::Native, GateKind::U3, 3, 1}},
        {"U", {Surface::Native, GateKind::U3, 3, 1}},
        {"u2", {Surface::U2, GateKind::U3, 2, 1}},
        {"u1", {Surface::U1, GateKind::U3, 1, 1}},
        {"p", {Surface::U1, GateKind::U3, 1, 1}},
        {"rx", {Surface::RX, GateKind::U3, 1, 1}},
        {"ry", {Surface::RY, GateKind::U3, 1, 1}},
        {"rz", {Surface::RZ, GateKind::U3, 1, 1}},
        {"id", {Surface::Id, GateKind::X, 0, 1}},
        {"cx", {Surface::Native, GateKind::CX, 0, 2}},
        {"CX", {Surface::Native, GateKind::CX, 0, 2}},
        {"cz", {Surface::Native, GateKind::CZ, 0, 2}},
        {"ccx", {Surface::Native, GateKind::CCX, 0, 3}},
        {"swap", {Surface::Native, GateKind::SWAP, 0, 2}},
    };
    return table;
}

class Parser {
  public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    Circuit parse() {
        expect_ident("OPENQASM", "program must start with 'OPENQASM 2.0;'");
        if (cur_.type != Tok::Number) {
            fail("expected version number after OPENQASM");
        }
        if (cur_.text != "2.0" && cur_.text != "2") {
            fail("unsupported OpenQASM version '" + cur_.text +
                 "' (only 2.0 is supported)");
        }
        advance();
        expect_symbol(";");

        while (cur_.type != Tok::End) {
            statement();
        }
        if (circuit_.num_qubits == 0) {
            throw ParseError(last_line_, "program declares no qreg");
        }
        return std::move(circuit_);
    }

  private:
    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError(cur_.line, msg);
    }

    void advance() {
        last_line_ = cur_.line == 0 ? 1 : cur_.line;
        cur_ = lexer_.next();
        if (cur_.type == Tok::End) {
            cur_.line = last_line_;
        }
    }

    bool at_symbol(std::string_view s) const {
        return cur_.type == Tok::Symbol && cur_.text == s;
    }

    void expect_symbol(std::string_view s) {
        if (!at_symbol(s)) {
            fail("expected '" + std::string(s) + "'" + found());
        }
        advance();
    }

    void expect_ident(std::string_view s, const std::string &msg) {
        if (cur_.type != Tok::Ident || cur_.text != s) {
            fail(msg);
        }
        advance();
    }

    std::string found() const {
        if (cur_.type == Tok::End) {
            return " but reached end of input";
        }
        return " but found '" + cur_.text + "'";
    }

    std::string take_ident(const char *what) {
        if (cur_.type != Tok::Ident) {
            fail(std::string("expected ") + what + found());
        }
        std::string s = cur_.text;
        advance();
        return s;
    }

    long take_int(const char *what) {
        if (cur_.type != Tok::Number) {
            fail(std::string("expected ") + what + found());
        }
        long value = 0;
        const auto *first = cur_.text.data();
        const auto *last = first + cur_.text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            fail(std::string("expected integer ") + what + ", found '" +
                 cur_.text + "'");
        }
        advance();
        return value;
    }

    void statement() {
        if (cur_.type != Tok::Ident) {
            fail("expected a statement" + found());
        }
        const std::string word = cur_.text;
        if (word == "include") {
            advance();
            if (cur_.type != Tok::String) {
                fail("expected file name string after include");
            }
            if (cur_.text != "qelib1.inc") {
                fail("only 'qelib1.inc' may be included, got '" + cur_.text + "'");
            }
            advance();
            expect_symbol(";");
        } else if (word == "qreg" || word == "creg") {
            advance();
            declaration(word == "qreg");
        } else if (word == "barrier") {
            advance();
            operand_list();
            expect_symbol(";");
        } else if (word == "measure") {
            fail("'measure' is not allowed in the circuit body; declare a "
                 "measure_z channel in the channel specification instead");
        } else if (word == "reset") {
            fail("'reset' is not allowed in the circuit body; declare a "
                 "reset channel in the channel specification instead");
        } else if (word == "gate" || word == "opaque") {
            fail("custom gate definitions are not supported");
        } else if (word == "if") {
            fail("classically controlled 'if' statements are not supported");
        } else if (word == "OPENQASM") {
            fail("duplicate OPENQASM header");
        } else {
            gate_statement();
        }
    }

    void declaration(bool quantum) {
        const std::size_t line = cur_.line;
        std::string name = take_ident("register name");
        expect_symbol("[");
        long size = take_int("register size");
        expect_symbol("]");
        expect_symbol(";");
        if (size <= 0) {
            throw ParseError(line, "register '" + name + "' must have positive size");
        }
        if (qregs_.count(name) || cregs_.count(name)) {
            throw ParseError(line, "register '" + name + "' redeclared");
        }
        if (quantum) {
            if (circuit_.num_qubits + size > kParserQubitLimit) {
                throw ParseError(line, "total qubit count exceeds " +
                                           std::to_string(kParserQubitLimit));
            }
            qregs_[name] = {circuit_.num_qubits, static_cast<int>(size)};
            circuit_.num_qubits += static_cast<int>(size);
        } else {
            cregs_.insert(name);
        }
    }

    // Each operand resolves to one qubit or a whole register.
    std::vector<std::vector<int>> operand_list() {
        std::vector<std::vector<int>> operands;
        operands.push_back(operand());
        while (at_symbol(",")) {
            advance();
            operands.push_back(operand());
        }
        return operands;
    }

    std::vector<int> operand() {
        const std::size_t line = cur_.line;
        std::string name = take_ident("qubit operand");
        auto it = qregs_.find(name);
        if (it == qregs_.end()) {
            if (cregs_.count(name)) {
                throw ParseError(line, "'" + name + "' is a classical register");
            }
            throw ParseError(line, "unknown quantum register '" + name + "'");
        }
        const Register reg = it->second;
        if (at_symbol("[")) {
            advance();
            long index = take_int("qubit index");
            expect_symbol("]");
            if (index < 0 || index >= reg.size) {
                throw ParseError(line, "qubit index " + std::to_string(index) +
                                           " out of range for register '" +
                                           name + "' of size " +
                                           std::to_string(reg.size));
            }
            return {reg.offset + static_cast<int>(index)};
        }
        std::vector<int> all(static_cast<std::size_t>(reg.size));
        for (int k = 0; k < reg.size; ++k) {
            all[static_cast<std::size_t>(k)] = reg.offset + k;
        }
        return all;
    }

    // expr := term (('+'|'-') term)*
    double expression() {
        double v = term();
        while (at_symbol("+") || at_symbol("-")) {
            const bool plus = cur_.text == "+";
            advance();
            const double rhs = term();
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }

    double term() {
        double v = unary();
        while (at_symbol("*") || at_symbol("/")) {
            const bool mul = cur_.text == "*";
            advance();
            const double rhs = unary();
            if (!mul && rhs == 0.0) {
                fail("division by zero in parameter expression");
            }
            v = mul ? v * rhs : v / rhs;
        }
        return v;
    }

    double unary() {
        if (at_symbol("-")) {
            advance();
            return -unary();
        }
        if (at_symbol("+")) {
            advance();
            return unary();
        }
        return primary();
    }

    double primary() {
        if (++depth_ > 64) {
            fail("parameter expression nested too deeply");
        }
        double v = 0.0;
        if (cur_.type == Tok::Number) {
            const auto *first = cur_.text.data();
            const auto *last = first + cur_.text.size();
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
                fail("malformed number '" + cur_.text + "'");
            }
            advance();
        } else if (cur_.type == Tok::Ident && cur_.text == "pi") {
            v = std::numbers::pi;
            advance();
        } else if (at_symbol("(")) {
            advance();
            v = expression();
            expect_symbol(")");
        } else {
            fail("malformed parameter expression" + found());
        }
        --depth_;
        return v;
    }

    void gate_statement() {
        const std::size_t line = cur_.line;
        const std::string name = cur_.text;
        const auto &table = gate_table();
        auto it = table.find(name);
        if (it == table.end()) {
            fail("unknown gate '" + name + "'");
        }
        const GateSpec spec = it->second;
        advance();

        std::vector<double> params;
        if (at_symbol("(")) {
            advance();
            if (!at_symbol(")")) {
                params.push_back(expression());
                while (at_symbol(",")) {
                    advance();
                    params.push_back(expression());
                }
            }
            expect_symbol(")");
        }
        for (double p : params) {
            if (!std::isfinite(p)) {
                throw ParseError(line, "non-finite gate parameter");
            }
        }
        if (static_cast<int>(params.size()) != spec.num_params) {
            throw ParseError(line, "gate '" + name + "' takes " +
                                       std::to_string(spec.num_params) +
                                       " parameter(s), got " +
                                       std::to_string(params.size()));
        }
        auto operands = operand_list();
        expect_symbol(";");
        if (static_cast<int>(operands.size()) != spec.num_qubits) {
            throw ParseError(line, "gate '" + name + "' takes " +
                                       std::to_string(spec.num_qubits) +
                                       " qubit operand(s), got " +
                                       std::to_string(operands.size()));
        }

        // Register broadcast: all whole-register operands must agree in size.
        std::size_t width = 1;
        for (const auto &op : operands) {
            if (op.size() != 1) {
                if (width != 1 && width != op.size()) {
                    throw ParseError(line, "register operands of gate '" + name +
                                               "' have different sizes");
                }
                width = op.size();
            }
        }
        for (std::size_t k = 0; k < width; ++k) {
            std::vector<int> qubits;
            for (const auto &op : operands) {
                qubits.push_back(op.size() == 1 ? op[0] : op[k]);
            }
            std::set<int> distinct(qubits.begin(), qubits.end());
            if (distinct.size() != qubits.size()) {
                throw ParseError(line, "gate '" + name + "' has repeated qubit operands");
            }
            emit(spec, params, std::move(qubits));
        }
    }

    void emit(const GateSpec &spec, const std::vector<double> &p,
              std::vector<int> qubits) {
        constexpr double pi = std::numbers::pi;
        switch (spec.surface) {
        case Surface::Id:
            return;
        case Surface::Native:
            if (spec.kind == GateKind::U3) {
                circuit_.ops.push_back(make_u3(qubits[0], p[0], p[1], p[2]));
            } else {
                circuit_.ops.push_back(make_gate(spec.kind, std::move(qubits)));
            }
            return;
        case Surface::U2:
            circuit_.ops.push_back(make_u3(qubits[0], pi / 2, p[0], p[1]));
            return;
        case Surface::U1:
        case Surface::RZ:
            circuit_.ops.push_back(make_u3(qubits[0], 0.0, 0.0, p[0]));
            return;
        case Surface::RX:
            circuit_.ops.push_back(make_u3(qubits[0], p[0], -pi / 2, pi / 2));
            return;
        case Surface::RY:
            circuit_.ops.push_back(make_u3(qubits[0], p[0], 0.0, 0.0));
            return;
        }
    }

    Lexer lexer_;
    Token cur_;
    std::size_t last_line_ = 1;
    int depth_ = 0;
    Circuit circuit_;
    std::unordered_map<std::string, Register> qregs_;
    std::set<std::string> cregs_;
};

} // namespace

int arity(GateKind kind) {
    switch (kind) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::SWAP:
        return 2;
    case GateKind::CCX:
        return 3;
    default:
        return 1;
    }
}

std::string_view mnemonic(GateKind kind) {
    switch (kind) {
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::SDG: return "sdg";
    case GateKind::T: return "t";
    case GateKind::TDG: return "tdg";
    case GateKind::U3: return "u3";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::CCX: return "ccx";
    case GateKind::SWAP: return "swap";
    }
    return "?";
}

GateOp make_gate(GateKind kind, std::vector<int> qubits) {
    GateOp op;
    op.kind = kind;
    op.qubits = std::move(qubits);
    return op;
}

GateOp make_u3(int qubit, double theta, double phi, double lambda) {
    GateOp op;
    op.kind = GateKind::U3;
    op.qubits = {qubit};
    op.params = {theta, phi, lambda};
    return op;
}

void Circuit::validate() const {
    if (num_qubits < 1) {
        throw UsageError("circuit must have at least one qubit");
    }
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const auto &op = ops[i];
        const std::string where = "gate #" + std::to_string(i) + " (" +
                                  std::string(mnemonic(op.kind)) + ")";
        if (static_cast<int>(op.qubits.size()) != arity(op.kind)) {
            throw UsageError(where + ": wrong number of operands");
        }
        std::set<int> seen;
        for (int q : op.qubits) {
            if (q < 0 || q >= num_qubits) {
                throw UsageError(where + ": qubit " + std::to_string(q) +
                                 " out of range");
            }
            if (!seen.insert(q).second) {
                throw UsageError(where + ": repeated operand");
            }
        }
    }
}

std::string to_qasm(const Circuit &circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << circuit.num_qubits
        << "];\n";
    char buf[160];
    for (const auto &op : circuit.ops) {
        out << mnemonic(op.kind);
        if (op.kind == GateKind::U3) {
            std::snprintf(buf, sizeof buf, "(%.17g,%.17g,%.17g)", op.params[0],
                          op.params[1], op.params[2]);
            out << buf;
        }
        for (std::size_t k = 0; k < op.qubits.size(); ++k) {
            out << (k == 0 ? " " : ",") << "q[" << op.qubits[k] << "]";
        }
        out << ";\n";
    }
    return out.str();
}

Circuit parse_qasm(std::string_view source) { return Parser(source).parse(); }

} // namespace qmcreach
