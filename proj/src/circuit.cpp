#include "tcopt/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace tcopt {

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Z: return "z";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::T: return "t";
        case GateKind::Tdg: return "tdg";
        case GateKind::CZ: return "cz";
        case GateKind::CNOT: return "cx";
        case GateKind::CS: return "cs";
        case GateKind::CCZ: return "ccz";
        case GateKind::CCX: return "ccx";
    }
    return "?";
}

std::size_t Circuit::t_count() const {
    std::size_t n = 0;
    for (const auto& g : gates) {
        int w = gate_phase_weight(g.kind);
        if (w > 0 && (w & 1)) ++n;
        if (g.kind == GateKind::CS) n += 3;
        if (g.kind == GateKind::CCZ || g.kind == GateKind::CCX) n += 7;
    }
    return n;
}

void Circuit::validate() const {
    for (const auto& g : gates) {
        int a = g.arity();
        for (int i = 0; i < a; ++i) {
            if (g.q[static_cast<std::size_t>(i)] >= num_qubits)
                throw std::runtime_error("gate index out of range");
            for (int j = i + 1; j < a; ++j)
                if (g.q[static_cast<std::size_t>(i)] == g.q[static_cast<std::size_t>(j)])
                    throw std::runtime_error("repeated qubit within a gate");
        }
    }
}

namespace {

struct Statement {
    int line;
    std::string text;
};

// Split on ';', dropping // comments, tracking line numbers.
std::vector<Statement> split_statements(std::string_view text) {
    std::vector<Statement> out;
    std::string cur;
    int line = 1, stmt_line = 1;
    bool in_comment = false;
    bool cur_empty = true;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '\n') {
            ++line;
            in_comment = false;
            cur += ' ';
            continue;
        }
        if (in_comment) continue;
        if (ch == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            in_comment = true;
            ++i;
            continue;
        }
        if (ch == ';') {
            out.push_back({stmt_line, cur});
            cur.clear();
            cur_empty = true;
            continue;
        }
        if (cur_empty && !std::isspace(static_cast<unsigned char>(ch))) {
            stmt_line = line;
            cur_empty = false;
        }
        cur += ch;
    }
    std::string rest = cur;
    rest.erase(std::remove_if(rest.begin(), rest.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               rest.end());
    if (!rest.empty()) throw ParseError(stmt_line, "missing ';' at end of statement");
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

}  // namespace

Circuit parse_qasm(std::string_view text) {
    static const std::map<std::string, GateKind> kinds = {
        {"h", GateKind::H},     {"x", GateKind::X},   {"z", GateKind::Z},
        {"s", GateKind::S},     {"sdg", GateKind::Sdg}, {"t", GateKind::T},
        {"tdg", GateKind::Tdg}, {"cz", GateKind::CZ},  {"cx", GateKind::CNOT},
        {"ccx", GateKind::CCX}};

    auto stmts = split_statements(text);
    Circuit c;
    std::map<std::string, std::pair<std::size_t, std::size_t>> regs;  // name -> (offset, size)
    bool saw_header = false;

    for (const auto& st : stmts) {
        std::string s = trim(st.text);
        if (s.empty()) continue;
        std::istringstream iss(s);
        std::string head;
        iss >> head;

        if (!saw_header) {
            if (head != "OPENQASM") throw ParseError(st.line, "expected OPENQASM 2.0 header");
            std::string ver;
            iss >> ver;
            if (ver != "2.0") throw ParseError(st.line, "unsupported OPENQASM version");
            saw_header = true;
            continue;
        }
        if (head == "include") continue;
        if (head == "qreg") {
            std::string decl;
            std::getline(iss, decl);
            decl = trim(decl);
            auto lb = decl.find('['), rb = decl.find(']');
            if (lb == std::string::npos || rb == std::string::npos || rb < lb)
                throw ParseError(st.line, "malformed qreg declaration");
            std::string name = trim(decl.substr(0, lb));
            std::size_t size = 0;
            try {
                size = std::stoul(decl.substr(lb + 1, rb - lb - 1));
            } catch (...) {
                throw ParseError(st.line, "malformed qreg size");
            }
            if (name.empty() || size == 0) throw ParseError(st.line, "malformed qreg declaration");
            if (regs.count(name)) throw ParseError(st.line, "register redeclared: " + name);
            regs[name] = {c.num_qubits, size};
            c.registers.push_back({name, size});
            c.num_qubits += size;
            continue;
        }

        auto it = kinds.find(head);
        if (it == kinds.end())
            throw ParseError(st.line, "unsupported statement: " + head);

        std::string rest;
        std::getline(iss, rest);
        auto args = split_args(rest);
        GateKind k = it->second;
        if (static_cast<int>(args.size()) != gate_arity(k))
            throw ParseError(st.line, std::string("wrong operand count for ") + head);

        Gate g{k, {0, 0, 0}};
        for (std::size_t a = 0; a < args.size(); ++a) {
            const std::string& ref = args[a];
            auto lb = ref.find('['), rb = ref.find(']');
            if (lb == std::string::npos || rb == std::string::npos || rb < lb)
                throw ParseError(st.line, "expected indexed operand, got: " + ref);
            std::string name = trim(ref.substr(0, lb));
            std::size_t idx = 0;
            try {
                idx = std::stoul(ref.substr(lb + 1, rb - lb - 1));
            } catch (...) {
                throw ParseError(st.line, "malformed operand index: " + ref);
            }
            auto rit = regs.find(name);
            if (rit == regs.end()) throw ParseError(st.line, "undeclared register: " + name);
            if (idx >= rit->second.second)
                throw ParseError(st.line, "index out of register bounds: " + ref);
            g.q[a] = static_cast<std::uint32_t>(rit->second.first + idx);
        }
        for (int i = 0; i < g.arity(); ++i)
            for (int j = i + 1; j < g.arity(); ++j)
                if (g.q[static_cast<std::size_t>(i)] == g.q[static_cast<std::size_t>(j)])
                    throw ParseError(st.line, "repeated qubit within a gate");
        c.gates.push_back(g);
    }
    if (!saw_header) throw ParseError(1, "empty program (missing OPENQASM header)");
    return c;
}

std::string to_qasm(const Circuit& c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";

    std::vector<Register> regs = c.registers;
    if (regs.empty() && c.num_qubits > 0) regs.push_back({"q", c.num_qubits});
    std::size_t declared = 0;
    for (const auto& r : regs) declared += r.size;
    if (declared < c.num_qubits) regs.push_back({"anc", c.num_qubits - declared});
    for (const auto& r : regs) out << "qreg " << r.name << "[" << r.size << "];\n";

    auto ref = [&](std::uint32_t q) {
        std::size_t off = q;
        for (const auto& r : regs) {
            if (off < r.size) return r.name + "[" + std::to_string(off) + "]";
            off -= r.size;
        }
        return std::string("q[?") + std::to_string(q) + "]";
    };
    auto emit = [&](const Gate& g) {
        out << gate_name(g.kind);
        for (int i = 0; i < g.arity(); ++i)
            out << (i ? ", " : " ") << ref(g.q[static_cast<std::size_t>(i)]);
        out << ";\n";
    };

    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::CS:
                // not in the emitted subset: lower to T/CNOT
                emit(Gate::t(g.q[0]));
                emit(Gate::t(g.q[1]));
                emit(Gate::cnot(g.q[0], g.q[1]));
                emit(Gate::tdg(g.q[1]));
                emit(Gate::cnot(g.q[0], g.q[1]));
                break;
            case GateKind::CCZ:
                emit(Gate::h(g.q[2]));
                emit(Gate::ccx(g.q[0], g.q[1], g.q[2]));
                emit(Gate::h(g.q[2]));
                break;
            default:
                emit(g);
        }
    }
    return out.str();
}

}  // namespace tcopt
