#include <sstream>

#include "tqp/lang.hpp"

namespace tqp::lang {

namespace {

// Source-level string escaping: the lexer only understands \" and \\.
std::string escape_path(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

void format_word(std::ostream& os, const Word& word) {
    bool first = true;
    for (const Atom& atom : word.atoms) {
        if (!first)
            os << " ";
        first = false;
        if (atom.is_sigma)
            os << "s" << atom.sigma_index;
        else
            os << atom.name;
        if (atom.exponent != 1)
            os << "^" << atom.exponent;
    }
}

struct DeclFormatter {
    std::ostream& os;

    void operator()(const ModelDecl& d) {
        if (d.is_path)
            os << "model \"" << escape_path(d.name_or_path) << "\";";
        else
            os << "model " << d.name_or_path << ";";
    }
    void operator()(const ConfigDecl& d) {
        os << "config " << d.count << " of " << d.species << " total " << d.total << ";";
    }
    void operator()(const StartDecl& d) { os << "start " << d.index << ";"; }
    void operator()(const GateDecl& d) {
        os << "gate " << d.name << " = ";
        format_word(os, d.word);
        os << ";";
    }
    void operator()(const ApplyStmt& d) {
        os << "apply ";
        format_word(os, d.word);
        os << ";";
    }
    void operator()(const EmitStmt& d) {
        os << "emit " << (d.kind == EmitStmt::Kind::unitary ? "unitary" : "state") << ";";
    }
    void operator()(const MeasureStmt& d) { os << "measure edge " << d.edge << ";"; }
};

} // namespace

std::string format(const Program& p) {
    std::ostringstream os;
    DeclFormatter fmt{os};
    for (const Decl& decl : p.decls) {
        std::visit(fmt, decl);
        os << "\n";
    }
    return os.str();
}

} // namespace tqp::lang
