#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tqp/braiding.hpp"
#include "tqp/fusion_space.hpp"

namespace tqp::lang {

// Byte-based source position, 1-based line and column.
struct Span {
    int line = 1;
    int col = 1;
    int len = 0;
};

enum class DiagCode {
    E001, // lex error
    E002, // parse error
    E101, // unknown name or label
    E102, // index out of range (strand, edge, start)
    E103, // empty type / dim-0 sector / resource cap
    E104, // model consistency failure
};

const char* diag_code_name(DiagCode code);

struct Diagnostic {
    DiagCode code = DiagCode::E002;
    std::string message;
    Span span;
};

// ---- AST ------------------------------------------------------------------
// Spans are carried for diagnostics but excluded from structural equality.

struct Atom {
    bool is_sigma = false;
    int sigma_index = 0;   // when is_sigma
    std::string name;      // gate reference when !is_sigma
    long exponent = 1;
    Span span;
    bool operator==(const Atom& o) const {
        return is_sigma == o.is_sigma && sigma_index == o.sigma_index && name == o.name &&
               exponent == o.exponent;
    }
};

struct Word {
    std::vector<Atom> atoms;
    Span span;
    bool operator==(const Word& o) const { return atoms == o.atoms; }
};

struct ModelDecl {
    bool is_path = false;       // model "file.json" vs model fibonacci
    std::string name_or_path;
    Span span;
    bool operator==(const ModelDecl& o) const {
        return is_path == o.is_path && name_or_path == o.name_or_path;
    }
};

struct ConfigDecl {
    long count = 0;
    std::string species;
    std::string total;
    Span span;
    Span species_span;
    Span total_span;
    bool operator==(const ConfigDecl& o) const {
        return count == o.count && species == o.species && total == o.total;
    }
};

struct StartDecl {
    long index = 0;
    Span span;
    bool operator==(const StartDecl& o) const { return index == o.index; }
};

struct GateDecl {
    std::string name;
    Word word;
    Span span;
    bool operator==(const GateDecl& o) const { return name == o.name && word == o.word; }
};

struct ApplyStmt {
    Word word;
    Span span;
    bool operator==(const ApplyStmt& o) const { return word == o.word; }
};

struct EmitStmt {
    enum class Kind { unitary, state };
    Kind kind = Kind::unitary;
    Span span;
    bool operator==(const EmitStmt& o) const { return kind == o.kind; }
};

struct MeasureStmt {
    long edge = 0;
    Span span;
    bool operator==(const MeasureStmt& o) const { return edge == o.edge; }
};

using Decl = std::variant<ModelDecl, ConfigDecl, StartDecl, GateDecl, ApplyStmt, EmitStmt, MeasureStmt>;

// A parsed program. Invariant (enforced by parse): exactly one model
// declaration and one config declaration; gate names are defined before use.
struct Program {
    std::vector<Decl> decls;
    bool operator==(const Program& o) const { return decls == o.decls; }

    const ModelDecl& model() const;
    const ConfigDecl& config() const;
};

// ---- Operations -----------------------------------------------------------

struct ParseResult {
    std::optional<Program> program; // set iff diagnostics is empty
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return program.has_value(); }
};

// Total function: never throws on any byte sequence.
ParseResult parse(const std::string& source);

// Canonical pretty-printing; parse(format(p)) == p structurally.
std::string format(const Program& p);

struct TypecheckOptions {
    double tol = 1e-9;          // verification tolerance for imported models
    std::string base_dir = "."; // model import paths resolve relative to this
};

// One executable step of a typechecked program.
struct TypedStmt {
    enum class Kind { apply, emit_unitary, emit_state, measure, start };
    Kind kind = Kind::apply;
    BraidWord word;       // apply: fully expanded (gates and exponents resolved)
    int edge = 0;         // measure
    long start_index = 0; // start
};

struct TypedProgram {
    Program ast;
    std::shared_ptr<const AnyonModel> model;
    Boundary boundary;
    long long dim = 0;
    std::vector<TypedStmt> stmts;
    std::vector<long long> stmt_dims; // per-statement dim (constant over a program)
};

struct TypecheckResult {
    std::optional<TypedProgram> program;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return program.has_value(); }
};

TypecheckResult typecheck(const Program& p, const TypecheckOptions& options = {});

// parse + typecheck in one step.
TypecheckResult compile(const std::string& source, const TypecheckOptions& options = {});

// ---- Evaluation -----------------------------------------------------------

struct MeasureResult {
    int edge = 0;
    // (label, probability), ascending label id, over the admissible charges.
    std::vector<std::pair<label_t, double>> probs;
};

using Emission = std::variant<Matrix, StateVector, MeasureResult>;

struct Outputs {
    std::vector<Emission> emissions;
};

// Executes a typechecked program: maintains a current state (basis 0 unless a
// start statement selects another index) and an accumulated unitary; apply
// composes via transport, emit snapshots, measure emits a Born distribution
// over one internal edge without collapsing the state.
Outputs evaluate(const TypedProgram& tp);

} // namespace tqp::lang
