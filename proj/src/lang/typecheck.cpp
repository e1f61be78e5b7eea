#include <fstream>
#include <map>
#include <sstream>

#include "tqp/errors.hpp"
#include "tqp/lang.hpp"

namespace tqp::lang {

namespace {

constexpr long long kMaxDim = 4096;
constexpr long kMaxStrands = 256;
constexpr std::size_t kMaxExpandedLetters = 1000000;

Diagnostic make_diag(DiagCode code, Span span, std::string message) {
    return Diagnostic{code, std::move(message), span};
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return false;
    std::ostringstream os;
    os << in.rdbuf();
    out = os.str();
    return true;
}

std::string join_path(const std::string& base, const std::string& rel) {
    if (rel.empty() || rel.front() == '/' || base.empty())
        return rel;
    if (base.back() == '/')
        return base + rel;
    return base + "/" + rel;
}

// Expands one atom into generator letters, honoring the exponent sign.
// Returns false (with a diagnostic) on unknown names, bad indices, or when
// the expansion exceeds the letter cap.
struct WordExpander {
    const std::map<std::string, BraidWord>& gates;
    int strand_count;
    std::vector<Diagnostic>& diags;

    bool expand_atom(const Atom& atom, BraidWord& out) {
        BraidWord base;
        base.strand_count = strand_count;
        if (atom.is_sigma) {
            if (atom.sigma_index < 1 || atom.sigma_index > strand_count - 1) {
                std::ostringstream os;
                os << "strand index s" << atom.sigma_index << " outside 1.." << strand_count - 1;
                diags.push_back(make_diag(DiagCode::E102, atom.span, os.str()));
                return false;
            }
            base.letters.push_back(BraidLetter{atom.sigma_index, +1});
        } else {
            const auto found = gates.find(atom.name);
            if (found == gates.end()) {
                diags.push_back(make_diag(DiagCode::E101, atom.span,
                                          "unknown gate name \"" + atom.name + "\""));
                return false;
            }
            base = found->second;
        }
        const long exponent = atom.exponent;
        const BraidWord step = exponent >= 0 ? base : base.inverse();
        const unsigned long count = exponent >= 0 ? static_cast<unsigned long>(exponent)
                                                  : static_cast<unsigned long>(-(long long)exponent);
        const unsigned long long total =
            static_cast<unsigned long long>(count) * step.letters.size() + out.letters.size();
        if (total > kMaxExpandedLetters) {
            diags.push_back(make_diag(DiagCode::E103, atom.span,
                                      "expanded braid word exceeds the letter cap"));
            return false;
        }
        for (unsigned long rep = 0; rep < count; ++rep)
            out.letters.insert(out.letters.end(), step.letters.begin(), step.letters.end());
        return true;
    }

    bool expand_word(const Word& word, BraidWord& out) {
        out.strand_count = strand_count;
        for (const Atom& atom : word.atoms)
            if (!expand_atom(atom, out))
                return false;
        return true;
    }
};

} // namespace

TypecheckResult typecheck(const Program& p, const TypecheckOptions& options) {
    TypecheckResult result;
    auto fail = [&](DiagCode code, Span span, std::string message) {
        result.diagnostics.push_back(make_diag(code, span, std::move(message)));
    };

    // Resolve the model first: label checks depend on it.
    const ModelDecl& model_decl = p.model();
    std::shared_ptr<const AnyonModel> model;
    if (model_decl.is_path) {
        const std::string path = join_path(options.base_dir, model_decl.name_or_path);
        std::string text;
        if (!read_file(path, text)) {
            fail(DiagCode::E104, model_decl.span, "cannot read model file \"" + path + "\"");
            return result;
        }
        try {
            model = std::make_shared<AnyonModel>(import_model_json(text, options.tol));
        } catch (const Error& e) {
            fail(DiagCode::E104, model_decl.span, e.what());
            return result;
        }
    } else {
        std::optional<AnyonModel> named = named_model(model_decl.name_or_path);
        if (!named.has_value()) {
            fail(DiagCode::E101, model_decl.span,
                 "unknown model name \"" + model_decl.name_or_path + "\"");
            return result;
        }
        model = std::make_shared<AnyonModel>(std::move(*named));
    }

    const ConfigDecl& config = p.config();
    if (config.count < 1 || config.count > kMaxStrands) {
        std::ostringstream os;
        os << "strand count " << config.count << " outside 1.." << kMaxStrands;
        fail(DiagCode::E102, config.span, os.str());
        return result;
    }
    const std::optional<label_t> species = model->label_by_name(config.species);
    if (!species.has_value()) {
        fail(DiagCode::E101, config.species_span,
             "unknown label \"" + config.species + "\" in model " + model->name);
        return result;
    }
    const std::optional<label_t> total = model->label_by_name(config.total);
    if (!total.has_value()) {
        fail(DiagCode::E101, config.total_span,
             "unknown label \"" + config.total + "\" in model " + model->name);
        return result;
    }

    Boundary boundary(model, std::vector<label_t>(static_cast<std::size_t>(config.count), *species),
                      *total);
    const long long d = dim(boundary);
    if (d == 0) {
        fail(DiagCode::E103, config.span, "the configured sector has dimension 0 (empty type)");
        return result;
    }
    if (d > kMaxDim) {
        std::ostringstream os;
        os << "the configured sector has dimension " << d << " above the cap " << kMaxDim;
        fail(DiagCode::E103, config.span, os.str());
        return result;
    }

    TypedProgram tp;
    tp.ast = p;
    tp.model = model;
    tp.boundary = boundary;
    tp.dim = d;

    std::map<std::string, BraidWord> gates;
    WordExpander expander{gates, boundary.strand_count(), result.diagnostics};

    for (const Decl& decl : p.decls) {
        if (const auto* gate = std::get_if<GateDecl>(&decl)) {
            BraidWord expanded;
            if (expander.expand_word(gate->word, expanded))
                gates[gate->name] = std::move(expanded); // later definitions shadow earlier ones
        } else if (const auto* stmt = std::get_if<ApplyStmt>(&decl)) {
            BraidWord expanded;
            if (expander.expand_word(stmt->word, expanded)) {
                TypedStmt ts;
                ts.kind = TypedStmt::Kind::apply;
                ts.word = std::move(expanded);
                tp.stmts.push_back(std::move(ts));
            }
        } else if (const auto* emit = std::get_if<EmitStmt>(&decl)) {
            TypedStmt ts;
            ts.kind = emit->kind == EmitStmt::Kind::unitary ? TypedStmt::Kind::emit_unitary
                                                            : TypedStmt::Kind::emit_state;
            ts.word.strand_count = boundary.strand_count();
            tp.stmts.push_back(std::move(ts));
        } else if (const auto* measure = std::get_if<MeasureStmt>(&decl)) {
            const long max_edge = config.count - 2;
            if (measure->edge < 1 || measure->edge > max_edge) {
                std::ostringstream os;
                os << "edge index " << measure->edge << " outside 1.." << std::max<long>(max_edge, 0);
                fail(DiagCode::E102, measure->span, os.str());
                continue;
            }
            TypedStmt ts;
            ts.kind = TypedStmt::Kind::measure;
            ts.word.strand_count = boundary.strand_count();
            ts.edge = static_cast<int>(measure->edge);
            tp.stmts.push_back(std::move(ts));
        } else if (const auto* start = std::get_if<StartDecl>(&decl)) {
            if (start->index < 0 || start->index >= d) {
                std::ostringstream os;
                os << "start index " << start->index << " outside 0.." << d - 1;
                fail(DiagCode::E102, start->span, os.str());
                continue;
            }
            TypedStmt ts;
            ts.kind = TypedStmt::Kind::start;
            ts.word.strand_count = boundary.strand_count();
            ts.start_index = start->index;
            tp.stmts.push_back(std::move(ts));
        }
    }

    if (!result.diagnostics.empty())
        return result;
    tp.stmt_dims.assign(tp.stmts.size(), d);
    result.program = std::move(tp);
    return result;
}

TypecheckResult compile(const std::string& source, const TypecheckOptions& options) {
    ParseResult parsed = parse(source);
    if (!parsed.ok()) {
        TypecheckResult result;
        result.diagnostics = std::move(parsed.diagnostics);
        return result;
    }
    return typecheck(*parsed.program, options);
}

} // namespace tqp::lang
