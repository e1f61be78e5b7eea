#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tqp/anyon_model.hpp"
#include "tqp/braiding.hpp"
#include "tqp/errors.hpp"
#include "tqp/fusion_space.hpp"
#include "tqp/lang.hpp"
#include "tqp/serialize.hpp"
#include "tqp/synth.hpp"

namespace {

using namespace tqp;

const char* kUsage =
    "usage: tqp <command> [arguments] [options]\n"
    "\n"
    "commands:\n"
    "  model <name|path>                          inspect and verify an anyon model\n"
    "  check <file.tqp|->                         parse and type-check a program\n"
    "  run   <file.tqp|->                         execute a program, print its emissions\n"
    "  synth <name|path> <N> <species> <total> <target>\n"
    "                                             search for a braid word realizing the\n"
    "                                             target (X, Z, H, iX, a JSON file, or -)\n"
    "\n"
    "options:\n"
    "  --tol <real>      verification / search tolerance (default 1e-9)\n"
    "  --emit <kind>     run: filter emissions (unitary|state|measure);\n"
    "                    model: print the full model JSON document (model)\n"
    "  --format <fmt>    output format: text or json (default text)\n"
    "  --max-len <int>   synthesis search depth cap, 0..14 (default 8)\n"
    "  --output <path>   write the stdout payload to a file\n";

struct Flags {
    double tol = 1e-9;
    std::string emit;
    std::string format = "text";
    int max_len = 8;
    std::string output;
};

int usage_error(const std::string& message) {
    if (!message.empty())
        std::fprintf(stderr, "error: %s\n", message.c_str());
    std::fputs(kUsage, stderr);
    return 2;
}

bool parse_double(const std::string& text, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(text, &used);
        return used == text.size();
    } catch (...) {
        return false;
    }
}

bool parse_int(const std::string& text, int& out) {
    try {
        std::size_t used = 0;
        out = std::stoi(text, &used);
        return used == text.size();
    } catch (...) {
        return false;
    }
}

bool read_file_or_stdin(const std::string& path, std::string& out) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        out = os.str();
        return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return false;
    std::ostringstream os;
    os << in.rdbuf();
    out = os.str();
    return true;
}

std::string dirname_of(const std::string& path) {
    const std::size_t slash = path.find_last_of('/');
    if (slash == std::string::npos)
        return ".";
    if (slash == 0)
        return "/";
    return path.substr(0, slash);
}

int emit_payload(const Flags& flags, const std::string& payload) {
    if (flags.output.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return 0;
    }
    std::ofstream out(flags.output, std::ios::binary);
    if (!out) {
        std::fprintf(stderr, "error: cannot write \"%s\"\n", flags.output.c_str());
        return 1;
    }
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    return 0;
}

// Loads a model by built-in name or file path. Throws tqp::Error subclasses.
std::shared_ptr<const AnyonModel> resolve_model(const std::string& name_or_path, double tol) {
    std::optional<AnyonModel> named = named_model(name_or_path);
    if (named.has_value())
        return std::make_shared<AnyonModel>(std::move(*named));
    std::string text;
    if (!read_file_or_stdin(name_or_path, text))
        throw ModelIoError("unknown model name and unreadable path \"" + name_or_path + "\"");
    return std::make_shared<AnyonModel>(import_model_json(text, tol));
}

std::string render_complex(const cplx& v) {
    return "(" + format_double(v.real()) + "," + format_double(v.imag()) + ")";
}

std::string render_word_text(const BraidWord& word) {
    if (word.letters.empty())
        return "(empty)";
    std::string out;
    for (std::size_t i = 0; i < word.letters.size(); ++i) {
        if (i)
            out += " ";
        out += "s" + std::to_string(word.letters[i].index);
        if (word.letters[i].sign < 0)
            out += "^-1";
    }
    return out;
}

std::string render_word_plain(const BraidWord& word) {
    std::string out;
    for (std::size_t i = 0; i < word.letters.size(); ++i) {
        if (i)
            out += " ";
        out += "s" + std::to_string(word.letters[i].index);
        if (word.letters[i].sign < 0)
            out += "^-1";
    }
    return out;
}

void render_diagnostics(const std::vector<lang::Diagnostic>& diags, const std::string& file,
                        const Flags& flags, std::string& payload) {
    for (const lang::Diagnostic& d : diags) {
        if (flags.format == "json") {
            std::ostringstream os;
            os << "{\"code\":\"" << lang::diag_code_name(d.code) << "\",\"col\":" << d.span.col
               << ",\"len\":" << d.span.len << ",\"line\":" << d.span.line << ",\"message\":\""
               << json_escape(d.message) << "\"}\n";
            payload += os.str();
        } else {
            std::fprintf(stderr, "%s:%d:%d: error[%s]: %s\n", file.c_str(), d.span.line, d.span.col,
                         lang::diag_code_name(d.code), d.message.c_str());
        }
    }
}

int cmd_model(const std::string& name_or_path, const Flags& flags) {
    std::shared_ptr<const AnyonModel> model;
    try {
        model = resolve_model(name_or_path, flags.tol);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    if (flags.emit == "model") {
        const int rc = emit_payload(flags, export_model_json(*model) + "\n");
        return rc;
    }

    const ConsistencyReport pentagon = verify_pentagon(*model, flags.tol);
    const ConsistencyReport hexagon = verify_hexagon(*model, flags.tol);
    const double defect = max_f_unitarity_defect(*model);
    const bool pass = pentagon.pass && hexagon.pass && defect <= flags.tol;
    std::vector<double> dims;
    dims.reserve(static_cast<std::size_t>(model->num_labels()));
    for (label_t a = 0; a < model->num_labels(); ++a)
        dims.push_back(quantum_dimension(*model, a));

    std::string payload;
    if (flags.format == "json") {
        std::ostringstream os;
        os << "{\"hexagon_residual\":" << format_double(hexagon.max_residual) << ",\"labels\":[";
        for (label_t a = 0; a < model->num_labels(); ++a)
            os << (a ? "," : "") << "\"" << json_escape(model->label_name(a)) << "\"";
        os << "]";
        if (model->level.has_value())
            os << ",\"level\":" << *model->level;
        os << ",\"name\":\"" << json_escape(model->name) << "\",\"pass\":" << (pass ? "true" : "false")
           << ",\"pentagon_residual\":" << format_double(pentagon.max_residual)
           << ",\"quantum_dimensions\":[";
        for (std::size_t i = 0; i < dims.size(); ++i)
            os << (i ? "," : "") << format_double(dims[i]);
        os << "],\"unit\":\"" << json_escape(model->label_name(model->rules.unit))
           << "\",\"unitarity_defect\":" << format_double(defect) << "}\n";
        payload = os.str();
    } else {
        std::ostringstream os;
        os << "model: " << model->name << "\n";
        if (model->level.has_value())
            os << "level: " << *model->level << "\n";
        os << "unit: " << model->label_name(model->rules.unit) << "\n";
        os << "labels:";
        for (label_t a = 0; a < model->num_labels(); ++a)
            os << " " << model->label_name(a);
        os << "\nquantum dimensions:\n";
        for (label_t a = 0; a < model->num_labels(); ++a)
            os << "  " << model->label_name(a) << " " << format_double(dims[a]) << "\n";
        os << "pentagon residual: " << format_double(pentagon.max_residual) << "\n";
        os << "hexagon residual: " << format_double(hexagon.max_residual) << "\n";
        os << "f-unitarity defect: " << format_double(defect) << "\n";
        os << "status: " << (pass ? "ok" : "FAIL") << "\n";
        payload = os.str();
    }
    const int rc = emit_payload(flags, payload);
    if (rc != 0)
        return rc;
    return pass ? 0 : 1;
}

int cmd_check(const std::string& file, const Flags& flags) {
    std::string source;
    if (!read_file_or_stdin(file, source)) {
        std::fprintf(stderr, "error: cannot read \"%s\"\n", file.c_str());
        return 1;
    }
    lang::TypecheckOptions options;
    options.tol = flags.tol;
    options.base_dir = file == "-" ? "." : dirname_of(file);
    const lang::TypecheckResult result = lang::compile(source, options);
    std::string payload;
    render_diagnostics(result.diagnostics, file, flags, payload);
    const int rc = emit_payload(flags, payload);
    if (rc != 0)
        return rc;
    return result.ok() ? 0 : 1;
}

int cmd_run(const std::string& file, const Flags& flags) {
    std::string source;
    if (!read_file_or_stdin(file, source)) {
        std::fprintf(stderr, "error: cannot read \"%s\"\n", file.c_str());
        return 1;
    }
    lang::TypecheckOptions options;
    options.tol = flags.tol;
    options.base_dir = file == "-" ? "." : dirname_of(file);
    const lang::TypecheckResult result = lang::compile(source, options);
    if (!result.ok()) {
        std::string payload;
        render_diagnostics(result.diagnostics, file, flags, payload);
        emit_payload(flags, payload);
        return 1;
    }
    const lang::TypedProgram& tp = *result.program;
    const lang::Outputs outputs = lang::evaluate(tp);

    std::string payload;
    for (const lang::Emission& emission : outputs.emissions) {
        if (const auto* u = std::get_if<Matrix>(&emission)) {
            if (!flags.emit.empty() && flags.emit != "unitary")
                continue;
            if (flags.format == "json") {
                payload += unitary_json(*u) + "\n";
            } else {
                payload += "unitary dim=" + std::to_string(u->rows()) + "\n";
                for (int i = 0; i < u->rows(); ++i) {
                    for (int j = 0; j < u->cols(); ++j)
                        payload += (j ? " " : "") + render_complex((*u)(i, j));
                    payload += "\n";
                }
            }
        } else if (const auto* s = std::get_if<StateVector>(&emission)) {
            if (!flags.emit.empty() && flags.emit != "state")
                continue;
            if (flags.format == "json") {
                payload += state_json(*s) + "\n";
            } else {
                payload += "state dim=" + std::to_string(s->amplitudes.size()) + "\n";
                for (const cplx& a : s->amplitudes)
                    payload += render_complex(a) + "\n";
            }
        } else if (const auto* m = std::get_if<lang::MeasureResult>(&emission)) {
            if (!flags.emit.empty() && flags.emit != "measure")
                continue;
            if (flags.format == "json") {
                payload += measure_json(*m, *tp.model) + "\n";
            } else {
                payload += "measure edge=" + std::to_string(m->edge) + "\n";
                for (const auto& [label, p] : m->probs)
                    payload += tp.model->label_name(label) + " " + format_double(p) + "\n";
            }
        }
    }
    return emit_payload(flags, payload);
}

int cmd_synth(const std::vector<std::string>& args, const Flags& flags) {
    const std::string& model_arg = args[0];
    int strands = 0;
    if (!parse_int(args[1], strands) || strands < 1)
        return usage_error("synth: <N> must be a positive integer");
    const std::string& species_name = args[2];
    const std::string& total_name = args[3];
    const std::string& target_arg = args[4];

    std::shared_ptr<const AnyonModel> model;
    try {
        model = resolve_model(model_arg, flags.tol);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    const std::optional<label_t> species = model->label_by_name(species_name);
    if (!species.has_value()) {
        std::fprintf(stderr, "error: unknown label \"%s\" in model %s\n", species_name.c_str(),
                     model->name.c_str());
        return 1;
    }
    const std::optional<label_t> total = model->label_by_name(total_name);
    if (!total.has_value()) {
        std::fprintf(stderr, "error: unknown label \"%s\" in model %s\n", total_name.c_str(),
                     model->name.c_str());
        return 1;
    }
    Boundary boundary(model, std::vector<label_t>(static_cast<std::size_t>(strands), *species),
                      *total);

    Matrix target;
    if (target_arg == "X" || target_arg == "Z" || target_arg == "H" || target_arg == "iX") {
        target = synth::preset_target(target_arg);
    } else {
        std::string text;
        if (!read_file_or_stdin(target_arg, text)) {
            std::fprintf(stderr, "error: cannot read target \"%s\"\n", target_arg.c_str());
            return 1;
        }
        target = parse_unitary_json(text);
    }

    const synth::SynthResult result =
        synth::brute_force_synth(boundary, target, flags.max_len, flags.tol);

    std::string payload;
    if (flags.format == "json") {
        std::ostringstream os;
        os << "{\"depth_reached\":" << result.depth_reached
           << ",\"distance\":" << format_double(result.distance)
           << ",\"explored\":" << result.explored << ",\"length\":" << result.word.letters.size()
           << ",\"word\":\"" << json_escape(render_word_plain(result.word)) << "\"}\n";
        payload = os.str();
    } else {
        std::ostringstream os;
        os << "word: " << render_word_text(result.word) << "\n";
        os << "length: " << result.word.letters.size() << "\n";
        os << "distance: " << format_double(result.distance) << "\n";
        os << "explored: " << result.explored << "\n";
        os << "depth_reached: " << result.depth_reached << "\n";
        payload = os.str();
    }
    return emit_payload(flags, payload);
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty())
        return usage_error("missing command");

    const std::string command = args[0];
    std::vector<std::string> positionals;
    Flags flags;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& arg = args[i];
        auto value = [&]() -> std::optional<std::string> {
            if (i + 1 >= args.size())
                return std::nullopt;
            return args[++i];
        };
        if (arg == "--tol") {
            const auto v = value();
            if (!v || !parse_double(*v, flags.tol))
                return usage_error("--tol needs a real value");
        } else if (arg == "--emit") {
            const auto v = value();
            if (!v)
                return usage_error("--emit needs a value");
            flags.emit = *v;
            if (flags.emit != "unitary" && flags.emit != "state" && flags.emit != "measure" &&
                flags.emit != "model")
                return usage_error("--emit must be unitary, state, measure or model");
        } else if (arg == "--format") {
            const auto v = value();
            if (!v)
                return usage_error("--format needs a value");
            flags.format = *v;
            if (flags.format != "text" && flags.format != "json")
                return usage_error("--format must be text or json");
        } else if (arg == "--max-len") {
            const auto v = value();
            if (!v || !parse_int(*v, flags.max_len) || flags.max_len < 0 || flags.max_len > 14)
                return usage_error("--max-len must be an integer in 0..14");
        } else if (arg == "--output") {
            const auto v = value();
            if (!v)
                return usage_error("--output needs a value");
            flags.output = *v;
        } else if (arg.rfind("--", 0) == 0) {
            return usage_error("unknown flag \"" + arg + "\"");
        } else {
            positionals.push_back(arg);
        }
    }

    try {
        if (command == "model") {
            if (positionals.size() != 1)
                return usage_error("model takes exactly one argument");
            if (!flags.emit.empty() && flags.emit != "model")
                return usage_error("model only supports --emit model");
            return cmd_model(positionals[0], flags);
        }
        if (command == "check") {
            if (positionals.size() != 1)
                return usage_error("check takes exactly one argument");
            if (flags.emit == "model")
                return usage_error("--emit model is only valid for the model command");
            return cmd_check(positionals[0], flags);
        }
        if (command == "run") {
            if (positionals.size() != 1)
                return usage_error("run takes exactly one argument");
            if (flags.emit == "model")
                return usage_error("--emit model is only valid for the model command");
            return cmd_run(positionals[0], flags);
        }
        if (command == "synth") {
            if (positionals.size() != 5)
                return usage_error("synth takes <model> <N> <species> <total> <target>");
            if (!flags.emit.empty())
                return usage_error("--emit is not valid for the synth command");
            return cmd_synth(positionals, flags);
        }
        return usage_error("unknown command \"" + command + "\"");
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
