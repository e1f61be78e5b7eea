#include <cmath>
#include <sstream>

#include "json.hpp"
#include "model_build.hpp"
#include "tqp/anyon_model.hpp"
#include "tqp/errors.hpp"
#include "tqp/serialize.hpp"

namespace tqp {

// Interchange schema (sorted keys):
//   {"F": [{"a","b","c","d","e","f","im","re"}...],
//    "N": [[a,b,c]...],
//    "R": [{"a","b","c","im","re"}...],
//    "dual": [ids], "labels": [ids], "level": k (optional),
//    "name": "...", "unit": id}

std::string export_model_json(const AnyonModel& model) {
    const int l = model.rules.num_labels;
    std::ostringstream os;
    os << "{\"F\":[";
    bool first = true;
    for (label_t a = 0; a < l; ++a)
        for (label_t b = 0; b < l; ++b)
            for (label_t c = 0; c < l; ++c)
                for (label_t d = 0; d < l; ++d) {
                    const FBlock* block = model.f_block(a, b, c, d);
                    if (block == nullptr)
                        continue;
                    for (std::size_t re = 0; re < block->rows.size(); ++re)
                        for (std::size_t cf = 0; cf < block->cols.size(); ++cf) {
                            const cplx v = block->at(static_cast<int>(re), static_cast<int>(cf));
                            if (!first)
                                os << ",";
                            first = false;
                            os << "{\"a\":" << a << ",\"b\":" << b << ",\"c\":" << c << ",\"d\":" << d
                               << ",\"e\":" << block->rows[re] << ",\"f\":" << block->cols[cf]
                               << ",\"im\":" << format_double(v.imag())
                               << ",\"re\":" << format_double(v.real()) << "}";
                        }
                }
    os << "],\"N\":[";
    first = true;
    for (label_t a = 0; a < l; ++a)
        for (label_t b = 0; b < l; ++b)
            for (label_t c : model.rules.product(a, b)) {
                if (!first)
                    os << ",";
                first = false;
                os << "[" << a << "," << b << "," << c << "]";
            }
    os << "],\"R\":[";
    first = true;
    for (label_t a = 0; a < l; ++a)
        for (label_t b = 0; b < l; ++b)
            for (label_t c : model.rules.product(a, b)) {
                const cplx v = model.r[model.pack3(a, b, c)];
                if (!first)
                    os << ",";
                first = false;
                os << "{\"a\":" << a << ",\"b\":" << b << ",\"c\":" << c
                   << ",\"im\":" << format_double(v.imag()) << ",\"re\":" << format_double(v.real())
                   << "}";
            }
    os << "],\"dual\":[";
    for (label_t a = 0; a < l; ++a)
        os << (a ? "," : "") << model.rules.dual[a];
    os << "],\"labels\":[";
    for (label_t a = 0; a < l; ++a)
        os << (a ? "," : "") << a;
    os << "]";
    if (model.level.has_value())
        os << ",\"level\":" << *model.level;
    os << ",\"name\":\"" << json_escape(model.name) << "\",\"unit\":" << model.rules.unit << "}";
    return os.str();
}

namespace {

using nlohmann::json;

int require_int(const json& j, const char* what) {
    if (!j.is_number_integer())
        throw ModelIoError(std::string("model json: ") + what + " must be an integer");
    return j.get<int>();
}

} // namespace

AnyonModel load_model_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ModelIoError(std::string("model json: parse failure: ") + e.what());
    }
    if (!doc.is_object())
        throw ModelIoError("model json: top-level value must be an object");
    for (const char* key : {"N", "F", "R", "dual", "labels", "unit"})
        if (!doc.contains(key))
            throw ModelIoError(std::string("model json: missing required key \"") + key + "\"");

    AnyonModel model;
    model.name = doc.value("name", std::string{});
    if (doc.contains("level") && !doc["level"].is_null())
        model.level = require_int(doc["level"], "level");

    const auto& labels = doc["labels"];
    if (!labels.is_array() || labels.empty())
        throw ModelIoError("model json: labels must be a non-empty array");
    const int l = static_cast<int>(labels.size());
    for (int i = 0; i < l; ++i)
        if (require_int(labels[i], "label id") != i)
            throw ModelIoError("model json: label ids must be contiguous 0..n-1");

    FusionRules rules;
    rules.num_labels = l;
    rules.unit = require_int(doc["unit"], "unit");
    if (!rules.valid_label(rules.unit))
        throw ModelIoError("model json: unit outside the label set");
    const auto& dual = doc["dual"];
    if (!dual.is_array() || static_cast<int>(dual.size()) != l)
        throw ModelIoError("model json: dual must list one id per label");
    for (int i = 0; i < l; ++i) {
        const int d = require_int(dual[i], "dual id");
        if (d < 0 || d >= l)
            throw ModelIoError("model json: dual id outside the label set");
        rules.dual.push_back(d);
    }
    rules.n.assign(static_cast<std::size_t>(l) * l * l, 0);
    for (const auto& entry : doc["N"]) {
        if (!entry.is_array() || entry.size() != 3)
            throw ModelIoError("model json: N entries must be [a,b,c] triples");
        const int a = require_int(entry[0], "N index");
        const int b = require_int(entry[1], "N index");
        const int c = require_int(entry[2], "N index");
        if (a < 0 || a >= l || b < 0 || b >= l || c < 0 || c >= l)
            throw ModelIoError("model json: N index outside the label set");
        rules.set_N(a, b, c, 1);
    }
    rules.rebuild_products();
    model.rules = std::move(rules);

    model.label_names.resize(l);
    for (int i = 0; i < l; ++i)
        model.label_names[i] = std::to_string(i);

    detail::init_storage(model);
    // Collect F entries into blocks keyed by (a,b,c,d); row/col index sets are
    // derived from the fusion rules so gaps surface later as MissingSymbol.
    const FusionRules& r = model.rules;
    for (label_t a = 0; a < l; ++a)
        for (label_t b = 0; b < l; ++b)
            for (label_t c = 0; c < l; ++c)
                for (label_t d = 0; d < l; ++d) {
                    FBlock block;
                    for (label_t e : r.product(a, b))
                        if (r.N(e, c, d))
                            block.rows.push_back(e);
                    for (label_t f : r.product(b, c))
                        if (r.N(a, f, d))
                            block.cols.push_back(f);
                    if (block.rows.empty() || block.cols.empty())
                        continue;
                    block.m.assign(block.rows.size() * block.cols.size(), cplx(0.0, 0.0));
                    block.present.assign(block.m.size(), 0);
                    model.f_block_index[model.pack4(a, b, c, d)] =
                        static_cast<std::int32_t>(model.f_blocks.size());
                    model.f_blocks.push_back(std::move(block));
                }
    for (const auto& entry : doc["F"]) {
        if (!entry.is_object())
            throw ModelIoError("model json: F entries must be objects");
        const int a = require_int(entry.at("a"), "F index");
        const int b = require_int(entry.at("b"), "F index");
        const int c = require_int(entry.at("c"), "F index");
        const int d = require_int(entry.at("d"), "F index");
        const int e = require_int(entry.at("e"), "F index");
        const int f = require_int(entry.at("f"), "F index");
        for (int x : {a, b, c, d, e, f})
            if (x < 0 || x >= l)
                throw ModelIoError("model json: F index outside the label set");
        if (!entry.contains("re") || !entry.contains("im"))
            throw ModelIoError("model json: F entries need re and im");
        const std::int32_t idx = model.f_block_index[model.pack4(a, b, c, d)];
        if (idx < 0)
            throw ModelIoError("model json: F entry for an inadmissible tuple");
        FBlock& block = model.f_blocks[idx];
        const int re = block.row_index(e);
        const int cf = block.col_index(f);
        if (re < 0 || cf < 0)
            throw ModelIoError("model json: F entry for an inadmissible tuple");
        block.at(re, cf) = cplx(entry["re"].get<double>(), entry["im"].get<double>());
        block.present[static_cast<std::size_t>(re) * block.cols.size() + cf] = 1;
    }
    for (const auto& entry : doc["R"]) {
        if (!entry.is_object())
            throw ModelIoError("model json: R entries must be objects");
        const int a = require_int(entry.at("a"), "R index");
        const int b = require_int(entry.at("b"), "R index");
        const int c = require_int(entry.at("c"), "R index");
        for (int x : {a, b, c})
            if (x < 0 || x >= l)
                throw ModelIoError("model json: R index outside the label set");
        if (!model.rules.N(a, b, c))
            throw ModelIoError("model json: R entry for an inadmissible tuple");
        if (!entry.contains("re") || !entry.contains("im"))
            throw ModelIoError("model json: R entries need re and im");
        model.r[model.pack3(a, b, c)] = cplx(entry["re"].get<double>(), entry["im"].get<double>());
        model.r_present[model.pack3(a, b, c)] = 1;
    }
    return model;
}

AnyonModel import_model_json(const std::string& text, double tol) {
    AnyonModel model = load_model_json(text);
    check_fusion_rules(model.rules);
    const double fu = max_f_unitarity_defect(model);
    if (fu > tol) {
        std::ostringstream os;
        os << "model \"" << model.name << "\": F-block unitarity defect " << fu << " exceeds " << tol;
        throw ConsistencyError(os.str());
    }
    const ConsistencyReport pent = verify_pentagon(model, tol);
    if (!pent.pass) {
        std::ostringstream os;
        os << "model \"" << model.name << "\": pentagon residual " << pent.max_residual
           << " exceeds " << tol;
        throw ConsistencyError(os.str());
    }
    const ConsistencyReport hex = verify_hexagon(model, tol);
    if (!hex.pass) {
        std::ostringstream os;
        os << "model \"" << model.name << "\": hexagon residual " << hex.max_residual << " exceeds "
           << tol;
        throw ConsistencyError(os.str());
    }
    for (label_t a = 0; a < model.rules.num_labels; ++a)
        for (label_t b = 0; b < model.rules.num_labels; ++b)
            for (label_t c : model.rules.product(a, b)) {
                const double mod = std::abs(model.r_symbol(a, b, c));
                if (std::abs(mod - 1.0) > 1e-12) {
                    std::ostringstream os;
                    os << "model \"" << model.name << "\": |R(" << a << "," << b << "," << c
                       << ")| deviates from 1 by " << std::abs(mod - 1.0);
                    throw ConsistencyError(os.str());
                }
            }
    return model;
}

} // namespace tqp
