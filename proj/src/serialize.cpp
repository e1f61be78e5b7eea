#include "tqp/serialize.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "tqp/errors.hpp"

namespace tqp {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out.push_back(static_cast<char>(c));
            }
        }
    }
    return out;
}

namespace {

void append_complex_pair(std::ostringstream& os, const cplx& v) {
    os << "[" << format_double(v.real()) << "," << format_double(v.imag()) << "]";
}

} // namespace

std::string unitary_json(const Matrix& u) {
    std::ostringstream os;
    os << "{\"dim\":" << u.rows() << ",\"entries\":[";
    bool first = true;
    for (int i = 0; i < u.rows(); ++i)
        for (int j = 0; j < u.cols(); ++j) {
            if (!first)
                os << ",";
            first = false;
            append_complex_pair(os, u(i, j));
        }
    os << "]}";
    return os.str();
}

std::string state_json(const StateVector& s) {
    std::ostringstream os;
    os << "{\"amplitudes\":[";
    bool first = true;
    for (const cplx& a : s.amplitudes) {
        if (!first)
            os << ",";
        first = false;
        append_complex_pair(os, a);
    }
    os << "],\"boundary\":{\"externals\":[";
    first = true;
    for (label_t a : s.boundary.externals) {
        if (!first)
            os << ",";
        first = false;
        os << "\"" << json_escape(s.boundary.model->label_name(a)) << "\"";
    }
    os << "],\"model\":\"" << json_escape(s.boundary.model->name) << "\",\"total\":\""
       << json_escape(s.boundary.model->label_name(s.boundary.total)) << "\"}}";
    return os.str();
}

std::string measure_json(const lang::MeasureResult& m, const AnyonModel& model) {
    std::ostringstream os;
    os << "{\"distribution\":[";
    bool first = true;
    for (const auto& [label, p] : m.probs) {
        if (!first)
            os << ",";
        first = false;
        os << "{\"label\":\"" << json_escape(model.label_name(label))
           << "\",\"p\":" << format_double(p) << "}";
    }
    os << "],\"edge\":" << m.edge << "}";
    return os.str();
}

Matrix parse_unitary_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ModelIoError(std::string("unitary json: parse failure: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries"))
        throw ModelIoError("unitary json: expected an object with dim and entries");
    if (!doc["dim"].is_number_integer())
        throw ModelIoError("unitary json: dim must be an integer");
    const int n = doc["dim"].get<int>();
    if (n < 1 || n > 4096)
        throw ModelIoError("unitary json: dim outside 1..4096");
    const auto& entries = doc["entries"];
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(n) * n)
        throw ModelIoError("unitary json: entries must hold dim*dim [re,im] pairs");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& pair = entries[static_cast<std::size_t>(i) * n + j];
            if (!pair.is_array() || pair.size() != 2)
                throw ModelIoError("unitary json: each entry must be an [re,im] pair");
            m(i, j) = cplx(pair[0].get<double>(), pair[1].get<double>());
        }
    return m;
}

} // namespace tqp
