#pragma once

#include <string>

#include "tqp/anyon_model.hpp"
#include "tqp/fusion_space.hpp"
#include "tqp/lang.hpp"
#include "tqp/matrix.hpp"

namespace tqp {

// All JSON emitted by this project is deterministic: object keys in sorted
// order, floating-point values with 17 significant digits ("%.17g", exact
// round trip for doubles), no whitespace dependence on locale.

std::string format_double(double v);
std::string json_escape(const std::string& s);

// {"dim": n, "entries": [[re, im], ...]} row-major.
std::string unitary_json(const Matrix& u);

// {"amplitudes": [[re, im], ...], "boundary": {"externals": [...], "model": ..., "total": ...}}
std::string state_json(const StateVector& s);

// {"distribution": [{"label": ..., "p": ...}, ...], "edge": j}
std::string measure_json(const lang::MeasureResult& m, const AnyonModel& model);

// Parses a {"dim", "entries"} document; throws ModelIoError on malformed input.
Matrix parse_unitary_json(const std::string& text);

} // namespace tqp
