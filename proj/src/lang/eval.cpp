#include <map>

#include "tqp/braiding.hpp"
#include "tqp/lang.hpp"

namespace tqp::lang {

namespace {

// Born distribution over the internal charge e_j: |amplitude|^2 summed over
// basis trees grouped by their value at edge j. Non-collapsing.
MeasureResult measure_edge(const StateVector& state, const std::vector<FusionTree>& trees, int edge) {
    MeasureResult out;
    out.edge = edge;
    std::map<label_t, double> grouped;
    for (std::size_t t = 0; t < trees.size(); ++t) {
        const label_t value = trees[t].internals[static_cast<std::size_t>(edge) - 1];
        grouped[value] += std::norm(state.amplitudes[t]);
    }
    out.probs.assign(grouped.begin(), grouped.end());
    return out;
}

} // namespace

Outputs evaluate(const TypedProgram& tp) {
    Outputs outputs;
    const Boundary& boundary = tp.boundary;
    const int d = static_cast<int>(tp.dim);

    StateVector state = basis_state(boundary, 0);
    Matrix accumulated = Matrix::identity(d);
    const std::vector<FusionTree> trees = enumerate_trees(boundary);

    for (const TypedStmt& stmt : tp.stmts) {
        switch (stmt.kind) {
        case TypedStmt::Kind::apply:
            state = transport(state, stmt.word);
            accumulated = braid_unitary(boundary, stmt.word) * accumulated;
            break;
        case TypedStmt::Kind::emit_unitary:
            outputs.emissions.emplace_back(accumulated);
            break;
        case TypedStmt::Kind::emit_state:
            outputs.emissions.emplace_back(state);
            break;
        case TypedStmt::Kind::measure:
            outputs.emissions.emplace_back(measure_edge(state, trees, stmt.edge));
            break;
        case TypedStmt::Kind::start:
            state = basis_state(boundary, stmt.start_index);
            break;
        }
    }
    return outputs;
}

} // namespace tqp::lang
