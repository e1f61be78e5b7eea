#pragma once

#include <memory>
#include <vector>

#include "tqp/anyon_model.hpp"
#include "tqp/matrix.hpp"

namespace tqp {

// The classical context a state space depends on: which model, which external
// charges in which order, and the total charge sector. Positions carry no
// metric data; only the count, species and ordering matter.
struct Boundary {
    std::shared_ptr<const AnyonModel> model;
    std::vector<label_t> externals;
    label_t total = 0;

    Boundary() = default;
    // Validates N >= 1 and label membership; throws UnknownLabel / Error.
    Boundary(std::shared_ptr<const AnyonModel> model, std::vector<label_t> externals, label_t total);

    int strand_count() const { return static_cast<int>(externals.size()); }

    // Same model object, same externals, same total.
    bool same_as(const Boundary& other) const;
};

// A basis element of the fusion space in the left-comb bracketing
// (((a1 a2) a3) ...): the sequence of internal charges e_1 .. e_{N-2}.
// For N <= 2 the sequence is empty.
struct FusionTree {
    std::vector<label_t> internals;
    bool operator==(const FusionTree& other) const { return internals == other.internals; }
};

// Element of the state space over a boundary; amplitudes are aligned with the
// canonical (lexicographic) tree ordering.
struct StateVector {
    Boundary boundary;
    std::vector<cplx> amplitudes;
};

// All admissible trees, exactly once, in lexicographic order of the internal
// charge sequence. An empty result is legal (dim-0 sector).
std::vector<FusionTree> enumerate_trees(const Boundary& boundary);

// Dimension of the space, computed by the fusion-matrix product route
// (exact integer arithmetic). Always equals enumerate_trees(...).size().
long long dim(const Boundary& boundary);

// Unit vector with amplitude 1 at `index`; throws IndexOutOfRange.
StateVector basis_state(const Boundary& boundary, long long index);

// Conjugate-linear in the first argument; throws BoundaryMismatch.
cplx inner_product(const StateVector& x, const StateVector& y);

} // namespace tqp
