#pragma once

#include <vector>

#include "tqp/fusion_space.hpp"
#include "tqp/matrix.hpp"

namespace tqp {

// A signed Artin generator: sigma_i exchanges strands i and i+1,
// 1 <= i <= strand_count - 1. sign is +1 or -1.
struct BraidLetter {
    int index = 1;
    int sign = +1;
    bool operator==(const BraidLetter& other) const {
        return index == other.index && sign == other.sign;
    }
};

struct BraidWord {
    int strand_count = 0;
    std::vector<BraidLetter> letters;

    static BraidWord empty(int strand_count) { return BraidWord{strand_count, {}}; }

    // Reversed letters with flipped signs.
    BraidWord inverse() const;

    // this followed by other; strand counts must agree.
    BraidWord concat(const BraidWord& other) const;

    bool operator==(const BraidWord& other) const {
        return strand_count == other.strand_count && letters == other.letters;
    }
};

// The braid generator matrix in the left-comb basis: diagonal R phases for
// i = 1, the F-conjugated R action on the internal charge e_{i-1} for i >= 2.
// Results are memoized per (boundary, i, sign); the cache is thread-safe and
// semantically invisible. Throws IndexOutOfRange for a bad i and EmptyType
// when dim(boundary) = 0.
Matrix sigma_matrix(const Boundary& boundary, int i, int sign);

// Ordered product of generator matrices under the convention
// U(w1 then w2) = U(w2) . U(w1); the empty word gives the identity.
// Throws BoundaryMismatch when strand counts disagree.
Matrix braid_unitary(const Boundary& boundary, const BraidWord& word);

// Transport of a state along a braid word. Norm-preserving; the boundary is
// unchanged (total charge is conserved by construction).
StateVector transport(const StateVector& state, const BraidWord& word);

// Max residuals of the braid relations over one boundary, in max-entry norm.
struct RelationReport {
    double yang_baxter = 0.0;     // sigma_i sigma_{i+1} sigma_i vs sigma_{i+1} sigma_i sigma_{i+1}
    double far_commutation = 0.0; // [sigma_i, sigma_j] for |i-j| >= 2
    double unitarity = 0.0;       // max-entry |sigma† sigma - I|
};

RelationReport relation_residuals(const Boundary& boundary);

namespace detail {
// Uncached construction path, exposed so tests can check that memoization
// does not change results.
Matrix sigma_matrix_uncached(const Boundary& boundary, int i, int sign);
} // namespace detail

} // namespace tqp
