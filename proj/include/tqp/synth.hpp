#pragma once

#include <string>

#include "tqp/braiding.hpp"
#include "tqp/fusion_space.hpp"
#include "tqp/matrix.hpp"

namespace tqp::synth {

struct SynthResult {
    BraidWord word;
    double distance = 0.0;
    unsigned long long explored = 0; // candidate words whose distance was evaluated
    int depth_reached = 0;
};

// Global-phase-invariant metric: sqrt(max(0, 1 - |tr(U†V)|/n)).
// Throws DimensionMismatch for unequal or non-square shapes.
double distance(const Matrix& u, const Matrix& v);

struct SearchOptions {
    bool parallel = false;
};

// Iterative-deepening search over words of length 0..max_len on the
// 2(N-1)-letter alphabet s1 < s1^-1 < s2 < ..., skipping immediate inverse
// pairs. Returns the first word (in enumeration order) with distance <= tol,
// else the best found; ties resolve to shorter length, then lexicographically
// smaller letter sequence. The result is identical for serial and parallel
// runs. Throws DimensionMismatch; max_len must be <= 14.
SynthResult brute_force_synth(const Boundary& boundary, const Matrix& target, int max_len,
                              double tol, const SearchOptions& options = {});

// Solovay-Kitaev refinement on 2-dimensional sectors: recursive balanced
// group-commutator correction seeded by brute_force_synth at every leaf.
// depth 0 returns the seed unchanged; depth <= 3. Word length grows by at
// most 5^depth. Throws NotAQubitSector and SeedTooCoarse (seed distance
// >= 0.5).
SynthResult sk_refine(const Boundary& boundary, const Matrix& target, int basic_max_len,
                      double basic_tol, int depth);

// Named 2x2 targets accepted by the CLI: "X", "Z", "H", "iX".
Matrix preset_target(const std::string& name);

} // namespace tqp::synth
