#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tqp/matrix.hpp"

namespace tqp {

// Anyon charges are small non-negative integer ids. For su(2)_k models the id
// of a label is 2j, so the label set is {0, ..., k} and admissibility
// conditions are integer inequalities plus a parity constraint.
using label_t = int;

// Multiplicity-free fusion rules: N(a,b,c) is 0 or 1.
struct FusionRules {
    int num_labels = 0;
    label_t unit = 0;
    std::vector<label_t> dual;     // involutive map, indexed by label id
    std::vector<std::uint8_t> n;   // num_labels^3 table, N(a,b,c)

    // products[a * num_labels + b] lists the c with N(a,b,c) = 1, ascending.
    std::vector<std::vector<label_t>> products;

    bool valid_label(label_t a) const { return a >= 0 && a < num_labels; }
    void check_label(label_t a) const; // throws UnknownLabel

    int N(label_t a, label_t b, label_t c) const;
    void set_N(label_t a, label_t b, label_t c, int value);
    const std::vector<label_t>& product(label_t a, label_t b) const;

    // Fills `products` from `n`; call once after the table is complete.
    void rebuild_products();
};

// One recoupling block [F^{abc}_d]: a small unitary matrix whose rows run
// over the admissible charges e of (ab) and whose columns run over the
// admissible charges f of (bc).
struct FBlock {
    std::vector<label_t> rows;
    std::vector<label_t> cols;
    std::vector<cplx> m;                  // row-major, rows.size() x cols.size()
    std::vector<std::uint8_t> present;    // parallel to m; 0 marks an absent entry

    int row_index(label_t e) const;
    int col_index(label_t f) const;
    cplx at(int r, int c) const { return m[static_cast<std::size_t>(r) * cols.size() + c]; }
    cplx& at(int r, int c) { return m[static_cast<std::size_t>(r) * cols.size() + c]; }
    bool has(int r, int c) const { return present[static_cast<std::size_t>(r) * cols.size() + c] != 0; }
    Matrix as_matrix() const;
};

// A unitary multiplicity-free fusion category presented by tables: fusion
// rules plus F- and R-symbols in one fixed gauge. Values are immutable after
// construction and safe for concurrent shared reads.
struct AnyonModel {
    std::string name;
    std::optional<int> level;
    FusionRules rules;
    std::vector<std::string> label_names;

    // F blocks indexed by packed (a,b,c,d); -1 where no admissible (e,f).
    std::vector<std::int32_t> f_block_index;
    std::vector<FBlock> f_blocks;

    // R symbols indexed by packed (a,b,c), defined where N(a,b,c) = 1.
    std::vector<cplx> r;
    std::vector<std::uint8_t> r_present;

    int num_labels() const { return rules.num_labels; }

    std::size_t pack3(label_t a, label_t b, label_t c) const;
    std::size_t pack4(label_t a, label_t b, label_t c, label_t d) const;

    // Block accessor; nullptr when (a,b,c,d) has no admissible (e,f).
    const FBlock* f_block(label_t a, label_t b, label_t c, label_t d) const;

    // [F^{abc}_d]_{ef}. Returns 0 for inadmissible index tuples; throws
    // MissingSymbol when the tuple is admissible but absent from the table.
    cplx f_symbol(label_t a, label_t b, label_t c, label_t d, label_t e, label_t f) const;

    // R^{ab}_c. Throws MissingSymbol when N(a,b,c) = 1 but no value is stored,
    // UnknownLabel for ids outside the label set.
    cplx r_symbol(label_t a, label_t b, label_t c) const;

    std::optional<label_t> label_by_name(const std::string& name) const;
    const std::string& label_name(label_t a) const;
};

// Result of a coherence check. `worst` is the index tuple attaining the
// maximal residual: (a,b,c,d,e,p,q,s,u) for the pentagon and
// (a,b,c,d,e,g,chirality) for the hexagon. Reports are deterministic:
// identical inputs give bit-identical reports.
struct ConsistencyReport {
    double max_residual = 0.0;
    std::vector<label_t> worst;
    bool pass = true;
};

// Named model constructors.
AnyonModel su2k_model(int k);     // throws LevelOutOfRange unless 1 <= k <= 16
AnyonModel fibonacci_model();
AnyonModel ising_model();

// Coherence verifiers. Pure functions of the model tables.
ConsistencyReport verify_pentagon(const AnyonModel& model, double tol = 1e-9);
ConsistencyReport verify_hexagon(const AnyonModel& model, double tol = 1e-9);

// Max-entry norm of (F†F - I) over all stored F blocks.
double max_f_unitarity_defect(const AnyonModel& model);

// Perron-Frobenius eigenvalue of the fusion matrix (N_a)_{bc} = N(a,b,c).
double quantum_dimension(const AnyonModel& model, label_t a);

// Validates the FusionRules invariants (unit behaviour, commutativity, dual
// condition, involutive dual); throws ConsistencyError on violation.
void check_fusion_rules(const FusionRules& rules);

// JSON interchange: {name, level, labels, unit, dual, N, F, R}.
// export_model_json emits deterministic bytes (sorted keys, 17 significant
// digits). load_model_json performs structural validation only;
// import_model_json additionally runs the verifiers and throws
// ConsistencyError when any residual exceeds tol.
std::string export_model_json(const AnyonModel& model);
AnyonModel load_model_json(const std::string& text);
AnyonModel import_model_json(const std::string& text, double tol = 1e-9);

// Looks up a built-in model by name: "fibonacci", "ising", or "su2_<k>".
std::optional<AnyonModel> named_model(const std::string& name);

} // namespace tqp
