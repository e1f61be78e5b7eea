#include "doctest.h"

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "tqp/anyon_model.hpp"
#include "tqp/errors.hpp"

using namespace tqp;
using tqp_test::trivial_model;

namespace {
const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;
const double kPi = std::numbers::pi;
} // namespace

TEST_CASE("su2k fusion rules at small levels") {
    SUBCASE("k = 1: parity and truncation") {
        const AnyonModel m = su2k_model(1);
        CHECK(m.num_labels() == 2);
        CHECK(m.rules.N(1, 1, 0) == 1);
        CHECK(m.rules.N(1, 1, 1) == 0);
        CHECK_THROWS_AS((void)m.rules.N(1, 1, 2), UnknownLabel); // label 2 does not exist
    }
    SUBCASE("k = 2") {
        const AnyonModel m = su2k_model(2);
        CHECK(m.num_labels() == 3);
        CHECK(m.rules.N(1, 1, 0) == 1);
        CHECK(m.rules.N(1, 1, 2) == 1);
        CHECK(m.rules.N(1, 1, 1) == 0);
    }
    SUBCASE("k = 3: upper truncation bound") {
        const AnyonModel m = su2k_model(3);
        CHECK(m.rules.N(2, 2, 0) == 1);
        CHECK(m.rules.N(2, 2, 2) == 1);
        for (label_t c : {1, 3})
            CHECK(m.rules.N(2, 2, c) == 0);
    }
    SUBCASE("level out of range") {
        CHECK_THROWS_AS((void)su2k_model(0), LevelOutOfRange);
        CHECK_THROWS_AS((void)su2k_model(17), LevelOutOfRange);
        CHECK_THROWS_AS((void)su2k_model(-3), LevelOutOfRange);
    }
}

TEST_CASE("su2k models pass coherence and structural checks") {
    for (int k = 1; k <= 6; ++k) {
        CAPTURE(k);
        const AnyonModel m = su2k_model(k);
        CHECK_NOTHROW(check_fusion_rules(m.rules));
        CHECK(verify_pentagon(m, 1e-9).pass);
        CHECK(verify_hexagon(m, 1e-9).pass);
        CHECK(max_f_unitarity_defect(m) < 1e-9);
        for (label_t a = 0; a < m.num_labels(); ++a)
            for (label_t b = 0; b < m.num_labels(); ++b)
                for (label_t c : m.rules.product(a, b))
                    CHECK(std::abs(std::abs(m.r_symbol(a, b, c)) - 1.0) < 1e-12);
    }
}

TEST_CASE("F blocks with a unit index are identity matrices") {
    for (const AnyonModel& m : {su2k_model(4), fibonacci_model(), ising_model()}) {
        const label_t unit = m.rules.unit;
        const int l = m.num_labels();
        for (label_t a = 0; a < l; ++a)
            for (label_t b = 0; b < l; ++b)
                for (label_t d : m.rules.product(a, b)) {
                    CHECK(std::abs(m.f_symbol(a, b, unit, d, d, b) - cplx(1.0, 0.0)) < 1e-12);
                    CHECK(std::abs(m.f_symbol(unit, a, b, d, a, d) - cplx(1.0, 0.0)) < 1e-12);
                    CHECK(std::abs(m.f_symbol(a, unit, b, d, a, b) - cplx(1.0, 0.0)) < 1e-12);
                }
    }
}

TEST_CASE("fibonacci model data") {
    const AnyonModel m = fibonacci_model();

    SUBCASE("the tau^3 -> tau F block is 2x2 with the golden-ratio entries") {
        const FBlock* block = m.f_block(1, 1, 1, 1);
        REQUIRE(block != nullptr);
        CHECK(block->rows.size() == 2);
        CHECK(block->cols.size() == 2);
        CHECK(std::abs(m.f_symbol(1, 1, 1, 1, 0, 0) - cplx(1.0 / kPhi, 0.0)) < 1e-12);
        CHECK(std::abs(m.f_symbol(1, 1, 1, 1, 0, 1) - cplx(1.0 / std::sqrt(kPhi), 0.0)) < 1e-12);
        CHECK(std::abs(m.f_symbol(1, 1, 1, 1, 1, 0) - cplx(1.0 / std::sqrt(kPhi), 0.0)) < 1e-12);
        CHECK(std::abs(m.f_symbol(1, 1, 1, 1, 1, 1) - cplx(-1.0 / kPhi, 0.0)) < 1e-12);
    }
    SUBCASE("R phases") {
        CHECK(std::abs(m.r_symbol(1, 1, 0) - std::polar(1.0, 4.0 * kPi / 5.0)) < 1e-12);
        CHECK(std::abs(m.r_symbol(1, 1, 1) - std::polar(1.0, -3.0 * kPi / 5.0)) < 1e-12);
    }
    SUBCASE("coherence at tight tolerance") {
        const ConsistencyReport pent = verify_pentagon(m, 1e-9);
        CHECK(pent.pass);
        CHECK(pent.max_residual < 1e-12);
        CHECK(verify_hexagon(m, 1e-9).pass);
    }
}

TEST_CASE("pentagon verifier rejects a perturbed model") {
    AnyonModel m = fibonacci_model();
    const auto idx = m.f_block_index[m.pack4(1, 1, 1, 1)];
    REQUIRE(idx >= 0);
    m.f_blocks[idx].at(0, 0) += cplx(0.1, 0.0);
    const ConsistencyReport report = verify_pentagon(m, 1e-9);
    CHECK_FALSE(report.pass);
    CHECK(report.max_residual > 0.01);
}

TEST_CASE("trivial single-label model has residual exactly zero") {
    const AnyonModel m = trivial_model();
    const ConsistencyReport pent = verify_pentagon(m, 1e-9);
    CHECK(pent.pass);
    CHECK(pent.max_residual == 0.0);
    const ConsistencyReport hex = verify_hexagon(m, 1e-9);
    CHECK(hex.pass);
    CHECK(hex.max_residual == 0.0);
}

TEST_CASE("ising model data") {
    const AnyonModel m = ising_model();

    SUBCASE("fusion table") {
        CHECK(m.rules.N(1, 1, 1) == 0); // N(sigma, sigma, sigma)
        CHECK(m.rules.N(1, 1, 0) == 1);
        CHECK(m.rules.N(1, 1, 2) == 1);
        CHECK(m.rules.N(2, 2, 0) == 1);
    }
    SUBCASE("F block is the normalized Hadamard") {
        const double s = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(m.f_symbol(1, 1, 1, 1, 0, 0) - cplx(s, 0.0)) < 1e-12);
        CHECK(std::abs(m.f_symbol(1, 1, 1, 1, 0, 2) - cplx(s, 0.0)) < 1e-12);
        CHECK(std::abs(m.f_symbol(1, 1, 1, 1, 2, 0) - cplx(s, 0.0)) < 1e-12);
        CHECK(std::abs(m.f_symbol(1, 1, 1, 1, 2, 2) - cplx(-s, 0.0)) < 1e-12);
        const ConsistencyReport pent = verify_pentagon(m, 1e-9);
        CHECK(pent.max_residual < 1e-12);
    }
    SUBCASE("R phase ratio") {
        const cplx ratio = m.r_symbol(1, 1, 2) / m.r_symbol(1, 1, 0);
        CHECK(std::abs(ratio - std::polar(1.0, kPi / 2.0)) < 1e-12);
    }
    SUBCASE("negating one R symbol breaks the hexagon") {
        AnyonModel bad = ising_model();
        bad.r[bad.pack3(1, 1, 0)] = -bad.r[bad.pack3(1, 1, 0)];
        CHECK_FALSE(verify_hexagon(bad, 1e-9).pass);
    }
}

TEST_CASE("quantum dimensions") {
    const AnyonModel fib = fibonacci_model();
    const AnyonModel ising = ising_model();

    CHECK(quantum_dimension(fib, 0) == 1.0); // unit is exact
    CHECK(quantum_dimension(ising, 0) == 1.0);
    CHECK(std::abs(quantum_dimension(fib, 1) - kPhi) < 1e-10);
    CHECK(std::abs(quantum_dimension(ising, 1) - std::sqrt(2.0)) < 1e-10);
    CHECK_THROWS_AS((void)quantum_dimension(fib, 7), UnknownLabel);

    for (const AnyonModel& m : {su2k_model(1), su2k_model(4), fib, ising})
        for (label_t a = 0; a < m.num_labels(); ++a)
            CHECK(quantum_dimension(m, a) >= 1.0 - 1e-12);
}

TEST_CASE("su2_2 fusion ring is isomorphic to the ising fusion ring") {
    const AnyonModel su22 = su2k_model(2);
    const AnyonModel ising = ising_model();
    // The mapping 0 <-> 1, 1 <-> sigma, 2 <-> psi is the identity on ids.
    REQUIRE(su22.num_labels() == ising.num_labels());
    for (label_t a = 0; a < 3; ++a)
        for (label_t b = 0; b < 3; ++b)
            for (label_t c = 0; c < 3; ++c)
                CHECK(su22.rules.N(a, b, c) == ising.rules.N(a, b, c));
}

TEST_CASE("verifier reports are deterministic") {
    const AnyonModel m = su2k_model(3);
    const ConsistencyReport a = verify_pentagon(m, 1e-9);
    const ConsistencyReport b = verify_pentagon(m, 1e-9);
    CHECK(a.max_residual == b.max_residual);
    CHECK(a.worst == b.worst);
    CHECK(a.pass == b.pass);
    const ConsistencyReport ha = verify_hexagon(m, 1e-9);
    const ConsistencyReport hb = verify_hexagon(m, 1e-9);
    CHECK(ha.max_residual == hb.max_residual);
    CHECK(ha.worst == hb.worst);
}

TEST_CASE("model json round trip") {
    const AnyonModel m = fibonacci_model();
    const std::string doc = export_model_json(m);

    SUBCASE("load preserves the tables bit for bit") {
        const AnyonModel loaded = load_model_json(doc);
        CHECK(loaded.rules.num_labels == m.rules.num_labels);
        CHECK(loaded.rules.n == m.rules.n);
        CHECK(loaded.rules.dual == m.rules.dual);
        REQUIRE(loaded.f_blocks.size() == m.f_blocks.size());
        for (std::size_t i = 0; i < m.f_blocks.size(); ++i) {
            CHECK(loaded.f_blocks[i].rows == m.f_blocks[i].rows);
            CHECK(loaded.f_blocks[i].cols == m.f_blocks[i].cols);
            CHECK(loaded.f_blocks[i].m == m.f_blocks[i].m); // %.17g round-trips doubles
        }
        CHECK(loaded.r == m.r);
    }
    SUBCASE("import verifies and accepts") {
        const AnyonModel imported = import_model_json(doc, 1e-9);
        CHECK(verify_pentagon(imported, 1e-9).pass);
    }
    SUBCASE("export is deterministic") {
        CHECK(export_model_json(fibonacci_model()) == doc);
    }
}

TEST_CASE("model json rejects broken input") {
    const AnyonModel m = fibonacci_model();

    SUBCASE("malformed text") {
        CHECK_THROWS_AS((void)load_model_json("{not json"), ModelIoError);
        CHECK_THROWS_AS((void)load_model_json("[1,2,3]"), ModelIoError);
        CHECK_THROWS_AS((void)load_model_json("{\"labels\":[0]}"), ModelIoError);
    }
    SUBCASE("perturbed F entry fails import") {
        AnyonModel bad = m;
        bad.f_blocks[bad.f_block_index[bad.pack4(1, 1, 1, 1)]].at(0, 0) += cplx(0.05, 0.0);
        CHECK_THROWS_AS((void)import_model_json(export_model_json(bad), 1e-9), ConsistencyError);
    }
    SUBCASE("a missing admissible F entry surfaces as MissingSymbol") {
        // Drop one F entry from the document and reload without verification.
        std::string doc = export_model_json(m);
        const std::string needle = "{\"a\":1,\"b\":1,\"c\":1,\"d\":1,\"e\":0,\"f\":0,";
        const std::size_t pos = doc.find(needle);
        REQUIRE(pos != std::string::npos);
        const std::size_t end = doc.find('}', pos);
        const std::string removed = doc.substr(0, pos) + doc.substr(end + 2); // entry plus comma
        const AnyonModel partial = load_model_json(removed);
        CHECK_THROWS_AS((void)verify_pentagon(partial, 1e-9), MissingSymbol);
    }
}
