#include "doctest.h"

#include <cmath>
#include <numbers>
#include <thread>

#include "test_support.hpp"
#include "tqp/braiding.hpp"
#include "tqp/errors.hpp"

using namespace tqp;
using tqp_test::Rng;
using tqp_test::shared_model;
using tqp_test::uniform_boundary;

namespace {
const double kPi = std::numbers::pi;

BraidWord word_of(int strands, std::initializer_list<std::pair<int, int>> letters) {
    BraidWord w;
    w.strand_count = strands;
    for (const auto& [i, s] : letters)
        w.letters.push_back(BraidLetter{i, s});
    return w;
}
} // namespace

TEST_CASE("two-strand fibonacci braid phases") {
    auto fib = shared_model(fibonacci_model());

    const Matrix u1 = sigma_matrix(uniform_boundary(fib, 2, 1, 0), 1, +1);
    REQUIRE(u1.rows() == 1);
    CHECK(std::abs(u1(0, 0) - std::polar(1.0, 4.0 * kPi / 5.0)) < 1e-12);

    const Matrix ut = sigma_matrix(uniform_boundary(fib, 2, 1, 1), 1, +1);
    REQUIRE(ut.rows() == 1);
    CHECK(std::abs(ut(0, 0) - std::polar(1.0, -3.0 * kPi / 5.0)) < 1e-12);
}

TEST_CASE("sigma and its inverse compose to the identity") {
    auto fib = shared_model(fibonacci_model());
    const Boundary b = uniform_boundary(fib, 4, 1, 0);
    for (int i = 1; i <= 3; ++i) {
        const Matrix p = sigma_matrix(b, i, +1);
        const Matrix m = sigma_matrix(b, i, -1);
        CHECK((p * m).max_abs_diff(Matrix::identity(p.rows())) < 1e-12);
        CHECK((m * p).max_abs_diff(Matrix::identity(p.rows())) < 1e-12);
    }
}

TEST_CASE("braid_unitary basics") {
    auto fib = shared_model(fibonacci_model());
    const Boundary b = uniform_boundary(fib, 4, 1, 0);

    SUBCASE("empty word gives the identity") {
        const Matrix u = braid_unitary(b, BraidWord::empty(4));
        CHECK(u.bit_equal(Matrix::identity(2)));
    }
    SUBCASE("single letter on the two-strand sector") {
        const Boundary b2 = uniform_boundary(fib, 2, 1, 0);
        const Matrix u = braid_unitary(b2, word_of(2, {{1, +1}}));
        CHECK(std::abs(u(0, 0) - std::polar(1.0, 4.0 * kPi / 5.0)) < 1e-12);
    }
    SUBCASE("strand count mismatch") {
        CHECK_THROWS_AS((void)braid_unitary(b, BraidWord::empty(3)), BoundaryMismatch);
    }
    SUBCASE("letter index out of range") {
        CHECK_THROWS_AS((void)braid_unitary(b, word_of(4, {{4, +1}})), IndexOutOfRange);
        CHECK_THROWS_AS((void)sigma_matrix(b, 0, +1), IndexOutOfRange);
    }
    SUBCASE("empty sector") {
        auto ising = shared_model(ising_model());
        const Boundary empty = uniform_boundary(ising, 2, 1, 1); // dim 0
        CHECK_THROWS_AS((void)braid_unitary(empty, BraidWord::empty(2)), EmptyType);
        CHECK_THROWS_AS((void)sigma_matrix(empty, 1, +1), EmptyType);
    }
}

TEST_CASE("yang-baxter on three fibonacci strands, checked against explicit products") {
    auto fib = shared_model(fibonacci_model());
    const Boundary b = uniform_boundary(fib, 3, 1, 1); // dim 2

    const Matrix lhs = braid_unitary(b, word_of(3, {{1, +1}, {2, +1}, {1, +1}}));
    const Matrix rhs = braid_unitary(b, word_of(3, {{2, +1}, {1, +1}, {2, +1}}));
    CHECK(lhs.max_abs_diff(rhs) < 1e-10);

    // Independent route: multiply the generator matrices by hand.
    const Matrix s1 = sigma_matrix(b, 1, +1);
    const Matrix s2 = sigma_matrix(b, 2, +1);
    const Matrix lhs_explicit = s1 * s2 * s1;
    const Matrix rhs_explicit = s2 * s1 * s2;
    CHECK(lhs_explicit.max_abs_diff(rhs_explicit) < 1e-10);
    CHECK(lhs.max_abs_diff(lhs_explicit) < 1e-12);
}

TEST_CASE("transport properties") {
    auto fib = shared_model(fibonacci_model());
    const Boundary b = uniform_boundary(fib, 4, 1, 0);
    const StateVector e0 = basis_state(b, 0);

    SUBCASE("empty word is the exact identity") {
        const StateVector moved = transport(e0, BraidWord::empty(4));
        CHECK(moved.amplitudes == e0.amplitudes);
    }
    SUBCASE("a word followed by its inverse returns the state") {
        const BraidWord w = word_of(4, {{1, +1}, {2, +1}, {3, -1}, {2, +1}});
        const StateVector there = transport(e0, w);
        const StateVector back = transport(there, w.inverse());
        for (std::size_t i = 0; i < e0.amplitudes.size(); ++i)
            CHECK(std::abs(back.amplitudes[i] - e0.amplitudes[i]) < 1e-10);
    }
    SUBCASE("sigma_1 multiplies a basis state by its R phase") {
        const StateVector moved = transport(e0, word_of(4, {{1, +1}}));
        // tree 0 has e_1 = vacuum, so the phase is R^{tau tau}_1
        const cplx expected = fib->r_symbol(1, 1, 0);
        CHECK(std::abs(moved.amplitudes[0] - expected) < 1e-12);
        CHECK(std::abs(moved.amplitudes[1]) == 0.0);
    }
    SUBCASE("norm is preserved") {
        const BraidWord w = word_of(4, {{2, +1}, {1, -1}, {3, +1}, {2, -1}, {2, -1}});
        StateVector mixed = e0;
        mixed.amplitudes = {cplx(0.6, 0.0), cplx(0.0, 0.8)};
        const StateVector moved = transport(mixed, w);
        double norm2 = 0.0;
        for (const cplx& a : moved.amplitudes)
            norm2 += std::norm(a);
        CHECK(std::abs(norm2 - 1.0) < 1e-10);
    }
    SUBCASE("boundary is unchanged (charge sector preserved)") {
        const StateVector moved = transport(e0, word_of(4, {{2, +1}}));
        CHECK(moved.boundary.same_as(e0.boundary));
    }
    SUBCASE("strand count mismatch") {
        CHECK_THROWS_AS((void)transport(e0, BraidWord::empty(5)), BoundaryMismatch);
    }
}

TEST_CASE("relation residuals across the named models") {
    std::vector<std::shared_ptr<const AnyonModel>> models = {
        shared_model(fibonacci_model()), shared_model(ising_model()), shared_model(su2k_model(2)),
        shared_model(su2k_model(3))};

    SUBCASE("reference sectors") {
        auto fib = models[0];
        auto ising = models[1];
        const RelationReport fib_report = relation_residuals(uniform_boundary(fib, 4, 1, 0));
        CHECK(fib_report.yang_baxter < 1e-10);
        CHECK(fib_report.far_commutation < 1e-10);
        CHECK(fib_report.unitarity < 1e-10);
        const RelationReport ising_report = relation_residuals(uniform_boundary(ising, 4, 1, 0));
        CHECK(ising_report.yang_baxter < 1e-10);
        CHECK(ising_report.far_commutation < 1e-10);
        CHECK(ising_report.unitarity < 1e-10);
    }
    SUBCASE("N = 2 is vacuous") {
        const RelationReport r = relation_residuals(uniform_boundary(models[0], 2, 1, 0));
        CHECK(r.yang_baxter == 0.0);
        CHECK(r.far_commutation == 0.0);
    }
    SUBCASE("same-species boundaries with N <= 6 and dim <= 13") {
        for (const auto& model : models)
            for (label_t species = 0; species < model->num_labels(); ++species)
                for (label_t total = 0; total < model->num_labels(); ++total)
                    for (int n = 2; n <= 6; ++n) {
                        const Boundary b = uniform_boundary(model, n, species, total);
                        const long long d = dim(b);
                        if (d < 1 || d > 13)
                            continue;
                        const RelationReport r = relation_residuals(b);
                        CAPTURE(model->name);
                        CAPTURE(species);
                        CAPTURE(total);
                        CAPTURE(n);
                        CHECK(r.yang_baxter < 1e-9);
                        CHECK(r.far_commutation < 1e-9);
                        CHECK(r.unitarity < 1e-9);
                    }
    }
}

TEST_CASE("ising sigma_1 has projective order 8 and linear order 16") {
    auto ising = shared_model(ising_model());
    for (label_t total : {0, 2}) {
        const Boundary b = uniform_boundary(ising, 2, 1, total);
        const Matrix s1 = sigma_matrix(b, 1, +1);
        Matrix u = Matrix::identity(1);
        for (int rep = 0; rep < 8; ++rep)
            u = s1 * u;
        Matrix minus_identity(1, 1);
        minus_identity(0, 0) = cplx(-1.0, 0.0);
        CHECK(u.max_abs_diff(minus_identity) < 1e-9);
        Matrix u16 = u * u;
        CHECK(u16.max_abs_diff(Matrix::identity(1)) < 1e-9);
    }
}

TEST_CASE("representation property on random words") {
    auto fib = shared_model(fibonacci_model());
    const Boundary b = uniform_boundary(fib, 5, 1, 1); // dim 5
    Rng rng(0x5eedULL);
    for (int trial = 0; trial < 20; ++trial) {
        BraidWord w1 = BraidWord::empty(5);
        BraidWord w2 = BraidWord::empty(5);
        const int len1 = rng.below(9);
        const int len2 = rng.below(9);
        for (int i = 0; i < len1; ++i)
            w1.letters.push_back(BraidLetter{1 + rng.below(4), rng.below(2) ? +1 : -1});
        for (int i = 0; i < len2; ++i)
            w2.letters.push_back(BraidLetter{1 + rng.below(4), rng.below(2) ? +1 : -1});
        const Matrix joint = braid_unitary(b, w1.concat(w2));
        const Matrix split = braid_unitary(b, w2) * braid_unitary(b, w1);
        CHECK(joint.max_abs_diff(split) < 1e-10);
    }
}

TEST_CASE("braid unitaries are unitary") {
    auto model = shared_model(su2k_model(3));
    const Boundary b = uniform_boundary(model, 5, 1, 1);
    Rng rng(0xabcdULL);
    for (int trial = 0; trial < 10; ++trial) {
        BraidWord w = BraidWord::empty(5);
        for (int i = 0; i < 6; ++i)
            w.letters.push_back(BraidLetter{1 + rng.below(4), rng.below(2) ? +1 : -1});
        CHECK(braid_unitary(b, w).unitarity_defect() < 1e-9);
    }
}

TEST_CASE("memoization is semantically invisible") {
    auto fib = shared_model(fibonacci_model());
    const Boundary b = uniform_boundary(fib, 5, 1, 1);
    for (int i = 1; i <= 4; ++i) {
        const Matrix cached1 = sigma_matrix(b, i, +1);
        const Matrix cached2 = sigma_matrix(b, i, +1);
        const Matrix fresh = detail::sigma_matrix_uncached(b, i, +1);
        CHECK(cached1.bit_equal(cached2));
        CHECK(cached1.bit_equal(fresh));
    }
}

TEST_CASE("concurrent braid evaluation agrees with serial") {
    auto model = shared_model(su2k_model(2));
    const Boundary b = uniform_boundary(model, 6, 1, 0);
    const BraidWord w = word_of(6, {{1, +1}, {3, -1}, {5, +1}, {2, +1}, {4, -1}});
    const Matrix serial = braid_unitary(b, w);
    std::vector<Matrix> results(4);
    {
        std::vector<std::thread> threads;
        for (int t = 0; t < 4; ++t)
            threads.emplace_back([&, t] { results[t] = braid_unitary(b, w); });
        for (auto& th : threads)
            th.join();
    }
    for (const Matrix& r : results)
        CHECK(r.bit_equal(serial));
}
