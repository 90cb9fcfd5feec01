#include <doctest.h>

#include <random>

#include "test_util.hpp"

using namespace catff;
using namespace catff::testutil;

TEST_CASE("prime field construction") {
    auto f5 = make_field(5, 1);
    CHECK(f5->characteristic() == 5);
    CHECK(f5->extension_degree() == 1);
    CHECK(f5->cardinality() == 5);
    CHECK(f5->modulus() == std::vector<std::uint64_t>{0, 1});

    CHECK_THROWS_WITH_AS(make_field(4, 1), "characteristic not prime", std::invalid_argument);
    CHECK_THROWS_AS(make_field(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(0, 2), std::invalid_argument);
}

TEST_CASE("canonical modulus is the lex-least monic irreducible") {
    // independent oracle for degree 2: first monic quadratic with no root,
    // coefficients compared constant term first
    auto lex_least_quadratic = [](std::uint64_t l) {
        for (std::uint64_t c0 = 0; c0 < l; ++c0)
            for (std::uint64_t c1 = 0; c1 < l; ++c1) {
                bool has_root = false;
                for (std::uint64_t x = 0; x < l && !has_root; ++x)
                    if ((x * x + c1 * x + c0) % l == 0) has_root = true;
                if (!has_root) return std::vector<std::uint64_t>{c0, c1, 1};
            }
        return std::vector<std::uint64_t>{};
    };

    CHECK(make_field(3, 2)->modulus() == lex_least_quadratic(3));
    CHECK(make_field(5, 2)->modulus() == lex_least_quadratic(5));
    CHECK(make_field(7, 2)->modulus() == lex_least_quadratic(7));
    CHECK(make_field(3, 2)->modulus() == std::vector<std::uint64_t>{1, 0, 1});
    CHECK(make_field(5, 2)->modulus() == std::vector<std::uint64_t>{1, 1, 1});

    SUBCASE("construction is deterministic") {
        for (auto [l, a] : {std::pair<std::uint64_t, unsigned>{2, 8}, {3, 4}, {5, 3}, {13, 2}}) {
            CHECK(make_field(l, a)->modulus() == make_field(l, a)->modulus());
        }
    }
}

TEST_CASE("field arithmetic") {
    auto f5 = F(5);
    const auto e = [&](std::int64_t v) { return f5->from_residues({v}); };

    CHECK(e(2).inverse() == e(3));
    CHECK(e(2).pow(std::uint64_t(4)) == e(1));
    CHECK(e(2) + e(4) == e(1));
    CHECK(e(2) * e(4) == e(3));
    CHECK(-e(2) == e(3));
    CHECK_THROWS_WITH_AS(e(0).inverse(), "division by zero", std::domain_error);

    auto f9 = F(3, 2);
    CHECK_THROWS_WITH_AS(e(1) + f9->one(), "field mismatch", std::invalid_argument);

    SUBCASE("every nonzero element of F_9 has order dividing 8") {
        for (std::uint64_t i = 1; i < 9; ++i) {
            auto g = f9->element_from_index(i);
            CHECK(g.pow(std::uint64_t(8)).is_one());
        }
    }

    SUBCASE("Lagrange in F_25") {
        auto f25 = F(5, 2);
        for (std::uint64_t i = 1; i < 25; ++i) {
            auto g = f25->element_from_index(i);
            CHECK(g.pow(std::uint64_t(24)).is_one());
            CHECK(24 % multiplicative_order(g) == 0);
        }
    }
}

TEST_CASE("multiplicative order") {
    auto f5 = F(5);
    CHECK(multiplicative_order(f5->one()) == 1);
    CHECK(multiplicative_order(f5->from_residues({4})) == 2);
    CHECK_THROWS_AS(multiplicative_order(f5->zero()), std::domain_error);

    // oracle: direct powers of 2 are 2, 4, 3, 1
    auto two = f5->from_residues({2});
    auto acc = f5->one();
    std::uint64_t order = 0;
    for (std::uint64_t k = 1; k <= 4; ++k) {
        acc = acc * two;
        if (acc.is_one()) {
            order = k;
            break;
        }
    }
    CHECK(order == 4);
    CHECK(multiplicative_order(two) == order);
}

TEST_CASE("primitive roots of unity") {
    auto f5 = F(5);
    auto zeta4 = primitive_root_of_unity(f5, 4);
    CHECK(zeta4 == f5->from_residues({2}));  // least index with order 4
    CHECK(multiplicative_order(zeta4) == 4);

    CHECK(primitive_root_of_unity(f5, 2) == f5->from_residues({4}));

    CHECK_THROWS_WITH_AS(primitive_root_of_unity(f5, 3), "mu_p not in field", std::domain_error);
    CHECK_THROWS_WITH_AS(primitive_root_of_unity(f5, 5), "p equals characteristic",
                         std::domain_error);

    SUBCASE("cube roots of unity in F_25") {
        auto f25 = F(5, 2);
        auto zeta = primitive_root_of_unity(f25, 3);
        CHECK(multiplicative_order(zeta) == 3);
        CHECK(zeta.pow(std::uint64_t(3)).is_one());
        CHECK_FALSE(zeta.is_one());
        // the modulus t^2 + t + 1 of F_25 makes its generator itself of order 3
        CHECK(zeta == f25->element_from_index(5));
    }

    SUBCASE("mu_n sets") {
        CHECK(roots_of_unity_in_field(f5, 1).size() == 1);
        CHECK(roots_of_unity_in_field(f5, 2).size() == 2);
        CHECK(roots_of_unity_in_field(f5, 4).size() == 4);
        CHECK(roots_of_unity_in_field(f5, 6).size() == 2);  // gcd(6, 4) = 2
    }
}

TEST_CASE("embeddings are field homomorphisms") {
    auto f3 = F(3);
    auto f9 = F(3, 2);
    auto f81 = F(3, 4);

    Embedding up(f3, f9);
    CHECK(up(f3->zero()) == f9->zero());
    CHECK(up(f3->one()) == f9->one());

    CHECK_THROWS_WITH_AS(Embedding(F(5), f9), "incompatible fields", std::invalid_argument);
    CHECK_THROWS_AS(Embedding(f9, F(3, 3)), std::invalid_argument);  // 2 does not divide 3

    SUBCASE("respects multiplication and addition on random pairs") {
        Embedding phi(f9, f81);
        std::mt19937 rng(12345);
        for (int i = 0; i < 100; ++i) {
            auto x = random_element(f9, rng);
            auto y = random_element(f9, rng);
            CHECK(phi(x * y) == phi(x) * phi(y));
            CHECK(phi(x + y) == phi(x) + phi(y));
        }
    }

    SUBCASE("embedded elements keep their multiplicative order") {
        Embedding phi(f9, f81);
        for (std::uint64_t i = 1; i < 9; ++i) {
            auto x = f9->element_from_index(i);
            CHECK(multiplicative_order(phi(x)) == multiplicative_order(x));
        }
    }
}
