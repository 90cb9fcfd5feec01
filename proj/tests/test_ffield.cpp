#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "test_util.hpp"

using namespace catff;
using namespace catff::testutil;

TEST_CASE("curve model validation") {
    auto f5 = F(5);
    CHECK(genus1_f5()->genus() == 1);
    CHECK(genus2_f5()->genus() == 2);
    CHECK(rational_model(5)->genus() == 0);

    CHECK_THROWS_WITH_AS(make_curve(f5, 2, P(f5, {1, 0, 0, 0, 1})),
                         "no degree-1 infinite place guaranteed", std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_curve(f5, 2, P(f5, {1, 2, 1})), "singular model",
                         std::invalid_argument);
    auto f2 = F(2);
    CHECK_THROWS_WITH_AS(make_curve(f2, 2, P(f2, {1, 1, 0, 1})),
                         "wildly ramified model unsupported", std::invalid_argument);

    SUBCASE("e = 3 model") {
        auto f7 = F(7);
        auto c = make_curve(f7, 3, P(f7, {1, 1, 1}));
        CHECK(c->genus() == 1);
    }
}

TEST_CASE("ring arithmetic reduces y^e to f") {
    auto c = genus1_f5();
    auto x = c->x();
    auto y = c->y();
    auto fx = RingElement(c, {c->f(), Polynomial(c->base())});

    CHECK(y * y == fx);
    CHECK((x + y) * (x - y) == x * x - fx);
    CHECK(x.pow(3) == x * x * x);
    CHECK((x + y).pow(2) == x * x + x * y + y * x + fx);

    auto other = genus2_f5();
    CHECK_THROWS_WITH_AS(x + other->x(), "curve mismatch", std::invalid_argument);
}

TEST_CASE("pole order on the genus-1 model") {
    auto c = genus1_f5();
    CHECK(pole_order(c->x()) == 2);
    CHECK(pole_order(c->y()) == 3);
    CHECK(pole_order(c->x() * c->x() + c->y()) == 4);
    CHECK(pole_order(c->one_element()) == 0);
    CHECK_THROWS_WITH_AS(pole_order(c->zero_element()), "pole order of zero undefined",
                         std::domain_error);

    SUBCASE("rational model: pole order is the degree") {
        auto r = rational_model(5);
        CHECK(pole_order(r->x()) == 1);
        CHECK(pole_order(r->x().pow(4)) == 4);
    }
}

TEST_CASE("pole order laws on random elements") {
    std::mt19937 rng(2024);
    for (const auto& c : {genus1_f5(), genus2_f5(), rational_model(3)}) {
        for (int i = 0; i < 1000; ++i) {
            auto f = random_ring_element(c, 3, rng);
            auto g = random_ring_element(c, 3, rng);
            // multiplicativity
            CHECK(pole_order(f * g) == pole_order(f) + pole_order(g));
            // dominance
            if (pole_order(f) < pole_order(g)) CHECK(pole_order(f + g) == pole_order(g));
            // d = 0 exactly on constants
            CHECK((pole_order(f) == 0) == f.is_constant());
        }
    }
}

TEST_CASE("enumeration by pole order") {
    auto c = genus1_f5();

    auto count_up_to = [&](std::uint64_t bound) {
        std::uint64_t n = 0;
        enumerate_by_pole_order(c, bound, [&](const RingElement&) { ++n; });
        return n;
    };

    CHECK(count_up_to(0) == 4);    // the q - 1 nonzero constants
    CHECK(count_up_to(2) == 24);   // constants plus a*x + b, a != 0
    CHECK(count_up_to(3) == 124);  // plus a*y + (b*x + c), a != 0

    SUBCASE("closed-form count equals the stream and the brute force") {
        // brute force: all part tuples with deg a_0 <= 3, deg a_1 <= 1
        for (std::uint64_t bound : {std::uint64_t(0), std::uint64_t(2), std::uint64_t(3),
                                    std::uint64_t(5), std::uint64_t(6)}) {
            std::set<std::string> brute;
            for (const auto& a0 : all_polys_up_to(c->base(), 3)) {
                for (const auto& a1 : all_polys_up_to(c->base(), 1)) {
                    RingElement g(c, {a0, a1});
                    if (g.is_zero()) continue;
                    if (pole_order(g) <= bound) brute.insert(ring_element_to_string(g));
                }
            }
            std::set<std::string> streamed;
            std::uint64_t last_d = 0;
            enumerate_by_pole_order(c, bound, [&](const RingElement& g) {
                const std::uint64_t d = pole_order(g);
                CHECK(d >= last_d);  // ordered by pole order
                last_d = d;
                CHECK(streamed.insert(ring_element_to_string(g)).second);  // no repeats
            });
            CHECK(streamed == brute);
            CHECK(count_with_pole_order_at_most(*c, bound) == brute.size());
        }
    }

    SUBCASE("slice counts add up to the closed form") {
        for (const auto& model : {genus1_f5(), genus2_f5(), rational_model(3)}) {
            BigInt total = 0;
            for (std::uint64_t d = 0; d <= 12; ++d) {
                auto s = PoleSlice::at(*model, d);
                if (s) total += s->count;
            }
            CHECK(total == count_with_pole_order_at_most(*model, 12));
        }
    }

    SUBCASE("partitioned iteration matches the full stream") {
        auto slice = PoleSlice::at(*c, 6);
        REQUIRE(slice);
        const auto n = static_cast<std::uint64_t>(slice->count);
        std::vector<std::string> full;
        for (SliceIterator it(c, *slice, 0, n); !it.done(); it.advance())
            full.push_back(ring_element_to_string(it.current()));
        std::vector<std::string> pieces;
        for (std::uint64_t lo = 0; lo < n; lo += 97)
            for (SliceIterator it(c, *slice, lo, std::min(n, lo + 97)); !it.done(); it.advance())
                pieces.push_back(ring_element_to_string(it.current()));
        CHECK(full == pieces);
        CHECK(full.size() == n);
    }
}

namespace {

// independent point count: double loop over the affine plane plus one at infinity
BigInt naive_count(const CurvePtr& curve, unsigned k) {
    const auto& base = curve->base();
    FieldPtr big = k == 1 ? base : make_field(base->characteristic(),
                                              base->extension_degree() * k);
    Polynomial f = curve->f();
    if (k > 1) f = map_coeffs(f, Embedding(base, big));
    const std::uint64_t qk = big->cardinality_u64();
    std::uint64_t n = 0;
    for (std::uint64_t xi = 0; xi < qk; ++xi) {
        const auto v = f.eval(big->element_from_index(xi));
        for (std::uint64_t yi = 0; yi < qk; ++yi) {
            const auto y = big->element_from_index(yi);
            if (y.pow(std::uint64_t(curve->e())) == v) ++n;
        }
    }
    return BigInt(n) + 1;
}

}  // namespace

TEST_CASE("point counts") {
    auto c1 = genus1_f5();
    CHECK(count_points(c1, 1) == 9);
    CHECK(count_points(c1, 2) == 27);
    CHECK(count_points(rational_model(5), 1) == 6);

    SUBCASE("fiber formula matches the naive double loop") {
        CHECK(count_points(c1, 1) == naive_count(c1, 1));
        CHECK(count_points(c1, 2) == naive_count(c1, 2));
        auto c2 = genus2_f5();
        CHECK(count_points(c2, 1) == naive_count(c2, 1));
        CHECK(count_points(c2, 2) == naive_count(c2, 2));
        auto f7 = F(7);
        auto c3 = make_curve(f7, 3, P(f7, {1, 1, 1}));
        CHECK(count_points(c3, 1) == naive_count(c3, 1));
        auto f9 = F(3, 2);
        auto c9 = make_curve(f9, 2, Polynomial::from_coeffs(
                                        f9, {f9->element_from_index(3), f9->one(), f9->zero(),
                                             f9->one()}));
        CHECK(count_points(c9, 1) == naive_count(c9, 1));
    }

    SUBCASE("Weil bound holds for computed counts") {
        for (const auto& model : {genus1_f5(), genus2_f5()}) {
            for (unsigned k = 1; k <= 4; ++k) {
                const BigInt nk = count_points(model, k);
                const BigInt qk = pow_big(model->base()->cardinality(), k);
                const BigInt dev = nk - qk - 1;
                CHECK(dev * dev <= BigInt(4) * model->genus() * model->genus() * qk);
            }
        }
    }

    SUBCASE("budget is enforced") {
        CHECK_THROWS_WITH_AS(count_points(genus1_f5(), 12, 1000), "extension too large",
                             std::domain_error);
    }

    SUBCASE("threaded count equals sequential") {
        CHECK(count_points(c1, 3, kDefaultEnumerationBudget, 4) ==
              count_points(c1, 3, kDefaultEnumerationBudget, 1));
    }
}

TEST_CASE("base change preserves the model") {
    auto c = genus1_f5();
    auto c2 = base_change(c, 2);
    CHECK(c2->genus() == 1);
    CHECK(c2->base()->cardinality() == 25);
    CHECK(c2->e() == 2);
    CHECK(count_points(c2, 1) == count_points(c, 2));
}

TEST_CASE("mth roots in the ring") {
    std::mt19937 rng(31337);

    SUBCASE("round trip on the genus-1 model") {
        auto c = genus1_f5();
        const std::uint64_t q = c->base()->cardinality_u64();
        for (int i = 0; i < 120; ++i) {
            auto z = random_ring_element(c, 2, rng);
            const std::uint64_t m = 2 + rng() % 5;
            auto w = z.pow(m);
            auto roots = ring_mth_roots(w, m);
            bool found = false;
            for (const auto& r : roots) {
                CHECK(r.pow(m) == w);
                if (r == z) found = true;
            }
            CHECK(found);
            if (!z.is_zero()) {
                std::uint64_t m_prime = m;
                while (m_prime % 5 == 0) m_prime /= 5;
                CHECK(roots.size() == std::gcd(m_prime, q - 1));
            }
        }
    }

    SUBCASE("frobenius powers extract exactly") {
        auto c = genus1_f5();
        auto z = c->x() + c->y();
        auto w = z.pow(5);
        auto roots = ring_mth_roots(w, 5);
        REQUIRE(roots.size() == 1);
        CHECK(roots[0] == z);
    }

    SUBCASE("non-powers have no roots") {
        auto c = genus1_f5();
        CHECK(ring_mth_roots(c->y(), 2).empty());    // d(y) = 3 odd
        CHECK(ring_mth_roots(c->x(), 3).empty());    // d(x) = 2 not divisible by 3
    }

    SUBCASE("agrees with poly_mth_roots on the rational model") {
        auto r = rational_model(5);
        for (int i = 0; i < 60; ++i) {
            auto g = random_poly(r->base(), 4, rng);
            const std::uint64_t m = 2 + rng() % 4;
            std::set<std::string> via_ring;
            for (const auto& root : ring_mth_roots(RingElement(r, {g}), m))
                via_ring.insert(ring_element_to_string(root));
            std::set<std::string> via_poly;
            for (const auto& root : poly_mth_roots(g, m)) via_poly.insert(poly_to_string(root));
            CHECK(via_ring == via_poly);
        }
    }
}

TEST_CASE("bulk root scan matches the per-element object path") {
    auto c = genus1_f5();
    std::mt19937 rng(11);
    auto rhs = P(c->base(), {1, 0, 0, 1});  // Y^3 + 1
    for (std::uint64_t d : {std::uint64_t(2), std::uint64_t(4), std::uint64_t(6)}) {
        auto slice = PoleSlice::at(*c, d);
        REQUIRE(slice);
        const auto n = static_cast<std::uint64_t>(slice->count);

        std::vector<std::pair<std::string, std::string>> bulk;
        for_each_bounded_mth_root(c, *slice, 0, n, rhs, 2, {},
                                  [&](const RingElement& x, const RingElement& y) {
                                      bulk.emplace_back(ring_element_to_string(x),
                                                        ring_element_to_string(y));
                                  });

        std::vector<std::pair<std::string, std::string>> object_path;
        for (SliceIterator it(c, *slice, 0, n); !it.done(); it.advance()) {
            const RingElement& y = it.current();
            RingElement w = y.pow(3) + c->one_element();
            for (const auto& x : ring_mth_roots(w, 2))
                object_path.emplace_back(ring_element_to_string(x), ring_element_to_string(y));
        }
        CHECK(bulk == object_path);
    }
}
