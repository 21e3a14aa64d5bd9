#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "ffiter/construct.hpp"
#include "ffiter/errors.hpp"
#include "ffiter/irred.hpp"
#include "ffiter/oracle.hpp"
#include "ffiter/poly.hpp"
#include "helpers.hpp"

using namespace ffiter;

namespace {

Poly ints(const FieldCtxPtr& ctx, const std::vector<long>& coeffs) {
    return Poly::from_ints(ctx, coeffs);
}

Poly worked_sextic(const FieldCtxPtr& f19) {
    return ints(f19, {3, 8, 16, 1, 15, 6, 1});  // X^6+6X^5+15X^4+X^3+16X^2+8X+3
}

}  // namespace

TEST_CASE("one squaring step maps a root to its square") {
    auto f5 = FieldCtx::prime(5);
    CHECK(step(ints(f5, {3, 1})) == ints(f5, {1, 1}));  // X-2 -> X-4

    auto f19 = FieldCtx::prime(19);
    // A fully even input yields the square of its even part.
    Poly h = ints(f19, {1, 0, 1, 0, 0, 0, 1});
    Poly u = ints(f19, {1, 1, 0, 1});
    CHECK(step(h) == u * u);

    // Three steps from the worked sextic.
    Poly c = worked_sextic(f19);
    Poly c3 = step(step(step(c)));
    CHECK(c3 == ints(f19, {6, 7, 2, 18, 0, 1, 1}));
}

TEST_CASE("the squaring step satisfies its defining identity on random input") {
    std::mt19937_64 rng(41);
    for (long p : {3, 7, 13, 19}) {
        auto ctx = FieldCtx::prime(p);
        for (int i = 0; i < 150; ++i) {
            Poly c = testgen::random_monic(ctx, 1 + static_cast<int>(rng() % 6), rng);
            if (c.is_x()) continue;
            Poly a = step(c);
            CHECK(a.is_monic());
            CHECK(a.degree() == c.degree());
            // A(X^2) = (-1)^n c(X) c(-X), checked literally
            Poly lhs = compose_x_squared(a);
            Poly rhs = c * negate_arg(c);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("the closed-formula step agrees with the product construction") {
    std::mt19937_64 rng(42);
    auto f19 = FieldCtx::prime(19);
    for (int i = 0; i < 300; ++i) {
        Poly c = testgen::random_monic(f19, 1 + static_cast<int>(rng() % 6), rng);
        CHECK(detail::step_formula(c) == detail::step_product(c));
    }
    // the cross-checking entry point runs both and returns the common value
    Poly c = worked_sextic(f19);
    CHECK(step(c, true) == step(c));
}

TEST_CASE("the squaring step validates its input") {
    auto f5 = FieldCtx::prime(5);
    CHECK_THROWS_AS(step(Poly::x(f5)), PolyIsX);
    CHECK_THROWS_AS(step(ints(f5, {1, 2})), NotMonic);
    CHECK_THROWS_AS(step(Poly::one(f5)), ConstantInput);
    CHECK_THROWS_AS(step(Poly(f5)), ConstantInput);
}

TEST_CASE("step keeps irreducibility exactly when an odd coefficient is present") {
    std::mt19937_64 rng(43);
    auto f13 = FieldCtx::prime(13);
    int odd_cases = 0, even_cases = 0;
    while (odd_cases < 120 || even_cases < 25) {
        Poly c = testgen::random_irreducible(f13, 2 + static_cast<int>(rng() % 3), rng);
        Poly a = step(c);
        if (coeff_profile(c).has_odd_nonzero) {
            if (odd_cases >= 120) continue;
            ++odd_cases;
            CHECK(is_irreducible(a));
        } else {
            if (even_cases >= 25) continue;
            ++even_cases;
            // irreducibility fails by squaring: a = e^2 for c = e(X^2)
            Poly e = *even_decompose(c);
            CHECK(a == e * e);
            CHECK_FALSE(is_irreducible(a));
        }
    }
}

TEST_CASE("fully even inputs square their even part under step") {
    std::mt19937_64 rng(44);
    auto f13 = FieldCtx::prime(13);
    int cases = 0;
    while (cases < 60) {
        Poly u = testgen::random_irreducible(f13, 1 + static_cast<int>(rng() % 3), rng);
        if (!norm_const(u).is_square()) {
            // u(X^2) is irreducible here (non-square norm) and fully even by construction
            Poly b = compose_x_squared(u);
            REQUIRE(is_irreducible(b));
            CHECK_FALSE(coeff_profile(b).has_odd_nonzero);
            CHECK(*even_decompose(b) == u);
            CHECK(step(b) == u * u);
            ++cases;
        }
    }
}

TEST_CASE("known-order iteration walks the root orbit of X-2 over GF(5)") {
    auto f5 = FieldCtx::prime(5);
    ConstructionTrace t = construction1(ints(f5, {3, 1}), factor_integer(4));
    REQUIRE(t.polys.size() == 3);
    CHECK(t.polys[0] == ints(f5, {3, 1}));  // X-2
    CHECK(t.polys[1] == ints(f5, {1, 1}));  // X-4
    CHECK(t.polys[2] == ints(f5, {4, 1}));  // X-1
    CHECK(t.stop_reason == StopReason::PhaseBudgetComplete);
    CHECK(t.distinct_polys.size() == 3);
    REQUIRE(t.orders.size() == 3);
    CHECK(t.orders[0]->value == 4);
    CHECK(t.orders[1]->value == 2);
    CHECK(t.orders[2]->value == 1);
    // t = 1: no odd-order cycle beyond the single terminal polynomial
    REQUIRE(t.cycle_length.has_value());
    CHECK(*t.cycle_length == 1);
}

TEST_CASE("known-order iteration reproduces the 885-polynomial family") {
    auto f19 = FieldCtx::prime(19);
    Poly c = worked_sextic(f19);
    ConstructionTrace t = construction1(c, poly_order(c));
    CHECK(t.distinct_polys.size() == 885);
    CHECK(t.stop_reason == StopReason::PhaseBudgetComplete);
    REQUIRE(t.cycle_length.has_value());
    CHECK(*t.cycle_length == 882);
    REQUIRE(t.d.has_value());
    CHECK(*t.d == 1);

    // 882 of the entries have the odd order 1176147
    std::set<std::string> odd_order_keys;
    REQUIRE(t.orders.size() == t.polys.size());
    for (size_t i = 0; i < t.polys.size(); ++i) {
        REQUIRE(t.orders[i].has_value());
        if (t.orders[i]->value == 1176147) odd_order_keys.insert(canonical_key(t.polys[i]));
    }
    CHECK(odd_order_keys.size() == 882);

    // weight histogram over the distinct set
    std::map<unsigned, int> weights;
    for (const auto& f : t.distinct_polys) ++weights[coeff_profile(f).weight];
    CHECK(weights == std::map<unsigned, int>{{5, 9}, {6, 198}, {7, 678}});
}

TEST_CASE("known-order iteration on a primitive shift finds 1767 polynomials") {
    auto f19 = FieldCtx::prime(19);
    Poly h = ints(f19, {1, 0, 1, 0, 0, 0, 1});
    Poly c5 = shift_arg(h, f19->element(5));
    FactoredOrder ord = poly_order(c5);
    CHECK(ord.value == 47045880);  // primitive: order = 19^6 - 1
    ConstructionTrace t = construction1(c5, ord);
    CHECK(t.distinct_polys.size() == 1767);
    int weight4 = 0;
    for (const auto& f : t.distinct_polys) {
        if (coeff_profile(f).weight == 4) ++weight4;
    }
    CHECK(weight4 == 3);
}

TEST_CASE("known-order iteration stops immediately on fully even input") {
    auto f19 = FieldCtx::prime(19);
    Poly h = ints(f19, {1, 0, 1, 0, 0, 0, 1});
    ConstructionTrace t = construction1(h, poly_order(h));
    CHECK(t.stop_reason == StopReason::EvenCoefficients);
    REQUIRE(t.polys.size() == 1);
    CHECK(t.polys[0] == h);
    CHECK(t.orders[0]->value == 1524);
}

TEST_CASE("known-order iteration validates the supplied order") {
    auto f19 = FieldCtx::prime(19);
    Poly c = worked_sextic(f19);
    CHECK_THROWS_AS(construction1(c, factor_integer(1524)), OrderMismatch);
    CHECK_THROWS_AS(construction1(ints(f19, {2, 3, 1}), factor_integer(4)), NotIrreducible);
    CHECK_THROWS_AS(construction1(Poly::x(f19), factor_integer(4)), PolyIsX);
    // the check is a single exponentiation, so multiples of the true order
    // pass it by design (the premise is that the order is known)
    auto f5 = FieldCtx::prime(5);
    CHECK_NOTHROW(construction1(ints(f5, {3, 1}), factor_integer(8)));
}

TEST_CASE("order halving holds along every known-order trace") {
    std::mt19937_64 rng(45);
    for (long p : {5, 7, 13}) {
        auto ctx = FieldCtx::prime(p);
        for (int i = 0; i < 25; ++i) {
            Poly c = testgen::random_irreducible(ctx, 1 + static_cast<int>(rng() % 4), rng);
            ConstructionTrace t = construction1(c, poly_order(c));
            REQUIRE(t.orders.size() == t.polys.size());
            for (size_t k = 0; k + 1 < t.polys.size(); ++k) {
                const mpz_class& prev = t.orders[k]->value;
                const mpz_class& next = t.orders[k + 1]->value;
                CHECK(next == prev / gcd(prev, mpz_class(2)));
                // attached orders match recomputation from scratch
                CHECK(poly_order(t.polys[k + 1]).value == next);
            }
            for (const auto& f : t.polys) {
                CHECK(f.degree() == c.degree());
                CHECK(is_irreducible(f));
            }
        }
    }
}

TEST_CASE("unknown-order iteration detects the cycle of X-2 over GF(5)") {
    auto f5 = FieldCtx::prime(5);
    ConstructionTrace t = construction2(ints(f5, {3, 1}));
    REQUIRE(t.polys.size() == 4);
    CHECK(t.polys[0] == ints(f5, {3, 1}));
    CHECK(t.polys[1] == ints(f5, {1, 1}));
    CHECK(t.polys[2] == ints(f5, {4, 1}));
    CHECK(t.polys[3] == ints(f5, {4, 1}));  // first repeat, included
    CHECK(t.stop_reason == StopReason::CycleDetected);
    REQUIRE(t.cycle_target.has_value());
    CHECK(*t.cycle_target == 2);
    REQUIRE(t.cycle_length.has_value());
    CHECK(*t.cycle_length == 1);
    CHECK(t.distinct_polys.size() == 3);
    CHECK(t.orders.empty());  // no orders are consumed or attached
}

TEST_CASE("unknown-order iteration finds the 882-cycle of the worked sextic") {
    auto f19 = FieldCtx::prime(19);
    ConstructionTrace t = construction2(worked_sextic(f19));
    CHECK(t.stop_reason == StopReason::CycleDetected);
    REQUIRE(t.cycle_target.has_value());
    CHECK(*t.cycle_target == 3);  // the 2-adic valuation of 9409176
    REQUIRE(t.cycle_length.has_value());
    CHECK(*t.cycle_length == 882);
}

TEST_CASE("unknown-order iteration stops on fully even entries") {
    auto f19 = FieldCtx::prime(19);
    ConstructionTrace t = construction2(ints(f19, {1, 0, 1, 0, 0, 0, 1}));
    CHECK(t.stop_reason == StopReason::EvenCoefficients);
    CHECK(t.polys.size() == 1);
}

TEST_CASE("order inference from a detected cycle pins the 2-adic valuation") {
    auto f5 = FieldCtx::prime(5);
    ConstructionTrace t = construction2(ints(f5, {3, 1}));
    OrderConstraint c = infer_order(t);
    CHECK(c.kind == OrderConstraint::Kind::Cycle);
    CHECK(c.index == 2);
    CHECK(c.cycle_length == 1);
    CHECK(c.consistent_with(factor_integer(4)));
    CHECK_FALSE(c.consistent_with(factor_integer(8)));    // wrong valuation
    CHECK_FALSE(c.consistent_with(factor_integer(2)));    // wrong valuation

    auto f19 = FieldCtx::prime(19);
    Poly sextic = worked_sextic(f19);
    OrderConstraint c2 = infer_order(construction2(sextic));
    CHECK(c2.index == poly_order(sextic).r);
    CHECK(c2.consistent_with(poly_order(sextic)));
}

TEST_CASE("order inference from an even stop bounds the odd part") {
    auto f19 = FieldCtx::prime(19);
    // Build a degree-6 polynomial whose first step is fully even: descend the
    // doubled cubic.  Its order is 2 * 1524 and its step target is H itself.
    Poly h = ints(f19, {1, 0, 1, 0, 0, 0, 1});
    auto [first, second] = descend(h);
    ConstructionTrace t = construction2(first);
    CHECK(t.stop_reason == StopReason::EvenCoefficients);
    REQUIRE(t.polys.size() == 2);
    CHECK(t.polys[1] == h);

    OrderConstraint c = infer_order(t);
    CHECK(c.kind == OrderConstraint::Kind::EvenStop);
    CHECK(c.index == 1);
    CHECK(c.odd_bound == 13716);  // 2 * (19^3 - 1)
    FactoredOrder actual = poly_order(first);
    CHECK(actual.value == 3048);  // 2 * 1524
    CHECK(c.consistent_with(actual));

    // the even-stop trace of H itself: k = 0
    OrderConstraint ch = infer_order(construction2(h));
    CHECK(ch.index == 0);
    CHECK(ch.consistent_with(poly_order(h)));
}

TEST_CASE("order inference rejects empty and budget-completed traces") {
    CHECK_THROWS_AS(infer_order(ConstructionTrace{}), EmptyTrace);
    auto f5 = FieldCtx::prime(5);
    ConstructionTrace done = construction1(ints(f5, {3, 1}), factor_integer(4));
    CHECK_THROWS_AS(infer_order(done), UnsupportedTrace);
}

TEST_CASE("even-stop index matches the full 2-adic valuation when the odd part stays odd") {
    // Whenever construction2 stops on even coefficients at index k, the order
    // of C_0 is exactly 2^k times the order of C_k.
    std::mt19937_64 rng(46);
    auto f19 = FieldCtx::prime(19);
    int even_stops = 0;
    for (int i = 0; i < 200 && even_stops < 40; ++i) {
        Poly c = testgen::random_irreducible(f19, 2, rng);
        ConstructionTrace t = construction2(c);
        if (t.stop_reason != StopReason::EvenCoefficients) continue;
        ++even_stops;
        const size_t k = t.polys.size() - 1;
        mpz_class scale = 1;
        for (size_t j = 0; j < k; ++j) scale *= 2;
        CHECK(poly_order(c).value == scale * poly_order(t.polys.back()).value);
    }
    CHECK(even_stops > 0);
}

TEST_CASE("blow-up verdicts follow the congruence class of q") {
    auto f19 = FieldCtx::prime(19);
    // q = 3 mod 4 with even degree: irreducible for every k
    Poly f = ints(f19, {3, 1, 0, 0, 0, 0, 1});  // X^6+X+3
    for (unsigned k = 1; k <= 4; ++k) {
        BlowupResult r = blowup_check(f, k);
        CHECK(r.verdict == BlowupVerdict::Irreducible);
        CHECK(r.composed.degree() == 6 * (1 << k));
    }
    CHECK(blowup_check(f, 3).composed == ints(f19, [] {
              std::vector<long> v(49, 0);
              v[0] = 3;
              v[8] = 1;
              v[48] = 1;
              return v;
          }()));

    // q = 3 mod 4 with odd degree: k = 1 works, k >= 2 fails
    Poly u = ints(f19, {1, 1, 0, 1});
    CHECK(blowup_check(u, 1).verdict == BlowupVerdict::Irreducible);
    CHECK(blowup_check(u, 2).verdict == BlowupVerdict::Reducible);
    CHECK(blowup_check(u, 3).verdict == BlowupVerdict::Reducible);

    // q = 1 mod 4: irreducible for every k regardless of parity
    auto f13 = FieldCtx::prime(13);
    Poly g = ints(f13, {11, 1});  // X - 2; norm 2 is a non-square mod 13
    CHECK(blowup_check(g, 1).verdict == BlowupVerdict::Irreducible);
    CHECK(blowup_check(g, 2).verdict == BlowupVerdict::Irreducible);
    CHECK(blowup_check(g, 4).verdict == BlowupVerdict::Irreducible);
}

TEST_CASE("blow-up verdicts agree with direct irreducibility testing") {
    std::mt19937_64 rng(47);
    for (long p : {13, 19}) {
        auto ctx = FieldCtx::prime(p);
        int cases = 0;
        while (cases < 40) {
            Poly f = testgen::random_irreducible(ctx, 1 + static_cast<int>(rng() % 3), rng);
            if (f.is_x() || norm_const(f).is_square()) continue;
            ++cases;
            for (unsigned k = 1; k <= 2; ++k) {
                BlowupResult r = blowup_check(f, k);
                CHECK(is_irreducible(r.composed) == (r.verdict == BlowupVerdict::Irreducible));
            }
        }
    }
}

TEST_CASE("blow-up validates its hypotheses") {
    auto f19 = FieldCtx::prime(19);
    Poly h = ints(f19, {1, 0, 1, 0, 0, 0, 1});
    CHECK_THROWS_AS(blowup_check(h, 2), NormIsSquare);  // norm 1 is a square
    CHECK_THROWS_AS(blowup_check(ints(f19, {2, 3, 1}), 2), NotIrreducible);
    Poly u = ints(f19, {1, 1, 0, 1});
    CHECK_THROWS_AS(blowup_check(u, 0), InvalidArgument);
    CHECK_THROWS_AS(blowup_check(u, 25), InvalidArgument);  // degree would overflow the guard
}

TEST_CASE("descent splits the doubled polynomial into the worked conjugate pairs") {
    auto f5 = FieldCtx::prime(5);
    auto [a1, a2] = descend(ints(f5, {1, 1}));  // X - 4
    CHECK(a1 == ints(f5, {3, 1}));  // X - 2 first under the symmetric order
    CHECK(a2 == ints(f5, {2, 1}));  // X + 2
    auto [b1, b2] = descend(ints(f5, {4, 1}));  // X - 1
    CHECK(b1 == ints(f5, {4, 1}));  // X - 1
    CHECK(b2 == ints(f5, {1, 1}));  // X + 1
}

TEST_CASE("descent inverts the squaring step") {
    auto f19 = FieldCtx::prime(19);
    Poly c = worked_sextic(f19);
    Poly a = step(c);
    REQUIRE(norm_const(a).is_square());
    auto [first, second] = descend(a);
    const bool c_first = first == c && second == negate_arg(c);
    const bool c_second = second == c && first == negate_arg(c);
    CHECK((c_first || c_second));
}

TEST_CASE("descent output is deterministic across seeds") {
    auto f19 = FieldCtx::prime(19);
    Poly a = step(worked_sextic(f19));
    auto r1 = descend(a, 1);
    auto r2 = descend(a, 2);
    auto r3 = descend(a, 987654321);
    CHECK(r1 == r2);
    CHECK(r1 == r3);
}

TEST_CASE("descent validates norm and irreducibility") {
    auto f19 = FieldCtx::prime(19);
    CHECK_THROWS_AS(descend(ints(f19, {1, 1, 0, 1})), NormNonSquare);  // norm 18
    CHECK_THROWS_AS(descend(ints(f19, {2, 3, 1})), NotIrreducible);
    CHECK_THROWS_AS(descend(Poly::x(f19)), PolyIsX);
}

TEST_CASE("the step of any irreducible has a square norm constant") {
    // so descend(step(c)) never raises NormNonSquare
    std::mt19937_64 rng(48);
    for (long p : {5, 13, 19}) {
        auto ctx = FieldCtx::prime(p);
        for (int i = 0; i < 60; ++i) {
            Poly c = testgen::random_irreducible(ctx, 1 + static_cast<int>(rng() % 4), rng);
            CHECK(norm_const(step(c)).is_square());
        }
    }
}

TEST_CASE("descent round-trips the step on random irreducibles") {
    std::mt19937_64 rng(49);
    auto f13 = FieldCtx::prime(13);
    int cases = 0;
    while (cases < 50) {
        Poly c = testgen::random_irreducible(f13, 1 + static_cast<int>(rng() % 3), rng);
        if (!coeff_profile(c).has_odd_nonzero) continue;  // step would square
        ++cases;
        Poly a = step(c);
        auto [first, second] = descend(a);
        CHECK(second == negate_arg(first));
        CHECK((first == c || second == c));
        CHECK(symmetric_less(first, second));
    }
}

TEST_CASE("the shift sweep reproduces the small-field table") {
    auto f5 = FieldCtx::prime(5);
    // base: X^4 + X^2 + 2 = U(X^2) for U = X^2+X+2 (norm 2, a non-square)
    Poly base = ints(f5, {2, 0, 1, 0, 1});
    REQUIRE(is_irreducible(base));
    SweepReport report = sweep_shifts(base);
    CHECK(report.base == base);
    REQUIRE(report.rows.size() == 4);

    const std::vector<long> expect_order{312, 624, 624, 312};
    const std::vector<uint64_t> expect_total{6, 7, 7, 6};
    for (size_t i = 0; i < 4; ++i) {
        CHECK(report.rows[i].a == f5->element(static_cast<long>(i + 1)));
        CHECK(report.rows[i].order.value == expect_order[i]);
        CHECK(report.rows[i].total == expect_total[i]);
        uint64_t sum = 0;
        for (const auto& [w, count] : report.rows[i].weights) sum += count;
        CHECK(sum == report.rows[i].total);
    }
    CHECK(report.rows[0].weights == std::map<unsigned, uint64_t>{{4, 3}, {5, 3}});
    CHECK(report.rows[1].weights == std::map<unsigned, uint64_t>{{4, 4}, {5, 3}});
    // mirror symmetry: a and -a rows agree when their orders agree
    CHECK(report.rows[0].weights == report.rows[3].weights);
    CHECK(report.rows[1].weights == report.rows[2].weights);
}

TEST_CASE("the shift sweep is independent of the thread count") {
    auto f19 = FieldCtx::prime(19);
    Poly h = ints(f19, {1, 0, 1, 0, 0, 0, 1});
    SweepReport serial = sweep_shifts(h, 1);
    SweepReport parallel = sweep_shifts(h, 4);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].a == parallel.rows[i].a);
        CHECK(serial.rows[i].order.value == parallel.rows[i].order.value);
        CHECK(serial.rows[i].total == parallel.rows[i].total);
        CHECK(serial.rows[i].weights == parallel.rows[i].weights);
    }
}

TEST_CASE("the shift sweep validates its base polynomial") {
    auto f5 = FieldCtx::prime(5);
    // odd coefficient present
    CHECK_THROWS_AS(sweep_shifts(ints(f5, {2, 1, 1})), InvalidSweepBase);
    // reducible
    CHECK_THROWS_AS(sweep_shifts(ints(f5, {4, 0, 1})), NotIrreducible);
    // half the degree shares a factor with q: find a fully even irreducible
    // of degree 10 over GF(5) by doubling a quintic with non-square norm
    std::mt19937_64 rng(50);
    for (;;) {
        Poly u = testgen::random_irreducible(f5, 5, rng);
        if (norm_const(u).is_square()) continue;
        Poly b = compose_x_squared(u);
        REQUIRE(is_irreducible(b));
        CHECK_THROWS_AS(sweep_shifts(b), InvalidSweepBase);
        break;
    }
}
