#pragma once
// Shared test plumbing: deterministic random generators for field elements
// and polynomials.  Every suite seeds its own std::mt19937_64 so runs are
// reproducible.

#include <random>
#include <vector>

#include "ffiter/field.hpp"
#include "ffiter/irred.hpp"
#include "ffiter/poly.hpp"

namespace testgen {

using ffiter::FieldCtxPtr;
using ffiter::FieldElement;
using ffiter::Poly;

// Assumes p fits in a machine word, which holds for every field used in the
// tests except the big-prime JSON cases (those build their elements by hand).
inline FieldElement random_element(const FieldCtxPtr& ctx, std::mt19937_64& rng) {
    std::vector<mpz_class> digits;
    digits.reserve(ctx->m());
    for (unsigned i = 0; i < ctx->m(); ++i) {
        digits.emplace_back(static_cast<unsigned long>(rng() % ctx->p().get_ui()));
    }
    return ctx->element_from_digits(std::move(digits));
}

inline FieldElement random_nonzero(const FieldCtxPtr& ctx, std::mt19937_64& rng) {
    for (;;) {
        FieldElement e = random_element(ctx, rng);
        if (!e.is_zero()) return e;
    }
}

inline Poly random_monic(const FieldCtxPtr& ctx, int degree, std::mt19937_64& rng) {
    std::vector<FieldElement> coeffs;
    coeffs.reserve(static_cast<size_t>(degree) + 1);
    for (int i = 0; i < degree; ++i) coeffs.push_back(random_element(ctx, rng));
    coeffs.push_back(ctx->one());
    return Poly(ctx, std::move(coeffs));
}

// Any polynomial, possibly zero, of degree <= max_degree.
inline Poly random_poly(const FieldCtxPtr& ctx, int max_degree, std::mt19937_64& rng) {
    const int degree = static_cast<int>(rng() % static_cast<uint64_t>(max_degree + 2)) - 1;
    if (degree < 0) return Poly(ctx);
    std::vector<FieldElement> coeffs;
    for (int i = 0; i < degree; ++i) coeffs.push_back(random_element(ctx, rng));
    coeffs.push_back(random_nonzero(ctx, rng));
    return Poly(ctx, std::move(coeffs));
}

// Monic irreducible of exact degree, never equal to X (so the result is
// usable as an order/step input).
inline Poly random_irreducible(const FieldCtxPtr& ctx, int degree, std::mt19937_64& rng) {
    for (;;) {
        Poly f = random_monic(ctx, degree, rng);
        if (!f.is_x() && ffiter::is_irreducible(f)) return f;
    }
}

}  // namespace testgen
