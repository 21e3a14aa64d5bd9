#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffiter/poly.hpp"

namespace ffiter {

// A positive integer with its full prime factorization and 2-adic split
// value = 2^r * t, t odd.
struct FactoredOrder {
    mpz_class value = 1;
    std::vector<std::pair<mpz_class, unsigned>> factors;  // primes ascending
    unsigned r = 0;   // exponent of 2 in value
    mpz_class t = 1;  // odd part

    // "2^3 * 3^3 * 7^3 * 127"; "1" for the empty factorization.
    std::string factor_str() const;
    bool operator==(const FactoredOrder& o) const { return value == o.value; }
};

// Deterministic irreducibility test: X^{q^n} == X mod f and, for every prime
// l dividing n, gcd(X^{q^{n/l}} - X, f) = 1.  Requires monic nonconstant
// input (NotMonic / ConstantInput).
bool is_irreducible(const Poly& f);

// Complete factorization by trial division up to 10^5 followed by Pollard rho
// (Brent variant, deterministic parameter sequence).  The rho stage counts
// iterations against a budget and throws FactorizationBudgetExceeded instead
// of returning partial results.
FactoredOrder factor_integer(const mpz_class& n);

// Rho iteration budget; the default is ~10^7, overridable via the
// FFITER_FACTOR_BUDGET environment variable (read once) or programmatically.
uint64_t factor_budget();
void set_factor_budget(uint64_t budget);

// Order of a monic irreducible f != X: the least e > 0 with X^e == 1 mod f,
// computed by factoring q^n - 1 and stripping primes.  Throws NotIrreducible,
// PolyIsX, FactorizationBudgetExceeded.
FactoredOrder poly_order(const Poly& f);

// Least e > 0 with base^e == 1 (mod t), for gcd(base, t) = 1; order modulo 1
// is 1 by convention.  Throws NotCoprime, FactorizationBudgetExceeded.
mpz_class mult_order(const mpz_class& base, const mpz_class& t);

// (-1)^n f(0) for f of degree n >= 1 — the norm of any root of a monic
// irreducible f.  Throws ConstantInput.
FieldElement norm_const(const Poly& f);

}  // namespace ffiter
