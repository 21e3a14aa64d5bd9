#pragma once

#include <utility>
#include <vector>

#include "ffiter/poly.hpp"

// Brute-force reference implementations for the test suite.  These are
// deliberately naive — exhaustive enumeration and step-by-step iteration —
// and share nothing with the fast paths beyond basic field/poly arithmetic.
// Hard size guards throw TooLarge rather than looping unboundedly.
namespace ffiter::oracle {

// An element of GF(q)[X]/(f): a residue polynomial of degree < deg f.
class ExtensionElement {
   public:
    ExtensionElement(Poly modulus, const Poly& residue);

    // The image of X, a root of the ambient modulus.
    static ExtensionElement generator(const Poly& modulus);

    const Poly& modulus() const noexcept { return mod_; }
    const Poly& residue() const noexcept { return res_; }
    bool is_zero() const noexcept { return res_.is_zero(); }

    bool operator==(const ExtensionElement& o) const { return res_ == o.res_; }
    bool operator!=(const ExtensionElement& o) const { return !(*this == o); }
    ExtensionElement operator+(const ExtensionElement& o) const;
    ExtensionElement operator-(const ExtensionElement& o) const;
    ExtensionElement operator*(const ExtensionElement& o) const;

    ExtensionElement pow(const mpz_class& e) const;
    // Frobenius: x^q for the base-field size q.
    ExtensionElement frobenius() const;

   private:
    Poly mod_;
    Poly res_;
};

// Monic factorization of f by trial division over all monic polynomials of
// degree <= deg(f)/2, ascending degree.  Guard: at most ~10^6 candidate
// divisors, relaxed to deg f <= 12 over q <= 19 (word-sized divisibility
// scan); beyond that throws TooLarge.
std::vector<std::pair<Poly, unsigned>> bf_factor_poly(const Poly& f);

// Least e with X^e == 1 mod f, found by iterating multiplication by X.
// Guards q^{deg f} - 1 <= 10^8; validates irreducibility (NotIrreducible).
mpz_class bf_order(const Poly& f);

// Minimal polynomial of beta over the base field: the product over the
// Frobenius orbit beta, beta^q, beta^{q^2}, ...  Coefficients are checked to
// land in the base field; the degree divides deg(modulus).
Poly min_poly_of_element(const ExtensionElement& beta);

}  // namespace ffiter::oracle
