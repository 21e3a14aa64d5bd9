#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ffiter/errors.hpp"

namespace ffiter {

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

// One element of GF(p^m), stored as m digits over GF(p) in ascending powers of
// the generator (for m = 1 there is a single digit).  Digits are kept reduced
// into [0, p).  Elements remember their field; mixing fields throws
// FieldMismatch.
class FieldElement {
   public:
    FieldElement(FieldCtxPtr ctx, std::vector<mpz_class> digits);

    const FieldCtxPtr& ctx() const noexcept { return ctx_; }
    const std::vector<mpz_class>& digits() const noexcept { return d_; }

    // Value of the single digit, for prime fields.
    const mpz_class& residue() const;

    bool is_zero() const noexcept;
    bool is_one() const noexcept;

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // Multiplicative inverse; throws ZeroInversion on zero.
    FieldElement inverse() const;

    // Integer power, with 0^0 == 1 and negative exponents going through the
    // inverse (so (-1) works as a synonym for inverse() on nonzero input).
    FieldElement pow(const mpz_class& e) const;

    // Euler criterion: true iff the element is a square in the field.  Zero
    // counts as a square (0 = 0^2).
    bool is_square() const;

    std::string str() const;

   private:
    FieldCtxPtr ctx_;
    std::vector<mpz_class> d_;

    friend class FieldCtx;
};

// Immutable description of a finite field GF(p^m), p an odd prime.  Create
// through the factories and pass around by shared_ptr; every FieldElement
// keeps one alive.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
   public:
    // GF(p) for an odd prime p.  Throws InvalidField otherwise.
    static FieldCtxPtr prime(const mpz_class& p);

    // GF(p^m) with an explicit monic irreducible modulus of degree m over
    // GF(p), given as m+1 ascending coefficients.  Throws InvalidField when p
    // is not an odd prime, the modulus has the wrong shape, or it is
    // reducible.  Moduli are never generated automatically.
    static FieldCtxPtr extension(const mpz_class& p, unsigned m, const std::vector<mpz_class>& modulus);

    const mpz_class& p() const noexcept { return p_; }
    unsigned m() const noexcept { return m_; }
    const mpz_class& q() const noexcept { return q_; }
    // Monic modulus digits (length m+1) for extension fields; empty for m=1.
    const std::vector<mpz_class>& modulus() const noexcept { return mod_; }

    // True when element arithmetic can run on machine words: prime field with
    // p < 2^32, so products fit in uint64_t.
    bool word_sized() const noexcept { return word_sized_; }
    uint64_t p_word() const noexcept { return p_word_; }

    bool same_field(const FieldCtx& o) const;

    FieldElement zero() const;
    FieldElement one() const;
    // Embeds an integer via the prime subfield (reduced mod p).
    FieldElement element(const mpz_class& v) const;
    FieldElement element(long v) const { return element(mpz_class(v)); }
    // Builds an element from up to m digits (ascending); digits are reduced
    // mod p.  Throws InvalidField when more than m digits are given.
    FieldElement element_from_digits(std::vector<mpz_class> digits) const;

    // Enumeration: index ranges over [0, q), digit i of the base-p expansion
    // becoming digit i of the element.  index_of inverts it.
    FieldElement element_from_index(const mpz_class& index) const;
    mpz_class index_of(const FieldElement& e) const;

   private:
    FieldCtx(mpz_class p, unsigned m, std::vector<mpz_class> modulus);

    mpz_class p_;
    unsigned m_;
    mpz_class q_;
    std::vector<mpz_class> mod_;
    bool word_sized_;
    uint64_t p_word_;

    friend class FieldElement;
};

namespace detail {
// GMP-backed probabilistic primality check (BPSW + Miller-Rabin rounds);
// never wrong on composites for word-sized inputs in practice and verified
// against trial division in the test suite.
bool is_probable_prime(const mpz_class& n);
}  // namespace detail

}  // namespace ffiter
