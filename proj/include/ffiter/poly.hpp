#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffiter/field.hpp"

namespace ffiter {

// Dense univariate polynomial over a fixed field.  Coefficients are stored
// degree-ascending with the leading one nonzero; the zero polynomial is the
// empty sequence (degree() == -1).  Values are immutable: every operation
// returns a fresh polynomial.
class Poly {
   public:
    explicit Poly(FieldCtxPtr ctx) : ctx_(std::move(ctx)) {}
    // Trims trailing zeros; coefficients must all belong to ctx.
    Poly(FieldCtxPtr ctx, std::vector<FieldElement> coeffs);

    // Convenience builders (ints are reduced into the field).
    static Poly from_ints(const FieldCtxPtr& ctx, const std::vector<long>& coeffs);
    static Poly x(const FieldCtxPtr& ctx);
    static Poly one(const FieldCtxPtr& ctx);
    static Poly constant(const FieldElement& c);

    const FieldCtxPtr& ctx() const noexcept { return ctx_; }
    const std::vector<FieldElement>& coeffs() const noexcept { return c_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_monic() const;
    bool is_x() const;
    const FieldElement& leading() const;
    // Coefficient c_i, zero beyond the degree.
    FieldElement coeff(size_t i) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const FieldElement& s) const;

    // Horner evaluation.
    FieldElement operator()(const FieldElement& x) const;

    // Human-readable, degree-descending (same notation the CLI prints).
    std::string str() const;

   private:
    FieldCtxPtr ctx_;
    std::vector<FieldElement> c_;

    void trim();
};

// Quotient and remainder with deg(rem) < deg(divisor); throws ZeroDivision
// when the divisor is zero.
std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g);
Poly poly_mod(const Poly& f, const Poly& g);

// Scales to leading coefficient 1; throws ZeroPolynomial on zero input.
Poly monic(const Poly& f);

// Monic greatest common divisor; throws BothZero when both inputs are zero.
Poly poly_gcd(const Poly& f, const Poly& g);

// base^e mod modulus by square-and-multiply; modulus must be nonconstant.
// Throws ConstantModulus, FieldMismatch; negative exponents are rejected
// (InvalidArgument).
Poly poly_powmod(const Poly& base, const mpz_class& e, const Poly& modulus);

// result(X) = a(X^2): even indices carry the coefficients, odd indices zero.
Poly compose_x_squared(const Poly& a);

// (-1)^n c(-X) for n = deg c; monic in, monic out.  Throws ZeroPolynomial.
Poly negate_arg(const Poly& c);

// result(X) = f(X+a), computed by in-place synthetic Horner passes.
Poly shift_arg(const Poly& f, const FieldElement& a);

// Inverse of compose_x_squared: some A with A(X^2) = b when every odd-index
// coefficient of b is zero, absent otherwise.
std::optional<Poly> even_decompose(const Poly& b);

struct CoeffProfile {
    unsigned weight = 0;          // number of nonzero coefficients
    bool has_odd_nonzero = false; // some c_i != 0 with i odd
};
CoeffProfile coeff_profile(const Poly& f);

// Stable textual encoding of (field, coefficients); equal polynomials over
// equal fields produce equal keys.  Used for hashing and cycle detection.
std::string canonical_key(const Poly& f);

// Strict weak order used to fix the output order of factor pairs: compares
// coefficients from the leading end down, each as its balanced representative
// in (-p/2, p/2] (digit-wise from the top for extension fields), with lower
// degree sorting first.
bool symmetric_less(const Poly& a, const Poly& b);

namespace detail {
// Reference element-wise implementations (always the arbitrary-precision
// path); the public operations dispatch to machine-word kernels when the
// field allows and must match these bit-for-bit.
Poly mul_generic(const Poly& f, const Poly& g);
Poly powmod_generic(const Poly& base, const mpz_class& e, const Poly& modulus);
}  // namespace detail

}  // namespace ffiter
