#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "ffiter/irred.hpp"
#include "ffiter/poly.hpp"

namespace ffiter {

using ordered_json = nlohmann::ordered_json;

// Text form ------------------------------------------------------------
//
// The parser accepts sums of terms like "x^6", "6x^5", "6*x^5", "- 3 x", "7",
// in any order, with ASCII whitespace anywhere between tokens and 'x' or 'X'
// for the variable.  Extension-field coefficients are written as digit
// vectors "[d0,d1,...]" (ascending powers of the field generator).  In strict
// mode (the default) a numeric literal outside [0, p) throws
// CoefficientRange; with reduce = true literals are reduced mod p.  A leading
// minus is an operator (the term is negated in the field), not part of the
// literal.  Malformed input throws ParseError.
Poly parse_poly(const std::string& text, const FieldCtxPtr& ctx, bool reduce = false);

// Degree-descending with explicit coefficients except 1, e.g.
// "x^6 + 6x^5 + 15x^4 + x^3 + 16x^2 + 8x + 3"; "0" for the zero polynomial.
std::string format_poly(const Poly& f);

// Single coefficient as the formatter prints it: the plain residue for prime
// fields (and prime-subfield values), "[d0,d1,...]" otherwise.
std::string format_element(const FieldElement& e);

// JSON wire form --------------------------------------------------------
//
//   {"field": {"p": 19, "m": 1}, "coeffs": [3, 8, 16, 1, 15, 6, 1]}
//
// Extension fields add "modulus" (ascending base-field residues, length m+1)
// and every coeffs entry becomes an m-long digit array.  Integers are JSON
// numbers when they fit in 64 bits and decimal strings otherwise; the reader
// accepts both.  Keys are emitted in fixed order; coeffs ascending with the
// last entry nonzero.  Decoding is strict: out-of-range residues throw
// CoefficientRange, structural problems ParseError.
ordered_json poly_to_json(const Poly& f);
Poly poly_from_json(const ordered_json& j);

ordered_json factored_to_json(const FactoredOrder& f);

namespace detail {
ordered_json mpz_to_json(const mpz_class& v);
mpz_class mpz_from_json(const ordered_json& j);
}  // namespace detail

}  // namespace ffiter
