#include "ffiter/format.hpp"

#include <cctype>
#include <map>

namespace ffiter {

namespace detail {

ordered_json mpz_to_json(const mpz_class& v) {
    if (v.fits_slong_p()) return ordered_json(static_cast<int64_t>(v.get_si()));
    return ordered_json(v.get_str());
}

mpz_class mpz_from_json(const ordered_json& j) {
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<int64_t>()));
    if (j.is_string()) {
        try {
            return mpz_class(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw ParseError("ParseError: malformed integer string");
        }
    }
    throw ParseError("ParseError: expected an integer (number or decimal string)");
}

}  // namespace detail

namespace {

struct TextParser {
    const std::string& s;
    const FieldCtxPtr& ctx;
    bool reduce;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() const { return i >= s.size(); }
    char peek() const { return s[i]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("ParseError: " + what + " at position " + std::to_string(i));
    }

    mpz_class literal() {
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected a number");
        return mpz_class(s.substr(start, i - start));
    }

    mpz_class checked_digit() {
        mpz_class v = literal();
        if (!reduce && v >= ctx->p()) {
            throw CoefficientRange("CoefficientRange: literal " + v.get_str() + " is outside [0, p)");
        }
        return v;
    }

    // integer or [d0,d1,...]
    FieldElement element() {
        skip_ws();
        if (!eof() && peek() == '[') {
            ++i;
            std::vector<mpz_class> digits;
            for (;;) {
                skip_ws();
                digits.push_back(checked_digit());
                skip_ws();
                if (eof()) fail("unterminated digit vector");
                if (peek() == ',') {
                    ++i;
                    continue;
                }
                if (peek() == ']') {
                    ++i;
                    break;
                }
                fail("expected ',' or ']'");
            }
            if (digits.size() > ctx->m()) fail("more digits than the extension degree");
            return ctx->element_from_digits(std::move(digits));
        }
        return ctx->element_from_digits({checked_digit()});
    }

    unsigned long exponent() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected an exponent");
        const std::string digits = s.substr(start, i - start);
        if (digits.size() > 7) fail("exponent too large");
        const unsigned long e = std::stoul(digits);
        if (e > 1000000) fail("exponent too large");
        return e;
    }

    Poly run() {
        std::map<unsigned long, FieldElement> terms;
        bool first = true;
        skip_ws();
        if (eof()) fail("empty input");
        while (!eof()) {
            bool negative = false;
            bool saw_sign = false;
            for (;;) {
                skip_ws();
                if (eof()) fail("dangling operator");
                if (peek() == '+') {
                    ++i;
                    saw_sign = true;
                } else if (peek() == '-') {
                    ++i;
                    negative = !negative;
                    saw_sign = true;
                } else {
                    break;
                }
            }
            if (!first && !saw_sign) fail("expected '+' or '-' between terms");

            bool have_coeff = false;
            FieldElement coeff = ctx->one();
            if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '[') {
                coeff = element();
                have_coeff = true;
                skip_ws();
            }
            bool saw_star = false;
            if (!eof() && peek() == '*') {
                if (!have_coeff) fail("'*' without a coefficient");
                ++i;
                saw_star = true;
                skip_ws();
            }
            unsigned long exp = 0;
            if (!eof() && (peek() == 'x' || peek() == 'X')) {
                ++i;
                exp = 1;
                skip_ws();
                if (!eof() && peek() == '^') {
                    ++i;
                    exp = exponent();
                }
            } else {
                if (saw_star) fail("'*' must be followed by the variable");
                if (!have_coeff) fail("expected a term");
            }

            if (negative) coeff = -coeff;
            auto it = terms.find(exp);
            if (it == terms.end()) {
                terms.emplace(exp, coeff);
            } else {
                it->second += coeff;
            }
            first = false;
            skip_ws();
        }

        std::vector<FieldElement> coeffs(terms.empty() ? 0 : terms.rbegin()->first + 1, ctx->zero());
        for (const auto& [exp, c] : terms) coeffs[exp] = c;
        return Poly(ctx, std::move(coeffs));
    }
};

}  // namespace

Poly parse_poly(const std::string& text, const FieldCtxPtr& ctx, bool reduce) {
    TextParser parser{text, ctx, reduce};
    return parser.run();
}

std::string format_element(const FieldElement& e) {
    const auto& digits = e.digits();
    bool in_prime_subfield = true;
    for (size_t i = 1; i < digits.size(); ++i) {
        if (digits[i] != 0) {
            in_prime_subfield = false;
            break;
        }
    }
    if (in_prime_subfield) return digits[0].get_str();
    std::string out = "[";
    for (size_t i = 0; i < digits.size(); ++i) {
        if (i) out += ",";
        out += digits[i].get_str();
    }
    return out + "]";
}

std::string format_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (size_t i = f.coeffs().size(); i-- > 0;) {
        const FieldElement& c = f.coeffs()[i];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += format_element(c);
            continue;
        }
        if (!c.is_one()) out += format_element(c);
        out += "x";
        if (i > 1) {
            out += "^";
            out += std::to_string(i);
        }
    }
    return out;
}

std::string Poly::str() const { return format_poly(*this); }

ordered_json poly_to_json(const Poly& f) {
    const auto& ctx = f.ctx();
    ordered_json field;
    field["p"] = detail::mpz_to_json(ctx->p());
    field["m"] = ctx->m();
    if (ctx->m() > 1) {
        ordered_json mod = ordered_json::array();
        for (const auto& d : ctx->modulus()) mod.push_back(detail::mpz_to_json(d));
        field["modulus"] = std::move(mod);
    }

    ordered_json coeffs = ordered_json::array();
    for (const auto& c : f.coeffs()) {
        if (ctx->m() == 1) {
            coeffs.push_back(detail::mpz_to_json(c.digits()[0]));
        } else {
            ordered_json digits = ordered_json::array();
            for (const auto& d : c.digits()) digits.push_back(detail::mpz_to_json(d));
            coeffs.push_back(std::move(digits));
        }
    }

    ordered_json j;
    j["field"] = std::move(field);
    j["coeffs"] = std::move(coeffs);
    return j;
}

namespace {

mpz_class checked_residue(const ordered_json& j, const mpz_class& p) {
    const mpz_class v = detail::mpz_from_json(j);
    if (v < 0 || v >= p) {
        throw CoefficientRange("CoefficientRange: residue " + v.get_str() + " is outside [0, p)");
    }
    return v;
}

}  // namespace

Poly poly_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("coeffs")) {
        throw ParseError("ParseError: expected an object with \"field\" and \"coeffs\"");
    }
    const auto& jf = j.at("field");
    if (!jf.is_object() || !jf.contains("p")) throw ParseError("ParseError: \"field\" needs \"p\"");
    const mpz_class p = detail::mpz_from_json(jf.at("p"));
    unsigned m = 1;
    if (jf.contains("m")) {
        if (!jf.at("m").is_number_unsigned() && !jf.at("m").is_number_integer()) {
            throw ParseError("ParseError: \"m\" must be an integer");
        }
        const int64_t raw = jf.at("m").get<int64_t>();
        if (raw < 1 || raw > 1000) throw ParseError("ParseError: \"m\" out of range");
        m = static_cast<unsigned>(raw);
    }

    FieldCtxPtr ctx;
    if (m == 1) {
        ctx = FieldCtx::prime(p);
    } else {
        if (!jf.contains("modulus") || !jf.at("modulus").is_array()) {
            throw ParseError("ParseError: extension fields need a \"modulus\" array");
        }
        std::vector<mpz_class> mod;
        for (const auto& d : jf.at("modulus")) mod.push_back(checked_residue(d, p));
        ctx = FieldCtx::extension(p, m, mod);
    }

    const auto& jc = j.at("coeffs");
    if (!jc.is_array()) throw ParseError("ParseError: \"coeffs\" must be an array");
    std::vector<FieldElement> coeffs;
    coeffs.reserve(jc.size());
    for (const auto& entry : jc) {
        if (m == 1) {
            coeffs.push_back(ctx->element_from_digits({checked_residue(entry, p)}));
        } else {
            if (!entry.is_array() || entry.size() > m) {
                throw ParseError("ParseError: coefficient must be a digit array of length <= m");
            }
            std::vector<mpz_class> digits;
            for (const auto& d : entry) digits.push_back(checked_residue(d, p));
            coeffs.push_back(ctx->element_from_digits(std::move(digits)));
        }
    }
    if (!coeffs.empty() && coeffs.back().is_zero()) {
        throw ParseError("ParseError: the last coefficient must be nonzero");
    }
    return Poly(ctx, std::move(coeffs));
}

ordered_json factored_to_json(const FactoredOrder& f) {
    ordered_json j;
    j["value"] = detail::mpz_to_json(f.value);
    ordered_json factors = ordered_json::array();
    for (const auto& [prime, exp] : f.factors) {
        factors.push_back(ordered_json::array({detail::mpz_to_json(prime), exp}));
    }
    j["factors"] = std::move(factors);
    j["r"] = f.r;
    j["t"] = detail::mpz_to_json(f.t);
    return j;
}

}  // namespace ffiter
