#include "ffiter/oracle.hpp"

#include <cstdint>

#include "ffiter/irred.hpp"

namespace ffiter::oracle {

namespace {

// Self-contained word-sized polynomial helpers for the exhaustive scans, so
// the oracle's inner loops stay independent of the library's dispatch logic.
using Words = std::vector<uint64_t>;

Words to_words(const Poly& f) {
    Words w(f.coeffs().size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = f.coeffs()[i].digits()[0].get_ui();
    return w;
}

Poly from_words(const FieldCtxPtr& ctx, const Words& w) {
    std::vector<FieldElement> coeffs;
    coeffs.reserve(w.size());
    for (uint64_t v : w) coeffs.push_back(ctx->element(mpz_class(v)));
    return Poly(ctx, std::move(coeffs));
}

// Divides f by the monic divisor g; returns true (and the quotient) on exact
// division.
bool divexact_words(const Words& f, const Words& g, uint64_t p, Words& quotient) {
    if (f.size() < g.size()) return false;
    Words rem = f;
    const size_t dg = g.size() - 1;
    quotient.assign(f.size() - dg, 0);
    for (size_t k = rem.size(); k-- > dg;) {
        const uint64_t lead = rem[k];
        if (lead == 0) continue;
        quotient[k - dg] = lead;
        for (size_t j = 0; j <= dg; ++j) {
            const uint64_t t = static_cast<uint64_t>(static_cast<unsigned __int128>(lead) * g[j] % p);
            const uint64_t cur = rem[k - dg + j];
            rem[k - dg + j] = cur >= t ? cur - t : cur + p - t;
        }
    }
    for (size_t j = 0; j < dg; ++j) {
        if (rem[j] != 0) return false;
    }
    return true;
}

}  // namespace

ExtensionElement::ExtensionElement(Poly modulus, const Poly& residue) : mod_(std::move(modulus)), res_(mod_.ctx()) {
    if (mod_.degree() < 1 || !mod_.is_monic()) {
        throw InvalidArgument("InvalidArgument: ambient modulus must be monic of degree >= 1");
    }
    res_ = poly_mod(residue, mod_);
}

ExtensionElement ExtensionElement::generator(const Poly& modulus) {
    return ExtensionElement(modulus, Poly::x(modulus.ctx()));
}

ExtensionElement ExtensionElement::operator+(const ExtensionElement& o) const {
    return ExtensionElement(mod_, res_ + o.res_);
}

ExtensionElement ExtensionElement::operator-(const ExtensionElement& o) const {
    return ExtensionElement(mod_, res_ - o.res_);
}

ExtensionElement ExtensionElement::operator*(const ExtensionElement& o) const {
    return ExtensionElement(mod_, poly_mod(res_ * o.res_, mod_));
}

ExtensionElement ExtensionElement::pow(const mpz_class& e) const {
    if (e < 0) throw InvalidArgument("InvalidArgument: negative exponent");
    ExtensionElement acc(mod_, Poly::one(mod_.ctx()));
    if (e == 0) return acc;
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = acc * acc;
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * *this;
    }
    return acc;
}

ExtensionElement ExtensionElement::frobenius() const { return pow(mod_.ctx()->q()); }

std::vector<std::pair<Poly, unsigned>> bf_factor_poly(const Poly& f) {
    if (f.is_zero()) throw InvalidArgument("InvalidArgument: cannot factor the zero polynomial");
    const auto& ctx = f.ctx();
    const mpz_class& q = ctx->q();
    const int deg = f.degree();

    mpz_class candidates = 0, power = 1;
    for (int d = 1; 2 * d <= deg; ++d) {
        power *= q;
        candidates += power;
    }
    const bool small_scan = candidates <= 1000000;
    const bool word_scan = ctx->word_sized() && q <= 19 && deg <= 12;
    if (!small_scan && !word_scan) {
        throw TooLarge("TooLarge: exhaustive factorization guard exceeded");
    }

    std::vector<std::pair<Poly, unsigned>> out;
    if (deg == 0) return out;

    if (ctx->word_sized()) {
        const uint64_t p = ctx->p_word();
        Words rem = to_words(monic(f));
        auto deg_rem = [&rem] { return rem.size() - 1; };
        for (size_t d = 1; 2 * d <= deg_rem(); ++d) {
            // Odometer over the d lower coefficients of a monic candidate,
            // digit 0 fastest.
            Words cand(d + 1, 0);
            cand[d] = 1;
            for (;;) {
                unsigned mult = 0;
                Words quo;
                while (deg_rem() >= d && divexact_words(rem, cand, p, quo)) {
                    rem = quo;
                    ++mult;
                }
                if (mult > 0) out.emplace_back(from_words(ctx, cand), mult);
                if (2 * d > deg_rem()) break;
                size_t pos = 0;
                while (pos < d && cand[pos] + 1 == p) cand[pos++] = 0;
                if (pos == d) break;  // odometer wrapped: this degree is exhausted
                ++cand[pos];
            }
        }
        if (deg_rem() >= 1) out.emplace_back(from_words(ctx, rem), 1u);
        return out;
    }

    Poly rem = monic(f);
    for (int d = 1; 2 * d <= rem.degree(); ++d) {
        mpz_class count;
        mpz_pow_ui(count.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
        for (mpz_class idx = 0; idx < count && 2 * d <= rem.degree(); ++idx) {
            std::vector<FieldElement> coeffs;
            mpz_class rest = idx;
            for (int i = 0; i < d; ++i) {
                coeffs.push_back(ctx->element_from_index(rest % q));
                rest /= q;
            }
            coeffs.push_back(ctx->one());
            const Poly cand(ctx, std::move(coeffs));
            unsigned mult = 0;
            for (;;) {
                if (rem.degree() < cand.degree()) break;
                auto [quo, r] = poly_divmod(rem, cand);
                if (!r.is_zero()) break;
                rem = std::move(quo);
                ++mult;
            }
            if (mult > 0) out.emplace_back(cand, mult);
        }
    }
    if (rem.degree() >= 1) out.emplace_back(rem, 1u);
    return out;
}

mpz_class bf_order(const Poly& f) {
    if (f.is_x()) throw PolyIsX("PolyIsX: X has no multiplicative order");
    mpz_class bound;
    mpz_pow_ui(bound.get_mpz_t(), f.ctx()->q().get_mpz_t(), static_cast<unsigned long>(std::max(f.degree(), 0)));
    bound -= 1;
    if (bound > 100000000) throw TooLarge("TooLarge: iteration guard for brute-force order");
    if (!is_irreducible(f)) throw NotIrreducible("NotIrreducible: brute-force order needs an irreducible input");
    if (f.degree() == 1) {
        // Root is -c0; multiply it out directly.
        const FieldElement root = -f.coeff(0);
        FieldElement acc = root;
        mpz_class e = 1;
        while (!acc.is_one()) {
            acc = acc * root;
            ++e;
        }
        return e;
    }

    if (f.ctx()->word_sized()) {
        const uint64_t p = f.ctx()->p_word();
        const Words mod = to_words(f);
        const size_t n = mod.size() - 1;
        Words w(n, 0);
        w[1] = 1;  // the residue X
        mpz_class e = 1;
        auto is_one = [&] {
            if (w[0] != 1) return false;
            for (size_t i = 1; i < n; ++i) {
                if (w[i] != 0) return false;
            }
            return true;
        };
        while (!is_one()) {
            // multiply by X, then fold the overflowing top term through the
            // monic modulus
            const uint64_t top = w[n - 1];
            for (size_t i = n - 1; i > 0; --i) w[i] = w[i - 1];
            w[0] = 0;
            if (top != 0) {
                for (size_t i = 0; i < n; ++i) {
                    const uint64_t t = static_cast<uint64_t>(static_cast<unsigned __int128>(top) * mod[i] % p);
                    w[i] = w[i] >= t ? w[i] - t : w[i] + p - t;
                }
            }
            ++e;
        }
        return e;
    }

    const Poly x = Poly::x(f.ctx());
    Poly w = x;
    const Poly one = Poly::one(f.ctx());
    mpz_class e = 1;
    while (w != one) {
        w = poly_mod(w * x, f);
        ++e;
    }
    return e;
}

Poly min_poly_of_element(const ExtensionElement& beta) {
    const auto& ctx = beta.modulus().ctx();
    std::vector<ExtensionElement> orbit{beta};
    for (ExtensionElement conj = beta.frobenius(); conj != beta; conj = conj.frobenius()) {
        orbit.push_back(conj);
    }

    const ExtensionElement one(beta.modulus(), Poly::one(ctx));
    std::vector<ExtensionElement> prod{one};  // coefficients of prod(Y - b_i), ascending in Y
    for (const auto& root : orbit) {
        std::vector<ExtensionElement> next(prod.size() + 1, ExtensionElement(beta.modulus(), Poly(ctx)));
        for (size_t j = 0; j < prod.size(); ++j) {
            next[j + 1] = next[j + 1] + prod[j];
            next[j] = next[j] - root * prod[j];
        }
        prod = std::move(next);
    }

    std::vector<FieldElement> coeffs;
    coeffs.reserve(prod.size());
    for (const auto& c : prod) {
        if (c.residue().degree() > 0) {
            throw CrossCheckMismatch("CrossCheckMismatch: orbit product coefficient escaped the base field");
        }
        coeffs.push_back(c.residue().coeff(0));
    }
    return Poly(ctx, std::move(coeffs));
}

}  // namespace ffiter::oracle
