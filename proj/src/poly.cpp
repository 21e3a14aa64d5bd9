#include "ffiter/poly.hpp"

#include <algorithm>
#include <cstdint>

namespace ffiter {

namespace {

void ensure_same_ctx(const Poly& a, const Poly& b) {
    if (a.ctx() == b.ctx() || a.ctx()->same_field(*b.ctx())) return;
    throw FieldMismatch("FieldMismatch: polynomials over different fields");
}

// ---- machine-word kernels (prime fields with p < 2^32) -----------------

std::vector<uint64_t> to_words(const Poly& f) {
    std::vector<uint64_t> w(f.coeffs().size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = f.coeffs()[i].digits()[0].get_ui();
    return w;
}

Poly from_words(const FieldCtxPtr& ctx, const std::vector<uint64_t>& w) {
    std::vector<FieldElement> coeffs;
    coeffs.reserve(w.size());
    for (uint64_t v : w) coeffs.push_back(ctx->element(mpz_class(v)));
    return Poly(ctx, std::move(coeffs));
}

std::vector<uint64_t> mul_words(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
    }
    std::vector<uint64_t> out(acc.size());
    for (size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<uint64_t>(acc[k] % p);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// In-place remainder by a monic divisor.
void mod_words(std::vector<uint64_t>& f, const std::vector<uint64_t>& g, uint64_t p) {
    const size_t dg = g.size() - 1;
    while (f.size() > dg) {
        const uint64_t lead = f.back();
        f.pop_back();
        if (lead == 0) continue;
        const size_t shift = f.size() - dg;
        for (size_t j = 0; j < dg; ++j) {
            const uint64_t t = static_cast<uint64_t>(static_cast<unsigned __int128>(lead) * g[j] % p);
            const uint64_t cur = f[shift + j];
            f[shift + j] = cur >= t ? cur - t : cur + p - t;
        }
    }
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::vector<uint64_t> powmod_words(std::vector<uint64_t> base, const mpz_class& e, const std::vector<uint64_t>& g,
                                   uint64_t p) {
    mod_words(base, g, p);
    std::vector<uint64_t> r{1};
    if (e == 0) return r;
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = mul_words(r, r, p);
        mod_words(r, g, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) {
            r = mul_words(r, base, p);
            mod_words(r, g, p);
        }
    }
    return r;
}

void check_powmod_args(const Poly& base, const mpz_class& e, const Poly& modulus) {
    ensure_same_ctx(base, modulus);
    if (modulus.degree() < 1) throw ConstantModulus("ConstantModulus: modulus must be nonconstant");
    if (e < 0) throw InvalidArgument("InvalidArgument: negative exponent in poly_powmod");
}

}  // namespace

Poly::Poly(FieldCtxPtr ctx, std::vector<FieldElement> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    for (const auto& c : c_) {
        if (c.ctx() != ctx_ && !c.ctx()->same_field(*ctx_)) {
            throw FieldMismatch("FieldMismatch: coefficient from a different field");
        }
    }
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::from_ints(const FieldCtxPtr& ctx, const std::vector<long>& coeffs) {
    std::vector<FieldElement> v;
    v.reserve(coeffs.size());
    for (long c : coeffs) v.push_back(ctx->element(c));
    return Poly(ctx, std::move(v));
}

Poly Poly::x(const FieldCtxPtr& ctx) { return from_ints(ctx, {0, 1}); }

Poly Poly::one(const FieldCtxPtr& ctx) { return from_ints(ctx, {1}); }

Poly Poly::constant(const FieldElement& c) { return Poly(c.ctx(), {c}); }

bool Poly::is_monic() const { return !c_.empty() && c_.back().is_one(); }

bool Poly::is_x() const { return c_.size() == 2 && c_[0].is_zero() && c_[1].is_one(); }

const FieldElement& Poly::leading() const {
    if (c_.empty()) throw ZeroPolynomial("ZeroPolynomial: the zero polynomial has no leading coefficient");
    return c_.back();
}

FieldElement Poly::coeff(size_t i) const { return i < c_.size() ? c_[i] : ctx_->zero(); }

bool Poly::operator==(const Poly& o) const {
    if (ctx_ != o.ctx_ && !ctx_->same_field(*o.ctx_)) return false;
    return c_ == o.c_;
}

Poly Poly::operator-() const {
    std::vector<FieldElement> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(-c);
    return Poly(ctx_, std::move(out));
}

Poly Poly::operator+(const Poly& o) const {
    ensure_same_ctx(*this, o);
    std::vector<FieldElement> out;
    const size_t n = std::max(c_.size(), o.c_.size());
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(coeff(i) + o.coeff(i));
    return Poly(ctx_, std::move(out));
}

Poly Poly::operator-(const Poly& o) const {
    ensure_same_ctx(*this, o);
    std::vector<FieldElement> out;
    const size_t n = std::max(c_.size(), o.c_.size());
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(coeff(i) - o.coeff(i));
    return Poly(ctx_, std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
    ensure_same_ctx(*this, o);
    if (is_zero() || o.is_zero()) return Poly(ctx_);
    if (ctx_->word_sized()) return from_words(ctx_, mul_words(to_words(*this), to_words(o), ctx_->p_word()));
    return detail::mul_generic(*this, o);
}

Poly Poly::operator*(const FieldElement& s) const {
    if (s.is_zero()) return Poly(ctx_);
    std::vector<FieldElement> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c * s);
    return Poly(ctx_, std::move(out));
}

FieldElement Poly::operator()(const FieldElement& x) const {
    FieldElement acc = ctx_->zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

namespace detail {

Poly mul_generic(const Poly& f, const Poly& g) {
    ensure_same_ctx(f, g);
    if (f.is_zero() || g.is_zero()) return Poly(f.ctx());
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    std::vector<FieldElement> out(a.size() + b.size() - 1, f.ctx()->zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return Poly(f.ctx(), std::move(out));
}

Poly powmod_generic(const Poly& base, const mpz_class& e, const Poly& modulus) {
    check_powmod_args(base, e, modulus);
    Poly r = Poly::one(base.ctx());
    if (e == 0) return r;
    Poly b = poly_mod(base, modulus);
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = poly_mod(mul_generic(r, r), modulus);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = poly_mod(mul_generic(r, b), modulus);
    }
    return r;
}

}  // namespace detail

std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g) {
    ensure_same_ctx(f, g);
    if (g.is_zero()) throw ZeroDivision("ZeroDivision: polynomial division by zero");
    const int df = f.degree(), dg = g.degree();
    if (df < dg) return {Poly(f.ctx()), f};
    const FieldElement linv = g.leading().inverse();
    std::vector<FieldElement> rem = f.coeffs();
    std::vector<FieldElement> quo(static_cast<size_t>(df - dg) + 1, f.ctx()->zero());
    for (int k = df; k >= dg; --k) {
        FieldElement c = rem[static_cast<size_t>(k)] * linv;
        quo[static_cast<size_t>(k - dg)] = c;
        if (c.is_zero()) continue;
        for (int j = 0; j <= dg; ++j) {
            rem[static_cast<size_t>(k - dg + j)] -= c * g.coeffs()[static_cast<size_t>(j)];
        }
    }
    return {Poly(f.ctx(), std::move(quo)), Poly(f.ctx(), std::move(rem))};
}

Poly poly_mod(const Poly& f, const Poly& g) { return poly_divmod(f, g).second; }

Poly monic(const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomial("ZeroPolynomial: cannot normalize the zero polynomial");
    if (f.is_monic()) return f;
    return f * f.leading().inverse();
}

Poly poly_gcd(const Poly& f, const Poly& g) {
    ensure_same_ctx(f, g);
    if (f.is_zero() && g.is_zero()) throw BothZero("BothZero: gcd(0, 0) is undefined");
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

Poly poly_powmod(const Poly& base, const mpz_class& e, const Poly& modulus) {
    check_powmod_args(base, e, modulus);
    if (base.ctx()->word_sized()) {
        const Poly m = monic(modulus);  // same remainders, unit-normalized divisor
        return from_words(base.ctx(), powmod_words(to_words(base), e, to_words(m), base.ctx()->p_word()));
    }
    return detail::powmod_generic(base, e, modulus);
}

Poly compose_x_squared(const Poly& a) {
    if (a.is_zero()) return a;
    std::vector<FieldElement> out(2 * a.coeffs().size() - 1, a.ctx()->zero());
    for (size_t i = 0; i < a.coeffs().size(); ++i) out[2 * i] = a.coeffs()[i];
    return Poly(a.ctx(), std::move(out));
}

Poly negate_arg(const Poly& c) {
    if (c.is_zero()) throw ZeroPolynomial("ZeroPolynomial: negate_arg needs a nonzero polynomial");
    const size_t n = static_cast<size_t>(c.degree());
    std::vector<FieldElement> out;
    out.reserve(c.coeffs().size());
    for (size_t i = 0; i < c.coeffs().size(); ++i) {
        out.push_back((n - i) % 2 == 1 ? -c.coeffs()[i] : c.coeffs()[i]);
    }
    return Poly(c.ctx(), std::move(out));
}

Poly shift_arg(const Poly& f, const FieldElement& a) {
    if (f.degree() < 1 || a.is_zero()) return f;
    if (f.ctx() != a.ctx() && !f.ctx()->same_field(*a.ctx())) {
        throw FieldMismatch("FieldMismatch: shift amount from a different field");
    }
    // Repeated synthetic Horner passes accumulate the Taylor coefficients of
    // f at -(-a): after pass i, index i holds the final coefficient.
    std::vector<FieldElement> c = f.coeffs();
    const size_t n = c.size() - 1;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = n - 1; j + 1 > i; --j) {
            c[j] += a * c[j + 1];
            if (j == 0) break;
        }
    }
    return Poly(f.ctx(), std::move(c));
}

std::optional<Poly> even_decompose(const Poly& b) {
    for (size_t i = 1; i < b.coeffs().size(); i += 2) {
        if (!b.coeffs()[i].is_zero()) return std::nullopt;
    }
    std::vector<FieldElement> out;
    out.reserve(b.coeffs().size() / 2 + 1);
    for (size_t i = 0; i < b.coeffs().size(); i += 2) out.push_back(b.coeffs()[i]);
    return Poly(b.ctx(), std::move(out));
}

CoeffProfile coeff_profile(const Poly& f) {
    CoeffProfile prof;
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        if (f.coeffs()[i].is_zero()) continue;
        ++prof.weight;
        if (i % 2 == 1) prof.has_odd_nonzero = true;
    }
    return prof;
}

std::string canonical_key(const Poly& f) {
    std::string key = f.ctx()->p().get_str();
    key += "^";
    key += std::to_string(f.ctx()->m());
    for (const auto& d : f.ctx()->modulus()) {
        key += "_";
        key += d.get_str();
    }
    key += ":";
    for (const auto& c : f.coeffs()) {
        for (const auto& d : c.digits()) {
            key += d.get_str();
            key += ".";
        }
        key += ",";
    }
    return key;
}

bool symmetric_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const mpz_class& p = a.ctx()->p();
    const mpz_class half = (p - 1) / 2;
    auto balanced = [&](const mpz_class& d) { return d > half ? mpz_class(d - p) : d; };
    for (size_t i = a.coeffs().size(); i-- > 0;) {
        const auto& da = a.coeffs()[i].digits();
        const auto& db = b.coeffs()[i].digits();
        for (size_t j = da.size(); j-- > 0;) {
            const mpz_class va = balanced(da[j]), vb = balanced(db[j]);
            if (va != vb) return va < vb;
        }
    }
    return false;
}

}  // namespace ffiter
