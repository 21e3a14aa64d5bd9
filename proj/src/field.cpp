#include "ffiter/field.hpp"

#include <sstream>
#include <utility>

#include "ffiter/irred.hpp"
#include "ffiter/poly.hpp"

namespace ffiter {

namespace detail {

bool is_probable_prime(const mpz_class& n) {
    if (n < 2) return false;
    // For n <= 10^12 trial division up to sqrt(n) <= 10^6 is a proof; beyond
    // that it only strips small factors and GMP's test carries the verdict.
    if (n <= 1000000000000_mpz) {
        if (n == 2 || n == 3) return true;
        if (mpz_even_p(n.get_mpz_t())) return false;
        for (mpz_class d = 3; d * d <= n; d += 2) {
            if (n % d == 0) return false;
        }
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

}  // namespace detail

namespace {

mpz_class reduce_mod(const mpz_class& v, const mpz_class& p) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return r;
}

void require_odd_prime(const mpz_class& p) {
    if (p < 3 || mpz_even_p(p.get_mpz_t()) || !detail::is_probable_prime(p)) {
        std::ostringstream msg;
        msg << "InvalidField: p = " << p.get_str() << " is not an odd prime";
        throw InvalidField(msg.str());
    }
}

}  // namespace

FieldCtx::FieldCtx(mpz_class p, unsigned m, std::vector<mpz_class> modulus)
    : p_(std::move(p)), m_(m), mod_(std::move(modulus)) {
    mpz_pow_ui(q_.get_mpz_t(), p_.get_mpz_t(), m_);
    word_sized_ = (m_ == 1) && (p_ < mpz_class(1) << 32);
    p_word_ = word_sized_ ? static_cast<uint64_t>(p_.get_ui()) : 0;
}

FieldCtxPtr FieldCtx::prime(const mpz_class& p) {
    require_odd_prime(p);
    return FieldCtxPtr(new FieldCtx(p, 1, {}));
}

FieldCtxPtr FieldCtx::extension(const mpz_class& p, unsigned m, const std::vector<mpz_class>& modulus) {
    require_odd_prime(p);
    if (m == 0) throw InvalidField("InvalidField: extension degree m must be >= 1");
    if (m == 1) {
        if (!modulus.empty()) throw InvalidField("InvalidField: modulus given for m = 1");
        return prime(p);
    }
    if (modulus.size() != m + 1) {
        throw InvalidField("InvalidField: modulus must have m+1 coefficients");
    }
    std::vector<mpz_class> reduced;
    reduced.reserve(modulus.size());
    for (const auto& c : modulus) reduced.push_back(reduce_mod(c, p));
    if (reduced.back() != 1) throw InvalidField("InvalidField: modulus must be monic");

    // Irreducibility over the base field decides whether the quotient ring is
    // a field at all.
    auto base = prime(p);
    std::vector<FieldElement> coeffs;
    coeffs.reserve(reduced.size());
    for (const auto& c : reduced) coeffs.emplace_back(base, std::vector<mpz_class>{c});
    if (!is_irreducible(Poly(base, std::move(coeffs)))) {
        throw InvalidField("InvalidField: modulus is reducible over GF(p)");
    }
    return FieldCtxPtr(new FieldCtx(p, m, std::move(reduced)));
}

bool FieldCtx::same_field(const FieldCtx& o) const {
    return p_ == o.p_ && m_ == o.m_ && mod_ == o.mod_;
}

FieldElement FieldCtx::zero() const { return element(mpz_class(0)); }

FieldElement FieldCtx::one() const { return element(mpz_class(1)); }

FieldElement FieldCtx::element(const mpz_class& v) const {
    return FieldElement(shared_from_this(), {reduce_mod(v, p_)});
}

FieldElement FieldCtx::element_from_digits(std::vector<mpz_class> digits) const {
    if (digits.size() > m_) throw InvalidField("InvalidField: more digits than the extension degree");
    return FieldElement(shared_from_this(), std::move(digits));
}

FieldElement FieldCtx::element_from_index(const mpz_class& index) const {
    if (index < 0 || index >= q_) throw InvalidArgument("InvalidArgument: element index out of [0, q)");
    std::vector<mpz_class> digits(m_);
    mpz_class rest = index;
    for (unsigned i = 0; i < m_; ++i) {
        digits[i] = rest % p_;
        rest /= p_;
    }
    return FieldElement(shared_from_this(), std::move(digits));
}

mpz_class FieldCtx::index_of(const FieldElement& e) const {
    if (!same_field(*e.ctx())) throw FieldMismatch();
    mpz_class index = 0;
    for (size_t i = e.digits().size(); i-- > 0;) {
        index = index * p_ + e.digits()[i];
    }
    return index;
}

FieldElement::FieldElement(FieldCtxPtr ctx, std::vector<mpz_class> digits) : ctx_(std::move(ctx)) {
    if (!ctx_) throw InvalidArgument("InvalidArgument: element without a field");
    if (digits.size() > ctx_->m_) throw InvalidField("InvalidField: more digits than the extension degree");
    d_.resize(ctx_->m_);
    for (size_t i = 0; i < digits.size(); ++i) d_[i] = reduce_mod(digits[i], ctx_->p_);
}

const mpz_class& FieldElement::residue() const {
    if (ctx_->m() != 1) throw InvalidArgument("InvalidArgument: residue() is for prime fields");
    return d_[0];
}

bool FieldElement::is_zero() const noexcept {
    for (const auto& d : d_) {
        if (d != 0) return false;
    }
    return true;
}

bool FieldElement::is_one() const noexcept {
    if (d_[0] != 1) return false;
    for (size_t i = 1; i < d_.size(); ++i) {
        if (d_[i] != 0) return false;
    }
    return true;
}

namespace {

const FieldCtx& check_same(const FieldElement& a, const FieldElement& b) {
    if (a.ctx() == b.ctx() || a.ctx()->same_field(*b.ctx())) return *a.ctx();
    throw FieldMismatch("FieldMismatch: elements of different fields");
}

}  // namespace

FieldElement FieldElement::operator-() const {
    std::vector<mpz_class> out(d_.size());
    for (size_t i = 0; i < d_.size(); ++i) out[i] = d_[i] == 0 ? mpz_class(0) : mpz_class(ctx_->p() - d_[i]);
    return FieldElement(ctx_, std::move(out));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(*this, o);
    std::vector<mpz_class> out(d_.size());
    for (size_t i = 0; i < d_.size(); ++i) {
        out[i] = d_[i] + o.d_[i];
        if (out[i] >= ctx_->p()) out[i] -= ctx_->p();
    }
    return FieldElement(ctx_, std::move(out));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(*this, o);
    std::vector<mpz_class> out(d_.size());
    for (size_t i = 0; i < d_.size(); ++i) {
        out[i] = d_[i] - o.d_[i];
        if (out[i] < 0) out[i] += ctx_->p();
    }
    return FieldElement(ctx_, std::move(out));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(*this, o);
    const mpz_class& p = ctx_->p();
    const unsigned m = ctx_->m();
    if (m == 1) {
        return FieldElement(ctx_, {mpz_class(d_[0] * o.d_[0] % p)});
    }
    // Schoolbook product, then reduction by the monic modulus.
    std::vector<mpz_class> prod(2 * m - 1);
    for (unsigned i = 0; i < m; ++i) {
        if (d_[i] == 0) continue;
        for (unsigned j = 0; j < m; ++j) prod[i + j] += d_[i] * o.d_[j];
    }
    const auto& mod = ctx_->modulus();
    for (size_t k = prod.size(); k-- > m;) {
        mpz_class c = reduce_mod(prod[k], p);
        if (c == 0) continue;
        for (unsigned j = 0; j < m; ++j) prod[k - m + j] -= c * mod[j];
        prod[k] = 0;
    }
    prod.resize(m);
    return FieldElement(ctx_, std::move(prod));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

bool FieldElement::operator==(const FieldElement& o) const {
    if (ctx_ != o.ctx_ && !ctx_->same_field(*o.ctx_)) return false;
    return d_ == o.d_;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw ZeroInversion("ZeroInversion: 0 has no multiplicative inverse");
    return pow(ctx_->q() - 2);
}

FieldElement FieldElement::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement acc = ctx_->one();
    if (e == 0) return acc;  // 0^0 == 1 by convention
    FieldElement base = *this;
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = acc * acc;
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * base;
    }
    return acc;
}

bool FieldElement::is_square() const {
    if (is_zero()) return true;  // 0 = 0^2
    return pow((ctx_->q() - 1) / 2).is_one();
}

std::string FieldElement::str() const {
    if (ctx_->m() == 1) return d_[0].get_str();
    std::string out = "[";
    for (size_t i = 0; i < d_.size(); ++i) {
        if (i) out += ",";
        out += d_[i].get_str();
    }
    return out + "]";
}

}  // namespace ffiter
