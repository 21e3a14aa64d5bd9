#include "ffiter/irred.hpp"

#include <atomic>
#include <cstdlib>
#include <map>

namespace ffiter {

std::string FactoredOrder::factor_str() const {
    if (factors.empty()) return "1";
    std::string out;
    for (const auto& [prime, exp] : factors) {
        if (!out.empty()) out += " * ";
        out += prime.get_str();
        if (exp > 1) {
            out += "^";
            out += std::to_string(exp);
        }
    }
    return out;
}

bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) throw ConstantInput("ConstantInput: irreducibility needs degree >= 1");
    if (!f.is_monic()) throw NotMonic("NotMonic: irreducibility test expects a monic polynomial");
    const unsigned n = static_cast<unsigned>(f.degree());
    if (n == 1) return true;

    const Poly x = Poly::x(f.ctx());
    const mpz_class& q = f.ctx()->q();
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), n);
    if (poly_powmod(x, qn, f) != x) return false;

    unsigned rest = n;
    for (unsigned l = 2; l * l <= rest; ++l) {
        if (rest % l != 0) continue;
        while (rest % l == 0) rest /= l;
        mpz_class qk;
        mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), n / l);
        if (poly_gcd(poly_powmod(x, qk, f) - x, f).degree() != 0) return false;
    }
    if (rest > 1) {  // the largest prime divisor of n
        mpz_class qk;
        mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), n / rest);
        if (poly_gcd(poly_powmod(x, qk, f) - x, f).degree() != 0) return false;
    }
    return true;
}

namespace {

std::atomic<uint64_t> g_budget{0};

uint64_t env_default_budget() {
    static const uint64_t v = [] {
        if (const char* s = std::getenv("FFITER_FACTOR_BUDGET")) {
            char* end = nullptr;
            const unsigned long long parsed = std::strtoull(s, &end, 10);
            if (end != s && *end == '\0' && parsed > 0) return static_cast<uint64_t>(parsed);
        }
        return uint64_t{10'000'000};
    }();
    return v;
}

// Brent-cycle Pollard rho returning a nontrivial divisor of composite odd n.
// Deterministic: the polynomial offset c walks 1, 2, 3, ...  Every iteration
// of the squaring map decrements the shared budget.
mpz_class rho_brent(const mpz_class& n, uint64_t& budget) {
    auto tick = [&budget] {
        if (budget == 0) {
            throw FactorizationBudgetExceeded(
                "FactorizationBudgetExceeded: Pollard rho ran out of iterations; "
                "raise FFITER_FACTOR_BUDGET to spend more");
        }
        --budget;
    };
    for (mpz_class c = 1;; ++c) {
        mpz_class y = 2, r = 1, q = 1, g = 1, x, ys;
        const unsigned batch = 128;
        while (g == 1) {
            x = y;
            for (mpz_class i = 0; i < r; ++i) {
                tick();
                y = (y * y + c) % n;
            }
            mpz_class k = 0;
            while (k < r && g == 1) {
                ys = y;
                const mpz_class steps = std::min(mpz_class(batch), mpz_class(r - k));
                for (mpz_class i = 0; i < steps; ++i) {
                    tick();
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += steps;
            }
            r *= 2;
        }
        if (g == n) {
            // The batch overshot; replay one step at a time from the last
            // checkpoint.
            g = 1;
            while (g == 1) {
                tick();
                ys = (ys * ys + c) % n;
                mpz_gcd(g.get_mpz_t(), mpz_class(abs(x - ys)).get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n) return g;
        // This offset degenerated; try the next one.
    }
}

FactoredOrder from_factor_map(const mpz_class& value, const std::map<mpz_class, unsigned>& acc) {
    FactoredOrder out;
    out.value = value;
    out.factors.assign(acc.begin(), acc.end());
    out.r = 0;
    out.t = value;
    if (!out.factors.empty() && out.factors.front().first == 2) {
        out.r = out.factors.front().second;
        mpz_class two_part;
        mpz_pow_ui(two_part.get_mpz_t(), mpz_class(2).get_mpz_t(), out.r);
        out.t = value / two_part;
    }
    return out;
}

}  // namespace

uint64_t factor_budget() {
    const uint64_t b = g_budget.load();
    return b != 0 ? b : env_default_budget();
}

void set_factor_budget(uint64_t budget) { g_budget.store(budget); }

FactoredOrder factor_integer(const mpz_class& n) {
    if (n < 1) throw InvalidArgument("InvalidArgument: factor_integer needs n >= 1");
    std::map<mpz_class, unsigned> acc;
    mpz_class rest = n;

    auto strip = [&](unsigned long d) {
        while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
            ++acc[mpz_class(d)];
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
        }
    };
    strip(2);
    for (unsigned long d = 3; d <= 100000; d += 2) {
        if (rest == 1) break;
        if (mpz_cmp_ui(rest.get_mpz_t(), d * d) < 0) break;  // remaining part is prime
        strip(d);
    }

    if (rest > 1) {
        // No divisor up to 10^5 survives, so anything below 10^10 is prime.
        std::vector<mpz_class> pending{rest};
        uint64_t budget = factor_budget();
        while (!pending.empty()) {
            mpz_class m = std::move(pending.back());
            pending.pop_back();
            if (mpz_cmp_ui(m.get_mpz_t(), 1) == 0) continue;
            if (m < 10000000000_mpz || detail::is_probable_prime(m)) {
                ++acc[m];
                continue;
            }
            mpz_class d = rho_brent(m, budget);
            pending.push_back(m / d);
            pending.push_back(std::move(d));
        }
    }
    return from_factor_map(n, acc);
}

FactoredOrder poly_order(const Poly& f) {
    if (f.is_x()) throw PolyIsX("PolyIsX: X has no multiplicative order");
    if (!is_irreducible(f)) throw NotIrreducible("NotIrreducible: polynomial order needs an irreducible input");
    const unsigned n = static_cast<unsigned>(f.degree());
    mpz_class group;
    mpz_pow_ui(group.get_mpz_t(), f.ctx()->q().get_mpz_t(), n);
    group -= 1;

    const FactoredOrder full = factor_integer(group);
    const Poly x = Poly::x(f.ctx());
    const Poly one = Poly::one(f.ctx());
    mpz_class e = group;
    for (const auto& [prime, exp] : full.factors) {
        for (unsigned i = 0; i < exp; ++i) {
            mpz_class cand = e / prime;
            if (poly_powmod(x, cand, f) == one) {
                e = std::move(cand);
            } else {
                break;
            }
        }
    }

    std::map<mpz_class, unsigned> acc;
    for (const auto& [prime, exp] : full.factors) {
        (void)exp;
        mpz_class rest = e;
        unsigned count = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), prime.get_mpz_t())) {
            rest /= prime;
            ++count;
        }
        if (count > 0) acc[prime] = count;
    }
    return from_factor_map(e, acc);
}

mpz_class mult_order(const mpz_class& base, const mpz_class& t) {
    if (t < 1) throw InvalidArgument("InvalidArgument: mult_order needs a positive modulus");
    if (base < 2) throw InvalidArgument("InvalidArgument: mult_order needs base >= 2");
    if (t == 1) return 1;  // the trivial group
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), base.get_mpz_t(), t.get_mpz_t());
    if (g != 1) throw NotCoprime("NotCoprime: base shares a factor with the modulus");

    const FactoredOrder tf = factor_integer(t);
    mpz_class phi = 1;
    for (const auto& [prime, exp] : tf.factors) {
        mpz_class pk;
        mpz_pow_ui(pk.get_mpz_t(), prime.get_mpz_t(), exp - 1);
        phi *= pk * (prime - 1);
    }

    const FactoredOrder pf = factor_integer(phi);
    mpz_class e = phi;
    for (const auto& [prime, exp] : pf.factors) {
        for (unsigned i = 0; i < exp; ++i) {
            mpz_class cand = e / prime;
            mpz_class pw;
            mpz_powm(pw.get_mpz_t(), base.get_mpz_t(), cand.get_mpz_t(), t.get_mpz_t());
            if (pw == 1) {
                e = std::move(cand);
            } else {
                break;
            }
        }
    }
    return e;
}

FieldElement norm_const(const Poly& f) {
    if (f.degree() < 1) throw ConstantInput("ConstantInput: norm constant needs degree >= 1");
    const FieldElement c0 = f.coeff(0);
    return f.degree() % 2 == 1 ? -c0 : c0;
}

}  // namespace ffiter
