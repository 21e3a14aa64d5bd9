#include "ffiter/construct.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace ffiter {

std::string stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::EvenCoefficients: return "even-coefficients";
        case StopReason::CycleDetected: return "cycle-detected";
        case StopReason::PhaseBudgetComplete: return "phase-budget-complete";
    }
    return "?";
}

namespace {

bool fully_even(const Poly& c) { return !coeff_profile(c).has_odd_nonzero; }

void check_step_input(const Poly& c) {
    if (c.degree() < 1) throw ConstantInput("ConstantInput: the squaring step needs degree >= 1");
    if (c.is_x()) throw PolyIsX("PolyIsX: the squaring step is undefined for X");
    if (!c.is_monic()) throw NotMonic("NotMonic: the squaring step expects a monic polynomial");
}

// ord(step(c)) = ord(c) / gcd(2, ord(c)): drop one factor of 2 if present.
FactoredOrder halve_order(const FactoredOrder& o) {
    if (o.r == 0) return o;
    FactoredOrder out = o;
    out.value /= 2;
    out.r -= 1;
    if (out.factors.front().second == 1) {
        out.factors.erase(out.factors.begin());
    } else {
        out.factors.front().second -= 1;
    }
    return out;
}

void check_iteration_input(const Poly& c) {
    if (c.is_x()) throw PolyIsX("PolyIsX: X cannot seed the iteration");
    if (!is_irreducible(c)) throw NotIrreducible("NotIrreducible: the iteration needs an irreducible start");
}

struct SplitMix64 {
    uint64_t state;
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

}  // namespace

namespace detail {

Poly step_formula(const Poly& c) {
    const size_t n = static_cast<size_t>(c.degree());
    const bool n_odd = n % 2 == 1;
    std::vector<FieldElement> out;
    out.reserve(n + 1);
    for (size_t j = 0; j <= n; ++j) {
        FieldElement acc = c.ctx()->zero();
        const size_t lo = 2 * j > n ? 2 * j - n : 0;
        const size_t hi = std::min(2 * j, n);
        for (size_t u = lo; u <= hi; ++u) {
            const FieldElement term = c.coeffs()[u] * c.coeffs()[2 * j - u];
            if (u % 2 == 1) {
                acc -= term;
            } else {
                acc += term;
            }
        }
        out.push_back(n_odd ? -acc : acc);
    }
    return Poly(c.ctx(), std::move(out));
}

Poly step_product(const Poly& c) {
    const Poly b = c * negate_arg(c);
    auto a = even_decompose(b);
    if (!a) throw CrossCheckMismatch("CrossCheckMismatch: squaring-step product has an odd coefficient");
    return *a;
}

}  // namespace detail

Poly step(const Poly& c, bool cross_check) {
    check_step_input(c);
    Poly a = detail::step_formula(c);
    if (cross_check && a != detail::step_product(c)) {
        throw CrossCheckMismatch("CrossCheckMismatch: squaring-step implementations disagree");
    }
    return a;
}

namespace {

std::vector<Poly> distinct_in_order(const std::vector<Poly>& polys) {
    std::vector<Poly> out;
    std::unordered_set<std::string> seen;
    for (const auto& f : polys) {
        if (seen.insert(canonical_key(f)).second) out.push_back(f);
    }
    return out;
}

}  // namespace

ConstructionTrace construction1(const Poly& c, const FactoredOrder& ord) {
    check_iteration_input(c);
    if (ord.value < 1 || poly_powmod(Poly::x(c.ctx()), ord.value, c) != Poly::one(c.ctx())) {
        throw OrderMismatch("OrderMismatch: X^ord is not 1 modulo the input");
    }

    ConstructionTrace trace;
    trace.polys.push_back(c);
    trace.orders.emplace_back(ord);

    bool even_stop = false;
    for (unsigned i = 0; i < ord.r; ++i) {
        if (fully_even(trace.polys.back())) {
            even_stop = true;
            break;
        }
        trace.polys.push_back(step(trace.polys.back()));
        trace.orders.emplace_back(halve_order(*trace.orders.back()));
    }
    // A fully-even entry with odd order would square under another step; it
    // can only be reached here when r = 0, but the guard is cheap either way.
    if (!even_stop && fully_even(trace.polys.back())) even_stop = true;

    if (even_stop) {
        trace.stop_reason = StopReason::EvenCoefficients;
        trace.distinct_polys = distinct_in_order(trace.polys);
        return trace;
    }

    const mpz_class cycle = mult_order(2, ord.t);  // 1 when t = 1
    for (mpz_class j = 1; j < cycle; ++j) {
        trace.polys.push_back(step(trace.polys.back()));
        trace.orders.emplace_back(halve_order(*trace.orders.back()));
    }
    trace.stop_reason = StopReason::PhaseBudgetComplete;
    trace.distinct_polys = distinct_in_order(trace.polys);

    // Entries from index r on form the odd-order cycle; its period divides
    // ord_t(2), the quotient being the divisor d of the degree.
    std::unordered_set<std::string> odd_keys;
    for (size_t i = ord.r; i < trace.polys.size(); ++i) odd_keys.insert(canonical_key(trace.polys[i]));
    trace.cycle_length = odd_keys.size();
    const mpz_class d = cycle / mpz_class(odd_keys.size());
    trace.d = static_cast<unsigned>(d.get_ui());
    return trace;
}

ConstructionTrace construction2(const Poly& c) {
    check_iteration_input(c);

    ConstructionTrace trace;
    trace.polys.push_back(c);
    std::unordered_map<std::string, size_t> seen{{canonical_key(c), 0}};
    for (;;) {
        if (fully_even(trace.polys.back())) {
            trace.stop_reason = StopReason::EvenCoefficients;
            break;
        }
        Poly next = step(trace.polys.back());
        trace.polys.push_back(next);
        const std::string key = canonical_key(next);
        auto it = seen.find(key);
        if (it != seen.end()) {
            trace.stop_reason = StopReason::CycleDetected;
            trace.cycle_target = it->second;
            trace.cycle_length = trace.polys.size() - 1 - it->second;
            break;
        }
        seen.emplace(std::move(key), trace.polys.size() - 1);
    }
    trace.distinct_polys = distinct_in_order(trace.polys);
    return trace;
}

bool OrderConstraint::consistent_with(const FactoredOrder& ord) const {
    if (kind == Kind::EvenStop) {
        mpz_class two_part;
        mpz_pow_ui(two_part.get_mpz_t(), mpz_class(2).get_mpz_t(), index);
        if (!mpz_divisible_p(ord.value.get_mpz_t(), two_part.get_mpz_t())) return false;
        const mpz_class v = ord.value / two_part;
        return mpz_divisible_p(odd_bound.get_mpz_t(), v.get_mpz_t()) != 0;
    }
    if (ord.r != index) return false;
    const mpz_class l = mult_order(2, ord.t);
    if (!mpz_divisible_ui_p(l.get_mpz_t(), cycle_length)) return false;
    const mpz_class d = l / mpz_class(cycle_length);
    return d <= degree && mpz_divisible_ui_p(mpz_class(degree).get_mpz_t(), d.get_ui()) != 0;
}

std::string OrderConstraint::str() const {
    std::ostringstream out;
    if (kind == Kind::EvenStop) {
        out << "order = 2^" << index << " * v with v dividing " << odd_bound.get_str();
    } else {
        out << "order = 2^" << index << " * m with m odd and ord_m(2) = " << cycle_length
            << " * d for some d dividing " << degree;
    }
    return out.str();
}

OrderConstraint infer_order(const ConstructionTrace& trace) {
    if (trace.polys.empty()) throw EmptyTrace("EmptyTrace: nothing to infer from");
    if (trace.stop_reason == StopReason::PhaseBudgetComplete) {
        throw UnsupportedTrace("UnsupportedTrace: a completed known-order run carries no inference");
    }

    OrderConstraint con;
    con.degree = static_cast<unsigned>(trace.polys.front().degree());
    con.q = trace.polys.front().ctx()->q();

    if (trace.stop_reason == StopReason::EvenCoefficients) {
        con.kind = OrderConstraint::Kind::EvenStop;
        con.index = static_cast<unsigned>(trace.polys.size() - 1);
        // A fully-even monic polynomial has even degree, so n/2 is exact.
        mpz_class half_power;
        mpz_pow_ui(half_power.get_mpz_t(), con.q.get_mpz_t(), con.degree / 2);
        con.odd_bound = 2 * (half_power - 1);
        return con;
    }

    con.kind = OrderConstraint::Kind::Cycle;
    con.index = static_cast<unsigned>(*trace.cycle_target);
    con.cycle_length = *trace.cycle_length;
    return con;
}

BlowupResult blowup_check(const Poly& f, unsigned k) {
    if (k < 1) throw InvalidArgument("InvalidArgument: the doubling exponent k must be >= 1");
    if (!is_irreducible(f)) throw NotIrreducible("NotIrreducible: blow-up needs an irreducible input");
    if (norm_const(f).is_square()) {
        throw NormIsSquare("NormIsSquare: blow-up requires a non-square norm constant");
    }
    const unsigned n = static_cast<unsigned>(f.degree());
    if (k >= 30 || (static_cast<uint64_t>(n) << k) > 1000000) {
        throw InvalidArgument("InvalidArgument: composed degree too large");
    }

    const unsigned q_mod4 = static_cast<unsigned>(mpz_class(f.ctx()->q() % 4).get_ui());
    const bool irreducible = (k == 1) || q_mod4 == 1 || (q_mod4 == 3 && n % 2 == 0);

    Poly composed = f;
    for (unsigned i = 0; i < k; ++i) composed = compose_x_squared(composed);
    return {irreducible ? BlowupVerdict::Irreducible : BlowupVerdict::Reducible, std::move(composed)};
}

std::pair<Poly, Poly> descend(const Poly& a, uint64_t seed) {
    if (a.is_x()) throw PolyIsX("PolyIsX: descent is undefined for X");
    if (!is_irreducible(a)) throw NotIrreducible("NotIrreducible: descent needs an irreducible input");
    if (!norm_const(a).is_square()) {
        throw NormNonSquare("NormNonSquare: the doubled polynomial is irreducible; nothing to split");
    }

    const auto& ctx = a.ctx();
    const size_t n = static_cast<size_t>(a.degree());
    const Poly b = compose_x_squared(a);
    const Poly one = Poly::one(ctx);
    mpz_class half_group;
    mpz_pow_ui(half_group.get_mpz_t(), ctx->q().get_mpz_t(), static_cast<unsigned long>(n));
    half_group = (half_group - 1) / 2;

    SplitMix64 rng{seed};
    for (;;) {
        // Random polynomial of degree < 2n; its (q^n-1)/2 power is +-1 modulo
        // each factor, and a sign disagreement splits b.
        std::vector<FieldElement> coeffs;
        coeffs.reserve(2 * n);
        for (size_t i = 0; i < 2 * n; ++i) {
            mpz_class idx = mpz_class(rng.next());
            idx <<= 64;
            idx |= mpz_class(rng.next());
            coeffs.push_back(ctx->element_from_index(idx % ctx->q()));
        }
        const Poly w(ctx, std::move(coeffs));
        if (w.degree() < 1) continue;
        const Poly g = poly_powmod(w, half_group, b) - one;
        if (g.is_zero()) continue;
        const Poly h = poly_gcd(g, b);
        if (h.degree() != static_cast<int>(n)) continue;

        Poly first = h;  // gcd output is monic
        Poly second = poly_divmod(b, first).first;
        if (second != negate_arg(first)) {
            throw CrossCheckMismatch("CrossCheckMismatch: cofactor is not the sign-flipped factor");
        }
        if (symmetric_less(second, first)) std::swap(first, second);
        return {std::move(first), std::move(second)};
    }
}

namespace {

SweepRow sweep_row(const Poly& h, const mpz_class& index) {
    const FieldElement a = h.ctx()->element_from_index(index);
    const Poly shifted = shift_arg(h, a);
    FactoredOrder ord = poly_order(shifted);
    ConstructionTrace trace = construction1(shifted, ord);

    SweepRow row{a, std::move(ord), trace.distinct_polys.size(), {}};
    for (const auto& f : trace.distinct_polys) ++row.weights[coeff_profile(f).weight];
    return row;
}

}  // namespace

SweepReport sweep_shifts(const Poly& h, unsigned threads) {
    if (!is_irreducible(h)) throw NotIrreducible("NotIrreducible: the sweep base must be irreducible");
    if (!fully_even(h)) throw InvalidSweepBase("InvalidSweepBase: the base must have all odd coefficients zero");
    const unsigned n = static_cast<unsigned>(h.degree()) / 2;
    if (mpz_class(n) % h.ctx()->p() == 0) {
        throw InvalidSweepBase("InvalidSweepBase: half the degree shares a factor with the field size");
    }
    if (h.ctx()->q() > 10000000) {
        throw InvalidArgument("InvalidArgument: sweep over more than 10^7 shifts");
    }

    const size_t rows = static_cast<size_t>(h.ctx()->q().get_ui()) - 1;
    std::vector<std::optional<SweepRow>> slots(rows);

    if (threads <= 1) {
        for (size_t i = 0; i < rows; ++i) slots[i] = sweep_row(h, mpz_class(i + 1));
    } else {
        std::atomic<size_t> cursor{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const size_t i = cursor.fetch_add(1);
                if (i >= rows || failed.load()) return;
                try {
                    slots[i] = sweep_row(h, mpz_class(i + 1));
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(rows));
        pool.reserve(count);
        for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    SweepReport report{h, {}};
    report.rows.reserve(rows);
    for (auto& slot : slots) report.rows.push_back(std::move(*slot));
    return report;
}

}  // namespace ffiter
