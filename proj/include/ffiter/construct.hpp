#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffiter/irred.hpp"
#include "ffiter/poly.hpp"

namespace ffiter {

// Why an iteration run ended.
enum class StopReason {
    EvenCoefficients,    // the last entry has all odd-index coefficients zero
    CycleDetected,       // the last entry equals an earlier one
    PhaseBudgetComplete, // the planned number of steps ran to completion
};

std::string stop_reason_name(StopReason r);  // kebab-case, e.g. "even-coefficients"

// Ordered record of one iteration run: entries C_0, C_1, ... with
// C_{i+1}(X^2) = (-1)^n C_i(X) C_i(-X).
struct ConstructionTrace {
    std::vector<Poly> polys;
    // Aligned with polys when orders are known (known-order runs derive them
    // by halving); empty when not tracked.
    std::vector<std::optional<FactoredOrder>> orders;
    StopReason stop_reason = StopReason::PhaseBudgetComplete;
    // Distinct entries in first-appearance order.
    std::vector<Poly> distinct_polys;
    // CycleDetected: index of the earlier entry the last one repeats.
    std::optional<size_t> cycle_target;
    // Period of the odd-order cycle: last-index minus cycle_target for
    // detected cycles; count of distinct odd-order entries for completed
    // known-order runs.
    std::optional<uint64_t> cycle_length;
    // ord_t(2) / cycle_length for completed known-order runs; divides the
    // degree.
    std::optional<unsigned> d;
};

// One squaring step: the unique monic A of degree n = deg c with
// A(X^2) = (-1)^n c(X) c(-X).  Computed by the closed coefficient formula;
// with cross_check set, also by product + even-part extraction, throwing
// CrossCheckMismatch if the two disagree.  Requires monic c != X of degree
// >= 1 (PolyIsX, NotMonic, ConstantInput).
Poly step(const Poly& c, bool cross_check = false);

namespace detail {
Poly step_formula(const Poly& c);
Poly step_product(const Poly& c);
}  // namespace detail

// Known-order iteration: from monic irreducible c of order ord.value =
// 2^r * t, run up to r halving steps (stopping early with EvenCoefficients
// if an entry goes fully even), then, for t > 1, exactly ord_t(2) - 1 more
// steps through the odd-order cycle.  Orders are attached by halving.  The
// supplied order is validated by a single exponentiation (OrderMismatch);
// input must be irreducible (NotIrreducible) and not X (PolyIsX).
ConstructionTrace construction1(const Poly& c, const FactoredOrder& ord);

// Unknown-order iteration: step until an entry is fully even
// (EvenCoefficients) or equals an earlier entry (CycleDetected, with the
// repeat included as the last entry).  No orders are consumed or attached.
ConstructionTrace construction2(const Poly& c);

// What a finished unknown-order run says about ord(C_0).
struct OrderConstraint {
    enum class Kind { EvenStop, Cycle };
    Kind kind;
    unsigned index = 0;      // even-stop position k, or first-repeat target l
    unsigned degree = 0;     // common degree n of the trace
    mpz_class q;             // field size
    // EvenStop: ord(C_0) = 2^index * v with v dividing odd_bound = 2(q^{n/2}-1).
    mpz_class odd_bound;
    // Cycle: ord(C_0) = 2^index * m, m odd, with ord_m(2) = cycle_length * d
    // for some divisor d of the degree.
    uint64_t cycle_length = 0;

    bool consistent_with(const FactoredOrder& ord) const;
    std::string str() const;
};

// Derives the order constraint from an unknown-order trace.  Throws
// EmptyTrace for a trace with no entries and UnsupportedTrace for traces
// that ran a planned budget to completion (those came from a known-order
// run; there is nothing to infer).
OrderConstraint infer_order(const ConstructionTrace& trace);

enum class BlowupVerdict { Irreducible, Reducible };

struct BlowupResult {
    BlowupVerdict verdict;
    Poly composed;  // f(X^{2^k})
};

// Irreducibility of f(X^{2^k}) for monic irreducible f whose norm constant
// (-1)^n f(0) is a non-square (NormIsSquare otherwise; NotIrreducible on bad
// input).  k = 1 is always irreducible; k >= 2 is irreducible exactly when
// q = 1 (mod 4), or q = 3 (mod 4) with n even.  The composed polynomial is
// returned alongside the verdict.
BlowupResult blowup_check(const Poly& f, unsigned k);

// Splits a(X^2) — for monic irreducible a != X whose norm constant is a
// square — into its two monic irreducible degree-n factors, each the minimal
// polynomial of a square root of a root of a.  The pair satisfies
// second = negate_arg(first) and is ordered by symmetric_less.  The seed
// drives the randomized equal-degree splitting only; the result is
// seed-independent.  Throws NormNonSquare, NotIrreducible, PolyIsX.
std::pair<Poly, Poly> descend(const Poly& a, uint64_t seed = 1);

struct SweepRow {
    FieldElement a;
    FactoredOrder order;
    uint64_t total = 0;                    // distinct polynomials produced
    std::map<unsigned, uint64_t> weights;  // weight -> count over the distinct set
};

struct SweepReport {
    Poly base;
    std::vector<SweepRow> rows;  // ascending index of a, a != 0
};

// For every nonzero a: shift the fully-even base h by a, compute the order,
// run the known-order iteration, and record distinct count plus weight
// histogram.  Requires h monic irreducible with all odd coefficients zero
// and deg(h)/2 coprime to q (InvalidSweepBase).  Rows are independent;
// threads > 1 computes them concurrently, output order fixed by a.
SweepReport sweep_shifts(const Poly& h, unsigned threads = 1);

}  // namespace ffiter
