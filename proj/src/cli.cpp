#include "ffiter/cli.hpp"

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ffiter/construct.hpp"
#include "ffiter/errors.hpp"
#include "ffiter/field.hpp"
#include "ffiter/format.hpp"
#include "ffiter/irred.hpp"
#include "ffiter/poly.hpp"

namespace ffiter::cli {

namespace {

// Invocation-shape problems that only show up after CLI11 parsing
// (conditional requirements CLI11 cannot express declaratively).
struct Usage {
    std::string message;
};

mpz_class parse_integer(const std::string& text) {
    const size_t start = (!text.empty() && text[0] == '-') ? 1 : 0;
    bool ok = text.size() > start;
    for (size_t i = start; ok && i < text.size(); ++i) {
        ok = std::isdigit(static_cast<unsigned char>(text[i])) != 0;
    }
    if (!ok) throw ParseError("ParseError: expected an integer, got \"" + text + "\"");
    return mpz_class(text);
}

struct CommonOpts {
    std::string p;
    unsigned m = 1;
    std::string modulus;
    std::string poly;
    bool reduce = false;
    bool json = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "field characteristic (an odd prime)")->required();
    cmd->add_option("--m", o.m, "extension degree over the prime field")->check(CLI::PositiveNumber);
    cmd->add_option("--modulus", o.modulus,
                    "comma-separated ascending coefficients of the monic extension modulus");
    cmd->add_option("--poly", o.poly, "input polynomial, e.g. \"x^6+x^2+1\"")->required();
    cmd->add_flag("--reduce", o.reduce,
                  "reduce out-of-range coefficient literals mod p instead of rejecting them");
    cmd->add_flag("--json", o.json, "emit JSON instead of human-readable text");
}

FieldCtxPtr make_ctx(const CommonOpts& o) {
    const mpz_class p = parse_integer(o.p);
    if (o.m == 1) {
        if (!o.modulus.empty()) throw Usage{"--modulus is only meaningful together with --m > 1"};
        return FieldCtx::prime(p);
    }
    if (o.modulus.empty()) throw Usage{"--m > 1 requires --modulus; no modulus is auto-generated"};
    std::vector<mpz_class> digits;
    std::istringstream stream(o.modulus);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const size_t first = item.find_first_not_of(" \t");
        const size_t last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw ParseError("ParseError: empty modulus coefficient");
        mpz_class v = parse_integer(item.substr(first, last - first + 1));
        if (o.reduce) {
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
            v = r;
        } else if (v < 0 || v >= p) {
            throw CoefficientRange("CoefficientRange: modulus coefficient " + v.get_str() +
                                   " is outside [0, p)");
        }
        digits.push_back(std::move(v));
    }
    return FieldCtx::extension(p, o.m, digits);
}

std::string order_text(const FactoredOrder& ord) {
    if (ord.factors.empty()) return "1";
    return ord.value.get_str() + " = " + ord.factor_str();
}

void emit_poly(const Poly& f, bool json, std::ostream& out) {
    if (json) {
        out << poly_to_json(f).dump() << "\n";
    } else {
        out << format_poly(f) << "\n";
    }
}

ordered_json trace_json(const ConstructionTrace& t, const std::optional<OrderConstraint>& constraint) {
    ordered_json j;
    ordered_json polys = ordered_json::array();
    for (const auto& f : t.polys) polys.push_back(poly_to_json(f));
    j["polys"] = std::move(polys);
    if (t.orders.empty()) {
        j["orders"] = nullptr;
    } else {
        ordered_json orders = ordered_json::array();
        for (const auto& o : t.orders) {
            orders.push_back(o ? factored_to_json(*o) : ordered_json(nullptr));
        }
        j["orders"] = std::move(orders);
    }
    j["stop_reason"] = stop_reason_name(t.stop_reason);
    j["distinct"] = t.distinct_polys.size();
    j["cycle_target"] = t.cycle_target ? ordered_json(*t.cycle_target) : ordered_json(nullptr);
    j["cycle_length"] = t.cycle_length ? ordered_json(*t.cycle_length) : ordered_json(nullptr);
    j["d"] = t.d ? ordered_json(*t.d) : ordered_json(nullptr);
    j["constraint"] = constraint ? ordered_json(constraint->str()) : ordered_json(nullptr);
    return j;
}

void print_trace(const ConstructionTrace& t, const std::optional<OrderConstraint>& constraint,
                 std::ostream& out) {
    for (size_t i = 0; i < t.polys.size(); ++i) {
        out << i << ": " << format_poly(t.polys[i]);
        if (i < t.orders.size() && t.orders[i]) out << " (order " << order_text(*t.orders[i]) << ")";
        out << "\n";
    }
    out << "stop reason: " << stop_reason_name(t.stop_reason) << "\n";
    out << "distinct: " << t.distinct_polys.size() << "\n";
    if (t.cycle_target) out << "cycle target: " << *t.cycle_target << "\n";
    if (t.cycle_length) out << "cycle length: " << *t.cycle_length << "\n";
    if (t.d) out << "d: " << *t.d << "\n";
    if (constraint) out << "constraint: " << constraint->str() << "\n";
}

std::string ratio_text(const mpz_class& n_value, const mpz_class& order) {
    if (order == 0 || n_value % order != 0) return order.get_str();
    const mpz_class divisor = n_value / order;
    if (divisor == 1) return "N";
    return "N/" + divisor.get_str();
}

std::string weights_text(const std::map<unsigned, uint64_t>& weights) {
    std::string out;
    for (const auto& [weight, count] : weights) {
        if (!out.empty()) out += ";";
        out += std::to_string(weight) + ":" + std::to_string(count);
    }
    return out;
}

void emit_sweep(const SweepReport& report, bool json, bool csv_only, std::ostream& out) {
    const auto& ctx = report.base.ctx();
    mpz_class n_value;
    mpz_pow_ui(n_value.get_mpz_t(), ctx->q().get_mpz_t(),
               static_cast<unsigned long>(report.base.degree()));
    n_value -= 1;

    if (json) {
        ordered_json j;
        j["base"] = poly_to_json(report.base);
        j["N"] = detail::mpz_to_json(n_value);
        ordered_json rows = ordered_json::array();
        for (const auto& row : report.rows) {
            ordered_json r;
            r["a"] = detail::mpz_to_json(ctx->index_of(row.a));
            r["order"] = factored_to_json(row.order);
            r["order_ratio"] = ratio_text(n_value, row.order.value);
            r["total"] = row.total;
            ordered_json w;
            for (const auto& [weight, count] : row.weights) w[std::to_string(weight)] = count;
            r["weights"] = std::move(w);
            rows.push_back(std::move(r));
        }
        j["rows"] = std::move(rows);
        out << j.dump() << "\n";
        return;
    }

    if (!csv_only) {
        out << "base: " << format_poly(report.base) << "\n";
        out << "N = " << n_value.get_str() << "\n";
    }
    out << "a,order,order_ratio,total,weights\n";
    for (const auto& row : report.rows) {
        out << ctx->index_of(row.a).get_str() << "," << row.order.value.get_str() << ","
            << ratio_text(n_value, row.order.value) << "," << row.total << ","
            << weights_text(row.weights) << "\n";
    }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"iterated-squaring toolkit for irreducible polynomials over odd finite fields"};
    app.name("ffiter");
    app.require_subcommand(1);

    CommonOpts irred_o, order_o, step_o, shift_o, blowup_o, descend_o, iterate_o, sweep_o;
    std::string shift_a;
    unsigned blowup_k = 1;
    uint64_t descend_seed = 1;
    std::string iterate_mode = "auto";
    std::string iterate_order;
    unsigned sweep_threads = 1;
    bool sweep_csv = false;

    CLI::App* c_irred = app.add_subcommand("irred", "test irreducibility");
    add_common(c_irred, irred_o);

    CLI::App* c_order = app.add_subcommand("order", "order of a monic irreducible polynomial");
    add_common(c_order, order_o);

    CLI::App* c_step = app.add_subcommand("step", "one squaring step");
    add_common(c_step, step_o);

    CLI::App* c_shift = app.add_subcommand("shift", "substitute X + a for X");
    add_common(c_shift, shift_o);
    c_shift->add_option("--a", shift_a, "shift amount (element index in [0, q))")->required();

    CLI::App* c_blowup = app.add_subcommand("blowup", "irreducibility of f(X^(2^k))");
    add_common(c_blowup, blowup_o);
    c_blowup->add_option("--k", blowup_k, "exponent k of the substitution X^(2^k)")
        ->required()
        ->check(CLI::PositiveNumber);

    CLI::App* c_descend = app.add_subcommand("descend", "split a(X^2) into its two conjugate factors");
    add_common(c_descend, descend_o);
    c_descend->add_option("--seed", descend_seed, "seed for the randomized splitting");

    CLI::App* c_iterate = app.add_subcommand("iterate", "run the squaring iteration to its stop");
    add_common(c_iterate, iterate_o);
    c_iterate->add_option("--mode", iterate_mode, "known-order or auto")
        ->check(CLI::IsMember({"known-order", "auto"}));
    c_iterate->add_option("--order", iterate_order, "order of the input polynomial (known-order mode)");

    CLI::App* c_sweep = app.add_subcommand("sweep", "shift-and-iterate report over all nonzero a");
    add_common(c_sweep, sweep_o);
    c_sweep->add_flag("--csv", sweep_csv, "emit only the CSV table");
    c_sweep->add_option("--threads", sweep_threads, "number of worker threads")
        ->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(c_irred)) {
            const Poly f = parse_poly(irred_o.poly, make_ctx(irred_o), irred_o.reduce);
            const bool result = is_irreducible(f);
            if (irred_o.json) {
                out << ordered_json{{"irreducible", result}}.dump() << "\n";
            } else {
                out << (result ? "true" : "false") << "\n";
            }
        } else if (app.got_subcommand(c_order)) {
            const Poly f = parse_poly(order_o.poly, make_ctx(order_o), order_o.reduce);
            const FactoredOrder ord = poly_order(f);
            if (order_o.json) {
                out << factored_to_json(ord).dump() << "\n";
            } else {
                out << order_text(ord) << "\n";
            }
        } else if (app.got_subcommand(c_step)) {
            const Poly f = parse_poly(step_o.poly, make_ctx(step_o), step_o.reduce);
            emit_poly(step(f), step_o.json, out);
        } else if (app.got_subcommand(c_shift)) {
            const FieldCtxPtr ctx = make_ctx(shift_o);
            const Poly f = parse_poly(shift_o.poly, ctx, shift_o.reduce);
            const FieldElement a = ctx->element_from_index(parse_integer(shift_a));
            emit_poly(shift_arg(f, a), shift_o.json, out);
        } else if (app.got_subcommand(c_blowup)) {
            const Poly f = parse_poly(blowup_o.poly, make_ctx(blowup_o), blowup_o.reduce);
            const BlowupResult result = blowup_check(f, blowup_k);
            const bool irreducible = result.verdict == BlowupVerdict::Irreducible;
            if (blowup_o.json) {
                ordered_json j;
                j["verdict"] = irreducible ? "irreducible" : "reducible";
                j["poly"] = poly_to_json(result.composed);
                out << j.dump() << "\n";
            } else {
                out << (irreducible ? "irreducible" : "reducible") << "\n";
                out << format_poly(result.composed) << "\n";
            }
        } else if (app.got_subcommand(c_descend)) {
            const Poly f = parse_poly(descend_o.poly, make_ctx(descend_o), descend_o.reduce);
            const auto [first, second] = descend(f, descend_seed);
            if (descend_o.json) {
                ordered_json j;
                j["factors"] = ordered_json::array({poly_to_json(first), poly_to_json(second)});
                out << j.dump() << "\n";
            } else {
                out << format_poly(first) << "\n" << format_poly(second) << "\n";
            }
        } else if (app.got_subcommand(c_iterate)) {
            const Poly f = parse_poly(iterate_o.poly, make_ctx(iterate_o), iterate_o.reduce);
            ConstructionTrace trace;
            std::optional<OrderConstraint> constraint;
            if (iterate_mode == "known-order") {
                if (iterate_order.empty()) throw Usage{"--mode known-order requires --order"};
                trace = construction1(f, factor_integer(parse_integer(iterate_order)));
            } else {
                if (!iterate_order.empty()) throw Usage{"--order is only meaningful with --mode known-order"};
                trace = construction2(f);
                constraint = infer_order(trace);
            }
            if (iterate_o.json) {
                out << trace_json(trace, constraint).dump() << "\n";
            } else {
                print_trace(trace, constraint, out);
            }
        } else if (app.got_subcommand(c_sweep)) {
            const Poly f = parse_poly(sweep_o.poly, make_ctx(sweep_o), sweep_o.reduce);
            emit_sweep(sweep_shifts(f, sweep_threads), sweep_o.json, sweep_csv, out);
        }
        return 0;
    } catch (const Usage& u) {
        err << "usage error: " << u.message << "\n";
        return 2;
    } catch (const Error& e) {
        const std::string what = e.what();
        if (what.rfind(e.name(), 0) == 0) {
            err << what << "\n";
        } else {
            err << e.name() << ": " << what << "\n";
        }
        return 1;
    } catch (const std::exception& e) {
        err << "InternalError: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ffiter::cli
