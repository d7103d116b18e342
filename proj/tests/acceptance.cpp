// Acceptance suite: one PASS/FAIL line per criterion.
//
//   genusbounds_acceptance        run all criteria
//   genusbounds_acceptance 3      run criterion 3 only
//
// Exit status is nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "genusbounds/bounds.hpp"
#include "genusbounds/classgroup.hpp"
#include "genusbounds/discriminant.hpp"
#include "genusbounds/primes.hpp"
#include "genusbounds/scan.hpp"
#include "oracles.hpp"

using namespace genusbounds;

namespace {

struct outcome {
    bool pass = false;
    std::string detail;
};

prime_table const & table()
{
    static prime_table const t(std::uint64_t{1} << 21);
    return t;
}

std::string fmt(double x, int digits = 10)
{
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

// 1. Printed coefficients C(4..7).
outcome coefficients()
{
    struct printed {
        int n;
        double value;
        int decimals;
    };
    printed const table_values[] = {{4, 0.10199, 5}, {5, 0.0426, 4}, {6, 0.01249, 5},
                                    {7, 0.00188, 5}};
    outcome o{true, {}};
    std::string truncation;
    for (auto const & p : table_values) {
        double const c = coefficient_c(table(), p.n);
        double const rounded = round_to_decimals(c, p.decimals);
        bool const ok = std::abs(rounded - p.value) < 0.5 * std::pow(10.0, -p.decimals - 2);
        bool const trunc_ok =
            std::abs(truncate_to_decimals(c, p.decimals) - p.value) <
            0.5 * std::pow(10.0, -p.decimals - 2);
        o.pass = o.pass && ok;
        o.detail += "C(" + std::to_string(p.n) + ")=" + fmt(c, 8) + " rounds to " +
                    fmt(rounded, 6) + (ok ? "" : " != " + fmt(p.value, 6)) + "; ";
        truncation += trunc_ok ? "" : " n=" + std::to_string(p.n);
    }
    o.detail += truncation.empty() ? "(truncation matches all printed digits)"
                                   : "(truncation mismatch:" + truncation + ")";
    return o;
}

// 2. Headline claims of the Lambert W bound, and the n = 6 claim report.
outcome headline()
{
    outcome o{true, {}};
    for (auto [D, target] : {std::pair{5.6e10, 1.0}, std::pair{3.5e14, 10.0}}) {
        double const v = bound_theorem2({D, 1.0 / std::log(D), std::nullopt}).value;
        bool ok = v > target;
        // Nondecreasing on a log grid from D to 1000 D.
        double prev = v;
        int const steps = 2000;
        for (int i = 1; i <= steps; ++i) {
            double const x = D * std::pow(1000.0, static_cast<double>(i) / steps);
            double const w = bound_theorem2({x, 1.0 / std::log(x), std::nullopt}).value;
            ok = ok && w >= prev;
            prev = w;
        }
        o.pass = o.pass && ok;
        o.detail += "T2(" + fmt(D, 3) + ")=" + fmt(v, 8) + (ok ? " monotone; " : " FAILED; ");
    }
    double const D = 4.8e17;
    double const v = bound_theorem1({D, 1.0 / std::log(D), 6}, table()).value;
    auto const tied = clearing_log_D(table(), 100.0, 6, std::nullopt, std::log(D), 60.0);
    auto const fixed = clearing_log_D(table(), 100.0, 6, 1.0 / std::log(D), std::log(D), 60.0);
    o.detail += "T1_n6(4.8e17)=" + fmt(v, 8);
    if (tied)
        o.detail += ", clears 100 from D=" + fmt(std::exp(*tied), 6) + " (eps=1/ln D)";
    if (fixed)
        o.detail += ", D=" + fmt(std::exp(*fixed), 6) + " (eps fixed)";
    o.pass = o.pass && std::isfinite(v) && tied.has_value();
    return o;
}

// 3. p * 2^(g-1) = h for every fundamental -D <= 1e6.
outcome genus_identity()
{
    unsigned const workers = std::max(1u, std::thread::hardware_concurrency());
    auto const r = run_verify(verify_target::genus, 1000000, {}, table(), workers);
    return {r.violations == 0 && r.checked > 0,
            std::to_string(r.checked) + " discriminants, " + std::to_string(r.violations) +
                " violations"};
}

// 4. ln D > g ln g, key inequality n = 4..8 and the W chain up to 1e6.
outcome inequality_suites()
{
    unsigned const workers = std::max(1u, std::thread::hardware_concurrency());
    auto const lemma = run_verify(verify_target::lemma1, 1000000, {}, table(), workers);
    auto const key =
        run_verify(verify_target::keyineq, 1000000, {4, 5, 6, 7, 8}, table(), workers);
    auto const chain = run_verify(verify_target::wchain, 1000000, {}, table(), workers);
    bool const pass = lemma.violations == 0 && key.violations == 0 && chain.violations == 0 &&
                      key.mod8_branch > 0 && key.plain_branch > 0;
    return {pass, "lemma1 " + std::to_string(lemma.violations) + "/" +
                      std::to_string(lemma.checked) + ", keyineq " +
                      std::to_string(key.violations) + "/" + std::to_string(key.checked) +
                      " (D/2 branch " + std::to_string(key.mod8_branch) + "), wchain " +
                      std::to_string(chain.violations) + "/" + std::to_string(chain.checked)};
}

// 5. Explicit prime inequalities at 1e6.
outcome rs_suite()
{
    prime_table const t(1000000);
    auto const r = verify_rs_inequalities(t);
    std::uint64_t const bad = r.theta_lower.violations + r.nth_prime_lower.violations +
                              r.nth_prime_upper.violations + r.pi_upper.violations;
    std::uint64_t const checked = r.theta_lower.checked + r.nth_prime_lower.checked +
                                  r.nth_prime_upper.checked + r.pi_upper.checked;
    return {bad == 0 && checked > 0,
            "(i)-(iv): " + std::to_string(bad) + " violations in " + std::to_string(checked) +
                " checks; (v): " + std::to_string(r.theta_lower_fine.violations) + " in " +
                std::to_string(r.theta_lower_fine.checked)};
}

// 6. W(x) e^W(x) = x on 1e4 log-spaced points.
outcome lambert_round_trip()
{
    int const points = 10000;
    double worst = 0.0;
    double at = 0.0;
    for (int i = 0; i < points; ++i) {
        double const x = std::pow(10.0, -6.0 + 12.0 * i / (points - 1));
        double const w = lambert_w(x);
        double const r = std::abs(w * std::exp(w) - x) / std::max(x, 1.0);
        if (r > worst) {
            worst = r;
            at = x;
        }
    }
    return {worst <= 1e-12, "max residual " + fmt(worst, 3) + " at x=" + fmt(at, 6)};
}

// 7. Crossover interval for n = 4, 5, 6 and eventual dominance of the W bound.
outcome crossover()
{
    outcome o{true, {}};
    for (int n : {4, 5, 6}) {
        auto const r = crossover_interval(table(), n);
        bool ok = r.interval_logD.has_value();
        if (ok) {
            auto [lo, hi] = *r.interval_logD;
            double const res = std::max(std::abs(g_func(n, lo) - r.log_f_n),
                                        std::abs(g_func(n, hi) - r.log_f_n));
            double const far = 10.0 * r.x_max;
            double const log_c = std::log(coefficient_c(table(), n));
            bool const dominates = t2_line(far) > t1_line(n, far, log_c);
            ok = res <= 1e-8 && dominates;
            o.detail += "n=" + std::to_string(n) + " [" + fmt(lo, 8) + ", " + fmt(hi, 8) +
                        "] res " + fmt(res, 2) + (dominates ? "" : " no dominance") + "; ";
        } else {
            o.detail += "n=" + std::to_string(n) + " empty; ";
        }
        o.pass = o.pass && ok;
    }
    return o;
}

// 8. Spot values against the brute-force reduced-form oracle.
outcome spot_values()
{
    struct spot {
        std::uint64_t D;
        std::uint64_t h;
        std::optional<std::uint64_t> p;
    };
    spot const spots[] = {{4, 1, {}}, {23, 3, {}}, {163, 1, {}}, {5460, 16, 1}, {20, 2, 1}};
    outcome o{true, {}};
    for (auto const & s : spots) {
        auto const summary = principal_genus(s.D);
        std::uint64_t const h_oracle = oracle::reduced_forms(s.D).size();
        bool ok = summary.h == h_oracle && summary.h == s.h;
        if (s.p)
            ok = ok && summary.p == *s.p;
        o.pass = o.pass && ok;
        o.detail += "h(-" + std::to_string(s.D) + ")=" + std::to_string(summary.h) +
                    (s.p ? " p=" + std::to_string(summary.p) : "") + (ok ? "" : " MISMATCH") +
                    "; ";
    }
    return o;
}

// 9. f(n) by sum of logs and by running product agree.
outcome f_dual()
{
    double worst = 0.0;
    for (int n = 4; n <= 20; ++n) {
        auto const f = make_f_constant(table(), n);
        worst = std::max(worst, std::abs(std::expm1(f.log_f - f.log_f_product)));
    }
    return {worst <= 1e-9, "max relative difference " + fmt(worst, 3) + " for n=4..20"};
}

struct criterion {
    int id;
    char const * name;
    std::function<outcome()> run;
};

}  // namespace

int main(int argc, char ** argv)
{
    std::vector<criterion> const all = {
        {1, "coefficient reproduction", coefficients},
        {2, "headline claims", headline},
        {3, "genus identity up to 1e6", genus_identity},
        {4, "inequality suites up to 1e6", inequality_suites},
        {5, "prime inequalities at 1e6", rs_suite},
        {6, "Lambert W round trip", lambert_round_trip},
        {7, "crossover both directions", crossover},
        {8, "class group spot values", spot_values},
        {9, "f(n) dual formula", f_dual},
    };

    int only = 0;
    if (argc > 1)
        only = std::atoi(argv[1]);

    int failures = 0;
    for (auto const & c : all) {
        if (only != 0 && c.id != only)
            continue;
        auto const start = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = c.run();
        } catch (std::exception const & e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double const secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %d %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    o.detail.c_str());
        if (!o.pass)
            ++failures;
    }
    return failures == 0 ? 0 : 1;
}
