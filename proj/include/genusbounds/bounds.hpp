#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "genusbounds/discriminant.hpp"
#include "genusbounds/primes.hpp"

namespace genusbounds {

/// Principal branch of Lambert W on [0, inf): w >= 0 with w e^w = x.
double lambert_w(double x);

/*
 * The constant of the elementary bound,
 *   f(n) = exp[(pi(2^n) - 1/n) ln 2 - theta(2^n)/n]
 *        = 2^{pi(2^n)} / (2^{1/n} prod_{p < 2^n} p^{1/n}).
 * log_f is the sum-of-logs route; log_f_product is the running-product
 * route (mantissa/exponent bookkeeping, no logs of primes).
 */
struct f_constant {
    int n = 0;
    std::uint64_t prime_count = 0;   // pi(2^n)
    double theta = 0.0;              // theta(2^n)
    double log_f = 0.0;
    double log_f_product = 0.0;

    /// f(n); +inf once it leaves double range (n >= ~15).
    double value() const;
};

/// Throws domain_error for n < 4, out_of_table_error if the table misses 2^n,
/// std::logic_error if the two routes disagree by more than 1e-9 relative.
f_constant make_f_constant(prime_table const & table, int n);

double f_of_n(prime_table const & table, int n);
double log_f_of_n(prime_table const & table, int n);

/// C(n) = 1.31 / (pi f(n)).
double coefficient_c(prime_table const & table, int n);

double round_to_decimals(double x, int decimals);
double truncate_to_decimals(double x, int decimals);

enum class theorem { elementary, lambert };   // tags "T1" / "T2"

std::string_view theorem_tag(theorem t);

struct bound_query {
    double D = 0.0;
    double epsilon = 0.0;
    std::optional<int> n;
};

/// max(exp(1/eps), exp(11.2)).
double applicability_threshold(double epsilon);

/// Strict D > applicability_threshold(epsilon).
bool is_applicable(double D, double epsilon);

struct bound_result {
    theorem which = theorem::lambert;
    double value = 0.0;
    double log_value = 0.0;
    bool applicable = false;
    double applicability_threshold = 0.0;
    static constexpr std::string_view caveat = "holds with at most one exceptional discriminant";
};

struct tatuzawa_result {
    bool applicable = false;
    std::optional<double> l_lower;             // 0.655 eps D^{-eps}
    std::optional<double> class_number_lower;  // (0.655/pi) eps D^{1/2-eps}
};

tatuzawa_result tatuzawa_l_lower(double D, double epsilon);

/// (1.31/pi) eps D^{1/2 - eps - ln2/W(ln D)}.
bound_result bound_theorem2(bound_query const & q);

/// (1.31 eps/pi) D^{1/2 - eps - 1/n} / f(n). Requires q.n >= 4.
bound_result bound_theorem1(bound_query const & q, prime_table const & table);
bound_result bound_theorem1(bound_query const & q, f_constant const & f);

/// pi(2^n) and the exact product of the primes below 2^n.
struct key_inequality_constant {
    int n = 0;
    std::uint64_t prime_count = 0;
    boost::multiprecision::cpp_int prime_product;
};

key_inequality_constant make_key_inequality_constant(prime_table const & table, int n);

/*
 * Exact check of 2^{gn} <= f(n)^n D', i.e.
 *   2^{gn+1} prod_{p<2^n} p <= 2^{n pi(2^n)} D',
 * with D' = D/2 when 8 | D and D' = D otherwise.
 */
bool key_inequality_check(discriminant_profile const & profile,
                          key_inequality_constant const & k);
bool key_inequality_check(discriminant_profile const & profile, prime_table const & table,
                          int n);

/// exp(W(ln D)) > g. Requires a fundamental profile with g >= 2.
bool w_chain_check(discriminant_profile const & profile);

/// x (ln 2 / W(x) - 1/n).
double g_func(int n, double x);

struct crossover_report {
    int n = 0;
    double x_max = 0.0;
    double g_at_max = 0.0;
    double log_f_n = 0.0;
    std::optional<std::pair<double, double>> interval_logD;
    std::optional<std::pair<double, double>> interval_D;
};

crossover_report crossover_interval(prime_table const & table, int n);

struct near_optimality_row {
    unsigned g = 0;
    double log_Dg = 0.0;          // theta(p_g) + ln 2
    double log_Dg_literal = 0.0;  // ln 3 + ln 4 + ln 5 + ... + ln p_g
    double g_log_g = 0.0;
    double ratio = 0.0;           // log_Dg / (g ln g)
};

std::vector<near_optimality_row> near_optimality_report(prime_table const & table,
                                                        unsigned g_max);

/// Log-log plot lines with the epsilon terms dropped.
struct figure_table {
    std::vector<int> ns;
    struct row {
        double logD;
        double t2;
        std::vector<double> t1;   // parallel to ns
    };
    std::vector<row> rows;
};

figure_table figure_data(prime_table const & table, double logD_min, double logD_max,
                         int steps, std::vector<int> const & ns);

/// (1/2 - 1/n) logD + ln C(n)
double t1_line(int n, double logD, double log_c);
/// (1/2 - ln2/W(logD)) logD + ln(1.31/pi)
double t2_line(double logD);

/*
 * Smallest ln D in [logD_lo, logD_hi] where the bound exceeds target, by
 * bisection; assumes the bound increases on the bracket. With n the
 * elementary bound is used, otherwise the Lambert W bound. A missing
 * epsilon means eps = 1/ln D at every D.
 */
std::optional<double> clearing_log_D(prime_table const & table, double target,
                                     std::optional<int> n, std::optional<double> epsilon,
                                     double logD_lo, double logD_hi);

}  // namespace genusbounds
