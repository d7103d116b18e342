#include "genusbounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "genusbounds/errors.hpp"

namespace genusbounds {

namespace {

constexpr double ln2 = std::numbers::ln2;
constexpr double tatuzawa_constant = 0.655;
constexpr double class_number_constant = 1.31;   // 2 * 0.655
constexpr double min_log_threshold = 11.2;

double log_leading_constant()
{
    return std::log(class_number_constant / std::numbers::pi);
}

void check_n(int n)
{
    if (n < 4)
        throw domain_error("the elementary bound needs n >= 4, got " + std::to_string(n));
    if (n > 32)
        throw domain_error("n > 32 exceeds the prime table range");
}

void check_epsilon(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw domain_error("epsilon must lie in (0, 1/2)");
}

void check_D(double D)
{
    if (!(D > 1.0) || std::isinf(D))
        throw domain_error("D must be a finite number > 1");
}

// Bisection on a sign change of h over [lo, hi], down to adjacent doubles.
template <class F>
double bisect(F && h, double lo, double hi)
{
    bool const lo_negative = h(lo) < 0.0;
    for (int i = 0; i < 2000; ++i) {
        double const mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi)
            break;
        if ((h(mid) < 0.0) == lo_negative)
            lo = mid;
        else
            hi = mid;
    }
    return std::abs(h(lo)) <= std::abs(h(hi)) ? lo : hi;
}

}  // namespace

double lambert_w(double x)
{
    if (!(x >= 0.0))
        throw domain_error("lambert_w: only the principal branch on x >= 0 is supported");
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return x;

    double w;
    if (x >= std::numbers::e) {
        double const l = std::log(x);
        w = l - std::log(l);
    } else {
        w = x;
    }

    // Halley iteration on w e^w - x.
    for (int iter = 0; iter < 50; ++iter) {
        double const ew = std::exp(w);
        double const f = w * ew - x;
        if (f == 0.0)
            break;
        double const wp1 = w + 1.0;
        double const step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::abs(step) <= 1e-15 * std::abs(w))
            break;
    }
    return w;
}

double f_constant::value() const
{
    return std::exp(log_f);
}

f_constant make_f_constant(prime_table const & table, int n)
{
    check_n(n);
    double const two_n = std::ldexp(1.0, n);
    if (two_n > static_cast<double>(table.limit()))
        throw out_of_table_error("f(" + std::to_string(n) + ") needs primes up to 2^" +
                                 std::to_string(n));

    f_constant fc;
    fc.n = n;
    fc.prime_count = prime_pi(table, two_n);
    fc.theta = chebyshev_theta(table, two_n);
    double const inv_n = 1.0 / n;
    fc.log_f = (static_cast<double>(fc.prime_count) - inv_n) * ln2 - fc.theta * inv_n;

    // prod p^{1/n} as mantissa * 2^exponent.
    double mantissa = 1.0;
    long exponent = 0;
    for (std::size_t k = 0; k < fc.prime_count; ++k) {
        mantissa *= std::pow(static_cast<double>(table.primes()[k]), inv_n);
        int e = 0;
        mantissa = std::frexp(mantissa, &e);
        exponent += e;
    }
    double const twos = static_cast<double>(static_cast<long>(fc.prime_count) - exponent);
    fc.log_f_product = (twos - inv_n) * ln2 - std::log(mantissa);

    if (std::abs(std::expm1(fc.log_f - fc.log_f_product)) > 1e-9)
        throw std::logic_error("f(" + std::to_string(n) +
                               "): exponential and product forms disagree");
    return fc;
}

double f_of_n(prime_table const & table, int n)
{
    return make_f_constant(table, n).value();
}

double log_f_of_n(prime_table const & table, int n)
{
    return make_f_constant(table, n).log_f;
}

double coefficient_c(prime_table const & table, int n)
{
    return std::exp(log_leading_constant() - log_f_of_n(table, n));
}

double round_to_decimals(double x, int decimals)
{
    double const scale = std::pow(10.0, decimals);
    return std::round(x * scale) / scale;
}

double truncate_to_decimals(double x, int decimals)
{
    double const scale = std::pow(10.0, decimals);
    return std::trunc(x * scale) / scale;
}

std::string_view theorem_tag(theorem t)
{
    return t == theorem::elementary ? "T1" : "T2";
}

double applicability_threshold(double epsilon)
{
    check_epsilon(epsilon);
    return std::max(std::exp(1.0 / epsilon), std::exp(min_log_threshold));
}

bool is_applicable(double D, double epsilon)
{
    return D > applicability_threshold(epsilon);
}

tatuzawa_result tatuzawa_l_lower(double D, double epsilon)
{
    check_D(D);
    tatuzawa_result r;
    r.applicable = is_applicable(D, epsilon);
    if (!r.applicable)
        return r;
    double const logD = std::log(D);
    r.l_lower = tatuzawa_constant * epsilon * std::exp(-epsilon * logD);
    r.class_number_lower = tatuzawa_constant / std::numbers::pi * epsilon *
                           std::exp((0.5 - epsilon) * logD);
    return r;
}

bound_result bound_theorem2(bound_query const & q)
{
    check_D(q.D);
    check_epsilon(q.epsilon);
    double const logD = std::log(q.D);
    double const exponent = 0.5 - q.epsilon - ln2 / lambert_w(logD);

    bound_result r;
    r.which = theorem::lambert;
    r.log_value = log_leading_constant() + std::log(q.epsilon) + exponent * logD;
    r.value = std::exp(r.log_value);
    r.applicability_threshold = applicability_threshold(q.epsilon);
    r.applicable = q.D > r.applicability_threshold;
    return r;
}

bound_result bound_theorem1(bound_query const & q, f_constant const & f)
{
    if (!q.n)
        throw domain_error("the elementary bound needs n");
    check_n(*q.n);
    if (*q.n != f.n)
        throw domain_error("f(n) constant was built for a different n");
    check_D(q.D);
    check_epsilon(q.epsilon);
    double const logD = std::log(q.D);
    double const exponent = 0.5 - q.epsilon - 1.0 / *q.n;

    bound_result r;
    r.which = theorem::elementary;
    r.log_value = log_leading_constant() + std::log(q.epsilon) + exponent * logD - f.log_f;
    r.value = std::exp(r.log_value);
    r.applicability_threshold = applicability_threshold(q.epsilon);
    r.applicable = q.D > r.applicability_threshold;
    return r;
}

bound_result bound_theorem1(bound_query const & q, prime_table const & table)
{
    if (!q.n)
        throw domain_error("the elementary bound needs n");
    return bound_theorem1(q, make_f_constant(table, *q.n));
}

key_inequality_constant make_key_inequality_constant(prime_table const & table, int n)
{
    check_n(n);
    double const two_n = std::ldexp(1.0, n);
    if (two_n > static_cast<double>(table.limit()))
        throw out_of_table_error("key inequality for n=" + std::to_string(n) +
                                 " needs primes up to 2^n");
    key_inequality_constant k;
    k.n = n;
    k.prime_count = prime_pi(table, two_n);
    k.prime_product = 1;
    for (std::size_t i = 0; i < k.prime_count; ++i)
        k.prime_product *= table.primes()[i];
    return k;
}

bool key_inequality_check(discriminant_profile const & profile,
                          key_inequality_constant const & k)
{
    using boost::multiprecision::cpp_int;
    std::uint64_t const reduced = profile.D % 8 == 0 ? profile.D / 2 : profile.D;
    auto const lhs_shift = static_cast<unsigned>(profile.g) * static_cast<unsigned>(k.n) + 1;
    auto const rhs_shift = static_cast<unsigned>(k.n * k.prime_count);
    cpp_int const lhs = k.prime_product << lhs_shift;
    cpp_int const rhs = cpp_int(reduced) << rhs_shift;
    return lhs <= rhs;
}

bool key_inequality_check(discriminant_profile const & profile, prime_table const & table,
                          int n)
{
    return key_inequality_check(profile, make_key_inequality_constant(table, n));
}

bool w_chain_check(discriminant_profile const & profile)
{
    if (!profile.is_fundamental)
        throw domain_error("w_chain_check requires a fundamental discriminant");
    if (profile.g < 2)
        throw domain_error("w_chain_check requires g >= 2");
    return std::exp(lambert_w(std::log(static_cast<double>(profile.D)))) >
           static_cast<double>(profile.g);
}

double g_func(int n, double x)
{
    if (!(x > 0.0))
        throw domain_error("g_func needs x > 0");
    return x * (ln2 / lambert_w(x) - 1.0 / n);
}

crossover_report crossover_interval(prime_table const & table, int n)
{
    crossover_report rep;
    rep.n = n;
    rep.log_f_n = log_f_of_n(table, n);
    rep.x_max = std::ldexp(n * ln2 - 1.0, n) / std::numbers::e;
    rep.g_at_max = g_func(n, rep.x_max);
    if (rep.g_at_max < rep.log_f_n)
        return rep;

    auto h = [&](double x) {
        // g(n, 0+) = ln 2
        return (x > 0.0 ? g_func(n, x) : ln2) - rep.log_f_n;
    };

    double x_lo = 0.0;
    if (h(0.0) < 0.0)
        x_lo = bisect(h, 0.0, rep.x_max);

    double upper = 2.0 * rep.x_max;
    while (h(upper) >= 0.0)
        upper *= 2.0;
    double const x_hi = bisect(h, rep.x_max, upper);

    rep.interval_logD = std::pair{x_lo, x_hi};
    rep.interval_D = std::pair{std::exp(x_lo), std::exp(x_hi)};
    return rep;
}

std::vector<near_optimality_row> near_optimality_report(prime_table const & table,
                                                        unsigned g_max)
{
    if (g_max < 2)
        throw domain_error("near_optimality_report needs g_max >= 2");
    nth_prime(table, g_max);   // throws if the table is too small

    std::vector<near_optimality_row> rows;
    auto const primes = table.primes();
    // ln 3 + ln 4, then the remaining odd primes one by one.
    double literal = std::log(3.0) + std::log(4.0);
    for (unsigned g = 2; g <= g_max; ++g) {
        if (g > 2)
            literal += std::log(static_cast<double>(primes[g - 1]));
        near_optimality_row row;
        row.g = g;
        row.log_Dg = table.theta_prefix(g - 1).value() + ln2;
        row.log_Dg_literal = literal;
        row.g_log_g = g * std::log(static_cast<double>(g));
        row.ratio = row.log_Dg / row.g_log_g;
        if (std::abs(row.log_Dg - row.log_Dg_literal) > 1e-10 * row.log_Dg)
            throw std::logic_error("log|D_g| routes disagree at g=" + std::to_string(g));
        rows.push_back(row);
    }
    return rows;
}

double t1_line(int n, double logD, double log_c)
{
    return (0.5 - 1.0 / n) * logD + log_c;
}

double t2_line(double logD)
{
    return (0.5 - ln2 / lambert_w(logD)) * logD + log_leading_constant();
}

figure_table figure_data(prime_table const & table, double logD_min, double logD_max,
                         int steps, std::vector<int> const & ns)
{
    if (!(logD_min >= 1.0) || !(logD_max > logD_min))
        throw domain_error("figure range needs 1 <= logD_min < logD_max");
    if (steps < 2)
        throw domain_error("figure needs at least 2 steps");

    figure_table out;
    out.ns = ns;
    std::vector<double> log_c;
    for (int n : ns)
        log_c.push_back(log_leading_constant() - log_f_of_n(table, n));

    out.rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        double const logD = i == steps - 1
                                ? logD_max
                                : logD_min + (logD_max - logD_min) * i / (steps - 1);
        figure_table::row row{logD, t2_line(logD), {}};
        for (std::size_t j = 0; j < ns.size(); ++j)
            row.t1.push_back(t1_line(ns[j], logD, log_c[j]));
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::optional<double> clearing_log_D(prime_table const & table, double target,
                                     std::optional<int> n, std::optional<double> epsilon,
                                     double logD_lo, double logD_hi)
{
    std::optional<f_constant> fc;
    if (n)
        fc = make_f_constant(table, *n);

    auto log_bound = [&](double logD) {
        bound_query q{std::exp(logD), epsilon.value_or(1.0 / logD), n};
        return fc ? bound_theorem1(q, *fc).log_value : bound_theorem2(q).log_value;
    };
    double const log_target = std::log(target);
    auto h = [&](double logD) { return log_bound(logD) - log_target; };

    if (h(logD_hi) <= 0.0)
        return std::nullopt;
    if (h(logD_lo) > 0.0)
        return logD_lo;
    double lo = logD_lo, hi = logD_hi;
    for (int i = 0; i < 2000; ++i) {
        double const mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi)
            break;
        (h(mid) > 0.0 ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace genusbounds
