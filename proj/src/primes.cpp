#include "genusbounds/primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "genusbounds/errors.hpp"

namespace genusbounds {

namespace {

// Index k of the bit array stands for the odd number 2k + 1.
std::vector<std::uint64_t> sieve_odd_composites(std::uint64_t limit)
{
    std::uint64_t const nbits = limit / 2 + 1;
    std::vector<std::uint64_t> composite((nbits + 63) / 64, 0);
    composite[0] |= 1;  // 1 is not prime
    for (std::uint64_t p = 3; p * p <= limit; p += 2) {
        std::uint64_t const k = p / 2;
        if (composite[k / 64] >> (k % 64) & 1)
            continue;
        for (std::uint64_t m = p * p; m <= limit; m += 2 * p) {
            std::uint64_t const j = m / 2;
            composite[j / 64] |= std::uint64_t{1} << (j % 64);
        }
    }
    return composite;
}

std::size_t count_le(std::span<const std::uint32_t> primes, double x)
{
    if (x < 2.0)
        return 0;
    auto const bound = static_cast<std::uint64_t>(std::floor(x));
    auto it = std::upper_bound(primes.begin(), primes.end(), bound,
                               [](std::uint64_t v, std::uint32_t p) { return v < p; });
    return static_cast<std::size_t>(it - primes.begin());
}

void check_query(prime_table const & table, double x)
{
    if (!(x >= 0.0))
        throw domain_error("prime table query must be a nonnegative number");
    if (x > static_cast<double>(table.limit()))
        throw out_of_table_error("query " + std::to_string(x) +
                                 " exceeds prime table limit " +
                                 std::to_string(table.limit()));
}

}  // namespace

prime_table::prime_table(std::uint64_t limit)
    : limit_(limit)
{
    if (limit < 2 || limit > max_limit)
        throw config_error("prime table limit must lie in [2, 2^32], got " +
                           std::to_string(limit));

    auto const composite = sieve_odd_composites(limit);
    primes_.reserve(static_cast<std::size_t>(
        1.3 * static_cast<double>(limit) / std::log(static_cast<double>(limit)) + 8));
    primes_.push_back(2);
    for (std::uint64_t n = 3; n <= limit; n += 2) {
        std::uint64_t const k = n / 2;
        if (!(composite[k / 64] >> (k % 64) & 1))
            primes_.push_back(static_cast<std::uint32_t>(n));
    }

    theta_hi_.resize(primes_.size());
    theta_lo_.resize(primes_.size());
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        double const term = std::log(static_cast<double>(primes_[i]));
        double const t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        // Renormalize so that hi carries the correctly rounded total.
        double const hi = sum + comp;
        double const lo = comp - (hi - sum);
        theta_hi_[i] = hi;
        theta_lo_[i] = lo;
        sum = hi;
        comp = lo;
    }
}

std::uint64_t prime_pi(prime_table const & table, double x)
{
    check_query(table, x);
    return count_le(table.primes(), x);
}

double chebyshev_theta(prime_table const & table, double x)
{
    check_query(table, x);
    std::size_t const k = count_le(table.primes(), x);
    return k == 0 ? 0.0 : table.theta_prefix(k - 1).value();
}

std::uint64_t nth_prime(prime_table const & table, std::uint64_t g)
{
    if (g == 0)
        throw domain_error("nth_prime is 1-based; g must be positive");
    if (g > table.size())
        throw out_of_table_error("prime table holds only " +
                                 std::to_string(table.size()) + " primes, asked for p_" +
                                 std::to_string(g));
    return table.primes()[g - 1];
}

rs_report verify_rs_inequalities(prime_table const & table)
{
    rs_report report;
    auto const primes = table.primes();
    double const e32 = std::exp(1.5);

    for (std::size_t k = 0; k < primes.size(); ++k) {
        double const p = primes[k];
        double const lp = std::log(p);
        double const theta = table.theta_prefix(k).value();
        double const g = static_cast<double>(k + 1);

        if (p > 41.0) {
            ++report.theta_lower.checked;
            if (!(theta > p * (1.0 - 1.0 / lp)))
                ++report.theta_lower.violations;
        }
        if (k + 1 >= 2) {
            double const lg = std::log(g);
            ++report.nth_prime_lower.checked;
            if (!(p > g * (lg + std::log(lg) - 1.5)))
                ++report.nth_prime_lower.violations;
            if (k + 1 >= 6) {
                ++report.nth_prime_upper.checked;
                if (!(p < g * (lg + std::log(lg))))
                    ++report.nth_prime_upper.violations;
            }
        }
        if (p > e32) {
            ++report.pi_upper.checked;
            if (!(g < p / (lp - 1.5)))
                ++report.pi_upper.violations;
        }
        if (p > 678407.0) {
            ++report.theta_lower_fine.checked;
            if (!(theta > p * (1.0 - 1.0 / (40.0 * lp))))
                ++report.theta_lower_fine.violations;
        }
    }
    return report;
}

}  // namespace genusbounds
