#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace genusbounds {

/*
 * Immutable table of all primes <= limit, with running sums of ln p.
 *
 * The running sums are kept as unevaluated pairs hi + lo (Neumaier
 * compensated summation), so that differences of neighbouring prefixes
 * stay accurate to a few ulps of ln p even when theta itself is ~1e7.
 */
class prime_table {
  public:
    static constexpr std::uint64_t max_limit = std::uint64_t{1} << 32;

    struct compensated_sum {
        double hi = 0.0;
        double lo = 0.0;
        double value() const { return hi + lo; }
    };

    /// Sieve of Eratosthenes over odd numbers, one bit per candidate.
    /// Throws config_error unless 2 <= limit <= 2^32.
    explicit prime_table(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    std::span<const std::uint32_t> primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }

    /// theta(primes()[k]) as a compensated pair.
    compensated_sum theta_prefix(std::size_t k) const
    {
        return {theta_hi_[k], theta_lo_[k]};
    }

  private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> primes_;
    std::vector<double> theta_hi_;
    std::vector<double> theta_lo_;
};

/// Number of primes <= x. Throws out_of_table_error if x > limit.
std::uint64_t prime_pi(prime_table const & table, double x);

/// Chebyshev theta(x) = sum of ln p over primes p <= x, in nats.
double chebyshev_theta(prime_table const & table, double x);

/// The g-th prime, p_1 = 2.
std::uint64_t nth_prime(prime_table const & table, std::uint64_t g);

/*
 * Explicit prime inequalities used as lemmas by the bounds:
 *   (i)   theta(x) > x (1 - 1/ln x)               primes 41 < x <= limit
 *   (ii)  p_g > g (ln g + ln ln g - 3/2)           g >= 2
 *   (iii) p_g < g (ln g + ln ln g)                 g >= 6
 *   (iv)  pi(t) < t / (ln t - 3/2)                 primes t > e^{3/2}
 *   (v)   theta(t) > t (1 - 1/(40 ln t))           primes t > 678407
 */
struct rs_report {
    struct entry {
        std::uint64_t checked = 0;
        std::uint64_t violations = 0;
    };
    entry theta_lower;         // (i)
    entry nth_prime_lower;     // (ii)
    entry nth_prime_upper;     // (iii)
    entry pi_upper;            // (iv)
    entry theta_lower_fine;    // (v)

    std::uint64_t total_violations() const
    {
        return theta_lower.violations + nth_prime_lower.violations +
               nth_prime_upper.violations + pi_upper.violations +
               theta_lower_fine.violations;
    }
};

rs_report verify_rs_inequalities(prime_table const & table);

}  // namespace genusbounds
