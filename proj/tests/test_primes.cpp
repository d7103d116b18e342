#include <doctest.h>

#include <cmath>
#include <vector>

#include "genusbounds/errors.hpp"
#include "genusbounds/primes.hpp"
#include "oracles.hpp"

using namespace genusbounds;

TEST_CASE("prime table contents")
{
    prime_table const t10(10);
    CHECK(std::vector<std::uint32_t>(t10.primes().begin(), t10.primes().end()) ==
          std::vector<std::uint32_t>{2, 3, 5, 7});

    prime_table const t2(2);
    REQUIRE(t2.size() == 1);
    CHECK(t2.primes()[0] == 2);

    CHECK(prime_table(16).size() == oracle::prime_pi(16));
    CHECK(prime_table(16).size() == 6);
}

TEST_CASE("prime table limit guard")
{
    CHECK_THROWS_AS(prime_table(1), config_error);
    CHECK_THROWS_AS(prime_table(0), config_error);
    CHECK_THROWS_AS(prime_table(prime_table::max_limit + 1), config_error);
}

TEST_CASE("prime_pi and chebyshev_theta spot values")
{
    prime_table const t(100);
    CHECK(prime_pi(t, 1) == 0);
    CHECK(prime_pi(t, 2) == 1);
    CHECK(prime_pi(t, 16) == 6);
    CHECK(prime_pi(t, 16.9) == 6);
    CHECK(prime_pi(t, 0) == 0);

    CHECK(chebyshev_theta(t, 1) == 0.0);
    CHECK(chebyshev_theta(t, 2) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(chebyshev_theta(t, 10) == doctest::Approx(std::log(210.0)).epsilon(1e-15));
    CHECK(chebyshev_theta(t, 10) == doctest::Approx(5.347107530717468).epsilon(1e-14));
}

TEST_CASE("queries above the limit fail")
{
    prime_table const t(100);
    CHECK_THROWS_AS(prime_pi(t, 101), out_of_table_error);
    CHECK_THROWS_AS(chebyshev_theta(t, 1e9), out_of_table_error);
    CHECK_THROWS_AS(nth_prime(t, 26), out_of_table_error);
    CHECK_THROWS_AS(prime_pi(t, -1), genusbounds::domain_error);
}

TEST_CASE("nth_prime")
{
    prime_table const t(1000);
    CHECK(nth_prime(t, 1) == 2);
    CHECK(nth_prime(t, 6) == 13);
    CHECK(nth_prime(t, 13) == 41);
    CHECK(nth_prime(t, 25) == 97);
    CHECK_THROWS_AS(nth_prime(t, 0), genusbounds::domain_error);
}

TEST_CASE("pi and theta at powers of two match trial division")
{
    prime_table const t(std::uint64_t{1} << 20);
    // The oracle is quadratic-ish; step through n <= 20 with a running oracle.
    std::uint64_t count = 0;
    long double theta = 0.0L;
    std::uint64_t next = 2;
    for (int n = 1; n <= 20; ++n) {
        std::uint64_t const x = std::uint64_t{1} << n;
        for (; next <= x; ++next) {
            if (oracle::is_prime(next)) {
                ++count;
                theta += std::log(static_cast<long double>(next));
            }
        }
        CHECK(prime_pi(t, static_cast<double>(x)) == count);
        CHECK(chebyshev_theta(t, static_cast<double>(x)) ==
              doctest::Approx(static_cast<double>(theta)).epsilon(1e-12));
    }
}

TEST_CASE("prime table invariants")
{
    prime_table const t(std::uint64_t{1} << 22);
    auto const ps = t.primes();

    bool increasing = true;
    for (std::size_t i = 1; i < ps.size(); ++i)
        increasing = increasing && ps[i - 1] < ps[i];
    CHECK(increasing);

    // Per-prime increment of theta equals ln p to 1e-12.
    double worst = 0.0;
    for (std::size_t k = 1; k < ps.size(); ++k) {
        auto const a = t.theta_prefix(k - 1);
        auto const b = t.theta_prefix(k);
        double const step = (b.hi - a.hi) + (b.lo - a.lo);
        worst = std::max(worst, std::abs(step - std::log(static_cast<double>(ps[k]))));
    }
    CHECK(worst <= 1e-12);

    // Nondecreasing step functions and theta(x) <= pi(x) ln x.
    double prev_theta = 0.0;
    std::uint64_t prev_pi = 0;
    bool monotone = true, dominated = true;
    for (double x = 2.0; x <= 1e5; x *= 1.01) {
        double const th = chebyshev_theta(t, x);
        std::uint64_t const pi = prime_pi(t, x);
        monotone = monotone && th >= prev_theta && pi >= prev_pi;
        dominated = dominated && th <= static_cast<double>(pi) * std::log(x) + 1e-9;
        prev_theta = th;
        prev_pi = pi;
    }
    CHECK(monotone);
    CHECK(dominated);
}

TEST_CASE("theta prefix agrees with a long double recomputation")
{
    prime_table const t(std::uint64_t{1} << 21);
    long double sum = 0.0L;
    double worst = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        sum += std::log(static_cast<long double>(t.primes()[k]));
        double const rel = std::abs(static_cast<double>(
                               (static_cast<long double>(t.theta_prefix(k).value()) - sum) / sum));
        worst = std::max(worst, rel);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("Rosser-Schoenfeld inequalities")
{
    SUBCASE("limit 100")
    {
        auto const r = verify_rs_inequalities(prime_table(100));
        CHECK(r.theta_lower.violations == 0);
        CHECK(r.nth_prime_lower.violations == 0);
        CHECK(r.nth_prime_upper.violations == 0);
        CHECK(r.pi_upper.violations == 0);
        CHECK(r.theta_lower.checked > 0);
        CHECK(r.theta_lower_fine.checked == 0);
    }
    SUBCASE("limit 1e6")
    {
        auto const r = verify_rs_inequalities(prime_table(1000000));
        CHECK(r.total_violations() == 0);
        CHECK(r.nth_prime_lower.checked == 78497);
        CHECK(r.theta_lower_fine.checked == 23571);
    }
    SUBCASE("(ii) at g = 2 has a negative right side")
    {
        double const g = 2.0;
        CHECK(g * (std::log(g) + std::log(std::log(g)) - 1.5) < 0.0);
    }
}
