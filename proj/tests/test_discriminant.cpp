#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "genusbounds/discriminant.hpp"
#include "genusbounds/errors.hpp"
#include "genusbounds/primes.hpp"
#include "oracles.hpp"

using namespace genusbounds;

TEST_CASE("factorize")
{
    CHECK(factorize(1).empty());
    CHECK(factorize(5460) ==
          std::vector<prime_power>{{2, 2}, {3, 1}, {5, 1}, {7, 1}, {13, 1}});
    CHECK(factorize(163) == std::vector<prime_power>{{163, 1}});
    CHECK(factorize(9223372036854775783ull) ==   // largest prime below 2^63
          std::vector<prime_power>{{9223372036854775783ull, 1}});
    CHECK_THROWS_AS(factorize(0), genusbounds::domain_error);

    for (std::uint64_t n = 1; n <= 5000; ++n) {
        auto const got = factorize(n);
        auto const want = oracle::factor(n);
        REQUIRE(got.size() == want.size());
        std::uint64_t product = 1;
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].prime == want[i].first);
            CHECK(got[i].exponent == want[i].second);
            for (unsigned e = 0; e < got[i].exponent; ++e)
                product *= got[i].prime;
        }
        CHECK(product == n);
    }
}

TEST_CASE("is_fundamental_negative")
{
    CHECK(is_fundamental_negative(4));
    CHECK(is_fundamental_negative(8));
    CHECK(is_fundamental_negative(3));
    CHECK_FALSE(is_fundamental_negative(12));
    CHECK(is_fundamental_negative(20));
    CHECK(is_fundamental_negative(5460));
    CHECK_FALSE(is_fundamental_negative(16));
    CHECK_FALSE(is_fundamental_negative(27));

    for (std::uint64_t D = 3; D <= 20000; ++D)
        REQUIRE_MESSAGE(is_fundamental_negative(D) == oracle::is_fundamental(D), "D=", D);
}

TEST_CASE("primary_decomposition examples")
{
    CHECK(primary_decomposition(20) == std::vector<std::int64_t>{-4, 5});
    CHECK(primary_decomposition(24) == std::vector<std::int64_t>{-3, 8});
    CHECK(primary_decomposition(4) == std::vector<std::int64_t>{-4});
    CHECK(primary_decomposition(8) == std::vector<std::int64_t>{-8});
    CHECK(primary_decomposition(40) == std::vector<std::int64_t>{5, -8});
    for (std::uint64_t q : {3ull, 7ull, 11ull, 163ull})
        CHECK(primary_decomposition(q) == std::vector<std::int64_t>{-static_cast<std::int64_t>(q)});
    CHECK_THROWS_AS(primary_decomposition(12), genusbounds::domain_error);
    CHECK_THROWS_AS(primary_decomposition(5), genusbounds::domain_error);
}

TEST_CASE("primary decomposition invariants over all fundamental D <= 2e4")
{
    for (std::uint64_t D = 3; D <= 20000; ++D) {
        auto const prof = make_profile(D);
        if (!prof.is_fundamental)
            continue;
        auto const & parts = prof.primary_parts;
        REQUIRE(parts.size() == prof.g);

        __int128 product = 1;
        double log_sum = 0.0;
        int even_parts = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            std::int64_t const q = parts[i];
            std::int64_t const aq = std::llabs(q);
            product *= q;
            log_sum += std::log(static_cast<double>(aq));
            if (aq == 4 || aq == 8) {
                ++even_parts;
                CHECK((q == -4 || q == 8 || q == -8));
            } else {
                CHECK(oracle::is_prime(static_cast<std::uint64_t>(aq)));
                CHECK(q == (aq % 4 == 1 ? aq : -aq));
            }
            if (i > 0)
                CHECK(std::llabs(parts[i - 1]) < aq);
            for (std::size_t j = 0; j < i; ++j)
                CHECK(std::gcd(std::llabs(parts[j]), aq) == 1);
        }
        CHECK(even_parts <= 1);
        CHECK(product == -static_cast<__int128>(D));
        CHECK(log_sum == doctest::Approx(std::log(static_cast<double>(D))).epsilon(1e-10));
    }
}

TEST_CASE("ln D >= theta(p_g) for every fundamental D <= 1e5")
{
    prime_table const t(1000);
    for (std::uint64_t D = 3; D <= 100000; ++D) {
        auto const prof = make_profile(D);
        if (!prof.is_fundamental)
            continue;
        double const th = chebyshev_theta(t, static_cast<double>(nth_prime(t, prof.g)));
        REQUIRE_MESSAGE(std::log(static_cast<double>(D)) >= th - 1e-12, "D=", D);
    }
}

TEST_CASE("check_lemma1")
{
    CHECK(check_lemma1(make_profile(20)));
    CHECK(check_lemma1(make_profile(5460)));
    CHECK(std::log(5460.0) == doctest::Approx(8.605).epsilon(1e-3));
    CHECK(5 * std::log(5.0) == doctest::Approx(8.047).epsilon(1e-3));

    // The fundamental one of 4 * 3 * 5 * ... * 29 and 8 * 3 * 5 * ... * 29.
    std::uint64_t odd = 3ull * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29;
    std::uint64_t const D10 = odd % 4 == 1 ? 4 * odd : 8 * odd;
    auto const prof = make_profile(D10);
    REQUIRE(prof.is_fundamental);
    CHECK(prof.g == 10);
    CHECK(check_lemma1(prof));

    CHECK_THROWS_AS(check_lemma1(make_profile(23)), genusbounds::domain_error);
    CHECK_THROWS_AS(check_lemma1(make_profile(12)), genusbounds::domain_error);
}
