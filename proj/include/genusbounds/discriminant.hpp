#pragma once

#include <cstdint>
#include <vector>

namespace genusbounds {

struct prime_power {
    std::uint64_t prime;
    unsigned exponent;

    friend bool operator==(prime_power const &, prime_power const &) = default;
};

/// Trial-division factorization of 1 <= D < 2^63, primes ascending.
std::vector<prime_power> factorize(std::uint64_t D);

/// Whether -D is a fundamental discriminant (D >= 3).
bool is_fundamental_negative(std::uint64_t D);

/*
 * Splits a fundamental -D into coprime primary discriminants: -4, 8, -8,
 * or (-1)^{(p-1)/2} p for odd p. Sorted by absolute value; the product is
 * exactly -D. Throws domain_error for non-fundamental input.
 */
std::vector<std::int64_t> primary_decomposition(std::uint64_t D);

/// A negative discriminant -D together with its arithmetic data.
struct discriminant_profile {
    std::uint64_t D = 0;
    std::vector<prime_power> prime_factors;
    unsigned g = 0;                            // number of distinct primes of D
    std::vector<std::int64_t> primary_parts;   // empty unless fundamental
    bool is_fundamental = false;
};

discriminant_profile make_profile(std::uint64_t D);

/// ln D > g ln g. Requires a fundamental profile with g >= 2.
bool check_lemma1(discriminant_profile const & profile);

}  // namespace genusbounds
