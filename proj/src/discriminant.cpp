#include "genusbounds/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "genusbounds/errors.hpp"

namespace genusbounds {

namespace {

constexpr std::uint64_t max_D = (std::uint64_t{1} << 63) - 1;

void strip(std::uint64_t & n, std::uint64_t p, std::vector<prime_power> & out)
{
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    if (e)
        out.push_back({p, e});
}

bool squarefree(std::vector<prime_power> const & factors)
{
    return std::all_of(factors.begin(), factors.end(),
                       [](prime_power const & pp) { return pp.exponent == 1; });
}

bool fundamental_from_factors(std::uint64_t D, std::vector<prime_power> const & factors)
{
    if (D < 3)
        return false;
    if (D % 4 == 3)
        return squarefree(factors);
    if (D % 4 != 0)
        return false;
    // -D = 4m with m = -D/4 = -k; m = 2 or 3 mod 4 <=> k = 2 or 1 mod 4.
    std::uint64_t const k = D / 4;
    if (k % 4 != 1 && k % 4 != 2)
        return false;
    for (auto const & pp : factors) {
        unsigned const allowed = pp.prime == 2 ? (k % 2 == 0 ? 3u : 2u) : 1u;
        if (pp.exponent != allowed)
            return false;
    }
    return true;
}

}  // namespace

std::vector<prime_power> factorize(std::uint64_t D)
{
    if (D == 0 || D > max_D)
        throw domain_error("factorize expects 1 <= D < 2^63, got " + std::to_string(D));
    std::vector<prime_power> out;
    std::uint64_t n = D;
    strip(n, 2, out);
    strip(n, 3, out);
    // Candidates 6k - 1, 6k + 1.
    for (std::uint64_t p = 5; p <= n / p; p += 6) {
        strip(n, p, out);
        strip(n, p + 2, out);
    }
    if (n > 1)
        out.push_back({n, 1});
    return out;
}

bool is_fundamental_negative(std::uint64_t D)
{
    if (D < 3 || D > max_D)
        return false;
    if (D % 4 == 1 || D % 4 == 2)
        return false;
    return fundamental_from_factors(D, factorize(D));
}

namespace {

std::vector<std::int64_t> decompose(std::uint64_t D, std::vector<prime_power> const & factors)
{
    std::vector<std::int64_t> parts;
    std::int64_t odd_product_sign = 1;
    std::uint64_t two_power = 1;
    for (auto const & pp : factors) {
        if (pp.prime == 2) {
            for (unsigned i = 0; i < pp.exponent; ++i)
                two_power *= 2;
            continue;
        }
        auto const p = static_cast<std::int64_t>(pp.prime);
        std::int64_t const part = pp.prime % 4 == 1 ? p : -p;
        if (part < 0)
            odd_product_sign = -odd_product_sign;
        parts.push_back(part);
    }
    if (two_power > 1) {
        // The even part must turn the odd product's sign into -.
        auto const magnitude = static_cast<std::int64_t>(two_power);
        parts.push_back(odd_product_sign > 0 ? -magnitude : magnitude);
    } else if (odd_product_sign > 0) {
        throw domain_error("primary parts of " + std::to_string(D) +
                           " do not multiply to a negative discriminant");
    }
    std::sort(parts.begin(), parts.end(), [](std::int64_t a, std::int64_t b) {
        return std::llabs(a) < std::llabs(b);
    });
    return parts;
}

}  // namespace

std::vector<std::int64_t> primary_decomposition(std::uint64_t D)
{
    if (D < 3 || D > max_D)
        throw domain_error("primary_decomposition expects a fundamental -D, got D=" +
                           std::to_string(D));
    auto const factors = factorize(D);
    if (!fundamental_from_factors(D, factors))
        throw domain_error("-" + std::to_string(D) + " is not a fundamental discriminant");
    return decompose(D, factors);
}

discriminant_profile make_profile(std::uint64_t D)
{
    discriminant_profile profile;
    profile.D = D;
    profile.prime_factors = factorize(D);
    profile.g = static_cast<unsigned>(profile.prime_factors.size());
    profile.is_fundamental = fundamental_from_factors(D, profile.prime_factors);
    if (profile.is_fundamental)
        profile.primary_parts = decompose(D, profile.prime_factors);
    return profile;
}

bool check_lemma1(discriminant_profile const & profile)
{
    if (!profile.is_fundamental)
        throw domain_error("check_lemma1 requires a fundamental discriminant");
    if (profile.g < 2)
        throw domain_error("check_lemma1 requires g >= 2");
    double const g = profile.g;
    return std::log(static_cast<double>(profile.D)) > g * std::log(g);
}

}  // namespace genusbounds
