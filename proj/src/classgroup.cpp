#include "genusbounds/classgroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "genusbounds/discriminant.hpp"
#include "genusbounds/errors.hpp"

namespace genusbounds {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v)
{
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("form coefficient exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

// __builtin_mul_overflow on signed __int128 is miscompiled by g++ 11 at -O2,
// so the bound is checked on magnitudes instead.
i128 mul(i128 x, i128 y)
{
    using u128 = unsigned __int128;
    u128 const ax = x < 0 ? -static_cast<u128>(x) : static_cast<u128>(x);
    u128 const ay = y < 0 ? -static_cast<u128>(y) : static_cast<u128>(y);
    u128 const max = ~u128{0} >> 1;
    if (ax != 0 && ay > max / ax)
        throw std::overflow_error("128-bit overflow in form arithmetic");
    return x * y;
}

i128 floor_div(i128 x, i128 y)
{
    i128 q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0)))
        --q;
    return q;
}

struct xgcd_result {
    std::int64_t g, u, v;  // u*x + v*y = g
};

xgcd_result xgcd(std::int64_t x, std::int64_t y)
{
    std::int64_t r0 = x, r1 = y, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
    while (r1 != 0) {
        std::int64_t const q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = u0 - q * u1;
        u0 = u1;
        u1 = t;
        t = v0 - q * v1;
        v0 = v1;
        v1 = t;
    }
    if (r0 < 0)
        return {-r0, -u0, -v0};
    return {r0, u0, v0};
}

// (a, b) -> (a, b'), b' in (-a, a]; c recovered from the discriminant.
void normalize(i128 & a, i128 & b, i128 & c, i128 D)
{
    if (-a < b && b <= a)
        return;
    i128 const s = floor_div(a - b, 2 * a);
    b += 2 * a * s;
    c = (b * b + D) / (4 * a);
}

form reduce_wide(i128 a, i128 b, i128 c, i128 D)
{
    normalize(a, b, c, D);
    while (a > c) {
        std::swap(a, c);
        b = -b;
        normalize(a, b, c, D);
    }
    if ((a == c || b == a) && b < 0)
        b = -b;
    return {narrow(a), narrow(b), narrow(c)};
}

}  // namespace

form principal_form(std::uint64_t D)
{
    if (D % 4 == 0)
        return {1, 0, static_cast<std::int64_t>(D / 4)};
    if (D % 4 == 3)
        return {1, 1, static_cast<std::int64_t>((D + 1) / 4)};
    throw domain_error("-" + std::to_string(D) + " is not a discriminant");
}

bool is_reduced(form const & f)
{
    std::int64_t const ab = f.b < 0 ? -f.b : f.b;
    if (!(ab <= f.a && f.a <= f.c))
        return false;
    if ((ab == f.a || f.a == f.c) && f.b < 0)
        return false;
    return true;
}

form reduce(form const & f)
{
    i128 a = f.a, b = f.b, c = f.c;
    i128 const D = i128{4} * a * c - b * b;
    if (a <= 0 || D <= 0)
        throw domain_error("reduce expects a positive definite form");
    return reduce_wide(a, b, c, D);
}

form inverse(form const & f)
{
    return reduce({f.a, -f.b, f.c});
}

form compose(form const & f1_in, form const & f2_in)
{
    i128 const D = f1_in.magnitude();
    if (D != f2_in.magnitude())
        throw domain_error("compose: forms have different discriminants");

    form f1 = is_reduced(f1_in) ? f1_in : reduce(f1_in);
    form f2 = is_reduced(f2_in) ? f2_in : reduce(f2_in);
    if (f1.a > f2.a)
        std::swap(f1, f2);

    std::int64_t const s = (f1.b + f2.b) / 2;
    std::int64_t const n = f2.b - s;

    std::int64_t d, y1;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        auto const e = xgcd(f2.a, f1.a);
        d = e.g;
        y1 = e.u;
    }

    std::int64_t d1, x2, y2;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        auto const e = xgcd(s, d);
        d1 = e.g;
        x2 = e.u;
        y2 = -e.v;
    }

    i128 const v1 = f1.a / d1;
    i128 const v2 = f2.a / d1;
    i128 r = (mul(mul(y1, y2), n) - mul(x2, f2.c)) % v1;
    if (r < 0)
        r += v1;
    i128 const a3 = v1 * v2;
    i128 const b3 = f2.b + mul(2 * v2, r);
    i128 const c3 = (mul(b3, b3) + D) / (4 * a3);
    if (c3 * 4 * a3 - b3 * b3 != D)
        throw std::logic_error("compose: result has the wrong discriminant");

    return reduce_wide(a3, b3, c3, D);
}

form square(form const & f)
{
    return compose(f, f);
}

std::vector<form> reduced_forms(std::uint64_t D)
{
    if (D < 3 || D % 4 == 1 || D % 4 == 2)
        throw domain_error("-" + std::to_string(D) + " is not a negative discriminant");
    if (D > (std::uint64_t{1} << 62))
        throw domain_error("reduced form enumeration is limited to D <= 2^62");

    std::vector<form> out;
    auto a_max = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(D) / 3.0));
    while (3 * (a_max + 1) * (a_max + 1) <= D)
        ++a_max;
    while (a_max > 0 && 3 * a_max * a_max > D)
        --a_max;

    std::uint64_t const b0 = D % 2;
    for (std::uint64_t a = 1; a <= a_max; ++a) {
        std::uint64_t const m = 4 * a;
        // r tracks (b^2 + D) mod 4a as b steps by 2.
        std::uint64_t r = (b0 * b0 + D % m) % m;
        for (std::uint64_t b = b0; b <= a; b += 2) {
            if (r == 0) {
                std::uint64_t const c = (b * b + D) / m;
                if (c >= a && std::gcd(std::gcd(a, b), c) == 1) {
                    auto const sa = static_cast<std::int64_t>(a);
                    auto const sb = static_cast<std::int64_t>(b);
                    auto const sc = static_cast<std::int64_t>(c);
                    out.push_back({sa, sb, sc});
                    if (b != 0 && b != a && c != a)
                        out.push_back({sa, -sb, sc});
                }
            }
            r += 4 * b + 4;
            while (r >= m)
                r -= m;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<form> squares_of(std::span<const form> forms)
{
    std::vector<form> sq;
    sq.reserve(forms.size());
    for (auto const & f : forms)
        sq.push_back(square(f));
    std::sort(sq.begin(), sq.end());
    sq.erase(std::unique(sq.begin(), sq.end()), sq.end());
    return sq;
}

class_group_summary enumerate_reduced(std::uint64_t D)
{
    class_group_summary s;
    s.D = D;
    s.reduced_forms = reduced_forms(D);
    s.h = s.reduced_forms.size();
    s.g = static_cast<unsigned>(factorize(D).size());
    return s;
}

class_group_summary principal_genus(std::uint64_t D)
{
    if (!is_fundamental_negative(D))
        throw domain_error("-" + std::to_string(D) + " is not a fundamental discriminant");

    class_group_summary s = enumerate_reduced(D);
    s.principal_genus = squares_of(s.reduced_forms);
    s.p = s.principal_genus.size();

    auto const & forms = s.reduced_forms;
    std::vector<bool> assigned(forms.size(), false);
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (assigned[i])
            continue;
        std::vector<form> coset;
        coset.reserve(s.p);
        for (auto const & q : s.principal_genus) {
            form const member = compose(forms[i], q);
            auto it = std::lower_bound(forms.begin(), forms.end(), member);
            if (it == forms.end() || *it != member)
                throw std::logic_error("composition left the set of reduced forms");
            assigned[static_cast<std::size_t>(it - forms.begin())] = true;
            coset.push_back(member);
        }
        std::sort(coset.begin(), coset.end());
        s.genus_cosets.push_back(std::move(coset));
    }

    if (s.g == 0 || s.p << (s.g - 1) != s.h)
        throw std::logic_error("genus identity p * 2^(g-1) = h fails for D=" +
                               std::to_string(D));
    return s;
}

bool genus_partition_check(class_group_summary const & summary)
{
    if (summary.g == 0 || summary.p == 0)
        return false;
    std::uint64_t const expected_blocks = std::uint64_t{1} << (summary.g - 1);
    if (summary.genus_cosets.size() != expected_blocks)
        return false;

    std::vector<form> all;
    for (auto const & block : summary.genus_cosets) {
        if (block.size() != summary.p)
            return false;
        // Every block must be f * P for its own members.
        form const & f = block.front();
        std::vector<form> translate;
        for (auto const & q : summary.principal_genus)
            translate.push_back(compose(f, q));
        std::sort(translate.begin(), translate.end());
        std::vector<form> sorted_block = block;
        std::sort(sorted_block.begin(), sorted_block.end());
        if (translate != sorted_block)
            return false;
        all.insert(all.end(), block.begin(), block.end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        return false;
    return all == summary.reduced_forms;
}

}  // namespace genusbounds
