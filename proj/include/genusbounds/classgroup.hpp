#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace genusbounds {

/// Positive definite integral binary quadratic form a x^2 + b xy + c y^2.
struct form {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    /// 4ac - b^2, i.e. D for a form of discriminant -D.
    __int128 magnitude() const
    {
        return __int128{4} * a * c - __int128{b} * b;
    }

    friend auto operator<=>(form const &, form const &) = default;
};

/// The identity class: (1, 0, D/4) or (1, 1, (D+1)/4).
form principal_form(std::uint64_t D);

/// (a, -b, c), re-reduced so the boundary orientation stays canonical.
form inverse(form const & f);

bool is_reduced(form const & f);

/*
 * Reduced representative of the proper equivalence class of f:
 * |b| <= a <= c, b >= 0 whenever |b| = a or a = c.
 * Throws domain_error if f is not positive definite.
 */
form reduce(form const & f);

/*
 * Dirichlet composition of two forms of the same discriminant, followed
 * by reduction. Intermediate arithmetic is 128-bit. Throws domain_error
 * on mismatched discriminants.
 */
form compose(form const & f1, form const & f2);

form square(form const & f);

/*
 * All reduced primitive forms of discriminant -D, sorted. Loops over
 * a <= sqrt(D/3) and 0 <= b <= a with b = D (mod 2), keeping c = (b^2+D)/4a
 * when integral and >= a. Throws domain_error unless D >= 3 and
 * -D = 0, 1 (mod 4).
 */
std::vector<form> reduced_forms(std::uint64_t D);

/// Distinct reduced squares of the given classes, sorted.
std::vector<form> squares_of(std::span<const form> forms);

struct class_group_summary {
    std::uint64_t D = 0;
    std::vector<form> reduced_forms;
    std::uint64_t h = 0;
    unsigned g = 0;
    std::vector<form> principal_genus;      // sorted
    std::uint64_t p = 0;
    std::vector<std::vector<form>> genus_cosets;
};

/// Reduced forms, h and g; the genus fields are left empty.
class_group_summary enumerate_reduced(std::uint64_t D);

/*
 * Fully populated summary for a fundamental -D: the principal genus as
 * the set of squares, and the genus cosets. Throws domain_error for
 * non-fundamental D and std::logic_error if p * 2^{g-1} != h.
 */
class_group_summary principal_genus(std::uint64_t D);

/// True iff the cosets partition the reduced forms into 2^{g-1} blocks of size p.
bool genus_partition_check(class_group_summary const & summary);

}  // namespace genusbounds
