#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genusbounds/primes.hpp"

namespace genusbounds {

enum class output_format { csv, json };

struct scan_config {
    std::uint64_t d_min = 162755;          // ceil(e^12)
    std::uint64_t d_max = 1000000;
    std::optional<double> epsilon = 1.0 / 12.0;   // nullopt: eps = 1/ln D per row
    std::vector<int> n_values{4};
    unsigned workers = 1;
    std::string output_path = "scan.csv";
    output_format format = output_format::csv;

    /// Throws config_error on d_min > d_max, eps outside (0, 1/2), n < 4, workers == 0.
    void validate() const;
};

struct scan_row {
    std::uint64_t D = 0;
    unsigned g = 0;
    std::uint64_t h = 0;
    std::uint64_t p = 0;
    double epsilon = 0.0;
    bool applicable = false;
    double bound_t2 = 0.0;
    std::vector<double> bound_t1;   // parallel to scan_config::n_values
    double margin_t2 = 0.0;         // p / bound_t2
    std::vector<double> margin_t1;
};

struct bound_violation {
    std::uint64_t D = 0;
    std::uint64_t p = 0;
    double bound = 0.0;
    std::string theorem;   // "T2" or "T1_n<k>"
};

struct dyadic_min {
    unsigned k = 0;          // range [2^k, 2^{k+1})
    std::uint64_t D = 0;     // argmin
    std::uint64_t min_p = 0;
};

struct scan_report {
    std::uint64_t scanned_count = 0;
    std::uint64_t fundamental_count = 0;
    std::uint64_t applicable_count = 0;
    std::uint64_t lemma1_violations = 0;
    std::uint64_t key_inequality_violations = 0;
    std::uint64_t w_chain_violations = 0;
    std::uint64_t genus_identity_violations = 0;
    std::vector<bound_violation> bound_violations;
    std::optional<std::pair<std::uint64_t, double>> min_margin;   // (D, p/bound)
    std::vector<dyadic_min> min_p_by_dyadic_range;

    /// Hard counters zero and at most one bound violation.
    bool passed() const;
};

/// Evaluates every D in [d_min, d_max] with -D fundamental. Rows come back sorted by D
/// regardless of the worker count.
scan_report run_scan(scan_config const & config, prime_table const & table,
                     std::vector<scan_row> * rows = nullptr);

enum class verify_target { lemma1, keyineq, wchain, rs, genus };

std::optional<verify_target> parse_verify_target(std::string const & name);
std::string to_string(verify_target t);

struct verify_report {
    verify_target target = verify_target::lemma1;
    std::uint64_t limit = 0;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::uint64_t mod8_branch = 0;     // keyineq: checks that used D/2
    std::uint64_t plain_branch = 0;    // keyineq: checks that used D
    std::vector<std::string> details;  // first few failures, or per-inequality counts for rs
};

/*
 * Runs one verification over all fundamental -D <= limit (over primes
 * <= limit for rs). keyineq runs each n in ns; the rs target builds its
 * own prime table of the given limit.
 */
verify_report run_verify(verify_target target, std::uint64_t limit, std::vector<int> const & ns,
                         prime_table const & table, unsigned workers = 1);

}  // namespace genusbounds
