#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "genusbounds/bounds.hpp"
#include "genusbounds/scan.hpp"

namespace genusbounds::cli {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_io = 3;

inline constexpr std::uint64_t default_sieve_limit = std::uint64_t{1} << 21;

/// Default sieve size, overridden by GENUSBOUNDS_SIEVE_LIMIT.
std::uint64_t sieve_limit_from_env();

/// Shortest round-trip decimal representation.
std::string format_double(double x);

void write_scan_csv(std::ostream & os, std::vector<scan_row> const & rows,
                    std::vector<int> const & ns);
void write_scan_json(std::ostream & os, scan_report const & report,
                     std::vector<scan_row> const & rows, scan_config const & config);
void write_figure_csv(std::ostream & os, figure_table const & table);

/// Entry point of the `genusbounds` executable; argv[0] is the program name.
int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err);

}  // namespace genusbounds::cli
