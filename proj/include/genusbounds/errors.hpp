#pragma once

#include <stdexcept>
#include <string>

namespace genusbounds {

/// Invalid construction parameters (sieve limit, scan configuration).
class config_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Query beyond what a prime table covers.
class out_of_table_error : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

}  // namespace genusbounds
