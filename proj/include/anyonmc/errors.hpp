#ifndef ANYONMC_ERRORS_HPP
#define ANYONMC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace anyonmc {

// Bad parameter combinations, violated preconditions on user-facing inputs.
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-convergence, NaN, or an internal numerical contract violation.
// The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace anyonmc

#endif
