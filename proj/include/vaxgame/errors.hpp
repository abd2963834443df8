#ifndef VAXGAME_ERRORS_HPP
#define VAXGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vaxgame {

// Precondition or argument-range violation (CLI exit code 1).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Bad configuration: parse failures, budget violations, invalid knobs (exit code 1).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solve ran out of iterations (exit code 2).
class NonconvergenceError : public std::runtime_error {
public:
    explicit NonconvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vaxgame

#endif
