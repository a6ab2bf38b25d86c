#ifndef COOPDESIGN_ERRORS_HPP
#define COOPDESIGN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coopdesign {

// Invalid inputs: out-of-range parameters, malformed scenarios, schema errors.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Inputs are well-formed but outside the regime a designer characterizes.
class PremiseError : public std::runtime_error {
  public:
    explicit PremiseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated internal invariant; indicates a bug, not a user error.
class InternalError : public std::logic_error {
  public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace coopdesign

#endif  // COOPDESIGN_ERRORS_HPP
