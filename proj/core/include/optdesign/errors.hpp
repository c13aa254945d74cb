#ifndef OPTDESIGN_ERRORS_HPP
#define OPTDESIGN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace optdesign {

/// Bad input to a constructor or operation (empty design, point outside the
/// design space, malformed correlation matrix, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quantity that needs an invertible information matrix was requested for
/// a singular one.
class SingularDesign : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The optimizer could not produce a design with a finite criterion value.
class OptimizationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace optdesign

#endif  // OPTDESIGN_ERRORS_HPP
