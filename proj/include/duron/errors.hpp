#ifndef DURON_ERRORS_HPP
#define DURON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace duron {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands belong to different algebra contexts.
struct ContextError : Error {
  using Error::Error;
};

// Groupoid composition [A,B][C,D] with B != C. Distinct from a zero result:
// the incidence product returns zero instead of throwing.
struct UndefinedComposition : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct PresetError : Error {
  using Error::Error;
};

struct SingularityError : Error {
  using Error::Error;
};

struct SchemaError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  NumericalError(const std::string& msg, double achieved_residual)
      : Error(msg), achieved(achieved_residual) {}
  double achieved;
};

struct CutoffError : Error {
  CutoffError(const std::string& msg, int required)
      : Error(msg), required_cutoff(required) {}
  int required_cutoff;
};

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

}  // namespace duron

#endif
