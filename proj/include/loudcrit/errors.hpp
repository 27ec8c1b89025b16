#ifndef LOUDCRIT_ERRORS_HPP
#define LOUDCRIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace loudcrit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define LOUDCRIT_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
  }

LOUDCRIT_DEFINE_ERROR(DomainError);
LOUDCRIT_DEFINE_ERROR(PoleError);
LOUDCRIT_DEFINE_ERROR(ComplexRootsError);
LOUDCRIT_DEFINE_ERROR(SingularityError);
LOUDCRIT_DEFINE_ERROR(ConvergenceError);
LOUDCRIT_DEFINE_ERROR(QuadratureError);
LOUDCRIT_DEFINE_ERROR(DivergenceError);
LOUDCRIT_DEFINE_ERROR(FitError);
LOUDCRIT_DEFINE_ERROR(DerivativeUnavailable);
LOUDCRIT_DEFINE_ERROR(NoBracketError);
LOUDCRIT_DEFINE_ERROR(DegenerateNu);
LOUDCRIT_DEFINE_ERROR(TieDegeneracyError);
LOUDCRIT_DEFINE_ERROR(ExtrapolationError);

#undef LOUDCRIT_DEFINE_ERROR

}  // namespace loudcrit

#endif  // LOUDCRIT_ERRORS_HPP
