#pragma once

#include <stdexcept>
#include <string>

namespace gammahc {

/// Base class for every failure raised by the library. `name()` is the
/// stable identifier reported by the CLI (e.g. "TruncationOverflow").
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define GAMMAHC_DEFINE_ERROR(Type)                                  \
  class Type : public Error {                                       \
   public:                                                          \
    explicit Type(const std::string& what) : Error(#Type, what) {}  \
  }

GAMMAHC_DEFINE_ERROR(CompositionNonzero);
GAMMAHC_DEFINE_ERROR(DimensionMismatch);
GAMMAHC_DEFINE_ERROR(NotInteger);
GAMMAHC_DEFINE_ERROR(UndefinedGenerator);
GAMMAHC_DEFINE_ERROR(InvalidGenerator);
GAMMAHC_DEFINE_ERROR(TruncationOverflow);
GAMMAHC_DEFINE_ERROR(InfiniteSlice);
GAMMAHC_DEFINE_ERROR(NotInIdeal);
GAMMAHC_DEFINE_ERROR(NotQuasiMonic);
GAMMAHC_DEFINE_ERROR(UnsupportedV0);
GAMMAHC_DEFINE_ERROR(WindowTooSmall);
GAMMAHC_DEFINE_ERROR(HypothesisViolated);
GAMMAHC_DEFINE_ERROR(UnitP);
GAMMAHC_DEFINE_ERROR(TooManyVariables);
GAMMAHC_DEFINE_ERROR(NotFlat);
GAMMAHC_DEFINE_ERROR(ParseError);
GAMMAHC_DEFINE_ERROR(NotAssociative);

#undef GAMMAHC_DEFINE_ERROR

}  // namespace gammahc
