#pragma once

#include <stdexcept>
#include <string>

namespace smm {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SMM_DEFINE_ERROR(Name)                                     \
  class Name : public Error {                                      \
  public:                                                          \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

// linalg
SMM_DEFINE_ERROR(NonSymmetric);
SMM_DEFINE_ERROR(NoConvergence);
SMM_DEFINE_ERROR(RankDeficient);
SMM_DEFINE_ERROR(NotPositiveDefinite);
SMM_DEFINE_ERROR(UnresolvedCluster);
SMM_DEFINE_ERROR(MultiplicityMismatch);
SMM_DEFINE_ERROR(NotRotation);

// models
SMM_DEFINE_ERROR(InvalidDimensions);
SMM_DEFINE_ERROR(DegenerateParams);
SMM_DEFINE_ERROR(ZeroVector);
SMM_DEFINE_ERROR(MembershipFailed);
SMM_DEFINE_ERROR(InvalidSignature);
SMM_DEFINE_ERROR(LengthMismatch);
SMM_DEFINE_ERROR(NotGeneric);
SMM_DEFINE_ERROR(SingularSystem);
SMM_DEFINE_ERROR(NonIntegralSolution);
SMM_DEFINE_ERROR(NonPositiveMultiplicity);
SMM_DEFINE_ERROR(SignPatternViolation);
SMM_DEFINE_ERROR(DegenerateInterpolation);
SMM_DEFINE_ERROR(InfeasibleEpsilon);
SMM_DEFINE_ERROR(DimensionMismatch);
SMM_DEFINE_ERROR(NonSymmetricTangent);
SMM_DEFINE_ERROR(ShapeMismatch);
SMM_DEFINE_ERROR(IllConditioned);
SMM_DEFINE_ERROR(InvalidFlag);
SMM_DEFINE_ERROR(NotAProduct);

// io
SMM_DEFINE_ERROR(ConstraintViolation);

#undef SMM_DEFINE_ERROR

/// Parse failure with source position, thrown by the file reader.
class ParseError : public Error {
public:
  ParseError(int line, int column, const std::string& what)
      : Error("ParseError: line " + std::to_string(line) + ", col " +
              std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace smm
