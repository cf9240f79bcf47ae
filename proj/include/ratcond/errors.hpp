#pragma once

#include <stdexcept>
#include <string>

namespace ratcond {

// Base class for all library errors. The CLI maps concrete types to
// distinct exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

class ShapeMismatch : public Error {
 public:
  explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

class NotRegular : public Error {
 public:
  explicit NotRegular(const std::string& what) : Error(what) {}
};

// z is (numerically) a pole candidate of R or an eigenvalue of A.
class PoleOrSingular : public Error {
 public:
  explicit PoleOrSingular(const std::string& what) : Error(what) {}
};

class NotMinimal : public Error {
 public:
  explicit NotMinimal(const std::string& what) : Error(what) {}
};

class NotSimple : public Error {
 public:
  explicit NotSimple(const std::string& what) : Error(what) {}
};

class DegreeZero : public Error {
 public:
  explicit DegreeZero(const std::string& what) : Error(what) {}
};

class BackendFailure : public Error {
 public:
  explicit BackendFailure(const std::string& what) : Error(what) {}
};

class NoFiniteEigenvalues : public Error {
 public:
  explicit NoFiniteEigenvalues(const std::string& what) : Error(what) {}
};

class EigenvalueCollision : public Error {
 public:
  explicit EigenvalueCollision(const std::string& what) : Error(what) {}
};

class InvalidSpec : public Error {
 public:
  explicit InvalidSpec(const std::string& what) : Error(what) {}
};

}  // namespace ratcond
