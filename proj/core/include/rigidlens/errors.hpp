#ifndef RIGIDLENS_ERRORS_HPP
#define RIGIDLENS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rigidlens {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

/// Normalization requested for a polynomial that vanishes at the origin.
class ZeroAtOrigin : public Error {
 public:
  explicit ZeroAtOrigin(const std::string& msg) : Error(msg) {}
};

/// Root extraction on an identically zero coefficient list.
class ZeroPolynomial : public Error {
 public:
  explicit ZeroPolynomial(const std::string& msg) : Error(msg) {}
};

/// A restriction expected to be real rooted carries complex roots.
class NonRealRooted : public Error {
 public:
  explicit NonRealRooted(const std::string& msg) : Error(msg) {}
};

class BasePointOnZeroSet : public Error {
 public:
  explicit BasePointOnZeroSet(const std::string& msg) : Error(msg) {}
};

/// Gradient too small at a zero-set point to define a tangent hyperplane.
class SingularPoint : public Error {
 public:
  explicit SingularPoint(const std::string& msg) : Error(msg) {}
};

/// Tangent hyperplane passes through the origin; no comonic form exists.
class TangentThroughOrigin : public Error {
 public:
  explicit TangentThroughOrigin(const std::string& msg) : Error(msg) {}
};

/// Exact determinant expansion refused beyond the configured size cap.
class SizeCapExceeded : public Error {
 public:
  explicit SizeCapExceeded(const std::string& msg) : Error(msg) {}
};

/// Objective evaluation produced a NaN (eigensolve failure or blow-up).
class NonFiniteObjective : public Error {
 public:
  explicit NonFiniteObjective(const std::string& msg) : Error(msg) {}
};

/// Least-squares system for cofactor extraction is rank deficient.
class DegenerateSystem : public Error {
 public:
  DegenerateSystem(const std::string& msg, int rank_found)
      : Error(msg), rank(rank_found) {}
  int rank;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace rigidlens

#endif  // RIGIDLENS_ERRORS_HPP
