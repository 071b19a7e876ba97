#pragma once

#include <stdexcept>
#include <string>

namespace curvlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A metric δ+h failed the pointwise positivity test.
class NonRiemannian : public Error {
 public:
  NonRiemannian(const std::string& what, double lambda_min, std::size_t worst_point)
      : Error(what), lambda_min_(lambda_min), worst_point_(worst_point) {}
  double lambda_min() const { return lambda_min_; }
  std::size_t worst_point() const { return worst_point_; }

 private:
  double lambda_min_;
  std::size_t worst_point_;
};

class PreconditionNotMet : public Error {
 public:
  using Error::Error;
};

class NonPositiveC : public Error {
 public:
  using Error::Error;
};

class SymbolDegenerate : public Error {
 public:
  using Error::Error;
};

class KappaSingular : public Error {
 public:
  using Error::Error;
};

class LambdaNonPositive : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvlab
