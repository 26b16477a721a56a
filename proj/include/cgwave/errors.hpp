#pragma once

#include <stdexcept>
#include <string>

namespace cgwave {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSamples : public Error {
 public:
  using Error::Error;
};

/// Raised when a strip Hilbert transform receives data with a nonzero mean.
class MeanNotZero : public Error {
 public:
  MeanNotZero(const std::string& what, double mean)
      : Error(what), mean_(mean) {}
  double mean() const noexcept { return mean_; }

 private:
  double mean_;
};

/// A denominator dropped below its floor at a collocation node.
class SingularExpression : public Error {
 public:
  SingularExpression(const std::string& what, int node, double x, double value)
      : Error(what), node_(node), x_(x), value_(value) {}
  int node() const noexcept { return node_; }
  double x() const noexcept { return x_; }
  double value() const noexcept { return value_; }

 private:
  int node_;
  double x_;
  double value_;
};

class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, int iterations, double last_residual)
      : Error(what), iterations_(iterations), last_residual_(last_residual) {}
  int iterations() const noexcept { return iterations_; }
  double last_residual() const noexcept { return last_residual_; }

 private:
  int iterations_;
  double last_residual_;
};

class SingularJacobian : public Error {
 public:
  SingularJacobian(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

class InadmissibleIterate : public Error {
 public:
  using Error::Error;
};

class KernelNotSimple : public Error {
 public:
  KernelNotSimple(const std::string& what, int colliding_mode)
      : Error(what), colliding_mode_(colliding_mode) {}
  int colliding_mode() const noexcept { return colliding_mode_; }

 private:
  int colliding_mode_;
};

class SurfaceInversionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace cgwave
