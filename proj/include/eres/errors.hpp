#pragma once

#include <stdexcept>
#include <string>

namespace eres {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain where a formula or model applies.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate, double error, int intervals)
      : Error(what), estimate_(estimate), error_(error), intervals_(intervals) {}

  double estimate() const { return estimate_; }
  double error_estimate() const { return error_; }
  int intervals() const { return intervals_; }

 private:
  double estimate_;
  double error_;
  int intervals_;
};

class RootNotFound : public Error {
 public:
  using Error::Error;
};

/// Raised where the second derivative of the action diverges.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// No stable exit branch: decay proceeds through the static channel only.
class NoStableBranch : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double location) : Error(what), location_(location) {}
  double location() const { return location_; }

 private:
  double location_;
};

}  // namespace eres
