#ifndef RPD_ERRORS_HPP
#define RPD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rpd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shape problems: dimension or grid mismatch, ragged input, empty containers.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Every sampled direction has zero projected MAD.
class DegenerateSampleError : public Error {
public:
  using Error::Error;
};

/// No direction passes a MAD threshold.
class EmptyDirectionSetError : public Error {
public:
  EmptyDirectionSetError(double threshold, double max_mad)
      : Error("no direction has projected MAD >= " + std::to_string(threshold) +
              " (largest observed MAD is " + std::to_string(max_mad) +
              "); lower beta or the quantile level u"),
        threshold_(threshold), max_mad_(max_mad) {}

  double threshold() const noexcept { return threshold_; }
  double max_mad() const noexcept { return max_mad_; }

private:
  double threshold_;
  double max_mad_;
};

} // namespace rpd

#endif // RPD_ERRORS_HPP
