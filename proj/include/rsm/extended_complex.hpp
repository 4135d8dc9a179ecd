#pragma once

#include <complex>
#include <optional>

namespace rsm {

using Complex = std::complex<double>;

/// A point of the Riemann sphere: a finite complex number or infinity.
class ExtendedComplex {
 public:
  ExtendedComplex() : value_(Complex{0.0, 0.0}) {}
  ExtendedComplex(Complex z);  // NOLINT(google-explicit-constructor)
  ExtendedComplex(double re) : ExtendedComplex(Complex{re, 0.0}) {}  // NOLINT

  static ExtendedComplex infinity() { return ExtendedComplex(std::nullopt); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  /// Throws rsm::Error(InvalidConfig) for the point at infinity.
  Complex value() const;

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    return a.value_ == b.value_;
  }

 private:
  explicit ExtendedComplex(std::optional<Complex> v) : value_(v) {}
  std::optional<Complex> value_;
};

}  // namespace rsm
