#include "rsm/extended_complex.hpp"

#include <cmath>

#include "rsm/error.hpp"

namespace rsm {

ExtendedComplex::ExtendedComplex(Complex z) : value_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::InvalidConfig, "finite point with non-finite coordinates");
  }
}

Complex ExtendedComplex::value() const {
  if (!value_) throw Error(ErrorKind::InvalidConfig, "point at infinity has no chart value");
  return *value_;
}

}  // namespace rsm
