#pragma once

#include <span>
#include <vector>

#include "rsm/extended_complex.hpp"

namespace rsm {

/// Evaluations closer than this (chart distance) to a pole raise EvalAtPole.
inline constexpr double kPoleGuard = 1e-12;

struct PoleSpec {
  Complex position;
  double residue = 0.0;
};

struct FormZero {
  Complex position;
  int order = 1;
};

/// An Abelian differential of the third kind on the Riemann sphere,
///   omega = f(z) dz,  f(z) = sum_k r_k / (z - p_k),
/// with real nonzero residues r_k at distinct finite poles p_k. The residue at
/// infinity is implied (minus the sum of the finite ones) and never stored.
class CharacterForm {
 public:
  const std::vector<PoleSpec>& poles() const { return poles_; }
  std::size_t size() const { return poles_.size(); }

  friend CharacterForm make_form(std::vector<PoleSpec> poles);

 private:
  explicit CharacterForm(std::vector<PoleSpec> poles) : poles_(std::move(poles)) {}
  std::vector<PoleSpec> poles_;
};

/// Validates and builds a form. Throws DuplicatePole, ZeroResidue, or
/// InvalidConfig (fewer than two poles, non-finite data).
CharacterForm make_form(std::vector<PoleSpec> poles);

/// f(z). Throws EvalAtPole within kPoleGuard of a pole.
Complex coefficient_at(const CharacterForm& form, Complex z);

/// f'(z) = -sum_k r_k / (z - p_k)^2.
Complex coefficient_derivative_at(const CharacterForm& form, Complex z);

/// -sum_k r_k, summed with Neumaier compensation.
double residue_at_infinity(const CharacterForm& form);

/// Coefficients (constant term first) of the numerator g(z) of f = g/h,
/// h(z) = prod_k (z - p_k).
std::vector<Complex> numerator_coefficients(const CharacterForm& form);

/// Roots of the numerator with multiplicity. Closed form, so forms with more
/// than three poles raise Unsupported; an identically zero numerator raises
/// DegenerateForm.
std::vector<FormZero> finite_zeros(const CharacterForm& form);

/// sum_k r_k ln|z - p_k|^2, the primitive of omega + conj(omega) without the
/// additive constant.
double potential_at(const CharacterForm& form, Complex z);

/// Index of the pole within `tol` of z, or -1.
int pole_index_near(const CharacterForm& form, Complex z, double tol);

}  // namespace rsm
