#pragma once

#include "rsm/forms.hpp"

namespace rsm {

/// Heart shape: cone angles 4pi, 2pi*beta, 2pi*gamma with gamma = 1 - beta.
struct HeartParams {
  double beta = 0.5;
  double c_log = 0.0;

  double gamma() const { return 1.0 - beta; }
};

/// Throws BadAngle unless 0 < beta < 1 and c_log is finite.
void validate(const HeartParams& params);

struct AngleTriple {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
};

/// Positive finite angles with beta, gamma, alpha+beta, alpha+gamma all
/// non-integer. Throws BadAngle otherwise.
AngleTriple make_angle_triple(double alpha, double beta, double gamma);

/// (alpha, (1+sqrt2)/2 * alpha, alpha). Only positivity is enforced; the
/// non-integrality condition is waived so that alpha = 1 is representable.
AngleTriple special_angles(double alpha);

/// True when beta, gamma, alpha+beta, alpha+gamma are all non-integer.
bool is_generic(const AngleTriple& angles);

/// Which root of the P_gamma quadratic to take. Minus is the root with the
/// smaller real part (ties broken by imaginary part), Plus the other one.
enum class Branch { Plus, Minus };

struct PoleTriple {
  Complex p_alpha;
  Complex p_beta;
  Complex p_gamma;
};

struct ThreeFootballParams {
  AngleTriple angles;
  Complex p_beta{0.3, 0.2};
  Branch branch = Branch::Minus;
  double c_amp = 1.0;
};

/// Relative residuals of the two pole-position constraints g(0) = g(1) = 0.
struct ConstraintResidual {
  double at_zero = 0.0;
  double at_one = 0.0;

  double max() const { return at_zero > at_one ? at_zero : at_one; }
};

/// a x^2 + b x + c in x = P_gamma, after eliminating P_alpha.
struct PGammaQuadratic {
  Complex a;
  Complex b;
  Complex c;

  Complex discriminant() const { return b * b - 4.0 * a * c; }
};

inline constexpr double kConstraintTolerance = 1e-10;
inline constexpr double kCollisionThreshold = 1e-9;

CharacterForm heart_form(double beta);

/// |F(0)| = e^{c/2} (gamma/beta)^gamma, the modulus of the apex image w0.
double heart_apex_image(const HeartParams& params);

/// P_alpha from the g(0) constraint: (a+b) Pb Pg / (b Pg - g Pb).
/// Throws DivisionByZero when the denominator vanishes.
Complex p_alpha_from(const AngleTriple& angles, Complex p_beta, Complex p_gamma);

/// The quadratic satisfied by P_gamma, obtained by substituting p_alpha_from
/// into g(1) (cleared of its denominator) and interpolating at three points.
PGammaQuadratic pgamma_quadratic(const AngleTriple& angles, Complex p_beta);

/// Both P_gamma roots ordered {minus, plus}.
std::pair<Complex, Complex> pgamma_roots(const AngleTriple& angles, Complex p_beta);

/// Solves g(0) = g(1) = 0 for (P_alpha, P_gamma) given P_beta.
/// Throws DegenerateQuadratic, DoubleRoot, DivisionByZero, CollidingPoles.
PoleTriple solve_pole_positions(const AngleTriple& angles, Complex p_beta, Branch branch);

/// The closed-form pair ((1-2 sqrt2) Pb, (sqrt2-1) Pb) proposed for the
/// special angles. Throws ExcludedPoint for Pb in {0, 1, 1/sqrt2}.
/// These satisfy g(0) = 0 identically but g(1) = 0 only at Pb = 1/2; see the
/// tests in test_families.cpp.
PoleTriple special_case_poles(Complex p_beta);

ConstraintResidual constraint_residual(const AngleTriple& angles, const PoleTriple& poles);

/// Poles [(Pb, -beta), (Pa, alpha+beta), (Pg, gamma)]. Throws
/// ConstraintViolated when the residual exceeds kConstraintTolerance and
/// CollidingPoles when any two of {0, 1, Pa, Pb, Pg} are closer than
/// kCollisionThreshold.
CharacterForm three_football_form(const AngleTriple& angles, const PoleTriple& poles);

/// Throws CollidingPoles on coincident points of {0, 1, Pa, Pb, Pg}.
void check_pole_separation(const PoleTriple& poles);

}  // namespace rsm
