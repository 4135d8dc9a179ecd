#include "rsm/families.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rsm/error.hpp"

namespace rsm {

namespace {

bool near_integer(double x) { return std::abs(x - std::round(x)) <= 1e-12; }

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

// g(1) multiplied through by (beta x - gamma Pb), with P_alpha = N / D.
Complex cleared_g_at_one(const AngleTriple& t, Complex p_beta, Complex x) {
  const Complex n = (t.alpha + t.beta) * p_beta * x;
  const Complex d = t.beta * x - t.gamma * p_beta;
  const Complex one_minus_pb = 1.0 - p_beta;
  const Complex one_minus_x = 1.0 - x;
  return -t.beta * (d - n) * one_minus_x + (t.alpha + t.beta) * one_minus_pb * one_minus_x * d +
         t.gamma * one_minus_pb * (d - n);
}

bool branch_order(Complex lhs, Complex rhs) {
  if (lhs.real() != rhs.real()) return lhs.real() < rhs.real();
  return lhs.imag() < rhs.imag();
}

}  // namespace

void validate(const HeartParams& params) {
  if (!(params.beta > 0.0 && params.beta < 1.0)) {
    std::ostringstream msg;
    msg << "heart beta must lie in (0, 1), got " << params.beta;
    throw Error(ErrorKind::BadAngle, msg.str());
  }
  if (!std::isfinite(params.c_log)) throw Error(ErrorKind::BadAngle, "heart c must be finite");
}

AngleTriple make_angle_triple(double alpha, double beta, double gamma) {
  if (!positive_finite(alpha) || !positive_finite(beta) || !positive_finite(gamma)) {
    throw Error(ErrorKind::BadAngle, "angles alpha, beta, gamma must be positive");
  }
  AngleTriple t{alpha, beta, gamma};
  if (!is_generic(t)) {
    throw Error(ErrorKind::BadAngle,
                "beta, gamma, alpha+beta, alpha+gamma must all be non-integer");
  }
  return t;
}

AngleTriple special_angles(double alpha) {
  if (!positive_finite(alpha)) throw Error(ErrorKind::BadAngle, "alpha must be positive");
  return {alpha, 0.5 * (1.0 + std::numbers::sqrt2) * alpha, alpha};
}

bool is_generic(const AngleTriple& t) {
  return !near_integer(t.beta) && !near_integer(t.gamma) && !near_integer(t.alpha + t.beta) &&
         !near_integer(t.alpha + t.gamma);
}

CharacterForm heart_form(double beta) {
  validate(HeartParams{beta, 0.0});
  const double gamma = 1.0 - beta;
  return make_form({{Complex{1.0, 0.0}, beta}, {Complex{-gamma / beta, 0.0}, gamma}});
}

double heart_apex_image(const HeartParams& params) {
  validate(params);
  const double gamma = params.gamma();
  return std::exp(0.5 * params.c_log) * std::pow(gamma / params.beta, gamma);
}

Complex p_alpha_from(const AngleTriple& t, Complex p_beta, Complex p_gamma) {
  const Complex denom = t.beta * p_gamma - t.gamma * p_beta;
  const double scale = std::max(t.beta * std::abs(p_gamma), t.gamma * std::abs(p_beta));
  if (std::abs(denom) <= 1e-14 * scale || std::abs(denom) == 0.0) {
    throw Error(ErrorKind::DivisionByZero, "beta*P_gamma equals gamma*P_beta");
  }
  return (t.alpha + t.beta) * p_beta * p_gamma / denom;
}

PGammaQuadratic pgamma_quadratic(const AngleTriple& t, Complex p_beta) {
  const Complex q0 = cleared_g_at_one(t, p_beta, Complex{0.0, 0.0});
  const Complex q1 = cleared_g_at_one(t, p_beta, Complex{1.0, 0.0});
  const Complex qm = cleared_g_at_one(t, p_beta, Complex{-1.0, 0.0});
  return {0.5 * (q1 + qm) - q0, 0.5 * (q1 - qm), q0};
}

std::pair<Complex, Complex> pgamma_roots(const AngleTriple& t, Complex p_beta) {
  const auto quad = pgamma_quadratic(t, p_beta);
  const double scale = std::max({std::abs(quad.a), std::abs(quad.b), std::abs(quad.c)});
  if (std::abs(quad.a) <= 1e-14 * scale) {
    throw Error(ErrorKind::DegenerateQuadratic, "leading coefficient of the P_gamma quadratic vanishes");
  }
  const Complex disc = quad.discriminant();
  const double disc_scale = std::max(std::norm(quad.b), std::abs(4.0 * quad.a * quad.c));
  if (std::abs(disc) <= 1e-12 * disc_scale) {
    throw Error(ErrorKind::DoubleRoot, "P_gamma quadratic has a double root");
  }
  const Complex root_disc = std::sqrt(disc);
  const Complex q = (std::real(std::conj(quad.b) * root_disc) >= 0.0) ? -0.5 * (quad.b + root_disc)
                                                                       : -0.5 * (quad.b - root_disc);
  Complex r1 = q / quad.a;
  Complex r2 = quad.c / q;
  if (branch_order(r2, r1)) std::swap(r1, r2);
  return {r1, r2};
}

void check_pole_separation(const PoleTriple& poles) {
  const std::array<Complex, 5> pts{Complex{0.0, 0.0}, Complex{1.0, 0.0}, poles.p_alpha,
                                   poles.p_beta, poles.p_gamma};
  static constexpr std::array<const char*, 5> names{"0", "1", "P_alpha", "P_beta", "P_gamma"};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (std::abs(pts[i] - pts[j]) < kCollisionThreshold) {
        std::ostringstream msg;
        msg << names[i] << " and " << names[j] << " coincide at " << pts[i];
        throw Error(ErrorKind::CollidingPoles, msg.str());
      }
    }
  }
}

PoleTriple solve_pole_positions(const AngleTriple& t, Complex p_beta, Branch branch) {
  if (std::abs(p_beta) < kCollisionThreshold || std::abs(p_beta - 1.0) < kCollisionThreshold) {
    throw Error(ErrorKind::CollidingPoles, "P_beta must avoid the zeros 0 and 1");
  }
  const auto [minus, plus] = pgamma_roots(t, p_beta);
  const Complex p_gamma = branch == Branch::Minus ? minus : plus;
  PoleTriple out{p_alpha_from(t, p_beta, p_gamma), p_beta, p_gamma};
  check_pole_separation(out);
  const auto res = constraint_residual(t, out);
  if (res.max() > kConstraintTolerance) {
    std::ostringstream msg;
    msg << "solver residual " << res.max() << " exceeds " << kConstraintTolerance;
    throw Error(ErrorKind::ConstraintViolated, msg.str());
  }
  return out;
}

PoleTriple special_case_poles(Complex p_beta) {
  constexpr double s2 = std::numbers::sqrt2;
  for (const Complex excluded : {Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{1.0 / s2, 0.0}}) {
    if (std::abs(p_beta - excluded) <= 1e-12) {
      std::ostringstream msg;
      msg << "P_beta = " << p_beta << " is excluded";
      throw Error(ErrorKind::ExcludedPoint, msg.str());
    }
  }
  return {(1.0 - 2.0 * s2) * p_beta, p_beta, (s2 - 1.0) * p_beta};
}

ConstraintResidual constraint_residual(const AngleTriple& t, const PoleTriple& p) {
  auto relative = [](Complex x, Complex y, Complex z) {
    const double scale = std::max({1.0, std::abs(x), std::abs(y), std::abs(z)});
    return std::abs(x + y + z) / scale;
  };
  const double ab = t.alpha + t.beta;
  const double at_zero = relative(-t.beta * p.p_alpha * p.p_gamma, ab * p.p_beta * p.p_gamma,
                                  t.gamma * p.p_beta * p.p_alpha);
  const Complex ua = 1.0 - p.p_alpha;
  const Complex ub = 1.0 - p.p_beta;
  const Complex ug = 1.0 - p.p_gamma;
  const double at_one = relative(-t.beta * ua * ug, ab * ub * ug, t.gamma * ub * ua);
  return {at_zero, at_one};
}

CharacterForm three_football_form(const AngleTriple& t, const PoleTriple& p) {
  check_pole_separation(p);
  const auto res = constraint_residual(t, p);
  if (res.max() > kConstraintTolerance) {
    std::ostringstream msg;
    msg << "pole triple violates g(0) = g(1) = 0 (relative residuals " << res.at_zero << ", "
        << res.at_one << ")";
    throw Error(ErrorKind::ConstraintViolated, msg.str());
  }
  return make_form({{p.p_beta, -t.beta}, {p.p_alpha, t.alpha + t.beta}, {p.p_gamma, t.gamma}});
}

}  // namespace rsm
