#include "rsm/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "rsm/error.hpp"

namespace rsm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Phi (4 - Phi) / 4 = 4 e^s / (1 + e^s)^2 = sech^2(s/2).
double sech2_half(double s) {
  const double e = std::exp(-std::abs(s));
  return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

// u / (1 + u) with u = e^s.
double logistic(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

double log_modulus_of_f(const CharacterForm& form, Complex base, Complex offset) {
  const auto& poles = form.poles();
  std::vector<Complex> diffs(poles.size());
  std::size_t nearest = 0;
  for (std::size_t k = 0; k < poles.size(); ++k) {
    diffs[k] = (base - poles[k].position) + offset;
    if (std::abs(diffs[k]) < std::abs(diffs[nearest])) nearest = k;
  }
  // f = (r_j + (z - p_j) * sum_{k != j} r_k / (z - p_k)) / (z - p_j)
  Complex rest{};
  for (std::size_t k = 0; k < poles.size(); ++k) {
    if (k != nearest) rest += poles[k].residue / diffs[k];
  }
  return std::log(std::abs(poles[nearest].residue + diffs[nearest] * rest)) -
         std::log(std::abs(diffs[nearest]));
}

bool stencil_is_regular(const ConformalDensity& metric, Complex z, double h) {
  for (const Complex s : metric.pole_points()) {
    if (std::abs(z - s) <= h + kPoleGuard) return false;
  }
  return true;
}

}  // namespace

MetricParams heart_metric(const HeartParams& params) {
  validate(params);
  return {heart_form(params.beta), params.c_log};
}

MetricParams three_football_metric(const ThreeFootballParams& params) {
  const auto poles = solve_pole_positions(params.angles, params.p_beta, params.branch);
  return three_football_metric(params.angles, poles, params.c_amp);
}

MetricParams three_football_metric(const AngleTriple& angles, const PoleTriple& poles, double c_amp) {
  if (!(c_amp > 0.0) || !std::isfinite(c_amp)) {
    throw Error(ErrorKind::BadAngle, "c_amp must be a positive finite number");
  }
  return {three_football_form(angles, poles), 2.0 * std::log(c_amp)};
}

double phi_from_log(double s) { return 4.0 * logistic(s); }

double phi_at(const MetricParams& params, Complex z) {
  return phi_from_log(potential_at(params.form, z) + params.c_log);
}

double density_at(const MetricParams& params, Complex z) {
  const double s = potential_at(params.form, z) + params.c_log;
  return sech2_half(s) * std::norm(coefficient_at(params.form, z));
}

double developing_modulus(const MetricParams& params, const ExtendedComplex& z) {
  const double scale = std::exp(0.5 * params.c_log);
  if (z.is_infinite()) {
    const double total = -residue_at_infinity(params.form);
    if (total > 0.0) return kInf;
    if (total < 0.0) return 0.0;
    return scale;
  }
  const Complex w = z.value();
  double modulus = scale;
  bool vanishes = false;
  bool blows_up = false;
  for (const auto& p : params.form.poles()) {
    const double d = std::abs(w - p.position);
    if (d == 0.0) {
      (p.residue > 0.0 ? vanishes : blows_up) = true;
      continue;
    }
    modulus *= std::pow(d, p.residue);
  }
  if (vanishes) return 0.0;
  if (blows_up) return kInf;
  return modulus;
}

double density_via_developing(const MetricParams& params, Complex z) {
  const Complex f = coefficient_at(params.form, z);
  const double mod = developing_modulus(params, z);
  const double u = mod * mod;
  if (u <= 1.0) return 4.0 * u * std::norm(f) / ((1.0 + u) * (1.0 + u));
  const double inv = 1.0 / u;
  return 4.0 * inv * std::norm(f) / ((1.0 + inv) * (1.0 + inv));
}

Complex log_lambda_dz(const MetricParams& params, Complex z) {
  const Complex f = coefficient_at(params.form, z);
  if (f == Complex{}) {
    throw Error(ErrorKind::EvalAtPole, "d/dz log(lambda) is singular at a zero of omega");
  }
  const Complex fp = coefficient_derivative_at(params.form, z);
  const double s = potential_at(params.form, z) + params.c_log;
  return 0.5 * f + fp / (2.0 * f) - logistic(s) * f;
}

std::vector<Complex> singular_points(const MetricParams& params) {
  std::vector<Complex> out;
  for (const auto& p : params.form.poles()) out.push_back(p.position);
  if (params.form.size() <= 3) {
    for (const auto& zero : finite_zeros(params.form)) out.push_back(zero.position);
  }
  return out;
}

double ConformalDensity::log_density(Complex base, Complex offset) const {
  return std::log(density(base + offset));
}

CharacterMetric::CharacterMetric(MetricParams params)
    : params_(std::move(params)), singular_(rsm::singular_points(params_)) {}

std::vector<Complex> CharacterMetric::pole_points() const {
  std::vector<Complex> out;
  for (const auto& p : params_.form.poles()) out.push_back(p.position);
  return out;
}

double CharacterMetric::log_density(Complex base, Complex offset) const {
  double s = params_.c_log;
  for (const auto& p : params_.form.poles()) {
    s += 2.0 * p.residue * std::log(std::abs((base - p.position) + offset));
  }
  const double abs_s = std::abs(s);
  const double log_sech2 = std::log(4.0) - abs_s - 2.0 * std::log1p(std::exp(-abs_s));
  return log_sech2 + 2.0 * log_modulus_of_f(params_.form, base, offset);
}

double RoundSphereDensity::density(Complex z) const {
  const double q = 1.0 + std::norm(z);
  return 4.0 / (q * q);
}

Complex RoundSphereDensity::log_lambda_dz(Complex z) const {
  return -std::conj(z) / (1.0 + std::norm(z));
}

double InvertedChart::density(Complex w) const {
  if (std::abs(w) <= kPoleGuard) throw Error(ErrorKind::EvalAtPole, "w = 0 is the point at infinity");
  const double a = std::norm(w);
  return base_.density(1.0 / w) / (a * a);
}

double InvertedChart::log_density(Complex base, Complex offset) const {
  const Complex w = base + offset;
  return base_.log_density(1.0 / w) - 4.0 * std::log(std::abs(w));
}

Complex InvertedChart::log_lambda_dz(Complex w) const {
  // log lambda_w = log lambda(1/w) - log|w|^2 and dz/dw = -1/w^2.
  return -base_.log_lambda_dz(1.0 / w) / (w * w) - 1.0 / w;
}

std::vector<Complex> InvertedChart::singular_points() const {
  std::vector<Complex> out{Complex{}};
  for (const Complex s : base_.singular_points()) {
    if (s != Complex{}) out.push_back(1.0 / s);
  }
  return out;
}

std::vector<Complex> InvertedChart::pole_points() const {
  std::vector<Complex> out{Complex{}};
  for (const Complex s : base_.pole_points()) {
    if (s != Complex{}) out.push_back(1.0 / s);
  }
  return out;
}

double gauss_curvature_fd(const ConformalDensity& metric, Complex z, double h) {
  if (!(h >= 1e-6 && h <= 1e-2)) {
    throw Error(ErrorKind::InvalidConfig, "curvature stencil h must lie in [1e-6, 1e-2]");
  }
  if (!stencil_is_regular(metric, z, h)) {
    throw Error(ErrorKind::StencilHitsSingularity, "curvature stencil touches a pole");
  }
  const Complex offsets[] = {Complex{}, Complex{h, 0.0}, Complex{-h, 0.0}, Complex{0.0, h},
                             Complex{0.0, -h}};
  double log_lambda[5];
  double centre_density = 0.0;
  for (int i = 0; i < 5; ++i) {
    double d = 0.0;
    try {
      d = metric.density(z + offsets[i]);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::EvalAtPole) {
        throw Error(ErrorKind::StencilHitsSingularity, "curvature stencil touches a pole");
      }
      throw;
    }
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw Error(ErrorKind::StencilHitsSingularity, "density is not positive on the stencil");
    }
    if (i == 0) centre_density = d;
    log_lambda[i] = 0.5 * std::log(d);
  }
  const double laplacian =
      (log_lambda[1] + log_lambda[2] + log_lambda[3] + log_lambda[4] - 4.0 * log_lambda[0]) / (h * h);
  return -laplacian / centre_density;
}

namespace {

// ln|1 + w| without cancellation for small w.
double log_abs_one_plus(Complex w) { return 0.5 * std::log1p(2.0 * w.real() + std::norm(w)); }

}  // namespace

// Same five-point stencil, but each difference ln rho(z + d) - ln rho(z) is
// formed directly from the form rather than by subtracting two logarithms:
//   ln rho = 2 ln|f| - 2 ln cosh(s/2).
// The stencil at h and 2h is Richardson-extrapolated. Where rho is tiny (|F|
// far from 1) both the rounding of ln rho / h^2 and the O(h^2) truncation on
// the harmonic part of ln rho swamp rho itself in the plain version.
double gauss_curvature_fd(const MetricParams& params, Complex z, double h) {
  if (!(h >= 1e-6 && h <= 1e-2)) {
    throw Error(ErrorKind::InvalidConfig, "curvature stencil h must lie in [1e-6, 1e-2]");
  }
  const auto& poles = params.form.poles();
  for (const auto& p : poles) {
    if (std::abs(z - p.position) <= 2.0 * h + kPoleGuard) {
      throw Error(ErrorKind::StencilHitsSingularity, "curvature stencil touches a pole");
    }
  }
  const Complex f0 = coefficient_at(params.form, z);
  const double centre_density = density_at(params, z);
  if (f0 == Complex{} || !(centre_density > 0.0)) {
    throw Error(ErrorKind::StencilHitsSingularity, "density is not positive on the stencil");
  }
  const double half_s = 0.5 * (potential_at(params.form, z) + params.c_log);
  const double tanh_half_s = std::tanh(half_s);

  auto log_density_step = [&](Complex d) {
    Complex df{};
    double ds = 0.0;
    for (const auto& p : poles) {
      const Complex u = z - p.position;
      df -= p.residue * d / ((u + d) * u);
      ds += 2.0 * p.residue * log_abs_one_plus(d / u);
    }
    const Complex q = df / f0;
    if (q == Complex{-1.0, 0.0}) {
      throw Error(ErrorKind::StencilHitsSingularity, "density is not positive on the stencil");
    }
    const double half_ds = 0.5 * ds;
    const double sh = std::sinh(0.5 * half_ds);
    const double log_cosh_diff = std::log1p(2.0 * sh * sh + tanh_half_s * std::sinh(half_ds));
    return 2.0 * log_abs_one_plus(q) - 2.0 * log_cosh_diff;
  };
  auto laplacian = [&](double step) {
    double sum = 0.0;
    for (const Complex d : {Complex{step, 0.0}, Complex{-step, 0.0}, Complex{0.0, step}, Complex{0.0, -step}}) {
      sum += log_density_step(d);
    }
    return 0.5 * sum / (step * step);
  };
  const double extrapolated = (4.0 * laplacian(h) - laplacian(2.0 * h)) / 3.0;
  return -extrapolated / centre_density;
}

namespace {

// C(eps) / sin(rho(eps)) around w = 0 of `metric`; `others` are the remaining
// singular points in the same chart.
double circle_ratio(const ConformalDensity& metric, Complex centre, const std::vector<Complex>& others,
                    double eps, int n) {
  for (const Complex s : others) {
    if (std::abs(s - centre) <= 2.0 * eps) {
      std::ostringstream msg;
      msg << "another singular point at " << s << " lies within 2 eps of " << centre;
      throw Error(ErrorKind::QuadratureNearPole, msg.str());
    }
  }
  double circumference = 0.0;
  const double dtheta = 2.0 * std::numbers::pi / n;
  for (int j = 0; j < n; ++j) {
    const Complex z = centre + std::polar(eps, j * dtheta);
    circumference += std::sqrt(metric.density(z));
  }
  circumference *= eps * dtheta;

  // Radius averaged over equispaced rays, which cancels the first-harmonic
  // anisotropy of a chart circle that is not a level set of |F|. With the
  // lower limit at 0, tanh-sinh resolves abscissae down to denormal distances
  // from the cone point, where log_density stays finite.
  boost::math::quadrature::tanh_sinh<double> integrator;
  constexpr int rays = 16;
  double radius = 0.0;
  for (int k = 0; k < rays; ++k) {
    const Complex ray = std::polar(1.0, 0.7 + 2.0 * std::numbers::pi * k / rays);
    auto integrand = [&](double t) {
      const double v = std::exp(0.5 * metric.log_density(centre, t * ray));
      return std::isfinite(v) ? v : 0.0;
    };
    radius += integrator.integrate(integrand, 0.0, eps, 1e-12);
  }
  radius /= rays;
  // Curvature one: a metric circle of radius rho has circumference theta sin(rho).
  return circumference / std::sin(radius);
}

}  // namespace

double cone_angle_estimate(const MetricParams& params, const ExtendedComplex& p, double eps, int n) {
  if (!(eps >= 1e-5 && eps <= 1e-2)) {
    throw Error(ErrorKind::InvalidConfig, "cone-angle radius eps must lie in [1e-5, 1e-2]");
  }
  if (n < 256) throw Error(ErrorKind::InvalidConfig, "cone-angle estimate needs n >= 256 nodes");
  const CharacterMetric metric(params);
  if (p.is_infinite()) {
    const InvertedChart chart(metric);
    auto others = chart.singular_points();
    others.erase(others.begin());
    return circle_ratio(chart, Complex{}, others, eps, n);
  }
  const Complex centre = p.value();
  std::vector<Complex> others;
  bool found = false;
  for (const Complex s : metric.singular_points()) {
    if (std::abs(s - centre) <= 1e-9) {
      found = true;
    } else {
      others.push_back(s);
    }
  }
  if (!found) {
    std::ostringstream msg;
    msg << centre << " is neither a pole nor a zero of the form";
    throw Error(ErrorKind::NotASingularPoint, msg.str());
  }
  return circle_ratio(metric, centre, others, eps, n);
}

double phi_gradient_check(const MetricParams& params, Complex z, double h) {
  const CharacterMetric metric(params);
  if (!stencil_is_regular(metric, z, h)) {
    throw Error(ErrorKind::StencilHitsSingularity, "gradient stencil touches a pole");
  }
  const double dphi_dx = (phi_at(params, z + h) - phi_at(params, z - h)) / (2.0 * h);
  const double dphi_dy =
      (phi_at(params, z + Complex{0.0, h}) - phi_at(params, z - Complex{0.0, h})) / (2.0 * h);
  const double phi = phi_at(params, z);
  const Complex f = coefficient_at(params.form, z);
  const double weight = phi * (4.0 - phi) / 4.0;
  const double ex = dphi_dx - weight * 2.0 * f.real();
  const double ey = dphi_dy + weight * 2.0 * f.imag();
  return std::hypot(ex, ey) / std::max(1.0, std::hypot(dphi_dx, dphi_dy));
}

}  // namespace rsm
