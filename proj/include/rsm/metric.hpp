#pragma once

#include <vector>

#include "rsm/families.hpp"
#include "rsm/forms.hpp"

namespace rsm {

/// A character form plus the additive constant of its potential. The metric is
///   ds^2 = (Phi (4 - Phi) / 4) |f|^2 |dz|^2,  Phi = 4 e^{s} / (1 + e^{s}),
///   s = potential_at(form, z) + c_log,
/// equivalently the pullback of the round metric by a developing map F with
/// |F|^2 = e^{s}.
struct MetricParams {
  CharacterForm form;
  double c_log = 0.0;
};

MetricParams heart_metric(const HeartParams& params);

/// Solves for the poles of `params` and sets c_log = 2 ln(c_amp).
MetricParams three_football_metric(const ThreeFootballParams& params);
MetricParams three_football_metric(const AngleTriple& angles, const PoleTriple& poles, double c_amp);

/// Phi as a function of s = f + c, evaluated without overflow for any s.
double phi_from_log(double s);

double phi_at(const MetricParams& params, Complex z);

/// lambda^2(z), the conformal factor of ds^2 against |dz|^2.
double density_at(const MetricParams& params, Complex z);

/// |F(z)| = e^{c/2} prod_k |z - p_k|^{r_k}, single valued. Returns 0 or +inf at
/// poles according to the residue sign, and the limit at infinity.
double developing_modulus(const MetricParams& params, const ExtendedComplex& z);

/// 4 |F|^2 |f|^2 / (1 + |F|^2)^2 using |F'| = |F| |f|.
double density_via_developing(const MetricParams& params, Complex z);

/// d/dz log(lambda) = f/2 + f'/(2f) - |F|^2 f / (1 + |F|^2).
Complex log_lambda_dz(const MetricParams& params, Complex z);

/// Finite cone points of the metric: poles of the form and finite zeros.
std::vector<Complex> singular_points(const MetricParams& params);

/// A conformal metric lambda^2 |dz|^2 on a chart of the sphere. The numerical
/// geometry routines (curvature, path length, shooting) work through this
/// interface so they can run on the round sphere fixture as well.
class ConformalDensity {
 public:
  virtual ~ConformalDensity() = default;
  virtual double density(Complex z) const = 0;
  virtual Complex log_lambda_dz(Complex z) const = 0;
  /// ln(lambda^2) at base + offset without the pole guard. Differences to
  /// singular points are formed as (base - p) + offset, so offsets far below
  /// the resolution of base still count; quadratures anchored at a cone point
  /// use this.
  virtual double log_density(Complex base, Complex offset) const;
  double log_density(Complex z) const { return log_density(z, Complex{}); }
  /// Points where lambda vanishes or blows up.
  virtual std::vector<Complex> singular_points() const { return {}; }
  /// Points where the density itself cannot be evaluated (poles).
  virtual std::vector<Complex> pole_points() const { return {}; }
};

class CharacterMetric final : public ConformalDensity {
 public:
  explicit CharacterMetric(MetricParams params);

  const MetricParams& params() const { return params_; }
  double density(Complex z) const override { return density_at(params_, z); }
  Complex log_lambda_dz(Complex z) const override { return rsm::log_lambda_dz(params_, z); }
  double log_density(Complex base, Complex offset) const override;
  using ConformalDensity::log_density;
  std::vector<Complex> singular_points() const override { return singular_; }
  std::vector<Complex> pole_points() const override;

 private:
  MetricParams params_;
  std::vector<Complex> singular_;
};

/// 4 / (1 + |z|^2)^2, the unit sphere in stereographic coordinates.
class RoundSphereDensity final : public ConformalDensity {
 public:
  double density(Complex z) const override;
  Complex log_lambda_dz(Complex z) const override;
};

/// The same metric seen in the chart w = 1/z:
///   lambda_w^2(w) = lambda^2(1/w) / |w|^4.
class InvertedChart final : public ConformalDensity {
 public:
  explicit InvertedChart(const ConformalDensity& base) : base_(base) {}

  double density(Complex w) const override;
  Complex log_lambda_dz(Complex w) const override;
  double log_density(Complex base, Complex offset) const override;
  using ConformalDensity::log_density;
  std::vector<Complex> singular_points() const override;
  std::vector<Complex> pole_points() const override;

 private:
  const ConformalDensity& base_;
};

inline constexpr double kDefaultCurvatureStep = 1e-4;
/// Beyond this chart radius evaluations near infinity switch to w = 1/z.
inline constexpr double kChartSwitchRadius = 10.0;

/// K = -Laplacian(log lambda) / lambda^2 with a five-point stencil on
/// (1/2) ln(density). Throws StencilHitsSingularity.
double gauss_curvature_fd(const ConformalDensity& metric, Complex z, double h = kDefaultCurvatureStep);
/// The same stencil with the differences ln rho(z + d) - ln rho(z) computed
/// from the form without cancellation, Richardson-extrapolated over h and 2h,
/// so it stays accurate where rho is tiny.
double gauss_curvature_fd(const MetricParams& params, Complex z, double h = kDefaultCurvatureStep);

/// C / sin(rho) for the chart circle |z - p| = eps, which tends to the cone
/// angle. C is a trapezoid sum over n nodes; rho integrates lambda along 16
/// equispaced rays with tanh-sinh quadrature and averages. The sine matters:
/// when |F| varies fast near p the chart circle is metrically large.
/// p = infinity is handled in the chart w = 1/z.
/// Throws NotASingularPoint, QuadratureNearPole.
double cone_angle_estimate(const MetricParams& params, const ExtendedComplex& p, double eps = 1e-3,
                           int n = 512);

/// |grad Phi (finite differences) - Phi (4 - Phi)/4 (2 Re f, -2 Im f)| /
/// max(1, |grad Phi|). Throws StencilHitsSingularity.
double phi_gradient_check(const MetricParams& params, Complex z, double h = 1e-5);

}  // namespace rsm
