#pragma once

#include <span>
#include <vector>

#include "rsm/families.hpp"
#include "rsm/metric.hpp"

namespace rsm {

/// A sampled curve in the chart together with its metric length.
struct GeodesicPath {
  std::vector<Complex> samples;
  /// Metric length. Includes the tail beyond the last sample when the path
  /// ends at infinity, which has no chart sample.
  double length = 0.0;
  /// Chart distance from the last computed point to the requested target
  /// (measured in w = 1/z when the target is infinity).
  double endpoint_defect = 0.0;
  /// Upper bound on the chart distance between consecutive samples.
  double step_bound = 0.0;
};

/// Football decomposition data of a three-football metric.
struct TriangleReport {
  double ell1 = 0.0;   // L(1, inf)
  double ell2 = 0.0;   // L(0, inf)
  double L01 = 0.0;    // L(0, 1)
  double theta = 0.0;  // angle at the vertex inf, opposite L01
};

/// Degenerate one-parameter report of the heart.
struct HeartReport {
  double c_log = 0.0;
  double apex_modulus = 0.0;  // |w0|
  double L01 = 0.0;
  double L0inf = 0.0;
};

/// 2 |arctan|F(b)| - arctan|F(a)|| with arctan(inf) = pi/2. Valid when the
/// geodesic develops onto a great circle through 0 and infinity, e.g. when
/// one endpoint is sent to 0 or infinity by F; the caller is responsible for
/// that.
double radial_length(const MetricParams& params, const ExtendedComplex& a, const ExtendedComplex& b);

struct FootballLegs {
  double ell1 = 0.0;  // pi - 2 arctan|F(1)|
  double ell2 = 0.0;  // pi - 2 arctan|F(0)|
};

FootballLegs three_football_lengths(const MetricParams& params);

struct TraceOptions {
  double start_offset = 1e-4;  // departure distance from the zero of omega
  double target_approach = 1e-8;
  double step_bound = 1e-3;
  double tolerance = 1e-12;
};

/// Follows F^{-1} of a ray through the origin from a simple zero of omega to a
/// pole or to infinity (either endpoint order). The curve is integrated as
/// dz/dtau = 1/f(z) in tau = ln|F|, with at least n steps between the two
/// image moduli. Samples include the finite endpoints themselves.
/// Throws InvalidConfig (no admissible endpoint pair), TraceDiverged,
/// EndpointNotReached.
GeodesicPath trace_radial_preimage(const MetricParams& params, const ExtendedComplex& a,
                                   const ExtendedComplex& b, int n = 400, const TraceOptions& options = {});

/// Metric length of the polyline through `samples`. Segments are integrated
/// with 8-point Gauss-Legendre, or with tanh-sinh anchored at an endpoint that
/// sits on a cone point (lambda may be integrably singular there).
double path_length(const ConformalDensity& metric, std::span<const Complex> samples);
double path_length(const MetricParams& params, std::span<const Complex> samples);

/// Metric length of the straight segment from a cone point outward.
double radial_stub_length(const ConformalDensity& metric, Complex from, Complex to);

struct ShootingOptions {
  double approach_offset = 1e-4;
  int directions = 64;
  double max_length = 6.283185307179586;
  double tolerance = 1e-12;
  double sample_step = 1e-3;  // chart spacing of the returned samples
  double defect_tolerance = 1e-6;
};

/// Shortest geodesic found by shooting from p0 to p1. Endpoints on cone points
/// are replaced by approach points at `approach_offset` along the segment
/// p0-p1; the straight stubs are added back to the length. The geodesic
/// equation z'' = -2 (d/dz log lambda) z'^2 is integrated at unit speed with
/// an adaptive Dormand-Prince stepper. Every sign change of the signed miss
/// distance over `directions` equispaced launch angles is refined with TOMS 748
/// and the shortest converged shot wins; the fan is doubled (up to 16x) when
/// nothing converges. Throws ShootingFailed, InvalidConfig.
GeodesicPath geodesic_between(const ConformalDensity& metric, Complex p0, Complex p1,
                              const ShootingOptions& options = {});
GeodesicPath geodesic_between(const MetricParams& params, Complex p0, Complex p1,
                              const ShootingOptions& options = {});

/// Spherical law of cosines: the angle opposite side a in the triangle with
/// sides a, b, c. Throws DegenerateTriangle.
double spherical_angle(double a_opposite, double b, double c);

/// ell1, ell2 in closed form, L01 by shooting, theta at the vertex infinity.
TriangleReport decomposition_report(const MetricParams& params, const ShootingOptions& options = {});

HeartReport heart_report(const HeartParams& params);

}  // namespace rsm
