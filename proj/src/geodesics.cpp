#include "rsm/geodesics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include "rsm/error.hpp"

namespace rsm {

namespace {

namespace odeint = boost::numeric::odeint;

constexpr double kPi = std::numbers::pi;
constexpr double kSingularMatch = 1e-9;

double arctan_extended(double modulus) {
  return std::isinf(modulus) ? 0.5 * kPi : std::atan(modulus);
}

std::optional<Complex> nearest_within(Complex z, const std::vector<Complex>& points, double tol) {
  std::optional<Complex> best;
  double best_d = tol;
  for (const Complex p : points) {
    const double d = std::abs(z - p);
    if (d <= best_d) {
      best = p;
      best_d = d;
    }
  }
  return best;
}

}  // namespace

double radial_length(const MetricParams& params, const ExtendedComplex& a, const ExtendedComplex& b) {
  return 2.0 * std::abs(arctan_extended(developing_modulus(params, b)) -
                        arctan_extended(developing_modulus(params, a)));
}

FootballLegs three_football_lengths(const MetricParams& params) {
  return {kPi - 2.0 * arctan_extended(developing_modulus(params, Complex{1.0, 0.0})),
          kPi - 2.0 * arctan_extended(developing_modulus(params, Complex{0.0, 0.0}))};
}

// ---------------------------------------------------------------------------
// Path length

double radial_stub_length(const ConformalDensity& metric, Complex from, Complex to) {
  const Complex chord = to - from;
  const double len = std::abs(chord);
  if (len == 0.0) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto integrand = [&](double t) {
    const double v = std::exp(0.5 * metric.log_density(from, t * chord));
    return std::isfinite(v) ? v : 0.0;
  };
  return len * integrator.integrate(integrand, 0.0, 1.0, 1e-13);
}

namespace {

double smooth_segment_length(const ConformalDensity& metric, Complex a, Complex b) {
  const Complex chord = b - a;
  auto integrand = [&](double t) { return std::sqrt(metric.density(a + t * chord)); };
  return std::abs(chord) * boost::math::quadrature::gauss<double, 8>::integrate(integrand, 0.0, 1.0);
}

double segment_length(const ConformalDensity& metric, Complex a, Complex b,
                      const std::vector<Complex>& singular) {
  if (a == b) return 0.0;
  const bool anchored_a = nearest_within(a, singular, kSingularMatch).has_value();
  const bool anchored_b = nearest_within(b, singular, kSingularMatch).has_value();
  if (anchored_a && anchored_b) {
    const Complex mid = 0.5 * (a + b);
    return radial_stub_length(metric, a, mid) + radial_stub_length(metric, b, mid);
  }
  if (anchored_a) return radial_stub_length(metric, a, b);
  if (anchored_b) return radial_stub_length(metric, b, a);
  return smooth_segment_length(metric, a, b);
}

}  // namespace

double path_length(const ConformalDensity& metric, std::span<const Complex> samples) {
  if (samples.size() < 2) return 0.0;
  const auto singular = metric.singular_points();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    total += segment_length(metric, samples[i], samples[i + 1], singular);
  }
  return total;
}

double path_length(const MetricParams& params, std::span<const Complex> samples) {
  return path_length(CharacterMetric(params), samples);
}

// ---------------------------------------------------------------------------
// Radial traces

namespace {

using TraceState = std::array<double, 2>;

Complex to_complex(const TraceState& s) { return {s[0], s[1]}; }

struct TraceFailure {
  ErrorKind kind;
  std::string reason;
};

// Appends dense-output samples over [t0, t1] so that consecutive samples stay
// within `bound` of each other in the chart.
template <class Stepper, class Map>
void emit_samples(const Stepper& stepper, double t0, double t1, double bound, Map&& chart,
                  std::vector<Complex>& out) {
  TraceState tmp;
  stepper.calc_state(t1, tmp);
  const Complex end = chart(tmp);
  const double chord = std::abs(end - out.back());
  int pieces = std::max(1, static_cast<int>(std::ceil(2.0 * chord / bound)));
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<Complex> trial;
    trial.reserve(pieces);
    Complex last = out.back();
    bool ok = true;
    for (int k = 1; k <= pieces; ++k) {
      const double t = (k == pieces) ? t1 : t0 + (t1 - t0) * k / pieces;
      stepper.calc_state(t, tmp);
      const Complex z = chart(tmp);
      if (std::abs(z - last) > bound) {
        ok = false;
        break;
      }
      trial.push_back(z);
      last = z;
    }
    if (ok) {
      out.insert(out.end(), trial.begin(), trial.end());
      return;
    }
    pieces *= 2;
  }
  throw TraceFailure{ErrorKind::TraceDiverged, "could not resolve the trace within the step bound"};
}

struct TraceTarget {
  bool infinite = false;
  Complex point;
  double log_scale = 0.0;  // ln K with |F| ~ K |z - b|^r or K |z|^R
  double exponent = 0.0;   // r or R
  bool ascending = false;
};

struct TraceResult {
  std::vector<Complex> samples;
  std::vector<Complex> tail;  // w = 1/z samples when the target is infinity
  double defect = 0.0;
};

class RadialTracer {
 public:
  RadialTracer(const MetricParams& params, Complex start, TraceTarget target, int n,
               const TraceOptions& opts)
      : params_(params), start_(start), target_(target), n_(n), opts_(opts) {
    for (const auto& z : finite_zeros(params.form)) zeros_.push_back(z.position);
  }

  TraceResult run(Complex direction) const {
    const Complex z_start = start_ + opts_.start_offset * direction;
    const double tau_start = std::log(developing_modulus(params_, z_start));
    const double tau_end =
        target_.log_scale + (target_.infinite ? -target_.exponent : target_.exponent) *
                                std::log(opts_.target_approach);
    const double span = target_.ascending ? tau_end - tau_start : tau_start - tau_end;
    if (!(span > 0.0)) throw TraceFailure{ErrorKind::EndpointNotReached, "image modulus already past target"};
    const double sign = target_.ascending ? 1.0 : -1.0;

    TraceResult result;
    result.samples = {start_, z_start};

    auto z_system = [&](const TraceState& x, TraceState& dxdt, double) {
      const Complex v = sign / coefficient_at(params_.form, to_complex(x));
      dxdt = {v.real(), v.imag()};
    };
    auto stepper = odeint::make_dense_output(opts_.tolerance, opts_.tolerance, span / n_,
                                             odeint::runge_kutta_dopri5<TraceState>());
    stepper.initialize(TraceState{z_start.real(), z_start.imag()}, 0.0, span / (10.0 * n_));
    const auto identity = [](const TraceState& s) { return to_complex(s); };

    double sigma_switch = -1.0;
    int steps = 0;
    while (true) {
      if (++steps > 200000) throw TraceFailure{ErrorKind::TraceDiverged, "too many trace steps"};
      std::pair<double, double> interval;
      try {
        interval = stepper.do_step(z_system);
      } catch (const Error& e) {
        throw TraceFailure{ErrorKind::TraceDiverged, e.what()};
      }
      auto [t0, t1] = interval;
      const bool last = t1 >= span;
      if (last) t1 = span;
      TraceState now;
      stepper.calc_state(t1, now);
      const Complex z = to_complex(now);
      check_regular(z);
      if (target_.infinite && std::abs(z) >= kChartSwitchRadius) {
        sigma_switch = crossing(stepper, t0, t1);
        emit_samples(stepper, t0, sigma_switch, opts_.step_bound, identity, result.samples);
        break;
      }
      emit_samples(stepper, t0, t1, opts_.step_bound, identity, result.samples);
      if (last) break;
    }

    if (!target_.infinite) {
      result.defect = std::abs(result.samples.back() - target_.point);
      result.samples.push_back(target_.point);
      return result;
    }
    if (sigma_switch < 0.0) {
      throw TraceFailure{ErrorKind::EndpointNotReached, "trace never left the disc |z| < 10"};
    }
    trace_tail(result, sigma_switch, span, sign);
    return result;
  }

 private:
  void check_regular(Complex z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw TraceFailure{ErrorKind::TraceDiverged, "trace produced a non-finite point"};
    }
    if (!target_.infinite && std::abs(z) > 1e8) {
      throw TraceFailure{ErrorKind::TraceDiverged, "trace escaped to infinity"};
    }
    for (const Complex zero : zeros_) {
      if (std::abs(z - zero) < 1e-6) {
        throw TraceFailure{ErrorKind::TraceDiverged, "trace ran into a zero of omega"};
      }
    }
  }

  template <class Stepper>
  double crossing(const Stepper& stepper, double lo, double hi) const {
    TraceState tmp;
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      stepper.calc_state(mid, tmp);
      (std::abs(to_complex(tmp)) >= kChartSwitchRadius ? hi : lo) = mid;
    }
    return hi;
  }

  void trace_tail(TraceResult& result, double sigma_start, double span, double sign) const {
    const Complex w_start = 1.0 / result.samples.back();
    result.tail = {w_start};
    auto w_system = [&](const TraceState& x, TraceState& dxdt, double) {
      const Complex w = to_complex(x);
      const Complex v = -sign * w * w / coefficient_at(params_.form, 1.0 / w);
      dxdt = {v.real(), v.imag()};
    };
    const double remaining = span - sigma_start;
    auto stepper = odeint::make_dense_output(opts_.tolerance, opts_.tolerance, remaining / n_,
                                             odeint::runge_kutta_dopri5<TraceState>());
    stepper.initialize(TraceState{w_start.real(), w_start.imag()}, sigma_start,
                       remaining / (10.0 * n_));
    const auto identity = [](const TraceState& s) { return to_complex(s); };
    int steps = 0;
    while (true) {
      if (++steps > 200000) throw TraceFailure{ErrorKind::TraceDiverged, "too many tail steps"};
      auto [t0, t1] = stepper.do_step(w_system);
      const bool last = t1 >= span;
      if (last) t1 = span;
      emit_samples(stepper, t0, t1, opts_.step_bound, identity, result.tail);
      const Complex w = result.tail.back();
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(w) > 1.0) {
        throw TraceFailure{ErrorKind::TraceDiverged, "tail left the neighbourhood of infinity"};
      }
      if (last) break;
    }
    result.defect = std::abs(result.tail.back());
    result.tail.push_back(Complex{});
  }

  const MetricParams& params_;
  Complex start_;
  TraceTarget target_;
  int n_;
  TraceOptions opts_;
  std::vector<Complex> zeros_;
};

TraceTarget describe_target(const MetricParams& params, const ExtendedComplex& b) {
  TraceTarget t;
  const double half_c = 0.5 * params.c_log;
  if (b.is_infinite()) {
    const double total = -residue_at_infinity(params.form);
    if (total == 0.0) {
      throw Error(ErrorKind::InvalidConfig, "infinity is not sent to 0 or infinity by F");
    }
    t.infinite = true;
    t.log_scale = half_c;
    t.exponent = total;
    t.ascending = total > 0.0;
    return t;
  }
  const Complex p = b.value();
  const int idx = pole_index_near(params.form, p, kSingularMatch);
  if (idx < 0) {
    throw Error(ErrorKind::InvalidConfig,
                "a radial trace must end at a pole of omega or at infinity");
  }
  const auto& poles = params.form.poles();
  t.point = poles[idx].position;
  t.exponent = poles[idx].residue;
  t.log_scale = half_c;
  for (std::size_t k = 0; k < poles.size(); ++k) {
    if (static_cast<int>(k) != idx) {
      t.log_scale += poles[k].residue * std::log(std::abs(t.point - poles[k].position));
    }
  }
  t.ascending = t.exponent < 0.0;
  return t;
}

std::optional<Complex> simple_zero_at(const MetricParams& params, const ExtendedComplex& p) {
  if (p.is_infinite()) return std::nullopt;
  for (const auto& z : finite_zeros(params.form)) {
    if (z.order == 1 && std::abs(z.position - p.value()) <= kSingularMatch) return p.value();
  }
  return std::nullopt;
}

}  // namespace

GeodesicPath trace_radial_preimage(const MetricParams& params, const ExtendedComplex& a,
                                   const ExtendedComplex& b, int n, const TraceOptions& options) {
  if (n < 100) throw Error(ErrorKind::InvalidConfig, "radial trace needs n >= 100 steps");
  bool reversed = false;
  auto start = simple_zero_at(params, a);
  ExtendedComplex target = b;
  if (!start) {
    start = simple_zero_at(params, b);
    target = a;
    reversed = true;
  }
  if (!start) {
    throw Error(ErrorKind::InvalidConfig, "a radial trace needs one endpoint at a simple zero of omega");
  }
  const TraceTarget desc = describe_target(params, target);
  const RadialTracer tracer(params, *start, desc, n, options);

  // Departure directions u with f'(a) u^2 real: positive to ascend in |F|,
  // negative to descend.
  const Complex slope = coefficient_derivative_at(params.form, *start);
  const Complex u2 = (desc.ascending ? 1.0 : -1.0) * std::conj(slope) / std::abs(slope);
  const Complex u = std::sqrt(u2);

  std::string failures;
  for (const Complex direction : {u, -u}) {
    try {
      auto res = tracer.run(direction);
      if (res.defect >= 1e-6) {
        failures += "endpoint defect " + std::to_string(res.defect) + "; ";
        continue;
      }
      GeodesicPath path;
      path.step_bound = options.step_bound;
      path.endpoint_defect = res.defect;
      const CharacterMetric metric(params);
      path.length = path_length(metric, res.samples);
      if (!res.tail.empty()) path.length += path_length(InvertedChart(metric), res.tail);
      if (reversed) std::reverse(res.samples.begin(), res.samples.end());
      path.samples = std::move(res.samples);
      return path;
    } catch (const TraceFailure& f) {
      failures += f.reason + "; ";
    }
  }
  throw Error(ErrorKind::EndpointNotReached, "no departure direction reached the target: " + failures);
}

// ---------------------------------------------------------------------------
// Shooting

namespace {

using FlightState = std::array<double, 4>;

struct Flight {
  bool valid = false;
  double miss = 0.0;    // signed closest-approach distance
  double length = 0.0;  // arclength at closest approach
  double defect = std::numeric_limits<double>::infinity();
};

class Shooter {
 public:
  Shooter(const ConformalDensity& metric, Complex z0, Complex z1, const ShootingOptions& opts)
      : metric_(metric), z0_(z0), z1_(z1), opts_(opts), singular_(metric.singular_points()) {
    guard_ = 0.2 * opts_.approach_offset;
  }

  Flight fly(double angle, std::vector<Complex>* samples = nullptr,
             double stop_at = -1.0) const {
    Flight out;
    const double lambda0 = std::sqrt(metric_.density(z0_));
    const Complex v0 = std::polar(1.0 / lambda0, angle);
    auto system = [&](const FlightState& x, FlightState& dxdt, double) {
      const Complex z{x[0], x[1]};
      const Complex v{x[2], x[3]};
      const Complex acc = -2.0 * metric_.log_lambda_dz(z) * v * v;
      dxdt = {v.real(), v.imag(), acc.real(), acc.imag()};
    };
    const double horizon = stop_at > 0.0 ? stop_at : opts_.max_length;
    auto stepper = odeint::make_dense_output(opts_.tolerance, opts_.tolerance, horizon / 200.0,
                                             odeint::runge_kutta_dopri5<FlightState>());
    stepper.initialize(FlightState{z0_.real(), z0_.imag(), v0.real(), v0.imag()}, 0.0, 1e-6);
    if (samples) samples->push_back(z0_);

    auto approach_rate = [&](const FlightState& x) {
      return std::real(std::conj(Complex{x[0], x[1]} - z1_) * Complex{x[2], x[3]});
    };
    double best = std::numeric_limits<double>::infinity();
    FlightState at_best{};
    double s_best = 0.0;
    FlightState prev = stepper.current_state();
    int steps = 0;
    while (stepper.current_time() < horizon && ++steps < 100000) {
      std::pair<double, double> interval;
      try {
        interval = stepper.do_step(system);
      } catch (const Error&) {
        break;
      }
      auto [t0, t1] = interval;
      const bool final_step = t1 >= horizon;
      if (final_step) t1 = horizon;
      FlightState now;
      stepper.calc_state(t1, now);
      const Complex z{now[0], now[1]};
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e6) break;
      // The closest approach inside this step still counts when the step ends
      // in the guard disc of a singular point.
      const bool stop = nearest_within(z, singular_, guard_).has_value();
      if (samples) {
        if (stop) break;
        emit(stepper, t0, t1, *samples);
      } else if (approach_rate(prev) < 0.0 && approach_rate(now) >= 0.0) {
        double lo = t0;
        double hi = t1;
        FlightState mid_state;
        for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
          const double mid = 0.5 * (lo + hi);
          stepper.calc_state(mid, mid_state);
          (approach_rate(mid_state) < 0.0 ? lo : hi) = mid;
        }
        stepper.calc_state(hi, mid_state);
        const double d = std::abs(Complex{mid_state[0], mid_state[1]} - z1_);
        if (d < best) {
          best = d;
          at_best = mid_state;
          s_best = hi;
        }
      }
      prev = now;
      if (final_step || stop) break;
    }
    if (samples || !std::isfinite(best)) return out;
    const Complex z{at_best[0], at_best[1]};
    const Complex v{at_best[2], at_best[3]};
    const double side = std::imag(std::conj(v) * (z1_ - z));
    out.valid = true;
    out.miss = side >= 0.0 ? best : -best;
    out.length = s_best;
    out.defect = best;
    return out;
  }

 private:
  template <class Stepper>
  void emit(const Stepper& stepper, double t0, double t1, std::vector<Complex>& out) const {
    FlightState tmp;
    stepper.calc_state(t1, tmp);
    const double chord = std::abs(Complex{tmp[0], tmp[1]} - out.back());
    const int pieces = std::max(1, static_cast<int>(std::ceil(4.0 * chord / opts_.sample_step)));
    for (int k = 1; k <= pieces; ++k) {
      stepper.calc_state(k == pieces ? t1 : t0 + (t1 - t0) * k / pieces, tmp);
      out.emplace_back(tmp[0], tmp[1]);
    }
  }

  const ConformalDensity& metric_;
  Complex z0_;
  Complex z1_;
  ShootingOptions opts_;
  std::vector<Complex> singular_;
  double guard_ = 0.0;
};

struct Shot {
  double angle = 0.0;
  Flight flight;
};

std::optional<Shot> refine(const Shooter& shooter, double lo, Flight f_lo, double hi, Flight f_hi) {
  if (f_lo.miss == 0.0) return Shot{lo, f_lo};
  if (f_hi.miss == 0.0) return Shot{hi, f_hi};
  bool invalid = false;
  auto miss = [&](double angle) {
    const Flight f = shooter.fly(angle);
    if (!f.valid) invalid = true;
    return f.valid ? f.miss : std::numeric_limits<double>::quiet_NaN();
  };
  std::uintmax_t max_iter = 100;
  std::pair<double, double> bracket;
  try {
    bracket = boost::math::tools::toms748_solve(miss, lo, hi, f_lo.miss, f_hi.miss,
                                                boost::math::tools::eps_tolerance<double>(50), max_iter);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (invalid) return std::nullopt;
  const double angle = 0.5 * (bracket.first + bracket.second);
  const Flight f = shooter.fly(angle);
  if (!f.valid) return std::nullopt;
  return Shot{angle, f};
}

}  // namespace

GeodesicPath geodesic_between(const ConformalDensity& metric, Complex p0, Complex p1,
                              const ShootingOptions& opts) {
  if (std::abs(p1 - p0) <= 2.0 * opts.approach_offset) {
    throw Error(ErrorKind::InvalidConfig, "geodesic endpoints are too close to shoot between");
  }
  if (opts.directions < 4) throw Error(ErrorKind::InvalidConfig, "need at least four launch directions");
  const auto singular = metric.singular_points();
  const Complex toward = (p1 - p0) / std::abs(p1 - p0);
  const bool cone0 = nearest_within(p0, singular, kSingularMatch).has_value();
  const bool cone1 = nearest_within(p1, singular, kSingularMatch).has_value();
  const Complex z0 = cone0 ? p0 + opts.approach_offset * toward : p0;
  const Complex z1 = cone1 ? p1 - opts.approach_offset * toward : p1;

  const Shooter shooter(metric, z0, z1, opts);
  std::optional<Shot> best;
  // Launch fans of increasing density until some bracket converges.
  for (int n = opts.directions; !best && n <= 16 * opts.directions; n *= 2) {
    std::vector<double> angles(n);
    std::vector<Flight> flights(n);
    for (int k = 0; k < n; ++k) {
      angles[k] = 2.0 * kPi * k / n;
      flights[k] = shooter.fly(angles[k]);
    }
    auto consider = [&](const std::optional<Shot>& shot) {
      if (!shot || shot->flight.defect > opts.defect_tolerance) return;
      if (!best || shot->flight.length < best->flight.length) best = shot;
    };
    for (int k = 0; k < n; ++k) {
      if (flights[k].valid && flights[k].defect <= 1e-3 * opts.defect_tolerance) {
        consider(Shot{angles[k], flights[k]});
      }
      const int j = (k + 1) % n;
      if (!flights[k].valid || !flights[j].valid) continue;
      if (flights[k].miss * flights[j].miss > 0.0) continue;
      const double hi = (j == 0) ? 2.0 * kPi : angles[j];
      consider(refine(shooter, angles[k], flights[k], hi, flights[j]));
    }
  }
  if (!best) {
    std::ostringstream msg;
    msg << "no launch angle from " << z0 << " reaches " << z1;
    throw Error(ErrorKind::ShootingFailed, msg.str());
  }

  GeodesicPath path;
  path.step_bound = opts.sample_step;
  path.endpoint_defect = best->flight.defect;
  std::vector<Complex> traj;
  if (cone0) traj.push_back(p0);
  std::vector<Complex> flown;
  shooter.fly(best->angle, &flown, best->flight.length);
  traj.insert(traj.end(), flown.begin(), flown.end());
  if (traj.back() != p1) traj.push_back(p1);
  path.samples = std::move(traj);
  path.length = best->flight.length;
  if (cone0) path.length += radial_stub_length(metric, p0, z0);
  if (cone1) path.length += radial_stub_length(metric, p1, z1);
  return path;
}

GeodesicPath geodesic_between(const MetricParams& params, Complex p0, Complex p1,
                              const ShootingOptions& options) {
  return geodesic_between(CharacterMetric(params), p0, p1, options);
}

double spherical_angle(double a, double b, double c) {
  const auto in_range = [](double x) { return x > 0.0 && x < kPi; };
  if (!in_range(a) || !in_range(b) || !in_range(c)) {
    throw Error(ErrorKind::DegenerateTriangle, "triangle sides must lie in (0, pi)");
  }
  constexpr double tol = 1e-9;
  if (a > b + c + tol || b > a + c + tol || c > a + b + tol || a + b + c > 2.0 * kPi + tol) {
    throw Error(ErrorKind::DegenerateTriangle, "sides violate the spherical triangle inequality");
  }
  const double denom = std::sin(b) * std::sin(c);
  if (denom < 1e-12) throw Error(ErrorKind::DegenerateTriangle, "adjacent sides are degenerate");
  double cosine = (std::cos(a) - std::cos(b) * std::cos(c)) / denom;
  if (std::abs(cosine) > 1.0 + 1e-12) {
    throw Error(ErrorKind::DegenerateTriangle, "law of cosines argument outside [-1, 1]");
  }
  cosine = std::clamp(cosine, -1.0, 1.0);
  return std::acos(cosine);
}

TriangleReport decomposition_report(const MetricParams& params, const ShootingOptions& options) {
  const auto legs = three_football_lengths(params);
  const auto path = geodesic_between(params, Complex{0.0, 0.0}, Complex{1.0, 0.0}, options);
  TriangleReport report;
  report.ell1 = legs.ell1;
  report.ell2 = legs.ell2;
  report.L01 = path.length;
  report.theta = spherical_angle(report.L01, report.ell1, report.ell2);
  return report;
}

HeartReport heart_report(const HeartParams& params) {
  const auto metric = heart_metric(params);
  HeartReport report;
  report.c_log = params.c_log;
  report.apex_modulus = heart_apex_image(params);
  report.L01 = radial_length(metric, Complex{0.0, 0.0}, Complex{1.0, 0.0});
  report.L0inf = radial_length(metric, Complex{0.0, 0.0}, ExtendedComplex::infinity());
  return report;
}

}  // namespace rsm
