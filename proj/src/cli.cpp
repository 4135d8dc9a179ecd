#include "rsm/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "rsm/error.hpp"
#include "rsm/geodesics.hpp"
#include "rsm/serialization.hpp"

namespace rsm::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_g17(double x) {
  if (std::isnan(x)) return "NaN";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_g9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

double parse_double(const std::string& text, const std::string& key) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::InvalidConfig, key + ": expected a finite number, got \"" + text + "\"");
  }
  return v;
}

int parse_int(const std::string& text, const std::string& key) {
  const double v = parse_double(text, key);
  if (v != std::floor(v) || std::abs(v) > 1e7) {
    throw Error(ErrorKind::InvalidConfig, key + ": expected an integer, got \"" + text + "\"");
  }
  return static_cast<int>(v);
}

// ---------------------------------------------------------------------------
// Settings: the flat key/value view shared by the config file and the flags.

const std::vector<std::string> kSettingKeys = {
    "family", "beta",  "c",     "alpha",         "gamma",      "pbeta",       "camp",  "branch", "special",
    "grid",   "out",   "palpha", "pgamma",       "curvature_tol", "length_tol", "residual_tol"};

using Settings = std::map<std::string, std::string>;

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidConfig, "cannot read config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "config file must hold a flat JSON object");
  Settings s;
  for (const auto& [key, value] : j.items()) {
    if (std::find(kSettingKeys.begin(), kSettingKeys.end(), key) == kSettingKeys.end()) {
      throw Error(ErrorKind::InvalidConfig, "unknown config key \"" + key + "\"");
    }
    if (value.is_string()) {
      s[key] = value.get<std::string>();
    } else if (value.is_boolean()) {
      s[key] = value.get<bool>() ? "true" : "false";
    } else if (value.is_number()) {
      s[key] = value.dump();  // shortest round-trip decimal
    } else {
      throw Error(ErrorKind::InvalidConfig, "config key \"" + key + "\" must be a string, number or bool");
    }
  }
  return s;
}

RunConfig config_from_settings(const Settings& s) {
  auto has = [&](const char* k) { return s.count(k) > 0; };
  auto num = [&](const char* k) { return parse_double(s.at(k), k); };
  auto reject = [&](std::initializer_list<const char*> keys, const char* family) {
    for (const char* k : keys) {
      if (has(k)) {
        throw Error(ErrorKind::InvalidConfig, std::string("--") + k + " does not apply to the " + family + " family");
      }
    }
  };

  RunConfig cfg;
  const std::string family = has("family") ? s.at("family") : "heart";
  bool special = false;
  if (has("special")) {
    const auto& v = s.at("special");
    if (v != "true" && v != "false") throw Error(ErrorKind::InvalidConfig, "special must be true or false");
    special = v == "true";
  }

  if (family == "heart") {
    cfg.family = Family::Heart;
    reject({"alpha", "gamma", "pbeta", "camp", "branch", "palpha", "pgamma"}, "heart");
    if (special) throw Error(ErrorKind::InvalidConfig, "--special does not apply to the heart family");
    if (has("beta")) cfg.heart.beta = num("beta");
    if (has("c")) cfg.heart.c_log = num("c");
  } else if (family == "threefb") {
    cfg.family = Family::ThreeFootball;
    reject({"c"}, "threefb (use --camp)");
    cfg.special = special;
    if (special) {
      if (has("beta") || has("gamma")) {
        throw Error(ErrorKind::InvalidConfig, "--special fixes beta and gamma; only --alpha may be given");
      }
      const double alpha = has("alpha") ? num("alpha") : 1.0;
      if (!(alpha > 0.0)) throw Error(ErrorKind::BadAngle, "alpha must be positive");
      cfg.threefb.angles = special_angles(alpha);
    } else {
      if (!has("alpha") || !has("beta") || !has("gamma")) {
        throw Error(ErrorKind::InvalidConfig, "threefb needs --alpha, --beta, --gamma or --special");
      }
      cfg.threefb.angles = make_angle_triple(num("alpha"), num("beta"), num("gamma"));
    }
    if (has("pbeta")) cfg.threefb.p_beta = parse_complex(s.at("pbeta"));
    if (has("camp")) cfg.threefb.c_amp = num("camp");
    if (has("branch")) cfg.threefb.branch = parse_branch(s.at("branch"));
    if (has("palpha") != has("pgamma")) {
      throw Error(ErrorKind::InvalidConfig, "--palpha and --pgamma must be given together");
    }
    if (has("palpha")) {
      cfg.p_alpha = parse_complex(s.at("palpha"));
      cfg.p_gamma = parse_complex(s.at("pgamma"));
    }
  } else {
    throw Error(ErrorKind::InvalidConfig, "family must be heart or threefb, got \"" + family + "\"");
  }

  if (has("grid")) cfg.grid = parse_grid(s.at("grid"));
  if (has("out")) cfg.output_dir = s.at("out");
  if (has("curvature_tol")) cfg.tolerances.curvature_tol = num("curvature_tol");
  if (has("length_tol")) cfg.tolerances.length_tol = num("length_tol");
  if (has("residual_tol")) cfg.tolerances.residual_tol = num("residual_tol");
  validate(cfg);
  return cfg;
}

// ---------------------------------------------------------------------------
// Verification

std::vector<Complex> probe_points(const MetricParams& m, int count, std::uint64_t seed, double min_dist) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  const auto avoid = singular_points(m);
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < count) {
    const Complex z{coord(rng), coord(rng)};
    bool ok = true;
    for (const Complex p : avoid) ok = ok && std::abs(z - p) > min_dist;
    if (ok) out.push_back(z);
  }
  return out;
}

Complex log_lambda_dz_fd(const MetricParams& m, Complex z, double h) {
  auto log_lambda = [&](Complex w) { return 0.5 * std::log(density_at(m, w)); };
  const double dx = (log_lambda(z + h) - log_lambda(z - h)) / (2.0 * h);
  const double dy = (log_lambda(z + Complex{0.0, h}) - log_lambda(z - Complex{0.0, h})) / (2.0 * h);
  return 0.5 * Complex{dx, -dy};
}

struct ExpectedCone {
  ExtendedComplex where;
  double angle;
};

std::vector<ExpectedCone> expected_cones(const MetricParams& m) {
  std::vector<ExpectedCone> out;
  double total = 0.0;
  for (const auto& p : m.form.poles()) {
    out.push_back({p.position, 2.0 * kPi * std::abs(p.residue)});
    total += p.residue;
  }
  for (const auto& z : finite_zeros(m.form)) out.push_back({z.position, 2.0 * kPi * (z.order + 1)});
  out.push_back({ExtendedComplex::infinity(), 2.0 * kPi * std::abs(total)});
  return out;
}

template <class Fn>
double guarded_max(Fn&& fn) {
  try {
    return fn();
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

void common_checks(const RunConfig& cfg, const MetricParams& m, std::vector<Check>& checks) {
  auto add = [&](std::string name, double value, double bound) {
    checks.push_back({std::move(name), value, bound, value <= bound});
  };

  double sum = 0.0;
  double scale = 1.0;
  for (const auto& p : m.form.poles()) {
    sum += p.residue;
    scale = std::max(scale, std::abs(p.residue));
  }
  add("residue_theorem", std::abs(sum + residue_at_infinity(m.form)) / scale, 1e-12);

  add("curvature", guarded_max([&] {
        double worst = 0.0;
        for (const Complex z : probe_points(m, 200, 11, 0.1)) {
          worst = std::max(worst, std::abs(gauss_curvature_fd(m, z) - 1.0));
        }
        return worst;
      }),
      cfg.tolerances.curvature_tol);

  add("cone_angles", guarded_max([&] {
        double worst = 0.0;
        for (const auto& cone : expected_cones(m)) {
          worst = std::max(worst, std::abs(cone_angle_estimate(m, cone.where) / cone.angle - 1.0));
        }
        return worst;
      }),
      1e-2);

  add("metric_equivalence", guarded_max([&] {
        double worst = 0.0;
        for (const Complex z : probe_points(m, 1000, 12, 1e-2)) {
          const double a = density_at(m, z);
          const double b = density_via_developing(m, z);
          worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
        }
        return worst;
      }),
      1e-12);

  add("phi_gradient", guarded_max([&] {
        double worst = 0.0;
        for (const Complex z : probe_points(m, 100, 13, 0.1)) worst = std::max(worst, phi_gradient_check(m, z));
        return worst;
      }),
      1e-6);

  add("log_lambda_dz", guarded_max([&] {
        double worst = 0.0;
        for (const Complex z : probe_points(m, 100, 14, 0.1)) {
          const Complex exact = log_lambda_dz(m, z);
          const Complex fd = log_lambda_dz_fd(m, z, 1e-5);
          worst = std::max(worst, std::abs(exact - fd) / std::max(1.0, std::abs(exact)));
        }
        return worst;
      }),
      1e-6);
}

double zero_distance(const MetricParams& m, Complex target) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : finite_zeros(m.form)) best = std::min(best, std::abs(z.position - target));
  return best;
}

void heart_checks(const RunConfig& cfg, const MetricParams& m, std::vector<Check>& checks) {
  auto add = [&](std::string name, double value, double bound) {
    checks.push_back({std::move(name), value, bound, value <= bound});
  };
  const double beta = cfg.heart.beta;
  const Complex apex{-cfg.heart.gamma() / beta, 0.0};
  const Complex zero{0.0, 0.0};
  const Complex one{1.0, 0.0};
  const auto inf = ExtendedComplex::infinity();

  add("form_zeros", zero_distance(m, zero), 1e-9);
  const double l01 = radial_length(m, zero, one);
  const double l0a = radial_length(m, zero, apex);
  const double l0inf = radial_length(m, zero, inf);
  add("heart_pi_sum", std::abs(l01 + l0inf - kPi), 1e-12);
  add("heart_equal_legs", std::abs(l01 - l0a), 1e-12);
  add("heart_apex_length", std::abs(l01 - 2.0 * std::atan(heart_apex_image(cfg.heart))), 1e-12);
  add("trace_oracle", guarded_max([&] {
        return std::max({std::abs(trace_radial_preimage(m, zero, one).length - l01),
                         std::abs(trace_radial_preimage(m, zero, apex).length - l0a),
                         std::abs(trace_radial_preimage(m, zero, inf).length - l0inf)});
      }),
      1e-6);
  add("shooting_oracle", guarded_max([&] { return std::abs(geodesic_between(m, zero, one).length - l01); }),
      cfg.tolerances.length_tol);
}

void threefb_checks(const RunConfig& cfg, const MetricParams& m, std::vector<Check>& checks) {
  auto add = [&](std::string name, double value, double bound) {
    checks.push_back({std::move(name), value, bound, value <= bound});
  };
  const auto& poles = m.form.poles();
  const PoleTriple triple{poles[1].position, poles[0].position, poles[2].position};
  add("constraint_residual", constraint_residual(cfg.threefb.angles, triple).max(), cfg.tolerances.residual_tol);
  add("form_zeros", std::max(zero_distance(m, Complex{0.0, 0.0}), zero_distance(m, Complex{1.0, 0.0})), 1e-9);

  const auto legs = three_football_lengths(m);
  const auto inf = ExtendedComplex::infinity();
  add("trace_oracle", guarded_max([&] {
        return std::max(std::abs(trace_radial_preimage(m, Complex{1.0, 0.0}, inf).length - legs.ell1),
                        std::abs(trace_radial_preimage(m, Complex{0.0, 0.0}, inf).length - legs.ell2));
      }),
      1e-6);

  // Spherical excess of the (L01, ell1, ell2) triangle; must be positive.
  double excess = -std::numeric_limits<double>::infinity();
  try {
    const auto r = decomposition_report(m);
    const double at_zero = spherical_angle(r.ell1, r.ell2, r.L01);
    const double at_one = spherical_angle(r.ell2, r.ell1, r.L01);
    if (r.theta > 0.0 && r.theta < kPi) excess = r.theta + at_zero + at_one - kPi;
  } catch (const Error&) {
  }
  checks.push_back({"triangle_excess", excess, 0.0, excess > 0.0});
}

// ---------------------------------------------------------------------------
// Plotting

struct Viewport {
  GridSpec g;
  double sx() const { return 800.0 / (g.x_max - g.x_min); }
  double sy() const { return 800.0 / (g.y_max - g.y_min); }
  double px(double x) const { return (x - g.x_min) * sx(); }
  double py(double y) const { return (g.y_max - y) * sy(); }
};

std::string level_set_path(const MetricParams& m, const GridSpec& g, double level) {
  constexpr int n = 200;
  std::vector<double> v((n + 1) * (n + 1));
  auto node = [&](int i, int j) -> Complex {
    return {g.x_min + (g.x_max - g.x_min) * i / n, g.y_min + (g.y_max - g.y_min) * j / n};
  };
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      try {
        v[j * (n + 1) + i] = 0.5 * (potential_at(m.form, node(i, j)) + m.c_log);
      } catch (const Error&) {
        v[j * (n + 1) + i] = std::numeric_limits<double>::quiet_NaN();
      }
    }
  }
  std::ostringstream d;
  auto cross = [&](Complex a, double va, Complex b, double vb) { return a + (b - a) * ((level - va) / (vb - va)); };
  auto seg = [&](Complex a, Complex b) {
    d << 'M' << format_g9(a.real()) << ' ' << format_g9(a.imag()) << 'L' << format_g9(b.real()) << ' '
      << format_g9(b.imag());
  };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Complex c[4] = {node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)};
      const double val[4] = {v[j * (n + 1) + i], v[j * (n + 1) + i + 1], v[(j + 1) * (n + 1) + i + 1],
                             v[(j + 1) * (n + 1) + i]};
      bool finite = true;
      for (double x : val) finite = finite && std::isfinite(x);
      if (!finite) continue;
      std::vector<Complex> hits;
      for (int e = 0; e < 4; ++e) {
        const int f = (e + 1) % 4;
        if ((val[e] >= level) != (val[f] >= level)) hits.push_back(cross(c[e], val[e], c[f], val[f]));
      }
      if (hits.size() == 2) {
        seg(hits[0], hits[1]);
      } else if (hits.size() == 4) {
        const double centre = 0.25 * (val[0] + val[1] + val[2] + val[3]);
        const bool first_high = val[0] >= level;
        if ((centre >= level) == first_high) {
          seg(hits[0], hits[1]);
          seg(hits[2], hits[3]);
        } else {
          seg(hits[3], hits[0]);
          seg(hits[1], hits[2]);
        }
      }
    }
  }
  return d.str();
}

struct Curve {
  std::string label;
  std::string colour;
  std::function<GeodesicPath()> compute;
};

int write_plot(const RunConfig& cfg, const MetricParams& m, const std::string& path, std::ostream& err) {
  const Viewport vp{cfg.grid};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  svg << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  svg << "<g transform=\"matrix(" << format_g9(vp.sx()) << " 0 0 " << format_g9(-vp.sy()) << ' '
      << format_g9(-cfg.grid.x_min * vp.sx()) << ' ' << format_g9(cfg.grid.y_max * vp.sy()) << ")\">\n";

  for (const double level : {-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5}) {
    svg << "<path class=\"level\" data-log-modulus=\"" << format_g9(level)
        << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.6\" stroke-dasharray=\"4 3\" "
           "vector-effect=\"non-scaling-stroke\" d=\""
        << level_set_path(m, cfg.grid, level) << "\"/>\n";
  }

  const Complex zero{0.0, 0.0};
  const Complex one{1.0, 0.0};
  const auto inf = ExtendedComplex::infinity();
  const std::string red = "#d62728";
  const std::string green = "#2ca02c";
  const Complex apex{-cfg.heart.gamma() / cfg.heart.beta, 0.0};
  std::vector<Curve> curves;
  if (cfg.family == Family::Heart) {
    curves = {{"0-1", red, [&] { return trace_radial_preimage(m, zero, one); }},
              {"0-apex", green, [&] { return trace_radial_preimage(m, zero, apex); }},
              {"0-inf", green, [&] { return trace_radial_preimage(m, zero, inf); }}};
  } else {
    curves = {{"0-1", red, [&] { return geodesic_between(m, zero, one); }},
              {"1-inf", red, [&] { return trace_radial_preimage(m, one, inf); }},
              {"0-inf", green, [&] { return trace_radial_preimage(m, zero, inf); }}};
  }
  bool failed = false;
  for (const auto& curve : curves) {
    try {
      const auto p = curve.compute();
      svg << "<polyline class=\"geodesic\" data-name=\"" << curve.label << "\" data-step-bound=\""
          << format_g9(p.step_bound) << "\" fill=\"none\" stroke=\"" << curve.colour
          << "\" stroke-width=\"1.8\" vector-effect=\"non-scaling-stroke\" points=\"";
      bool first = true;
      for (const Complex z : p.samples) {
        if (std::abs(z) > kChartSwitchRadius) break;
        svg << (first ? "" : " ") << format_g9(z.real()) << ',' << format_g9(z.imag());
        first = false;
      }
      svg << "\"/>\n";
    } catch (const Error& e) {
      failed = true;
      svg << "<!-- warning: geodesic " << curve.label << " failed: " << to_string(e.kind()) << " -->\n";
      err << "warning: geodesic " << curve.label << " failed: " << e.what() << '\n';
    }
  }
  svg << "</g>\n";

  std::vector<std::pair<std::string, Complex>> marks;
  if (cfg.family == Family::Heart) {
    marks = {{"0", zero}, {"1", one}, {"-γ/β", Complex{-cfg.heart.gamma() / cfg.heart.beta, 0.0}}};
  } else {
    const auto& poles = m.form.poles();
    marks = {{"0", zero}, {"1", one}, {"Pα", poles[1].position}, {"Pβ", poles[0].position},
             {"Pγ", poles[2].position}};
  }
  auto clamp_px = [](double v) { return std::clamp(v, 12.0, 788.0); };
  for (const auto& [label, z] : marks) {
    const double x = clamp_px(vp.px(z.real()));
    const double y = clamp_px(vp.py(z.imag()));
    svg << "<g class=\"mark\"><circle cx=\"" << format_g9(x) << "\" cy=\"" << format_g9(y)
        << "\" r=\"4\" fill=\"black\"/><text x=\"" << format_g9(x + 6) << "\" y=\"" << format_g9(y - 6)
        << "\" font-size=\"14\">" << label << "</text></g>\n";
  }
  svg << "<g class=\"mark\"><circle cx=\"770\" cy=\"30\" r=\"4\" fill=\"none\" stroke=\"black\"/>"
         "<text x=\"750\" y=\"20\" font-size=\"14\">∞</text></g>\n";
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  out << svg.str();
  if (!out) throw Error(ErrorKind::InvalidConfig, "cannot write " + path);
  return failed ? 1 : 0;
}

void write_sample(const RunConfig& cfg, const MetricParams& m, const std::string& path) {
  std::ostringstream csv;
  csv << "re,im,phi,density,curvature\n";
  const auto& g = cfg.grid;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const Complex z{g.x_min + (g.x_max - g.x_min) * i / (g.nx - 1),
                      g.y_min + (g.y_max - g.y_min) * j / (g.ny - 1)};
      const double nan = std::numeric_limits<double>::quiet_NaN();
      auto safe = [&](auto&& fn) {
        try {
          return fn();
        } catch (const Error&) {
          return nan;
        }
      };
      const double phi = safe([&] { return phi_at(m, z); });
      const double dens = safe([&] { return density_at(m, z); });
      const double curv = safe([&] { return gauss_curvature_fd(m, z); });
      csv << format_g17(z.real()) << ',' << format_g17(z.imag()) << ',' << format_g17(phi) << ','
          << format_g17(dens) << ',' << format_g17(curv) << '\n';
    }
  }
  std::ofstream out(path, std::ios::binary);
  out << csv.str();
  if (!out) throw Error(ErrorKind::InvalidConfig, "cannot write " + path);
}

std::string prepare_output(const RunConfig& cfg, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec || !std::filesystem::is_directory(cfg.output_dir)) {
    throw Error(ErrorKind::InvalidConfig, "output directory " + cfg.output_dir + " is not writable");
  }
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::BadAngle:
    case ErrorKind::DuplicatePole:
    case ErrorKind::ZeroResidue:
    case ErrorKind::ExcludedPoint:
    case ErrorKind::CollidingPoles:
    case ErrorKind::DegenerateQuadratic:
    case ErrorKind::DoubleRoot:
    case ErrorKind::DivisionByZero:
      return true;
    default:
      return false;
  }
}

}  // namespace

Complex parse_complex(const std::string& text) {
  static const std::regex pattern(
      R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)??(?:([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?$)");
  std::smatch m;
  if (text.empty() || !std::regex_match(text, m, pattern)) {
    throw Error(ErrorKind::InvalidConfig, "expected a complex number like 0.3+0.2i, got \"" + text + "\"");
  }
  const bool has_imag = !text.empty() && text.back() == 'i';
  const double re = m[1].matched ? parse_double(m[1].str(), "complex") : 0.0;
  double im = 0.0;
  if (has_imag) {
    if (!m[1].matched && !m[2].matched && !m[3].matched && text != "i") {
      throw Error(ErrorKind::InvalidConfig, "malformed complex number \"" + text + "\"");
    }
    if (m[1].matched && m[2].str().empty()) {
      throw Error(ErrorKind::InvalidConfig, "malformed complex number \"" + text + "\"");
    }
    im = m[3].matched ? parse_double(m[3].str(), "complex") : 1.0;
    if (m[2].str() == "-") im = -im;
  }
  return {re, im};
}

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 6) throw Error(ErrorKind::InvalidConfig, "grid must be x0,x1,y0,y1,nx,ny");
  return {parse_double(parts[0], "grid"), parse_double(parts[1], "grid"), parse_double(parts[2], "grid"),
          parse_double(parts[3], "grid"), parse_int(parts[4], "grid"),    parse_int(parts[5], "grid")};
}

void validate(const RunConfig& cfg) {
  const auto& g = cfg.grid;
  if (g.nx < 2 || g.ny < 2) throw Error(ErrorKind::InvalidConfig, "grid needs nx, ny >= 2");
  if (!(g.x_min < g.x_max) || !(g.y_min < g.y_max)) {
    throw Error(ErrorKind::InvalidConfig, "grid needs x_min < x_max and y_min < y_max");
  }
  const auto& t = cfg.tolerances;
  if (!(t.curvature_tol > 0.0) || !(t.length_tol > 0.0) || !(t.residual_tol > 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "tolerances must be positive");
  }
  if (cfg.family == Family::Heart) {
    validate(cfg.heart);
  } else {
    if (!(cfg.threefb.c_amp > 0.0) || !std::isfinite(cfg.threefb.c_amp)) {
      throw Error(ErrorKind::InvalidConfig, "camp must be positive and finite");
    }
    if (cfg.p_alpha.has_value() != cfg.p_gamma.has_value()) {
      throw Error(ErrorKind::InvalidConfig, "explicit poles need both P_alpha and P_gamma");
    }
  }
}

MetricParams build_metric(const RunConfig& cfg) {
  if (cfg.family == Family::Heart) return heart_metric(cfg.heart);
  if (!cfg.p_alpha) return three_football_metric(cfg.threefb);
  const PoleTriple poles{*cfg.p_alpha, cfg.threefb.p_beta, *cfg.p_gamma};
  check_pole_separation(poles);
  const auto& a = cfg.threefb.angles;
  return {make_form({{poles.p_beta, -a.beta}, {poles.p_alpha, a.alpha + a.beta}, {poles.p_gamma, a.gamma}}),
          2.0 * std::log(cfg.threefb.c_amp)};
}

std::vector<Check> run_verification(const RunConfig& cfg) {
  const auto m = build_metric(cfg);
  std::vector<Check> checks;
  common_checks(cfg, m, checks);
  if (cfg.family == Family::Heart) {
    heart_checks(cfg, m, checks);
  } else {
    threefb_checks(cfg, m, checks);
  }
  return checks;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reducible spherical conical metrics: build, verify, report, sample, plot"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_options;
  const std::vector<std::pair<std::string, std::string>> value_flags = {
      {"family", "heart or threefb"},
      {"beta", "beta angle (heart: 0 < beta < 1)"},
      {"c", "heart family constant c"},
      {"alpha", "alpha angle (threefb)"},
      {"gamma", "gamma angle (threefb)"},
      {"pbeta", "P_beta as a+bi"},
      {"camp", "three-football amplitude c > 0"},
      {"branch", "plus or minus"},
      {"grid", "x0,x1,y0,y1,nx,ny"},
      {"out", "output directory"},
      {"palpha", "explicit P_alpha as a+bi (with --pgamma)"},
      {"pgamma", "explicit P_gamma as a+bi (with --palpha)"}};
  for (const auto& [name, help] : value_flags) {
    flag_options[name] = app.add_option("--" + name, flag_values[name], help);
  }
  bool special = false;
  auto* special_flag = app.add_flag("--special", special, "special angles alpha = gamma, beta = (1+sqrt2)/2 alpha");
  std::string config_path;
  app.add_option("--config", config_path, "flat JSON config; flags override its values");

  auto* verify = app.add_subcommand("verify", "run the invariant suites; exit 0 iff all pass");
  auto* report = app.add_subcommand("report", "print the geodesic report as JSON");
  auto* sample = app.add_subcommand("sample", "write the CSV grid re,im,phi,density,curvature");
  auto* plot = app.add_subcommand("plot", "write an SVG plot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  MetricParams metric = heart_metric(HeartParams{});
  try {
    Settings settings;
    if (!config_path.empty()) settings = read_config_file(config_path);
    for (const auto& [name, opt] : flag_options) {
      if (opt->count() > 0) settings[name] = flag_values[name];
    }
    if (special_flag->count() > 0) settings["special"] = special ? "true" : "false";
    cfg = config_from_settings(settings);
    metric = build_metric(cfg);
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  }

  try {
    if (verify->parsed()) {
      bool all = true;
      for (const auto& c : run_verification(cfg)) {
        char line[160];
        std::snprintf(line, sizeof line, "%-4s %-22s value=%.6e bound=%.1e", c.pass ? "PASS" : "FAIL",
                      c.name.c_str(), c.value, c.bound);
        out << line << '\n';
        all = all && c.pass;
      }
      out << (all ? "all checks passed" : "some checks failed") << '\n';
      return all ? 0 : 1;
    }
    if (report->parsed()) {
      const Json j = cfg.family == Family::Heart ? to_json(heart_report(cfg.heart))
                                                 : to_json(decomposition_report(metric));
      out << j.dump(2) << '\n';
      return 0;
    }
    if (sample->parsed()) {
      const auto path = prepare_output(cfg, "sample.csv");
      write_sample(cfg, metric, path);
      out << path << '\n';
      return 0;
    }
    if (plot->parsed()) {
      const auto path = prepare_output(cfg, "plot.svg");
      const int code = write_plot(cfg, metric, path, err);
      out << path << '\n';
      return code;
    }
  } catch (const Error& e) {
    if (is_input_error(e.kind()) && !verify->parsed() && !report->parsed()) {
      err << "invalid input: " << e.what() << '\n';
      return 2;
    }
    if (report->parsed()) {
      out << Json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump(2) << '\n';
    } else {
      err << "error: " << e.what() << '\n';
    }
    return 1;
  }
  return 2;
}

}  // namespace rsm::cli
