#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rsm/families.hpp"
#include "rsm/metric.hpp"

namespace rsm::cli {

enum class Family { Heart, ThreeFootball };

struct GridSpec {
  double x_min = -2.5;
  double x_max = 2.5;
  double y_min = -2.5;
  double y_max = 2.5;
  int nx = 41;
  int ny = 41;
};

struct Tolerances {
  double curvature_tol = 5e-3;
  double length_tol = 1e-5;
  double residual_tol = 1e-10;
};

struct RunConfig {
  Family family = Family::Heart;
  HeartParams heart;
  ThreeFootballParams threefb;
  bool special = false;
  // Explicit pole positions, bypassing the solver (both or neither).
  std::optional<Complex> p_alpha;
  std::optional<Complex> p_gamma;
  GridSpec grid;
  Tolerances tolerances;
  std::string output_dir = ".";
};

/// Throws InvalidConfig or BadAngle naming the violated precondition.
void validate(const RunConfig& config);

/// Builds the metric. Explicit pole triples are taken as given, without the
/// constraint check, so that verify can report them as failing.
MetricParams build_metric(const RunConfig& config);

/// "a+bi", "a-bi", "a", "bi" with no spaces. Throws InvalidConfig.
Complex parse_complex(const std::string& text);
/// "x0,x1,y0,y1,nx,ny". Throws InvalidConfig.
GridSpec parse_grid(const std::string& text);

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

std::vector<Check> run_verification(const RunConfig& config);

/// Exit codes: 0 success, 1 failed check or computation, 2 invalid input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rsm::cli
