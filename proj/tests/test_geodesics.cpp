#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rsm/geodesics.hpp"
#include "rsm/serialization.hpp"
#include "test_support.hpp"

using namespace rsm;

namespace {

const Complex kZero{0.0, 0.0};
const Complex kOne{1.0, 0.0};

MetricParams special_threefb(Complex pb, double c_amp) {
  return three_football_metric(ThreeFootballParams{special_angles(1.0), pb, Branch::Minus, c_amp});
}

double max_chord(const std::vector<Complex>& s) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) worst = std::max(worst, std::abs(s[i + 1] - s[i]));
  return worst;
}

const double kBetas[] = {0.3, 0.5, 0.6};
const double kCs[] = {-1.0, 0.0, 0.7};

}  // namespace

TEST_CASE("heart radial lengths") {
  const auto half = heart_metric(HeartParams{0.5, 0.0});
  CHECK(radial_length(half, kZero, kOne) == doctest::Approx(oracle::pi / 2).epsilon(1e-15));
  for (const double beta : kBetas) {
    for (const double c : kCs) {
      const double gamma = 1.0 - beta;
      const auto m = heart_metric(HeartParams{beta, c});
      const Complex apex{-gamma / beta, 0.0};
      const double l01 = radial_length(m, kZero, kOne);
      const double l0a = radial_length(m, kZero, apex);
      const double l0inf = radial_length(m, kZero, ExtendedComplex::infinity());
      CHECK(l01 == doctest::Approx(2.0 * std::atan(std::exp(c / 2) * std::pow(gamma / beta, gamma))).epsilon(1e-14));
      CHECK(std::abs(l01 - l0a) < 1e-15);
      CHECK(std::abs(l01 + l0inf - oracle::pi) < 1e-15);
      CHECK(std::abs(l0a + l0inf - oracle::pi) < 1e-15);
      CHECK(radial_length(m, kOne, kZero) == l01);
      CHECK(radial_length(m, kZero, kZero) == 0.0);
    }
  }
}

TEST_CASE("three-football legs") {
  const auto t = special_angles(1.0);
  const Complex pb{0.3, 0.2};
  const auto p = solve_pole_positions(t, pb, Branch::Minus);
  const std::vector<oracle::Pole> poles{{p.p_beta, -t.beta}, {p.p_alpha, t.alpha + t.beta}, {p.p_gamma, t.gamma}};
  const auto legs = three_football_lengths(special_threefb(pb, 1.0));
  CHECK(legs.ell1 ==
        doctest::Approx(oracle::pi - 2.0 * std::atan(oracle::developing_modulus(poles, 1.0, 1.0))).epsilon(1e-13));
  CHECK(legs.ell2 ==
        doctest::Approx(oracle::pi - 2.0 * std::atan(oracle::developing_modulus(poles, 1.0, 0.0))).epsilon(1e-13));

  const auto tiny = three_football_lengths(special_threefb(pb, 1e-12));
  CHECK(oracle::pi - tiny.ell1 < 1e-9);
  CHECK(oracle::pi - tiny.ell2 < 1e-9);

  double prev1 = oracle::pi, prev2 = oracle::pi;
  for (double amp = 0.05; amp < 20.0; amp *= 1.5) {
    const auto l = three_football_lengths(special_threefb(pb, amp));
    CHECK(l.ell1 < prev1);
    CHECK(l.ell2 < prev2);
    CHECK(l.ell1 > 0.0);
    CHECK(l.ell2 > 0.0);
    prev1 = l.ell1;
    prev2 = l.ell2;
  }
}

TEST_CASE("radial traces reproduce the closed form") {
  SUBCASE("symmetric heart, 0 to 1") {
    const auto m = heart_metric(HeartParams{0.5, 0.0});
    const auto path = trace_radial_preimage(m, kZero, kOne);
    CHECK(std::abs(path_length(m, path.samples) - oracle::pi / 2) < 1e-6);
    CHECK(path.endpoint_defect < 1e-6);
  }
  SUBCASE("beta 0.6, c 0.7, 0 to the second pole") {
    const HeartParams hp{0.6, 0.7};
    const auto m = heart_metric(hp);
    const auto path = trace_radial_preimage(m, kZero, Complex{-0.4 / 0.6, 0.0});
    CHECK(std::abs(path.length - 2.0 * std::atan(heart_apex_image(hp))) < 1e-6);
  }
  SUBCASE("3x3 grid, all three legs") {
    for (const double beta : kBetas) {
      for (const double c : kCs) {
        const auto m = heart_metric(HeartParams{beta, c});
        const Complex apex{-(1.0 - beta) / beta, 0.0};
        for (const ExtendedComplex target : {ExtendedComplex(kOne), ExtendedComplex(apex), ExtendedComplex::infinity()}) {
          const auto path = trace_radial_preimage(m, kZero, target);
          CHECK(std::abs(path.length - radial_length(m, kZero, target)) < 1e-6);
          CHECK(path.endpoint_defect < 1e-6);
          CHECK(max_chord(path.samples) <= path.step_bound);
          if (target.is_finite()) {
            CHECK(std::abs(path.length - path_length(m, path.samples)) < 1e-10);
            CHECK(std::abs(path.samples.back() - target.value()) < 1e-6);
          }
          CHECK(path.samples.front() == kZero);
        }
      }
    }
  }
  SUBCASE("three-football legs from the zeros") {
    const auto m = special_threefb(Complex{0.3, 0.2}, 1.0);
    const auto legs = three_football_lengths(m);
    CHECK(std::abs(trace_radial_preimage(m, kOne, ExtendedComplex::infinity()).length - legs.ell1) < 1e-6);
    CHECK(std::abs(trace_radial_preimage(m, kZero, ExtendedComplex::infinity()).length - legs.ell2) < 1e-6);
  }
}

TEST_CASE("mirror symmetry of the symmetric heart") {
  const auto m = heart_metric(HeartParams{0.5, 0.0});
  const auto right = trace_radial_preimage(m, kZero, kOne);
  const auto left = trace_radial_preimage(m, kZero, Complex{-1.0, 0.0});
  REQUIRE(right.samples.size() == left.samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < right.samples.size(); ++i) {
    worst = std::max(worst, std::abs(right.samples[i] + left.samples[i]));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("trace endpoint order") {
  const auto m = heart_metric(HeartParams{0.3, -1.0});
  const auto forward = trace_radial_preimage(m, kZero, kOne);
  const auto backward = trace_radial_preimage(m, kOne, kZero);
  CHECK(std::abs(forward.length - backward.length) < 1e-9);
  CHECK(backward.samples.front() == kOne);
  CHECK(backward.samples.back() == kZero);
}

TEST_CASE("trace errors") {
  const auto m = heart_metric(HeartParams{0.5, 0.0});
  CHECK_THROWS_KIND(trace_radial_preimage(m, kOne, Complex{-1.0, 0.0}), ErrorKind::InvalidConfig);
  CHECK_THROWS_KIND(trace_radial_preimage(m, kZero, kOne, 50), ErrorKind::InvalidConfig);
  CHECK_THROWS_KIND(trace_radial_preimage(m, kZero, Complex{0.3, 0.4}), ErrorKind::InvalidConfig);
}

TEST_CASE("path length") {
  const RoundSphereDensity round;
  const std::vector<Complex> segment{kZero, kOne};
  CHECK(std::abs(path_length(round, segment) - oracle::pi / 2) < 1e-8);
  const std::vector<Complex> single{Complex{0.2, 0.1}};
  CHECK(path_length(round, single) == 0.0);
  CHECK(path_length(round, std::vector<Complex>{}) == 0.0);
  // Great circle through the origin along the imaginary axis, many pieces.
  std::vector<Complex> fine;
  for (int i = 0; i <= 100; ++i) fine.emplace_back(0.0, 3.0 * i / 100.0);
  CHECK(std::abs(path_length(round, fine) - 2.0 * std::atan(3.0)) < 1e-12);
  // Anchored at a cone point where lambda is singular: |z - 1|^{beta - 1}.
  const auto m = heart_metric(HeartParams{0.5, 0.0});
  const std::vector<Complex> to_pole{Complex{0.5, 0.0}, kOne};
  const double expected = radial_length(m, kZero, kOne) - radial_stub_length(CharacterMetric(m), kZero, {0.5, 0.0});
  CHECK(path_length(m, to_pole) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("radial stub") {
  const RoundSphereDensity round;
  CHECK(radial_stub_length(round, kZero, Complex{0.0, 1e-4}) == doctest::Approx(2.0 * std::atan(1e-4)).epsilon(1e-12));
}

TEST_CASE("shooting") {
  SUBCASE("round fixture") {
    const RoundSphereDensity round;
    const auto path = geodesic_between(round, kZero, kOne);
    CHECK(std::abs(path.length - oracle::pi / 2) < 1e-6);
    CHECK(path.endpoint_defect < 1e-6);
    CHECK(max_chord(path.samples) <= path.step_bound);
  }
  SUBCASE("symmetric heart") {
    const auto m = heart_metric(HeartParams{0.5, 0.0});
    const auto path = geodesic_between(m, kZero, kOne);
    CHECK(std::abs(path.length - oracle::pi / 2) < 1e-5);
    CHECK(std::abs(path.length - path_length(m, path.samples)) < 1e-5);
  }
  SUBCASE("heart grid against the closed form") {
    for (const double beta : kBetas) {
      for (const double c : kCs) {
        const auto m = heart_metric(HeartParams{beta, c});
        CHECK(std::abs(geodesic_between(m, kZero, kOne).length - radial_length(m, kZero, kOne)) < 1e-5);
      }
    }
  }
  SUBCASE("errors") {
    const RoundSphereDensity round;
    CHECK_THROWS_KIND(geodesic_between(round, kZero, Complex{1e-5, 0.0}), ErrorKind::InvalidConfig);
    ShootingOptions few;
    few.directions = 2;
    CHECK_THROWS_KIND(geodesic_between(round, kZero, kOne, few), ErrorKind::InvalidConfig);
  }
}

TEST_CASE("spherical angle") {
  const double h = oracle::pi / 2;
  CHECK(spherical_angle(h, h, h) == doctest::Approx(h).epsilon(1e-15));
  double prev = 0.0;
  for (double c = 1.0; c > 1e-5; c /= 2.0) {
    const double theta = spherical_angle(c, 1.0, 1.0);
    // apex angle of an isoceles triangle shrinks with the base; the base
    // angles tend to pi/2
    const double base = spherical_angle(1.0, 1.0, c);
    CHECK(base > prev);
    CHECK(base < h);
    CHECK(theta > 0.0);
    prev = base;
  }
  CHECK(h - prev < 1e-4);
  for (const auto z : oracle::sample_points(200, 41, 1.0, {}, 0.0)) {
    const double b = 0.3 + 1.2 * (z.real() + 1.0);
    const double c = 0.3 + 1.2 * (z.imag() + 1.0);
    const double theta = 0.2 + 1.3 * (z.real() * z.imag() + 1.0);
    const double a = oracle::opposite_side(theta, b, c);
    CHECK(spherical_angle(a, b, c) == doctest::Approx(theta).epsilon(1e-10));
  }
  CHECK_THROWS_KIND(spherical_angle(0.0, 1.0, 1.0), ErrorKind::DegenerateTriangle);
  CHECK_THROWS_KIND(spherical_angle(1.0, 4.0, 1.0), ErrorKind::DegenerateTriangle);
  CHECK_THROWS_KIND(spherical_angle(2.5, 1.0, 1.0), ErrorKind::DegenerateTriangle);
}

TEST_CASE("decomposition report") {
  const auto r = decomposition_report(special_threefb(Complex{0.3, 0.2}, 1.0));
  const auto mirror = decomposition_report(special_threefb(Complex{0.3, -0.2}, 1.0));
  CHECK(std::abs(r.ell1 - mirror.ell1) < 1e-12);
  CHECK(std::abs(r.ell2 - mirror.ell2) < 1e-12);
  CHECK(std::abs(r.L01 - mirror.L01) < 1e-7);
  CHECK(std::abs(r.theta - mirror.theta) < 1e-5);
  for (const double side : {r.ell1, r.ell2, r.L01}) {
    CHECK(side > 0.0);
    CHECK(side < oracle::pi);
  }
  CHECK(r.L01 < r.ell1 + r.ell2);
  CHECK(r.ell1 < r.L01 + r.ell2);
  CHECK(r.ell2 < r.L01 + r.ell1);
  CHECK(r.theta > 0.0);
  CHECK(r.theta < oracle::pi);
  CHECK(r.theta == doctest::Approx(spherical_angle(r.L01, r.ell1, r.ell2)).epsilon(1e-15));
  const double excess = r.theta + spherical_angle(r.ell1, r.ell2, r.L01) + spherical_angle(r.ell2, r.L01, r.ell1) -
                        oracle::pi;
  CHECK(excess > 0.0);
}

TEST_CASE("heart report") {
  for (const double beta : kBetas) {
    for (const double c : kCs) {
      const auto r = heart_report(HeartParams{beta, c});
      CHECK(r.c_log == c);
      CHECK(std::abs(r.L01 + r.L0inf - oracle::pi) < 1e-15);
      CHECK(r.L01 == doctest::Approx(2.0 * std::atan(r.apex_modulus)).epsilon(1e-15));
    }
  }
  const auto sym = heart_report(HeartParams{0.5, 0.0});
  CHECK(sym.apex_modulus == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sym.L01 == doctest::Approx(oracle::pi / 2).epsilon(1e-15));
}

TEST_CASE("serialization") {
  SUBCASE("form round trip") {
    const auto form = make_form({{Complex{0.1, 1.0 / 3.0}, -1.2071067811865475}, {Complex{2.0, 0.0}, 0.7}});
    const auto back = form_from_json(Json::parse(to_json(form).dump()));
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(back.poles()[i].position == form.poles()[i].position);
      CHECK(back.poles()[i].residue == form.poles()[i].residue);
    }
    CHECK_THROWS_KIND(form_from_json(Json::parse(R"({"poles": 3})")), ErrorKind::InvalidConfig);
    CHECK_THROWS_KIND(form_from_json(Json::parse(R"({"poles": [{"re": 0, "im": 0, "residue": 1},
                                                               {"re": 0, "im": 0, "residue": -1}]})")),
                      ErrorKind::DuplicatePole);
  }
  SUBCASE("parameter round trips") {
    const HeartParams hp{0.6, 0.1};
    const auto hb = heart_params_from_json(Json::parse(to_json(hp).dump()));
    CHECK(hb.beta == hp.beta);
    CHECK(hb.c_log == hp.c_log);
    const ThreeFootballParams tp{special_angles(1.0), Complex{0.3, 0.2}, Branch::Plus, 2.0};
    const auto tb = three_football_params_from_json(Json::parse(to_json(tp).dump()));
    CHECK(tb.angles.beta == tp.angles.beta);
    CHECK(tb.p_beta == tp.p_beta);
    CHECK(tb.branch == Branch::Plus);
    CHECK(tb.c_amp == 2.0);
    CHECK_THROWS_KIND(parse_branch("Minus"), ErrorKind::InvalidConfig);
    CHECK_THROWS_KIND(heart_params_from_json(Json::parse(R"({"beta": 0.5})")), ErrorKind::InvalidConfig);
  }
  SUBCASE("report and path keys") {
    const auto j = to_json(TriangleReport{0.1, 0.2, 0.3, 0.4});
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"ell1", "ell2", "L01", "theta"});
    const auto pj = to_json(GeodesicPath{{Complex{0.5, -0.25}}, 1.5, 1e-9, 1e-3});
    CHECK(pj.at("samples").at(0).at(1).get<double>() == -0.25);
    CHECK(pj.at("length").get<double>() == 1.5);
    CHECK(pj.at("endpoint_defect").get<double>() == 1e-9);
    const auto hj = to_json(heart_report(HeartParams{0.5, 0.0}));
    CHECK(hj.at("L01").get<double>() == oracle::pi / 2);
  }
}
