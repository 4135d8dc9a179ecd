#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "rsm/families.hpp"
#include "rsm/forms.hpp"
#include "test_support.hpp"

using namespace rsm;

namespace {

CharacterForm random_form(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> res(0.1, 2.5);
  std::bernoulli_distribution sign(0.5);
  std::vector<PoleSpec> poles;
  for (int k = 0; k < n; ++k) {
    poles.push_back({Complex{pos(rng), pos(rng)}, sign(rng) ? res(rng) : -res(rng)});
  }
  return make_form(poles);
}

Complex eval_poly(const std::vector<Complex>& coeffs, Complex z) {
  Complex acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace

TEST_CASE("extended complex points") {
  const auto inf = ExtendedComplex::infinity();
  CHECK(inf.is_infinite());
  CHECK(inf == ExtendedComplex::infinity());
  CHECK_FALSE(inf == ExtendedComplex(Complex{1.0, 0.0}));
  CHECK(ExtendedComplex(2.5).value() == Complex{2.5, 0.0});
  CHECK_THROWS_KIND(inf.value(), ErrorKind::InvalidConfig);
  CHECK_THROWS_KIND(ExtendedComplex(Complex{std::nan(""), 0.0}), ErrorKind::InvalidConfig);
}

TEST_CASE("make_form validates its poles") {
  CHECK_THROWS_KIND(make_form({{Complex{0.0, 0.0}, 1.0}}), ErrorKind::InvalidConfig);
  CHECK_THROWS_KIND(make_form({{Complex{0.0, 0.0}, 1.0}, {Complex{1.0, 0.0}, 0.0}}), ErrorKind::ZeroResidue);
  CHECK_THROWS_KIND(make_form({{Complex{0.5, 0.5}, 1.0}, {Complex{0.5, 0.5}, 2.0}}), ErrorKind::DuplicatePole);
  CHECK_THROWS_KIND(make_form({{Complex{0.0, 0.0}, 1.0}, {Complex{1.0, 0.0}, std::nan("")}}),
                    ErrorKind::InvalidConfig);
  const auto form = make_form({{Complex{0.0, 0.0}, 1.0}, {Complex{1.0, 0.0}, -0.5}});
  CHECK(form.size() == 2);
}

TEST_CASE("heart coefficient equals its product form") {
  for (const double beta : {0.3, 0.5, 0.6}) {
    const double gamma = 1.0 - beta;
    const auto form = heart_form(beta);
    const auto pts = oracle::sample_points(100, 7, 3.0, {1.0, -gamma / beta}, 1e-3);
    for (const auto z : pts) {
      const Complex expected = z / ((z - 1.0) * (z + gamma / beta));
      const Complex got = coefficient_at(form, z);
      CHECK(std::abs(got - expected) <= 1e-12 * std::abs(expected));
    }
  }
}

TEST_CASE("evaluation at a pole is an error") {
  const auto form = heart_form(0.5);
  CHECK_THROWS_KIND(coefficient_at(form, Complex{1.0, 0.0}), ErrorKind::EvalAtPole);
  CHECK_THROWS_KIND(coefficient_at(form, Complex{1.0 + 1e-13, 0.0}), ErrorKind::EvalAtPole);
  CHECK_THROWS_KIND(coefficient_derivative_at(form, Complex{-1.0, 0.0}), ErrorKind::EvalAtPole);
  CHECK_THROWS_KIND(potential_at(form, Complex{-1.0, 0.0}), ErrorKind::EvalAtPole);
  CHECK_NOTHROW(coefficient_at(form, Complex{1.0 + 1e-11, 0.0}));
}

TEST_CASE("residue theorem holds for random forms") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto form = random_form(rng, 2 + trial % 5);
    double backwards = 0.0;
    for (auto it = form.poles().rbegin(); it != form.poles().rend(); ++it) backwards += it->residue;
    CHECK(std::abs(residue_at_infinity(form) + backwards) <= 1e-14 * form.size() * 3.0);
  }
}

TEST_CASE("derivative matches central differences") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto form = random_form(rng, 3);
    std::vector<Complex> poles;
    for (const auto& p : form.poles()) poles.push_back(p.position);
    for (const auto z : oracle::sample_points(5, trial, 3.0, poles, 0.2)) {
      const double h = 1e-6;
      const Complex fd = (coefficient_at(form, z + h) - coefficient_at(form, z - h)) / (2.0 * h);
      const Complex exact = coefficient_derivative_at(form, z);
      CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("numerator times pole product reproduces f") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto form = random_form(rng, 2 + trial % 4);
    const auto num = numerator_coefficients(form);
    CHECK(num.size() == form.size());
    std::vector<Complex> poles;
    for (const auto& p : form.poles()) poles.push_back(p.position);
    for (const auto z : oracle::sample_points(5, trial, 3.0, poles, 0.2)) {
      Complex h{1.0, 0.0};
      for (const auto p : poles) h *= z - p;
      const Complex lhs = coefficient_at(form, z) * h;
      CHECK(std::abs(lhs - eval_poly(num, z)) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("finite zeros in closed form") {
  SUBCASE("heart has a simple zero at the origin") {
    const auto zeros = finite_zeros(heart_form(0.6));
    REQUIRE(zeros.size() == 1);
    CHECK(std::abs(zeros[0].position) < 1e-14);
    CHECK(zeros[0].order == 1);
  }
  SUBCASE("zeros are roots of f for random three-pole forms") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
      const auto form = random_form(rng, 3);
      int total = 0;
      for (const auto& z : finite_zeros(form)) {
        total += z.order;
        CHECK(std::abs(eval_poly(numerator_coefficients(form), z.position)) < 1e-9);
      }
      // Degree drops when the residues sum to zero; otherwise two zeros.
      CHECK(total <= 2);
    }
  }
  SUBCASE("double zero is merged") {
    // f = z^2 / ((z-1)(z-2)(z-3)) has residues 1/2, -4, 9/2.
    const auto form = make_form({{Complex{1.0, 0.0}, 0.5}, {Complex{2.0, 0.0}, -4.0}, {Complex{3.0, 0.0}, 4.5}});
    const auto zeros = finite_zeros(form);
    REQUIRE(zeros.size() == 1);
    CHECK(zeros[0].order == 2);
    CHECK(std::abs(zeros[0].position) < 1e-7);
  }
  SUBCASE("opposite residues give a linear numerator") {
    const auto form = make_form({{Complex{-1.0, 0.0}, 1.0}, {Complex{1.0, 0.0}, -1.0}});
    CHECK(finite_zeros(form).empty());
  }
  SUBCASE("four poles are out of scope") {
    const auto form = make_form(
        {{Complex{0.0, 1.0}, 1.0}, {Complex{1.0, 0.0}, 1.0}, {Complex{2.0, 0.0}, 1.0}, {Complex{3.0, 1.0}, 1.0}});
    CHECK_THROWS_KIND(finite_zeros(form), ErrorKind::Unsupported);
  }
}

TEST_CASE("potential against direct summation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto form = random_form(rng, 3);
    std::vector<Complex> poles;
    for (const auto& p : form.poles()) poles.push_back(p.position);
    for (const auto z : oracle::sample_points(5, trial, 3.0, poles, 1e-3)) {
      double direct = 0.0;
      for (const auto& p : form.poles()) direct += p.residue * std::log(std::norm(z - p.position));
      CHECK(std::abs(potential_at(form, z) - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
  // No overflow for extreme distances.
  const auto form = heart_form(0.5);
  CHECK(std::isfinite(potential_at(form, Complex{1e200, 1e200})));
}

TEST_CASE("real-pole forms commute with conjugation") {
  const auto form = make_form({{Complex{-2.0, 0.0}, 0.7}, {Complex{0.5, 0.0}, -1.3}, {Complex{3.0, 0.0}, 2.0}});
  for (const auto z : oracle::sample_points(50, 9, 3.0, {-2.0, 0.5, 3.0}, 1e-2)) {
    CHECK(std::abs(coefficient_at(form, std::conj(z)) - std::conj(coefficient_at(form, z))) < 1e-12);
  }
}

TEST_CASE("pole lookup") {
  const auto form = heart_form(0.5);
  CHECK(pole_index_near(form, Complex{1.0, 1e-12}, 1e-9) == 0);
  CHECK(pole_index_near(form, Complex{-1.0, 0.0}, 1e-9) == 1);
  CHECK(pole_index_near(form, Complex{0.0, 0.0}, 1e-9) == -1);
}
