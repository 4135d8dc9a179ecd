#include "rsm/forms.hpp"

#include <cmath>
#include <sstream>

#include "rsm/error.hpp"

namespace rsm {

namespace {

void guard_pole(const CharacterForm& form, Complex z) {
  if (pole_index_near(form, z, kPoleGuard) >= 0) {
    std::ostringstream msg;
    msg << "evaluation at " << z << " coincides with a pole";
    throw Error(ErrorKind::EvalAtPole, msg.str());
  }
}

std::vector<Complex> multiply_linear(const std::vector<Complex>& poly, Complex root) {
  // poly * (z - root)
  std::vector<Complex> out(poly.size() + 1, Complex{});
  for (std::size_t i = 0; i < poly.size(); ++i) {
    out[i + 1] += poly[i];
    out[i] -= root * poly[i];
  }
  return out;
}

}  // namespace

CharacterForm make_form(std::vector<PoleSpec> poles) {
  if (poles.size() < 2) {
    throw Error(ErrorKind::InvalidConfig, "a character form needs at least two poles");
  }
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const auto& p = poles[i];
    if (!std::isfinite(p.position.real()) || !std::isfinite(p.position.imag()) ||
        !std::isfinite(p.residue)) {
      throw Error(ErrorKind::InvalidConfig, "pole data must be finite");
    }
    if (p.residue == 0.0) {
      std::ostringstream msg;
      msg << "pole " << i << " at " << p.position << " has zero residue";
      throw Error(ErrorKind::ZeroResidue, msg.str());
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (poles[j].position == p.position) {
        std::ostringstream msg;
        msg << "poles " << j << " and " << i << " share position " << p.position;
        throw Error(ErrorKind::DuplicatePole, msg.str());
      }
    }
  }
  return CharacterForm(std::move(poles));
}

int pole_index_near(const CharacterForm& form, Complex z, double tol) {
  const auto& poles = form.poles();
  for (std::size_t k = 0; k < poles.size(); ++k) {
    if (std::abs(z - poles[k].position) <= tol) return static_cast<int>(k);
  }
  return -1;
}

Complex coefficient_at(const CharacterForm& form, Complex z) {
  guard_pole(form, z);
  Complex sum{};
  for (const auto& p : form.poles()) sum += p.residue / (z - p.position);
  return sum;
}

Complex coefficient_derivative_at(const CharacterForm& form, Complex z) {
  guard_pole(form, z);
  Complex sum{};
  for (const auto& p : form.poles()) {
    const Complex d = z - p.position;
    sum -= p.residue / (d * d);
  }
  return sum;
}

double residue_at_infinity(const CharacterForm& form) {
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& p : form.poles()) {
    const double t = sum + p.residue;
    if (std::abs(sum) >= std::abs(p.residue)) {
      comp += (sum - t) + p.residue;
    } else {
      comp += (p.residue - t) + sum;
    }
    sum = t;
  }
  return -(sum + comp);
}

std::vector<Complex> numerator_coefficients(const CharacterForm& form) {
  const auto& poles = form.poles();
  std::vector<Complex> g(poles.size(), Complex{});
  for (std::size_t k = 0; k < poles.size(); ++k) {
    std::vector<Complex> term{Complex{poles[k].residue, 0.0}};
    for (std::size_t j = 0; j < poles.size(); ++j) {
      if (j != k) term = multiply_linear(term, poles[j].position);
    }
    for (std::size_t i = 0; i < term.size(); ++i) g[i] += term[i];
  }
  return g;
}

std::vector<FormZero> finite_zeros(const CharacterForm& form) {
  if (form.size() > 3) {
    throw Error(ErrorKind::Unsupported, "closed-form zeros need at most three poles");
  }
  auto g = numerator_coefficients(form);
  double scale = 0.0;
  for (const auto& c : g) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw Error(ErrorKind::DegenerateForm, "numerator vanishes identically");

  // Trim leading coefficients that cancel to rounding level.
  const double negligible = 1e-14 * scale;
  while (g.size() > 1 && std::abs(g.back()) <= negligible) g.pop_back();

  std::vector<FormZero> zeros;
  if (g.size() == 2) {
    zeros.push_back({-g[0] / g[1], 1});
  } else if (g.size() == 3) {
    const Complex a = g[2];
    const Complex b = g[1];
    const Complex c = g[0];
    const Complex root_disc = std::sqrt(b * b - 4.0 * a * c);
    // Pick the sign that avoids cancellation in -b -+ sqrt.
    const Complex q = (std::real(std::conj(b) * root_disc) >= 0.0) ? -0.5 * (b + root_disc)
                                                                    : -0.5 * (b - root_disc);
    if (std::abs(q) == 0.0) {
      zeros.push_back({Complex{}, 2});
    } else {
      const Complex z1 = q / a;
      const Complex z2 = c / q;
      if (std::abs(z1 - z2) <= 1e-10 * std::max(1.0, std::abs(z1))) {
        zeros.push_back({0.5 * (z1 + z2), 2});
      } else {
        zeros.push_back({z1, 1});
        zeros.push_back({z2, 1});
      }
    }
  }
  return zeros;
}

double potential_at(const CharacterForm& form, Complex z) {
  guard_pole(form, z);
  double sum = 0.0;
  for (const auto& p : form.poles()) {
    // std::abs is hypot-based, so the log never sees an overflowed square.
    sum += 2.0 * p.residue * std::log(std::abs(z - p.position));
  }
  return sum;
}

}  // namespace rsm
