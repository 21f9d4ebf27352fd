#include "hcmu/curvature.hpp"

#include <cmath>

namespace hcmu {

namespace {

double mu_from_lambda(double Lambda) {
  if (!(Lambda < 0.0)) throw DomainError("Lambda must be negative");
  return -1.0 / std::sqrt(-3.0 * Lambda);
}

}  // namespace

CurvatureParams make_params(double Lambda, double A0) {
  CurvatureParams p;
  p.Lambda = Lambda;
  p.mu = mu_from_lambda(Lambda);
  p.A0 = A0;
  return p;
}

CurvatureParams make_params(double Lambda, const RationalOneForm& form,
                            Complex p0, double K0) {
  CurvatureParams p;
  p.Lambda = Lambda;
  p.mu = mu_from_lambda(Lambda);

  if (!(p.mu < K0 && K0 < -2.0 * p.mu))
    throw BadNormalization("K0 must lie strictly inside (mu, -2mu)");

  const double min_dist = 1e-7 * form.scale();
  if (form.min_pole_distance(p0) <= min_dist)
    throw BadNormalization("base point too close to a pole");
  for (const auto& z : zeros(form)) {
    if (z.at_infinity) continue;
    if (std::abs(p0 - z.location) <= min_dist)
      throw BadNormalization("base point too close to a zero of the form");
  }

  p.A0 = sigma(K0, p.mu) - potential(form, p0) / Lambda;
  return p;
}

double K(const CurvatureField& field, Complex z) {
  return sigma_inverse(field.sigma_argument(z), field.params.mu);
}

Complex grad_K(const CurvatureField& field, Complex z) {
  const double k = K(field, z);
  const double mu = field.params.mu;
  const double s = k - mu;
  return -(1.0 / 3.0) * s * s * (k + 2.0 * mu) * evaluate(field.form, z);
}

double K_wchart(const CurvatureField& field, Complex w) {
  double x = potential_wchart(field.form, w) / field.params.Lambda + field.params.A0;
  return sigma_inverse(x, field.params.mu);
}

}  // namespace hcmu
