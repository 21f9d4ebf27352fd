#pragma once

#include "hcmu/oneform.hpp"
#include "hcmu/sigma.hpp"

namespace hcmu {

// Constants of the curvature system.  mu < 0 is the curvature minimum, -2mu
// the maximum, Lambda = -1/(3 mu^2) the residue carried by a smooth maximum,
// and A0 fixes the representative of the one-parameter metric family,
// sigma(K) = f0/Lambda + A0.
struct CurvatureParams {
  double mu = -1.0;
  double Lambda = -1.0 / 3.0;
  double A0 = 0.0;

  // coefficients of -K^3/3 + C K + C' = -(1/3)(K - mu)^2 (K + 2mu)
  double C() const { return mu * mu; }
  double Cprime() const { return -2.0 / 3.0 * mu * mu * mu; }

  bool consistent(double rel_tol = 1e-12) const {
    double want = -1.0 / (3.0 * mu * mu);
    return mu < 0.0 && std::fabs(Lambda - want) <= rel_tol * std::fabs(want);
  }
};

// A0 given directly.
CurvatureParams make_params(double Lambda, double A0);

// Normalization through a base point: A0 = sigma(K0) - f0(p0)/Lambda.
// p0 must stay clear of the poles and zeros of the form and K0 must lie
// strictly inside (mu, -2mu).
CurvatureParams make_params(double Lambda, const RationalOneForm& form,
                            Complex p0, double K0);

// The global curvature field K(z) = sigma^{-1}(f0(z)/Lambda + A0).
struct CurvatureField {
  RationalOneForm form;
  CurvatureParams params;

  double sigma_argument(Complex z) const {
    return potential(form, z) / params.Lambda + params.A0;
  }
};

double K(const CurvatureField& field, Complex z);

// Wirtinger derivative K_z = -(1/3)(K - mu)^2 (K + 2mu) rho(z); the real
// gradient is (2 Re K_z, -2 Im K_z).
Complex grad_K(const CurvatureField& field, Complex z);

// w-chart value around infinity (regular there since the residues balance)
double K_wchart(const CurvatureField& field, Complex w);

}  // namespace hcmu
