#pragma once

#include <cstdint>
#include <vector>

#include "hcmu/metric.hpp"

namespace hcmu {

// ---------------------------------------------------------------------------
// Finite-difference audit of -Delta phi = K e^{2 phi}
// ---------------------------------------------------------------------------

struct PdeCheckOptions {
  // Near a saddle the conformal factor vanishes like r^2 while phi keeps a
  // genuine log, so the relative stencil residual grows like h^2/r^6; the
  // default band keeps the 5-point rule inside its second-order regime.
  int n_points = 200;
  double min_dist = 0.6;   // from every pole and zero
  double max_dist = 1.0;   // from the nearest singular point
  double h = 1e-3;
  std::uint64_t seed = 0x9e3779b9u;
  double tol = 1e-4;            // max relative residual at spacing h
  double order_lo = 1.8, order_hi = 2.2;
};

struct PdeReport {
  double max_residual_h = 0.0;
  double max_residual_h2 = 0.0;
  double order = 0.0;
  std::vector<double> residuals;  // per point, at spacing h
  bool residual_ok = false;
  bool order_ok = false;
  bool pass = false;
};

PdeReport check_curvature_pde(const MetricField& metric, const PdeCheckOptions& opt);

// ---------------------------------------------------------------------------
// Gradient equation dK = -(1/3)(K-mu)^2(K+2mu)(w + conj w)
// ---------------------------------------------------------------------------

struct GradientCheckOptions {
  int n_points = 50;
  double min_dist = 0.2;
  double max_dist = 0.5;
  double h = 1e-5;
  std::uint64_t seed = 0x51ed270bu;
  double tol = 1e-6;
};

struct GradientReport {
  double max_rel_error = 0.0;
  std::vector<double> errors;
  bool pass = false;
};

GradientReport check_gradient(const MetricField& metric, const GradientCheckOptions& opt);

// ---------------------------------------------------------------------------
// Cone-angle estimation from circumference growth: ln L(r) ~ alpha ln r
// ---------------------------------------------------------------------------

struct ConeEstimate {
  double alpha = 0.0;                // least-squares slope over all radii
  std::vector<double> pair_slopes;   // consecutive two-point slopes
};

// center given as a singular location; at_infinity switches to the w-chart
ConeEstimate estimate_cone_angle(const MetricField& metric, Complex center,
                                 bool at_infinity, const std::vector<double>& radii,
                                 int theta_samples = 256);

// ---------------------------------------------------------------------------
// Cusp asymptotics
// ---------------------------------------------------------------------------

struct CuspCheckOptions {
  std::vector<double> radii = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  double s_tol = 0.05;      // |(mean phi + ln r)/ln r| at the smallest radius
  double t_agreement = 0.05;  // relative agreement of (K-mu) ln r at the two smallest
  double t_floor = 0.01;      // |limit| must stay above this
  int theta_samples = 128;
};

struct CuspReport {
  std::vector<double> radii;
  std::vector<double> s;  // (mean phi + ln r)/ln r
  std::vector<double> t;  // (K(center + r) - mu) ln r
  bool s_small = false;
  bool s_decreasing = false;
  bool t_agree = false;
  bool t_nonzero = false;
  bool pass = false;
};

CuspReport check_cusp(const MetricField& metric, Complex center, const CuspCheckOptions& opt);

// ---------------------------------------------------------------------------
// Energy integrals C_n = integral of K^n dg over the sphere
// ---------------------------------------------------------------------------

struct QuadratureOptions {
  double R_split = 0.0;        // 0: derive from the pole layout
  double rel_tol = 2e-5;       // bulk adaptive tolerance (relative)
  int theta_samples = 96;      // angular nodes in the pole disks
  long max_evals = 60'000'000;
  int max_depth = 22;
};

double integrate_Cn(const MetricField& metric, int n, const QuadratureOptions& opt = {});

// closed form (2/(3(n+1))) mu^{n-1} [(-2)^{n+1} - 1] alpha_max
double closed_form_Cn(const CurvatureParams& params, double alpha_max, int n);

// ---------------------------------------------------------------------------
// Full audit
// ---------------------------------------------------------------------------

struct EnergyRow {
  int n = 0;
  double quadrature = 0.0;
  double closed_form = 0.0;
  double rel_error = 0.0;
  bool pass = false;
};

struct ConeRow {
  SingularityRecord record;
  double alpha_estimated = 0.0;
  double alpha_expected = 0.0;
  double rel_error = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  PdeCheckOptions pde;
  GradientCheckOptions gradient;
  CuspCheckOptions cusp;
  QuadratureOptions quadrature;
  double cone_tol = 0.01;
  double energy_tol = 0.01;    // n <= 2
  double energy_tol_n3 = 0.03;
  int energy_n_max = 3;
};

struct VerificationReport {
  PdeReport pde;
  GradientReport gradient;
  std::vector<ConeRow> cones;
  std::vector<CuspReport> cusps;
  std::vector<EnergyRow> energy;
  bool pass = false;
};

VerificationReport run_verification(const MetricField& metric, const VerifyOptions& opt = {});

}  // namespace hcmu
