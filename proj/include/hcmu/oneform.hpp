#pragma once

#include <complex>
#include <vector>

#include "hcmu/errors.hpp"

namespace hcmu {

using Complex = std::complex<double>;

// Simple pole of the character 1-form, residue real and nonzero.
struct PoleSpec {
  Complex location;
  double residue = 0.0;
};

// Zero of the form, possibly at the point at infinity of the sphere.
struct ZeroRecord {
  Complex location;
  int multiplicity = 1;
  bool at_infinity = false;
};

// Rational 1-form  w = sum_k r_k dz/(z - b_k)  on the Riemann sphere.
// All residues are real and sum to zero, so there is no pole at infinity
// and the real part w + conj(w) is exact with a single-valued potential
//   f0(z) = sum_k r_k ln|z - b_k|^2.
class RationalOneForm {
 public:
  explicit RationalOneForm(std::vector<PoleSpec> poles);

  const std::vector<PoleSpec>& poles() const { return poles_; }
  int pole_count() const { return static_cast<int>(poles_.size()); }

  // diameter of the pole configuration; tolerances scale with it
  double scale() const { return scale_; }
  double collision_tol() const { return 1e-9 * scale_; }
  double evaluation_tol() const { return 1e-14 * scale_; }

  double min_pole_distance(Complex z) const;
  int nearest_pole(Complex z) const;

 private:
  std::vector<PoleSpec> poles_;
  double scale_ = 1.0;
};

RationalOneForm build_form(std::vector<PoleSpec> poles);

// rho(z) with w = rho(z) dz in the plane chart
Complex evaluate(const RationalOneForm& form, Complex z);

// f0(z) = sum_k r_k ln|z - b_k|^2, the potential of w + conj(w)
double potential(const RationalOneForm& form, Complex z);

// All zeros of the form, finite ones clustered into multiplicities plus the
// zero at infinity when the numerator degree drops.  Total multiplicity is
// always (#poles - 2).
std::vector<ZeroRecord> zeros(const RationalOneForm& form);

// (1/2*pi*i) * closed contour integral of w over |z - center| = radius by the
// trapezoid rule; the circle must isolate exactly one pole.
Complex contour_residue(const RationalOneForm& form, Complex center,
                        double radius, int samples = 256);

// --- chart helpers used by the metric evaluators ---------------------------

// f0 and eta2(z) = (z - b_k) rho(z) evaluated at z = b_k + e^{log_r} e^{i
// theta}, stable down to log_r values far below log(DBL_MIN).
double potential_at_offset(const RationalOneForm& form, int pole_index,
                           double log_r, double theta);
Complex eta2_at_offset(const RationalOneForm& form, int pole_index,
                       double log_r, double theta);

// w-chart (z = 1/w) evaluations near infinity; both are regular at w = 0
// because the residues sum to zero.
double potential_wchart(const RationalOneForm& form, Complex w);
Complex rho_wchart(const RationalOneForm& form, Complex w);

}  // namespace hcmu
