#include "hcmu/oneform.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace hcmu {

namespace {

double config_diameter(const std::vector<PoleSpec>& poles) {
  double d = 0.0;
  for (size_t i = 0; i < poles.size(); ++i)
    for (size_t j = i + 1; j < poles.size(); ++j)
      d = std::max(d, std::abs(poles[i].location - poles[j].location));
  return d;
}

}  // namespace

RationalOneForm::RationalOneForm(std::vector<PoleSpec> poles)
    : poles_(std::move(poles)) {
  if (poles_.size() < 2) throw TooFewPoles("a 1-form on the sphere needs at least 2 poles");

  scale_ = config_diameter(poles_);
  if (!(scale_ > 0.0)) throw DuplicatePole("pole locations coincide");

  const double ctol = collision_tol();
  for (size_t i = 0; i < poles_.size(); ++i) {
    for (size_t j = i + 1; j < poles_.size(); ++j) {
      if (std::abs(poles_[i].location - poles_[j].location) <= ctol)
        throw DuplicatePole("pole locations closer than the collision tolerance");
    }
  }

  double sum = 0.0;
  for (const auto& p : poles_) sum += p.residue;
  if (std::fabs(sum) > 1e-12)
    throw ResidueSumNonzero("residues must sum to zero on the sphere");

  // re-symmetrize so the sum is zero to the last bit
  const double shift = sum / static_cast<double>(poles_.size());
  for (auto& p : poles_) p.residue -= shift;

  for (const auto& p : poles_)
    if (p.residue == 0.0) throw ZeroResidue("pole with zero residue");
}

RationalOneForm build_form(std::vector<PoleSpec> poles) {
  return RationalOneForm(std::move(poles));
}

double RationalOneForm::min_pole_distance(Complex z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : poles_) d = std::min(d, std::abs(z - p.location));
  return d;
}

int RationalOneForm::nearest_pole(Complex z) const {
  int best = 0;
  double d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < pole_count(); ++k) {
    double dk = std::abs(z - poles_[k].location);
    if (dk < d) { d = dk; best = k; }
  }
  return best;
}

Complex evaluate(const RationalOneForm& form, Complex z) {
  if (form.min_pole_distance(z) < form.evaluation_tol())
    throw EvaluationAtPole("evaluate: z at a pole");
  Complex s = 0.0;
  for (const auto& p : form.poles()) s += p.residue / (z - p.location);
  return s;
}

double potential(const RationalOneForm& form, Complex z) {
  if (form.min_pole_distance(z) < form.evaluation_tol())
    throw EvaluationAtPole("potential: z at a pole");
  double s = 0.0;
  for (const auto& p : form.poles())
    s += p.residue * 2.0 * std::log(std::abs(z - p.location));
  return s;
}

double potential_at_offset(const RationalOneForm& form, int pole_index,
                           double log_r, double theta) {
  const auto& poles = form.poles();
  const Complex b = poles[pole_index].location;
  const double r = std::exp(log_r);  // may underflow to 0; offset handled below
  const Complex delta = r * Complex(std::cos(theta), std::sin(theta));
  double s = poles[pole_index].residue * 2.0 * log_r;
  for (int j = 0; j < form.pole_count(); ++j) {
    if (j == pole_index) continue;
    s += poles[j].residue * 2.0 * std::log(std::abs(b + delta - poles[j].location));
  }
  return s;
}

Complex eta2_at_offset(const RationalOneForm& form, int pole_index,
                       double log_r, double theta) {
  const auto& poles = form.poles();
  const Complex b = poles[pole_index].location;
  const double r = std::exp(log_r);
  const Complex delta = r * Complex(std::cos(theta), std::sin(theta));
  Complex rest = 0.0;
  for (int j = 0; j < form.pole_count(); ++j) {
    if (j == pole_index) continue;
    rest += poles[j].residue / (b + delta - poles[j].location);
  }
  return poles[pole_index].residue + delta * rest;
}

double potential_wchart(const RationalOneForm& form, Complex w) {
  // f0(1/w) = sum r_k ln|1 - b_k w|^2 since the residues sum to zero
  double s = 0.0;
  for (const auto& p : form.poles())
    s += p.residue * 2.0 * std::log(std::abs(1.0 - p.location * w));
  return s;
}

Complex rho_wchart(const RationalOneForm& form, Complex w) {
  // w-chart coefficient of the form: -(1/w^2) rho(1/w) = -sum r_k b_k/(1 - b_k w)
  Complex s = 0.0;
  for (const auto& p : form.poles())
    s += p.residue * p.location / (1.0 - p.location * w);
  return -s;
}

// ---------------------------------------------------------------------------
// zeros: numerator root finding in centered/rescaled coordinates
// ---------------------------------------------------------------------------

namespace {

// coefficients ascending; poly_div_linear computes p / (z - root) exactly for
// a monic dividend with known root structure (synthetic division)
std::vector<Complex> poly_mul_linear(const std::vector<Complex>& p, Complex root) {
  std::vector<Complex> q(p.size() + 1, 0.0);
  for (size_t i = 0; i < p.size(); ++i) {
    q[i + 1] += p[i];
    q[i] -= root * p[i];
  }
  return q;
}

std::vector<Complex> poly_div_linear(const std::vector<Complex>& p, Complex root) {
  // p assumed divisible by (z - root); returns quotient of degree deg(p)-1
  std::vector<Complex> q(p.size() - 1, 0.0);
  Complex carry = p.back();
  for (int i = static_cast<int>(p.size()) - 2; i >= 0; --i) {
    q[i] = carry;
    carry = p[i] + root * carry;
  }
  return q;
}

Complex poly_eval(const std::vector<Complex>& p, Complex z) {
  Complex v = 0.0;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) v = v * z + p[i];
  return v;
}

std::vector<Complex> poly_derivative(const std::vector<Complex>& p) {
  std::vector<Complex> d(p.size() > 1 ? p.size() - 1 : 1, 0.0);
  for (size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<double>(i) * p[i];
  return d;
}

}  // namespace

std::vector<ZeroRecord> zeros(const RationalOneForm& form) {
  const int m = form.pole_count();
  std::vector<ZeroRecord> out;
  if (m == 2) return out;  // numerator is a nonzero constant, no zero at infinity

  // centered, unit-diameter coordinates
  Complex centroid = 0.0;
  for (const auto& p : form.poles()) centroid += p.location;
  centroid /= static_cast<double>(m);
  const double s = form.scale();

  std::vector<Complex> b(m);
  std::vector<double> r(m);
  for (int k = 0; k < m; ++k) {
    b[k] = (form.poles()[k].location - centroid) / s;
    r[k] = form.poles()[k].residue;
  }

  // order of the zero at infinity from the first nonvanishing moment
  // sum_k r_k b_k^t (t = 0 vanishes identically)
  int ord_inf = m - 2;
  {
    std::vector<Complex> pw(m, 1.0);
    for (int t = 1; t <= m - 2; ++t) {
      Complex mom = 0.0;
      double mag = 0.0;
      for (int k = 0; k < m; ++k) {
        pw[k] *= b[k];
        mom += r[k] * pw[k];
        mag += std::fabs(r[k]) * std::abs(pw[k]);
      }
      if (std::abs(mom) > 1e-11 * mag) { ord_inf = t - 1; break; }
    }
  }

  const int deg = m - 2 - ord_inf;
  if (deg > 0) {
    // numerator N = sum_k r_k prod_{j != k} (z - b_j); coefficients above deg
    // vanish identically (zero residue sum / vanishing moments) and are dropped
    std::vector<Complex> prod = {1.0};
    for (int k = 0; k < m; ++k) prod = poly_mul_linear(prod, b[k]);

    std::vector<Complex> num(m, 0.0);
    for (int k = 0; k < m; ++k) {
      std::vector<Complex> q = poly_div_linear(prod, b[k]);
      for (int i = 0; i < m; ++i) num[i] += r[k] * q[i];
    }
    num.resize(deg + 1);

    double lead = std::abs(num[deg]);
    double coeff_scale = 0.0;
    for (const auto& c : num) coeff_scale = std::max(coeff_scale, std::abs(c));
    if (!(lead > 1e-13 * coeff_scale))
      throw RootFindingFailure("numerator leading coefficient lost to cancellation");

    std::vector<Complex> roots;
    if (deg == 1) {
      roots.push_back(-num[0] / num[1]);
    } else {
      Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
      for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
      for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -num[i] / num[deg];
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
      if (es.info() != Eigen::Success)
        throw RootFindingFailure("companion eigenvalue iteration did not converge");
      for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
    }

    // polish isolated roots with a couple of Newton steps
    const std::vector<Complex> dnum = poly_derivative(num);
    for (auto& z : roots) {
      bool isolated = true;
      for (const auto& other : roots)
        if (&other != &z && std::abs(other - z) < 1e-6) { isolated = false; break; }
      if (!isolated) continue;
      for (int it = 0; it < 3; ++it) {
        Complex f = poly_eval(num, z);
        Complex df = poly_eval(dnum, z);
        if (std::abs(df) < 1e-14 * coeff_scale) break;
        z -= f / df;
      }
    }

    // cluster into multiplicities (unit-diameter coordinates)
    const double cluster_tol = 1e-8;
    std::vector<int> group(roots.size(), -1);
    int ngroups = 0;
    for (size_t i = 0; i < roots.size(); ++i) {
      if (group[i] >= 0) continue;
      group[i] = ngroups;
      for (size_t j = i + 1; j < roots.size(); ++j) {
        if (group[j] < 0 && std::abs(roots[j] - roots[i]) <= cluster_tol)
          group[j] = ngroups;
      }
      ++ngroups;
    }
    for (int g = 0; g < ngroups; ++g) {
      Complex center = 0.0;
      int mult = 0;
      for (size_t i = 0; i < roots.size(); ++i)
        if (group[i] == g) { center += roots[i]; ++mult; }
      center /= static_cast<double>(mult);
      out.push_back({centroid + s * center, mult, false});
    }
    std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& c) {
      if (a.location.real() != c.location.real()) return a.location.real() < c.location.real();
      return a.location.imag() < c.location.imag();
    });
  }

  if (ord_inf > 0) out.push_back({Complex(0, 0), ord_inf, true});
  return out;
}

Complex contour_residue(const RationalOneForm& form, Complex center,
                        double radius, int samples) {
  if (!(radius > 0.0)) throw AmbiguousContour("contour radius must be positive");
  int inside = 0;
  for (const auto& p : form.poles()) {
    double d = std::abs(p.location - center);
    if (d < radius) ++inside;
    else if (d < 2.0 * radius)
      throw AmbiguousContour("another pole within twice the contour radius");
  }
  if (inside != 1)
    throw AmbiguousContour(inside == 0 ? "no pole enclosed" : "multiple poles enclosed");

  // (1/2*pi*i) * integral = (radius/N) * sum rho(c + R e^{i t}) e^{i t};
  // trapezoid on the circle converges spectrally for this integrand
  Complex acc = 0.0;
  for (int j = 0; j < samples; ++j) {
    double t = 2.0 * std::numbers::pi * j / samples;
    Complex e(std::cos(t), std::sin(t));
    acc += evaluate(form, center + radius * e) * e;
  }
  return acc * (radius / static_cast<double>(samples));
}

}  // namespace hcmu
