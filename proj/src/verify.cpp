#include "hcmu/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>

#include "hcmu/parallel.hpp"

namespace hcmu {

namespace {

constexpr double kPi = std::numbers::pi;

double pow_int(double x, int n) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= x;
  return v;
}

// quintic smoothstep, C^2 at both ends
double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

// 16-point Gauss-Legendre rule on [-1, 1]
constexpr int kGlN = 16;
constexpr double kGlNode[kGlN] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGlWeight[kGlN] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

// 4-point rule for the adaptive bulk cells
constexpr double kGl4Node[4] = {-0.8611363115940526, -0.3399810435848563,
                                0.3399810435848563, 0.8611363115940526};
constexpr double kGl4Weight[4] = {0.3478548451374538, 0.6521451548625461,
                                  0.6521451548625461, 0.3478548451374538};

// ---------------------------------------------------------------------------
// singular set helpers
// ---------------------------------------------------------------------------

std::vector<Complex> finite_singular_points(const RationalOneForm& form) {
  std::vector<Complex> pts;
  for (const auto& p : form.poles()) pts.push_back(p.location);
  for (const auto& z : zeros(form))
    if (!z.at_infinity) pts.push_back(z.location);
  return pts;
}

double min_distance(const std::vector<Complex>& pts, Complex z) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) d = std::min(d, std::abs(z - p));
  return d;
}

std::vector<Complex> sample_annulus(const std::vector<Complex>& singular,
                                    int n_points, double min_dist, double max_dist,
                                    std::uint64_t seed) {
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& p : singular) {
    xlo = std::min(xlo, p.real());
    xhi = std::max(xhi, p.real());
    ylo = std::min(ylo, p.imag());
    yhi = std::max(yhi, p.imag());
  }
  xlo -= max_dist; xhi += max_dist; ylo -= max_dist; yhi += max_dist;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(xlo, xhi), uy(ylo, yhi);
  std::vector<Complex> pts;
  for (long tries = 0; static_cast<int>(pts.size()) < n_points; ++tries) {
    if (tries > 4'000'000)
      throw Error("point sampling failed: empty admissible region?");
    Complex z(ux(rng), uy(rng));
    double d = min_distance(singular, z);
    if (d >= min_dist && d <= max_dist) pts.push_back(z);
  }
  return pts;
}

}  // namespace

// ---------------------------------------------------------------------------
// curvature PDE:  -Delta phi = K e^{2 phi}
// ---------------------------------------------------------------------------

PdeReport check_curvature_pde(const MetricField& metric, const PdeCheckOptions& opt) {
  if (opt.min_dist < 10.0 * opt.h)
    throw StencilTooClose("pde check: points must stay >= 10 h away from singular points");

  auto singular = finite_singular_points(metric.form());
  auto pts = sample_annulus(singular, opt.n_points, opt.min_dist, opt.max_dist, opt.seed);

  auto residual_at = [&](Complex z, double h) {
    double center = phi(metric, z);
    double lap = (phi(metric, z + Complex(h, 0)) + phi(metric, z - Complex(h, 0)) +
                  phi(metric, z + Complex(0, h)) + phi(metric, z - Complex(0, h)) -
                  4.0 * center) / (h * h);
    double e2p = std::exp(2.0 * center);
    double k = K(metric.field, z);
    return std::fabs(lap + k * e2p) / e2p;
  };

  PdeReport rep;
  rep.residuals.resize(pts.size());
  double max_h = 0.0, max_h2 = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    rep.residuals[i] = residual_at(pts[i], opt.h);
    max_h = std::max(max_h, rep.residuals[i]);
    max_h2 = std::max(max_h2, residual_at(pts[i], opt.h / 2));
  }

  rep.max_residual_h = max_h;
  rep.max_residual_h2 = max_h2;
  rep.order = std::log2(max_h / max_h2);
  rep.residual_ok = max_h <= opt.tol;
  rep.order_ok = rep.order >= opt.order_lo && rep.order <= opt.order_hi;
  rep.pass = rep.residual_ok && rep.order_ok;
  return rep;
}

// ---------------------------------------------------------------------------
// gradient equation
// ---------------------------------------------------------------------------

GradientReport check_gradient(const MetricField& metric, const GradientCheckOptions& opt) {
  if (opt.min_dist < 10.0 * opt.h)
    throw StencilTooClose("gradient check: points too close to the singular set");

  auto singular = finite_singular_points(metric.form());
  auto pts = sample_annulus(singular, opt.n_points, opt.min_dist, opt.max_dist, opt.seed);

  std::vector<double> ax(pts.size()), ay(pts.size());
  double g_scale = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    Complex kz = grad_K(metric.field, pts[i]);
    ax[i] = 2.0 * kz.real();
    ay[i] = -2.0 * kz.imag();
    g_scale = std::max(g_scale, std::hypot(ax[i], ay[i]));
  }

  auto central = [&](Complex z, double h, double& gx, double& gy) {
    gx = (K(metric.field, z + Complex(h, 0)) - K(metric.field, z - Complex(h, 0))) / (2 * h);
    gy = (K(metric.field, z + Complex(0, h)) - K(metric.field, z - Complex(0, h))) / (2 * h);
  };

  GradientReport rep;
  rep.errors.resize(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    double gx1, gy1, gx2, gy2;
    central(pts[i], opt.h, gx1, gy1);
    central(pts[i], opt.h / 2, gx2, gy2);
    // second-order Richardson extrapolation of the central differences
    double gx = (4.0 * gx2 - gx1) / 3.0;
    double gy = (4.0 * gy2 - gy1) / 3.0;
    double denom = std::max(std::hypot(ax[i], ay[i]), 1e-10 * g_scale);
    rep.errors[i] = std::hypot(gx - ax[i], gy - ay[i]) / denom;
    rep.max_rel_error = std::max(rep.max_rel_error, rep.errors[i]);
  }
  rep.pass = rep.max_rel_error <= opt.tol;
  return rep;
}

// ---------------------------------------------------------------------------
// cone angles from circumference growth
// ---------------------------------------------------------------------------

ConeEstimate estimate_cone_angle(const MetricField& metric, Complex center,
                                 bool at_infinity, const std::vector<double>& radii,
                                 int theta_samples) {
  if (radii.size() < 2) throw Error("cone estimate needs at least two radii");
  for (size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] < radii[i - 1])) throw Error("cone radii must decrease");

  if (!at_infinity) {
    int k = metric.form().nearest_pole(center);
    if (std::abs(metric.form().poles()[k].location - center) <=
            metric.form().collision_tol() &&
        metric.form().poles()[k].residue > 0.0)
      throw DomainError("cone estimate: center is a cusp, not a conical point");
  }

  // isolation: nothing else singular inside the largest circle
  std::vector<Complex> others;
  if (!at_infinity) {
    for (const auto& p : finite_singular_points(metric.form())) {
      if (std::abs(p - center) > metric.form().collision_tol()) others.push_back(p);
    }
    for (const auto& p : others)
      if (std::abs(p - center) <= radii.front())
        throw RadiusTooLarge("another singular point inside the largest circle");
  } else {
    for (const auto& p : metric.form().poles())
      if (std::abs(p.location) > metric.form().collision_tol())
        others.push_back(1.0 / p.location);
    for (const auto& z : zeros(metric.form()))
      if (!z.at_infinity && std::abs(z.location) > metric.form().collision_tol())
        others.push_back(1.0 / z.location);
    for (const auto& p : others)
      if (std::abs(p) <= radii.front())
        throw RadiusTooLarge("another singular point inside the largest w-chart circle");
  }

  std::vector<double> lnL(radii.size());
  for (size_t i = 0; i < radii.size(); ++i) {
    double r = radii[i];
    double acc = 0.0;
    for (int j = 0; j < theta_samples; ++j) {
      double th = 2.0 * kPi * j / theta_samples;
      Complex z = center + r * Complex(std::cos(th), std::sin(th));
      double e2p = at_infinity ? conformal_factor_wchart(metric, z)
                               : conformal_factor(metric, z);
      acc += std::sqrt(e2p);
    }
    lnL[i] = std::log(acc * r * 2.0 * kPi / theta_samples);
  }

  ConeEstimate est;
  // least squares of ln L against ln r
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < radii.size(); ++i) {
    double x = std::log(radii[i]);
    sx += x; sy += lnL[i]; sxx += x * x; sxy += x * lnL[i];
  }
  double n = static_cast<double>(radii.size());
  est.alpha = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (size_t i = 0; i + 1 < radii.size(); ++i) {
    est.pair_slopes.push_back((lnL[i] - lnL[i + 1]) /
                              (std::log(radii[i]) - std::log(radii[i + 1])));
  }
  return est;
}

// ---------------------------------------------------------------------------
// cusp asymptotics
// ---------------------------------------------------------------------------

CuspReport check_cusp(const MetricField& metric, Complex center, const CuspCheckOptions& opt) {
  int pole = metric.form().nearest_pole(center);
  if (std::abs(metric.form().poles()[pole].location - center) > metric.form().collision_tol() ||
      !(metric.form().poles()[pole].residue > 0.0))
    throw NotACusp("center is not a cusp pole of the form");

  double iso = std::numeric_limits<double>::infinity();
  for (const auto& p : finite_singular_points(metric.form()))
    if (std::abs(p - center) > metric.form().collision_tol())
      iso = std::min(iso, std::abs(p - center));

  CuspReport rep;
  for (double r : opt.radii) {
    if (!(r < 0.9 * iso)) continue;  // keep inside the isolation disk
    rep.radii.push_back(r);
  }
  if (rep.radii.size() < 3) throw RadiusTooLarge("cusp radii do not fit the isolation disk");

  // everything below runs through the pole-offset evaluators, which stay
  // exact at radii far beyond what z = center + r can represent
  const double mu = metric.params().mu;
  const double lam = metric.params().Lambda;
  const double a0 = metric.params().A0;
  auto k_at = [&](double log_r, double th) {
    return sigma_inverse(potential_at_offset(metric.form(), pole, log_r, th) / lam + a0, mu);
  };
  for (double r : rep.radii) {
    const double log_r = std::log(r);
    // phi = (1/2) ln[(4/3) s^2 (-2mu-K) |eta2|^2] - ln r, so the mean of
    // (phi + ln r) is the angular mean of the bracket
    double mean_bracket = 0.0;
    for (int j = 0; j < opt.theta_samples; ++j) {
      double th = 2.0 * kPi * j / opt.theta_samples;
      double kk = k_at(log_r, th);
      double s = kk - mu;
      double eta2 = std::norm(eta2_at_offset(metric.form(), pole, log_r, th));
      mean_bracket += 0.5 * std::log((4.0 / 3.0) * s * s * (-2.0 * mu - kk) * eta2);
    }
    mean_bracket /= opt.theta_samples;
    rep.s.push_back(mean_bracket / log_r);
    rep.t.push_back((k_at(log_r, 0.0) - mu) * log_r);
  }

  size_t last = rep.radii.size() - 1;
  rep.s_small = std::fabs(rep.s[last]) <= opt.s_tol;
  rep.s_decreasing = true;
  for (size_t i = 0; i + 1 < rep.s.size(); ++i)
    if (!(std::fabs(rep.s[i + 1]) < std::fabs(rep.s[i]))) rep.s_decreasing = false;
  rep.t_agree = std::fabs(rep.t[last] - rep.t[last - 1]) <= opt.t_agreement * std::fabs(rep.t[last]);
  rep.t_nonzero = std::fabs(rep.t[last]) >= opt.t_floor;
  rep.pass = rep.s_small && rep.s_decreasing && rep.t_agree && rep.t_nonzero;
  return rep;
}

// ---------------------------------------------------------------------------
// energy quadrature
// ---------------------------------------------------------------------------

namespace {

struct DiskSpec {
  int pole = 0;
  double R = 0.0;
  bool cusp = false;
  double alpha = 1.0;  // residue / Lambda for maxima
};

// bump weight around a pole: 1 inside R/2, 0 outside R
double psi_weight(double r, double R) {
  if (r <= 0.5 * R) return 1.0;
  if (r >= R) return 0.0;
  return smoothstep((R - r) / (0.5 * R));
}

// chart blend: 1 inside R1, 0 outside R2 = 2 R1
double chi_weight(double rho, double R1, double R2) {
  if (rho <= R1) return 1.0;
  if (rho >= R2) return 0.0;
  return smoothstep((R2 - rho) / (R2 - R1));
}

struct QuadEngine {
  const MetricField& m;
  int n = 0;
  QuadratureOptions opt;

  std::vector<DiskSpec> disks;
  double R1 = 1.0, R2 = 2.0;
  mutable std::atomic<long> evals{0};

  explicit QuadEngine(const MetricField& metric, int order, const QuadratureOptions& o)
      : m(metric), n(order), opt(o) {
    const auto& poles = m.form().poles();
    double cover = 0.5;
    for (int k = 0; k < m.form().pole_count(); ++k) {
      double sep = std::numeric_limits<double>::infinity();
      for (int j = 0; j < m.form().pole_count(); ++j)
        if (j != k) sep = std::min(sep, std::abs(poles[k].location - poles[j].location));
      DiskSpec d;
      d.pole = k;
      d.R = sep / 3.0;
      d.cusp = poles[k].residue > 0.0;
      d.alpha = d.cusp ? 1.0 : poles[k].residue / m.params().Lambda;
      disks.push_back(d);
      cover = std::max(cover, 1.05 * (std::abs(poles[k].location) + d.R));
    }
    R1 = std::max(opt.R_split, cover);
    R2 = 2.0 * R1;
  }

  void charge(long k) const {
    if ((evals += k) > opt.max_evals)
      throw QuadratureBudgetExceeded("energy quadrature exceeded its evaluation budget");
  }

  // r^2 * angular integral of K^n e^{2 phi} at distance e^{log_r} from pole k,
  // evaluated through the offset forms so arbitrarily deep radii stay exact
  double ring_value(int k, double log_r) const {
    const double mu = m.params().mu;
    const double lam = m.params().Lambda;
    const double a0 = m.params().A0;
    charge(opt.theta_samples);
    double acc = 0.0;
    for (int j = 0; j < opt.theta_samples; ++j) {
      double th = 2.0 * kPi * j / opt.theta_samples;
      double x = potential_at_offset(m.form(), k, log_r, th) / lam + a0;
      double kk = sigma_inverse(x, mu);
      double s = kk - mu;
      double eta2 = std::norm(eta2_at_offset(m.form(), k, log_r, th));
      acc += pow_int(kk, n) * (4.0 / 3.0) * s * s * (-2.0 * mu - kk) * eta2;
    }
    return acc * (2.0 * kPi / opt.theta_samples);
  }

  // disk around a cusp pole: substitute xi = 1/(beta - ln(r/R)); the
  // integrand extends continuously to xi = 0 (r = 0), so fixed panels reach
  // the puncture without any cut radius or tail model
  double disk_cusp(const DiskSpec& d) const {
    const double lnR = std::log(d.R);
    double x_ring = 0.0;
    for (int j = 0; j < 8; ++j)
      x_ring += potential_at_offset(m.form(), d.pole, lnR, 2.0 * kPi * j / 8);
    x_ring = (x_ring / 8) / m.params().Lambda + m.params().A0;
    const double a = 2.0 * m.form().poles()[d.pole].residue / m.params().Lambda;
    const double beta = std::max(1.0, x_ring / std::fabs(a));

    const double xi_max = 1.0 / beta;
    double total = 0.0;
    double hi = xi_max;
    for (int panel = 0; panel < 7; ++panel) {
      double lo = panel == 6 ? 0.0 : hi / 4.0;
      double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (int i = 0; i < kGlN; ++i) {
        double xi = mid + half * kGlNode[i];
        double ur = beta - 1.0 / xi;  // ln(r/R) <= 0
        double log_r = lnR + ur;
        double g = ring_value(d.pole, log_r) * psi_weight(std::exp(log_r), d.R);
        total += kGlWeight[i] * half * g / (xi * xi);
      }
      hi = lo;
    }
    return total;
  }

  // disk around a maximum: r = R tau^{1/(2 alpha)} flattens the r^{2a-1}
  // density so the panels resolve the cone cleanly
  double disk_max(const DiskSpec& d) const {
    const double lnR = std::log(d.R);
    double total = 0.0;
    double hi = 1.0;
    for (int panel = 0; panel < 7; ++panel) {
      double lo = panel == 6 ? 0.0 : hi / 4.0;
      double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (int i = 0; i < kGlN; ++i) {
        double tau = mid + half * kGlNode[i];
        double log_r = lnR + std::log(tau) / (2.0 * d.alpha);
        double g = ring_value(d.pole, log_r) * psi_weight(std::exp(log_r), d.R);
        total += kGlWeight[i] * half * g / (2.0 * d.alpha * tau);
      }
      hi = lo;
    }
    return total;
  }

  // bulk integrand in the plane chart (zero where some bump owns the point)
  double plane_value(Complex z) const {
    double wgt = chi_weight(std::abs(z), R1, R2);
    if (wgt == 0.0) return 0.0;
    for (const auto& d : disks) {
      double r = std::abs(z - m.form().poles()[d.pole].location);
      if (r >= d.R) continue;
      double p = psi_weight(r, d.R);
      if (p >= 1.0) return 0.0;
      wgt *= 1.0 - p;
    }
    if (wgt == 0.0) return 0.0;
    const double mu = m.params().mu;
    double x = potential(m.form(), z) / m.params().Lambda + m.params().A0;
    double kk = sigma_inverse(x, mu);
    double s = kk - mu;
    double e2p = (4.0 / 3.0) * s * s * (-2.0 * mu - kk) * std::norm(evaluate(m.form(), z));
    return wgt * pow_int(kk, n) * e2p;
  }

  // bulk integrand in the w-chart; regular at w = 0
  double wchart_value(Complex w) const {
    double aw = std::abs(w);
    double wgt = aw == 0.0 ? 1.0 : 1.0 - chi_weight(1.0 / aw, R1, R2);
    if (wgt == 0.0) return 0.0;
    const double mu = m.params().mu;
    double x = potential_wchart(m.form(), w) / m.params().Lambda + m.params().A0;
    double kk = sigma_inverse(x, mu);
    double s = kk - mu;
    double e2p = (4.0 / 3.0) * s * s * (-2.0 * mu - kk) * std::norm(rho_wchart(m.form(), w));
    return wgt * pow_int(kk, n) * e2p;
  }

  template <class F>
  double cell_rule(const F& f, double x0, double y0, double x1, double y1) const {
    charge(16);
    double hx = 0.5 * (x1 - x0), hy = 0.5 * (y1 - y0);
    double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    double acc = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        acc += kGl4Weight[i] * kGl4Weight[j] *
               f(Complex(cx + hx * kGl4Node[i], cy + hy * kGl4Node[j]));
    return acc * hx * hy;
  }

  // skip tests: cells buried in a bump core or outside the chart blend
  bool plane_cell_dead(double x0, double y0, double x1, double y1) const {
    double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    double half_diag = 0.5 * std::hypot(x1 - x0, y1 - y0);
    if (std::hypot(cx, cy) - half_diag >= R2) return true;
    for (const auto& d : disks) {
      Complex b = m.form().poles()[d.pole].location;
      if (std::hypot(cx - b.real(), cy - b.imag()) + half_diag <= 0.5 * d.R) return true;
    }
    return false;
  }

  bool wchart_cell_dead(double x0, double y0, double x1, double y1) const {
    double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    double half_diag = 0.5 * std::hypot(x1 - x0, y1 - y0);
    return std::hypot(cx, cy) - half_diag >= 1.0 / R1;
  }

  template <class F, class Dead>
  double adaptive(const F& f, const Dead& dead, double x0, double y0, double x1,
                  double y1, double tol, int depth) const {
    if (dead(x0, y0, x1, y1)) return 0.0;
    double whole = cell_rule(f, x0, y0, x1, y1);
    double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
    double parts = cell_rule(f, x0, y0, xm, ym) + cell_rule(f, xm, y0, x1, ym) +
                   cell_rule(f, x0, ym, xm, y1) + cell_rule(f, xm, ym, x1, y1);
    if (std::fabs(parts - whole) <= tol || depth >= opt.max_depth) return parts;
    return adaptive(f, dead, x0, y0, xm, ym, tol / 4, depth + 1) +
           adaptive(f, dead, xm, y0, x1, ym, tol / 4, depth + 1) +
           adaptive(f, dead, x0, ym, xm, y1, tol / 4, depth + 1) +
           adaptive(f, dead, xm, ym, x1, y1, tol / 4, depth + 1);
  }

  double integrate() const {
    double disk_sum = 0.0;
    for (const auto& d : disks) disk_sum += d.cusp ? disk_cusp(d) : disk_max(d);

    auto plane = [this](Complex z) { return plane_value(z); };
    auto planedead = [this](double a, double b, double c, double d) {
      return plane_cell_dead(a, b, c, d);
    };
    auto wch = [this](Complex w) { return wchart_value(w); };
    auto wdead = [this](double a, double b, double c, double d) {
      return wchart_cell_dead(a, b, c, d);
    };

    // coarse scale for the absolute tolerance
    const int roots = 8;
    double coarse = 0.0;
    for (int i = 0; i < roots; ++i)
      for (int j = 0; j < roots; ++j) {
        double x0 = -R2 + 2.0 * R2 * i / roots, x1 = -R2 + 2.0 * R2 * (i + 1) / roots;
        double y0 = -R2 + 2.0 * R2 * j / roots, y1 = -R2 + 2.0 * R2 * (j + 1) / roots;
        if (!plane_cell_dead(x0, y0, x1, y1)) coarse += cell_rule(plane, x0, y0, x1, y1);
      }
    double scale = std::max(1.0, std::fabs(disk_sum) + std::fabs(coarse));
    double tol_root = opt.rel_tol * scale / (roots * roots + 16);

    double plane_sum = par::deterministic_sum(roots * roots, [&](int c) {
      int i = c / roots, j = c % roots;
      double x0 = -R2 + 2.0 * R2 * i / roots, x1 = -R2 + 2.0 * R2 * (i + 1) / roots;
      double y0 = -R2 + 2.0 * R2 * j / roots, y1 = -R2 + 2.0 * R2 * (j + 1) / roots;
      return adaptive(plane, planedead, x0, y0, x1, y1, tol_root, 0);
    });

    const double W = 1.0 / R1;
    double w_sum = par::deterministic_sum(16, [&](int c) {
      int i = c / 4, j = c % 4;
      double x0 = -W + 2.0 * W * i / 4, x1 = -W + 2.0 * W * (i + 1) / 4;
      double y0 = -W + 2.0 * W * j / 4, y1 = -W + 2.0 * W * (j + 1) / 4;
      return adaptive(wch, wdead, x0, y0, x1, y1, tol_root, 0);
    });

    return disk_sum + plane_sum + w_sum;
  }
};

}  // namespace

double integrate_Cn(const MetricField& metric, int n, const QuadratureOptions& opt) {
  if (n < 0 || n > 3) throw DomainError("integrate_Cn: n must be in 0..3");
  QuadEngine engine(metric, n, opt);
  return engine.integrate();
}

double closed_form_Cn(const CurvatureParams& params, double alpha_max, int n) {
  const double mu = params.mu;
  return 2.0 / (3.0 * (n + 1)) * std::pow(mu, n - 1) *
         (std::pow(-2.0, n + 1) - 1.0) * alpha_max;
}

// ---------------------------------------------------------------------------
// full audit
// ---------------------------------------------------------------------------

VerificationReport run_verification(const MetricField& metric, const VerifyOptions& opt) {
  VerificationReport rep;
  rep.pde = check_curvature_pde(metric, opt.pde);
  rep.gradient = check_gradient(metric, opt.gradient);

  auto records = classify(metric.form(), metric.params());
  auto singular = finite_singular_points(metric.form());

  for (const auto& rec : records) {
    if (rec.kind == SingularityKind::Cusp) {
      // shrink the probe radii for tightly packed plans; the defaults assume
      // unit-scale isolation
      double iso = std::numeric_limits<double>::infinity();
      for (const auto& p : singular)
        if (std::abs(p - rec.location) > metric.form().collision_tol())
          iso = std::min(iso, std::abs(p - rec.location));
      CuspCheckOptions copt = opt.cusp;
      if (!copt.radii.empty() && copt.radii.front() >= 0.9 * iso) {
        double scale = 0.5 * iso / copt.radii.front();
        for (double& r : copt.radii) r *= scale;
      }
      rep.cusps.push_back(check_cusp(metric, rec.location, copt));
      continue;
    }
    // isolation radius in the relevant chart
    double iso = std::numeric_limits<double>::infinity();
    if (rec.at_infinity) {
      for (const auto& p : metric.form().poles())
        if (std::abs(p.location) > metric.form().collision_tol())
          iso = std::min(iso, 1.0 / std::abs(p.location));
      for (const auto& z : zeros(metric.form()))
        if (!z.at_infinity && std::abs(z.location) > metric.form().collision_tol())
          iso = std::min(iso, 1.0 / std::abs(z.location));
    } else {
      for (const auto& p : singular)
        if (std::abs(p - rec.location) > metric.form().collision_tol())
          iso = std::min(iso, std::abs(p - rec.location));
    }
    // keep the largest circle at ~0.03 iso: the circumference picks up
    // O(r^{2 alpha}) corrections that would bias the fitted slope
    std::vector<double> radii;
    for (int i = 0; i <= 12; ++i) radii.push_back(iso * std::pow(10.0, -1.5 - 0.25 * i));

    ConeRow row;
    row.record = rec;
    row.alpha_expected = *rec.alpha;
    auto est = estimate_cone_angle(metric, rec.location, rec.at_infinity, radii);
    row.alpha_estimated = est.alpha;
    row.rel_error = std::fabs(est.alpha - row.alpha_expected) / row.alpha_expected;
    row.pass = row.rel_error <= opt.cone_tol;
    rep.cones.push_back(row);
  }

  const double amax = alpha_max_of(records);
  for (int n = 0; n <= opt.energy_n_max; ++n) {
    EnergyRow row;
    row.n = n;
    row.quadrature = integrate_Cn(metric, n, opt.quadrature);
    row.closed_form = closed_form_Cn(metric.params(), amax, n);
    row.rel_error = std::fabs(row.quadrature - row.closed_form) / std::fabs(row.closed_form);
    row.pass = row.rel_error <= (n == 3 ? opt.energy_tol_n3 : opt.energy_tol);
    rep.energy.push_back(row);
  }

  rep.pass = rep.pde.pass && rep.gradient.pass;
  for (const auto& c : rep.cones) rep.pass = rep.pass && c.pass;
  for (const auto& c : rep.cusps) rep.pass = rep.pass && c.pass;
  for (const auto& e : rep.energy) rep.pass = rep.pass && e.pass;
  return rep;
}

}  // namespace hcmu
