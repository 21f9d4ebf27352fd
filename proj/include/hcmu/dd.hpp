#pragma once

#include <cmath>
#include <limits>

// Compact double-double arithmetic (an unevaluated sum hi + lo carrying
// ~106 bits of mantissa).  The sigma solver is templated on its scalar so
// that the inversion can run at this precision where plain doubles run out
// of representable points next to the ends of (mu, -2mu).  Only the
// operations sigma/sigma_inverse actually use are provided.

namespace hcmu::dd {

struct Real {
  double hi = 0.0;
  double lo = 0.0;

  Real() = default;
  Real(double h) : hi(h) {}  // NOLINT: implicit by design, mirrors double
  Real(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }
};

namespace detail {

inline Real quick_two_sum(double a, double b) {
  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline Real two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline Real two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline Real operator-(Real a) { return {-a.hi, -a.lo}; }

inline Real operator+(Real a, Real b) {
  Real s = detail::two_sum(a.hi, b.hi);
  Real t = detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline Real operator-(Real a, Real b) { return a + (-b); }

inline Real operator*(Real a, Real b) {
  Real p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline Real operator/(Real a, Real b) {
  double q1 = a.hi / b.hi;
  Real r = a - Real(q1) * b;
  double q2 = r.hi / b.hi;
  r = r - Real(q2) * b;
  double q3 = r.hi / b.hi;
  Real q = detail::quick_two_sum(q1, q2);
  return q + Real(q3);
}

inline Real& operator+=(Real& a, Real b) { a = a + b; return a; }
inline Real& operator-=(Real& a, Real b) { a = a - b; return a; }
inline Real& operator*=(Real& a, Real b) { a = a * b; return a; }
inline Real& operator/=(Real& a, Real b) { a = a / b; return a; }

inline bool operator==(Real a, Real b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(Real a, Real b) { return !(a == b); }
inline bool operator<(Real a, Real b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(Real a, Real b) { return b < a; }
inline bool operator<=(Real a, Real b) { return !(b < a); }
inline bool operator>=(Real a, Real b) { return !(a < b); }

inline Real abs(Real a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }
inline bool isfinite(Real a) { return std::isfinite(a.hi); }

inline Real ldexp(Real a, int n) { return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)}; }

// ln 2 and e to double-double precision
inline constexpr double kLn2Hi = 6.931471805599452862e-01;
inline constexpr double kLn2Lo = 2.319046813846299558e-17;

inline Real exp(Real a) {
  if (a.hi <= -746.0) return Real(0.0);
  if (a.hi >= 710.0) return Real(std::numeric_limits<double>::infinity());

  // a = m ln2 + r, |r| <= ln2/2, then exp(r) from a scaled Taylor series
  double m = std::floor(a.hi / kLn2Hi + 0.5);
  Real r = a - Real(kLn2Hi, kLn2Lo) * Real(m);

  constexpr int kScalePow = 9;  // r / 512
  r = ldexp(r, -kScalePow);

  // f = exp(r) - 1
  Real f = r;
  Real term = r;
  double fact = 1.0;
  for (int i = 2; i <= 20; ++i) {
    fact *= i;
    term = term * r;
    Real add = term / Real(fact);
    f = f + add;
    if (std::fabs(add.hi) < 1e-40 * std::fabs(f.hi)) break;
  }
  // undo the scaling: (1+f)^2 - 1 = 2f + f^2
  for (int i = 0; i < kScalePow; ++i) f = ldexp(f, 1) + f * f;

  return ldexp(Real(1.0) + f, static_cast<int>(m));
}

inline Real log(Real a) {
  // Newton refinement of the double-precision logarithm:
  // x <- x + a exp(-x) - 1 doubles the correct digits per step.
  Real x(std::log(a.hi));
  x = x + a * exp(-x) - Real(1.0);
  x = x + a * exp(-x) - Real(1.0);
  return x;
}

inline Real sqrt(Real a) {
  if (a.hi <= 0.0) return Real(std::sqrt(a.hi));
  Real x(std::sqrt(a.hi));
  x = Real(0.5) * (x + a / x);
  x = Real(0.5) * (x + a / x);
  return x;
}

}  // namespace hcmu::dd

namespace std {
template <>
struct numeric_limits<hcmu::dd::Real> {
  static constexpr bool is_specialized = true;
  static constexpr bool is_signed = true;
  static constexpr bool is_integer = false;
  static constexpr bool is_exact = false;
  static hcmu::dd::Real epsilon() { return {4.93038065763132e-32, 0.0}; }  // 2^-104
  static hcmu::dd::Real min() { return {numeric_limits<double>::min(), 0.0}; }
  static hcmu::dd::Real max() { return {numeric_limits<double>::max(), 0.0}; }
};
}  // namespace std
