#pragma once

#include <cmath>
#include <limits>

#include "hcmu/dd.hpp"
#include "hcmu/errors.hpp"

// The curvature profile map.  For mu < 0,
//
//   sigma(t) = ln(-2mu - t) - ln(t - mu) - 3mu/(t - mu),   t in (mu, -2mu),
//
// is a strictly decreasing bijection onto the real line; the curvature field
// is recovered by inverting it against the one-form potential.  Substituting
// y = -3mu/(t - mu) turns it into sigma = y + ln(y - 1) on y in (1, inf),
// which is monotone increasing and free of endpoint blow-ups, so the solver
// works in y space.
//
// Everything here is templated on the scalar: double is the production type,
// dd::Real covers round-trip demands next to t = -2mu where consecutive
// doubles are already ~1e-16 apart but the true inverse sits exponentially
// closer to the endpoint.

namespace hcmu {

template <class Scalar>
Scalar sigma(Scalar t, Scalar mu) {
  using std::log;
  if (!(mu < Scalar(0))) throw DomainError("sigma: mu must be negative");
  if (!(mu < t && t < Scalar(-2) * mu))
    throw DomainError("sigma: t outside (mu, -2mu)");
  return log(Scalar(-2) * mu - t) - log(t - mu) - Scalar(3) * mu / (t - mu);
}

template <class Scalar>
Scalar sigma_prime(Scalar t, Scalar mu) {
  if (!(mu < Scalar(0))) throw DomainError("sigma_prime: mu must be negative");
  if (!(mu < t && t < Scalar(-2) * mu))
    throw DomainError("sigma_prime: t outside (mu, -2mu)");
  Scalar d = t - mu;
  return Scalar(9) * mu * mu / (d * d * (t + Scalar(2) * mu));
}

namespace detail {

// clamp strictly inside (mu, -2mu); only relevant when the true inverse is
// within one ulp of an endpoint
template <class Scalar>
Scalar clamp_open(Scalar t, Scalar mu) {
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar tmax = Scalar(-2) * mu;  // > 0
  if (!(t < tmax)) t = tmax * (Scalar(1) - Scalar(8) * eps);
  if (!(t > mu)) t = mu * (Scalar(1) - Scalar(8) * eps);  // mu < 0
  return t;
}

}  // namespace detail

// Unique t in (mu, -2mu) with sigma(t) = x.
template <class Scalar>
Scalar sigma_inverse(Scalar x, Scalar mu) {
  using std::abs;
  using std::exp;
  using std::isfinite;
  using std::log;
  if (!(mu < Scalar(0))) throw DomainError("sigma_inverse: mu must be negative");
  if (!isfinite(x)) throw DomainError("sigma_inverse: x not finite");

  const Scalar one(1);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar tol = Scalar(4) * eps * (abs(x) > one ? abs(x) : one);

  if (x < Scalar(-700)) {
    // log/exp overflow territory: y - 1 = e^{x-1}(1 + O(e^{x-1})), i.e.
    // t = -2mu + 3mu e^{x-1} up to a relative error ~e^{x-1} < 1e-304
    Scalar t = Scalar(-2) * mu + Scalar(3) * mu * exp(x - one);
    return detail::clamp_open(t, mu);
  }

  Scalar y;
  bool converged = false;
  if (x >= Scalar(2)) {
    // g(y) = y + ln(y-1) - x is increasing and concave, so Newton started
    // at y0 = x >= root converges monotonically after the first step
    y = x;
    for (int it = 0; it < 64 && !converged; ++it) {
      Scalar g = y + log(y - one) - x;
      if (abs(g) <= tol) { converged = true; break; }
      y = y - g / (one + one / (y - one));
      if (!(y > one)) y = one + eps;  // unreachable for x >= 2, cheap guard
    }
  } else {
    // solve in v = ln(y-1): G(v) = v + e^v + 1 - x is increasing and convex,
    // v0 = x - 1 >= root gives a monotone Newton iteration
    Scalar v = x - one;
    for (int it = 0; it < 64 && !converged; ++it) {
      Scalar ev = exp(v);
      Scalar g = v + ev + one - x;
      if (abs(g) <= tol) { converged = true; break; }
      v = v - g / (one + ev);
    }
    y = one + exp(v);
  }
  if (!converged) throw ConvergenceFailure("sigma_inverse: no convergence");

  Scalar t = mu - Scalar(3) * mu / y;
  return detail::clamp_open(t, mu);
}

}  // namespace hcmu
