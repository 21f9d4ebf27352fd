#include "hcmu/metric.hpp"

#include <cmath>
#include <numbers>

namespace hcmu {

double conformal_factor(const MetricField& metric, Complex z) {
  const double k = K(metric.field, z);
  const double mu = metric.params().mu;
  const double s = k - mu;
  const double rho2 = std::norm(evaluate(metric.form(), z));
  return (4.0 / 3.0) * s * s * (-2.0 * mu - k) * rho2;
}

double phi(const MetricField& metric, Complex z) {
  return 0.5 * std::log(conformal_factor(metric, z));
}

double conformal_factor_wchart(const MetricField& metric, Complex w) {
  const double k = K_wchart(metric.field, w);
  const double mu = metric.params().mu;
  const double s = k - mu;
  const double rho2 = std::norm(rho_wchart(metric.form(), w));
  return (4.0 / 3.0) * s * s * (-2.0 * mu - k) * rho2;
}

double phi_wchart(const MetricField& metric, Complex w) {
  return 0.5 * std::log(conformal_factor_wchart(metric, w));
}

const char* to_string(SingularityKind k) {
  switch (k) {
    case SingularityKind::Cusp: return "CUSP";
    case SingularityKind::ConicalMax: return "CONICAL_MAX";
    case SingularityKind::SmoothMax: return "SMOOTH_MAX";
    case SingularityKind::ConicalSaddle: return "CONICAL_SADDLE";
  }
  return "?";
}

std::vector<SingularityRecord> classify(const RationalOneForm& form,
                                        const CurvatureParams& params) {
  std::vector<SingularityRecord> out;
  const double mu = params.mu;

  for (const auto& p : form.poles()) {
    SingularityRecord rec;
    rec.location = p.location;
    if (p.residue > 0.0) {
      rec.kind = SingularityKind::Cusp;
      rec.K_limit = mu;
    } else if (p.residue < 0.0) {
      const double alpha = p.residue / params.Lambda;
      rec.K_limit = -2.0 * mu;
      if (std::fabs(alpha - 1.0) <= 1e-9) {
        rec.kind = SingularityKind::SmoothMax;
        rec.alpha = 1.0;
      } else {
        rec.kind = SingularityKind::ConicalMax;
        rec.alpha = alpha;
      }
    } else {
      throw UnclassifiablePole("pole with zero residue");
    }
    out.push_back(rec);
  }

  CurvatureField field{form, params};
  for (const auto& z : zeros(form)) {
    SingularityRecord rec;
    rec.location = z.location;
    rec.at_infinity = z.at_infinity;
    rec.kind = SingularityKind::ConicalSaddle;
    rec.alpha = static_cast<double>(z.multiplicity + 1);
    // K extends smoothly across a zero; at infinity the w-chart argument
    // f0(1/w) vanishes at w = 0, leaving sigma^{-1}(A0)
    rec.K_limit = z.at_infinity ? K_wchart(field, Complex(0, 0))
                                : K(field, z.location);
    out.push_back(rec);
  }
  return out;
}

double alpha_max_of(const std::vector<SingularityRecord>& records) {
  double sum = 0.0;
  for (const auto& r : records)
    if (r.kind == SingularityKind::SmoothMax || r.kind == SingularityKind::ConicalMax)
      sum += *r.alpha;
  return 2.0 * std::numbers::pi * sum;
}

}  // namespace hcmu
