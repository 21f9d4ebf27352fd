#pragma once

#include <optional>
#include <vector>

#include "hcmu/curvature.hpp"

namespace hcmu {

// The conformal metric g = e^{2 phi} |dz|^2 with
//   e^{2 phi} = -(4/3)(K - mu)^2 (K + 2mu) |rho|^2.
struct MetricField {
  CurvatureField field;

  const RationalOneForm& form() const { return field.form; }
  const CurvatureParams& params() const { return field.params; }
};

double conformal_factor(const MetricField& metric, Complex z);
double phi(const MetricField& metric, Complex z);

// w-chart representation near infinity: e^{2 phi~} = e^{2 phi(1/w)}/|w|^4
double conformal_factor_wchart(const MetricField& metric, Complex w);
double phi_wchart(const MetricField& metric, Complex w);

enum class SingularityKind { Cusp, ConicalMax, SmoothMax, ConicalSaddle };

const char* to_string(SingularityKind k);

struct SingularityRecord {
  Complex location;
  bool at_infinity = false;
  SingularityKind kind = SingularityKind::Cusp;
  std::optional<double> alpha;  // absent for cusps
  double K_limit = 0.0;         // mu at cusps, -2mu at maxima, interior at saddles
};

// The residue/zero dictionary: every pole and every zero (including the one
// at infinity, if any) gets exactly one record.
//   residue > 0                -> cusp, K -> mu
//   residue = Lambda           -> smooth maximum (regular point), K -> -2mu
//   residue = Lambda a, a != 1 -> conical maximum of angle 2*pi*a, K -> -2mu
//   zero of order m            -> conical saddle of angle 2*pi*(m+1)
std::vector<SingularityRecord> classify(const RationalOneForm& form,
                                        const CurvatureParams& params);

// 2*pi * sum of angle factors over the maximum set of a classification
double alpha_max_of(const std::vector<SingularityRecord>& records);

}  // namespace hcmu
