#pragma once

#include <string>
#include <vector>

#include "hcmu/oneform.hpp"

namespace hcmu {

// User-facing request: where the cusps and curvature maxima go, which saddle
// orders are wanted.  Saddle locations are emergent (they are the zeros of
// the realized form), so only their angle factors are prescribed.
struct CuspSpec {
  Complex location;
  double residue = 1.0;  // > 0
};

struct ConicalMaxSpec {
  Complex location;
  double alpha = 2.0;  // > 0, != 1
};

struct SmoothMaxSpec {
  Complex location;
};

struct SaddleRequest {
  int alpha = 2;  // integer >= 2, cone angle 2*pi*alpha
};

struct SingularityPlan {
  int genus = 0;
  std::vector<CuspSpec> cusps;
  std::vector<ConicalMaxSpec> conical_maxima;
  std::vector<SmoothMaxSpec> smooth_maxima;
  std::vector<SaddleRequest> saddles;
};

struct ExistenceReport {
  int S = 0;                  // required number of smooth maxima
  double Lambda = 0.0;        // negative when feasible
  double alpha_max = 0.0;     // 2*pi*(S + sum of conical-max alphas)
  bool feasible = false;
  bool synthesis_supported = false;  // genus 0 only
  std::vector<std::string> diagnostics;
};

// S = sum saddle alphas - I - J + chi, with J counting saddles and conical
// maxima together and chi = 2 - 2 genus.  Negative S means infeasible.
int saddle_budget(const SingularityPlan& plan);

// Balances the residues: Lambda = -(sum cusp residues)/(S + sum conical-max
// alphas); each smooth maximum carries residue Lambda, each conical maximum
// Lambda*alpha.  Throws NoMaxima when the cusp residues have nothing to
// balance against and SaddleCountMismatch when #smooth_maxima != S.
ExistenceReport balance_residues(const SingularityPlan& plan);

// Non-throwing wrapper used by the CLI: folds violations into diagnostics.
ExistenceReport check_plan(const SingularityPlan& plan);

struct Realization {
  RationalOneForm form;
  ExistenceReport report;
  std::vector<ZeroRecord> realized_saddles;
  // set when the realized multiplicity multiset differs from the requested
  // saddle orders; a warning, not an error
  bool saddle_order_mismatch = false;
};

// Builds the concrete form on the sphere (genus 0 only): poles at the cusps
// and maxima with the balanced residues; the zeros of that form are the
// realized saddles.
Realization realize_on_sphere(const SingularityPlan& plan);

void validate_plan(const SingularityPlan& plan);

}  // namespace hcmu
