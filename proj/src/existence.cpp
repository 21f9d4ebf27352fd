#include "hcmu/existence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hcmu {

namespace {

std::vector<Complex> declared_locations(const SingularityPlan& plan) {
  std::vector<Complex> locs;
  for (const auto& c : plan.cusps) locs.push_back(c.location);
  for (const auto& q : plan.conical_maxima) locs.push_back(q.location);
  for (const auto& e : plan.smooth_maxima) locs.push_back(e.location);
  return locs;
}

double conical_alpha_sum(const SingularityPlan& plan) {
  double s = 0.0;
  for (const auto& q : plan.conical_maxima) s += q.alpha;
  return s;
}

}  // namespace

void validate_plan(const SingularityPlan& plan) {
  if (plan.genus < 0) throw DomainError("plan: negative genus");
  for (const auto& c : plan.cusps)
    if (!(c.residue > 0.0)) throw DomainError("plan: cusp residue must be positive");
  for (const auto& q : plan.conical_maxima) {
    if (!(q.alpha > 0.0)) throw DomainError("plan: conical angle factor must be positive");
    if (q.alpha == 1.0)
      throw DomainError("plan: angle factor 1 is a smooth point, not a conical maximum");
  }
  for (const auto& s : plan.saddles)
    if (s.alpha < 2) throw DomainError("plan: saddle angle factor must be an integer >= 2");

  auto locs = declared_locations(plan);
  double diam = 0.0;
  for (size_t i = 0; i < locs.size(); ++i)
    for (size_t j = i + 1; j < locs.size(); ++j)
      diam = std::max(diam, std::abs(locs[i] - locs[j]));
  const double tol = 1e-9 * std::max(diam, 1e-30);
  for (size_t i = 0; i < locs.size(); ++i)
    for (size_t j = i + 1; j < locs.size(); ++j)
      if (std::abs(locs[i] - locs[j]) <= tol)
        throw DomainError("plan: declared singular locations must be distinct");
}

int saddle_budget(const SingularityPlan& plan) {
  validate_plan(plan);
  const int I = static_cast<int>(plan.cusps.size());
  const int L = static_cast<int>(plan.saddles.size());
  const int J = L + static_cast<int>(plan.conical_maxima.size());
  const int chi = 2 - 2 * plan.genus;
  int sum_saddle_alpha = 0;
  for (const auto& s : plan.saddles) sum_saddle_alpha += s.alpha;
  return sum_saddle_alpha - I - J + chi;
}

ExistenceReport balance_residues(const SingularityPlan& plan) {
  ExistenceReport rep;
  rep.S = saddle_budget(plan);
  if (rep.S < 0)
    throw DomainError("balance_residues: saddle budget is negative (infeasible plan)");
  if (static_cast<int>(plan.smooth_maxima.size()) != rep.S)
    throw SaddleCountMismatch("plan must carry exactly S smooth maxima");

  if (plan.cusps.empty())
    throw NoMaxima("plan has no cusps; the cusp system needs at least one");

  double cusp_sum = 0.0;
  for (const auto& c : plan.cusps) cusp_sum += c.residue;

  const double weight = rep.S + conical_alpha_sum(plan);
  if (!(weight > 0.0))
    throw NoMaxima("cusp residues cannot balance: no maximum points to carry them");

  rep.Lambda = -cusp_sum / weight;
  rep.alpha_max = 2.0 * std::numbers::pi * weight;
  rep.feasible = true;
  rep.synthesis_supported = (plan.genus == 0);
  if (!rep.synthesis_supported)
    rep.diagnostics.push_back("genus >= 1: feasibility conditions hold but synthesis is unsupported");
  return rep;
}

ExistenceReport check_plan(const SingularityPlan& plan) {
  ExistenceReport rep;
  try {
    rep = balance_residues(plan);
  } catch (const Error& e) {
    try {
      rep.S = saddle_budget(plan);
    } catch (const Error&) {
      rep.S = 0;
    }
    rep.feasible = false;
    rep.diagnostics.push_back(e.what());
  }
  return rep;
}

Realization realize_on_sphere(const SingularityPlan& plan) {
  if (plan.genus != 0)
    throw SynthesisUnsupported("realize_on_sphere: genus 0 only");
  ExistenceReport rep = balance_residues(plan);

  std::vector<PoleSpec> poles;
  for (const auto& c : plan.cusps) poles.push_back({c.location, c.residue});
  for (const auto& q : plan.conical_maxima)
    poles.push_back({q.location, rep.Lambda * q.alpha});
  for (const auto& e : plan.smooth_maxima) poles.push_back({e.location, rep.Lambda});

  Realization real{build_form(std::move(poles)), rep, {}, false};
  real.realized_saddles = zeros(real.form);

  // a zero landing on a declared singular point is a degenerate configuration
  // the theory does not cover; reject rather than reinterpret
  for (const auto& z : real.realized_saddles) {
    if (z.at_infinity) continue;
    if (real.form.min_pole_distance(z.location) <= real.form.collision_tol())
      throw DegenerateConfiguration("realized saddle collided with a declared singular point");
  }

  std::vector<int> wanted;
  for (const auto& s : plan.saddles) wanted.push_back(s.alpha - 1);
  std::vector<int> got;
  for (const auto& z : real.realized_saddles) got.push_back(z.multiplicity);
  std::sort(wanted.begin(), wanted.end());
  std::sort(got.begin(), got.end());
  real.saddle_order_mismatch = (wanted != got);
  return real;
}

}  // namespace hcmu
