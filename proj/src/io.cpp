#include "hcmu/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hcmu::io {

namespace {

Complex complex_of(const json& j, const char* where) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    throw std::runtime_error(std::string(where) + ": expected {\"x\":..,\"y\":..}");
  return {j.at("x").get<double>(), j.at("y").get<double>()};
}

json complex_json(Complex z) { return json{{"x", z.real()}, {"y", z.imag()}}; }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_config(const json& j) {
  RunConfig cfg;
  if (!j.contains("plan")) throw std::runtime_error("config: missing \"plan\"");
  const json& p = j.at("plan");

  cfg.plan.genus = p.value("genus", 0);
  if (p.contains("cusps"))
    for (const auto& c : p.at("cusps")) {
      if (!c.contains("residue")) throw std::runtime_error("plan.cusps: missing residue");
      cfg.plan.cusps.push_back({complex_of(c, "plan.cusps"), c.at("residue").get<double>()});
    }
  if (p.contains("conical_maxima"))
    for (const auto& c : p.at("conical_maxima")) {
      if (!c.contains("alpha")) throw std::runtime_error("plan.conical_maxima: missing alpha");
      cfg.plan.conical_maxima.push_back(
          {complex_of(c, "plan.conical_maxima"), c.at("alpha").get<double>()});
    }
  if (p.contains("smooth_maxima"))
    for (const auto& c : p.at("smooth_maxima"))
      cfg.plan.smooth_maxima.push_back({complex_of(c, "plan.smooth_maxima")});
  if (p.contains("saddles"))
    for (const auto& c : p.at("saddles")) {
      if (!c.contains("alpha")) throw std::runtime_error("plan.saddles: missing alpha");
      cfg.plan.saddles.push_back({c.at("alpha").get<int>()});
    }

  if (j.contains("normalization")) {
    const json& nj = j.at("normalization");
    if (nj.contains("A0")) cfg.normalization.A0 = nj.at("A0").get<double>();
    if (nj.contains("p0")) {
      cfg.normalization.p0 = complex_of(nj.at("p0"), "normalization.p0");
      if (!nj.contains("K0"))
        throw std::runtime_error("normalization: p0 given without K0");
      cfg.normalization.K0 = nj.at("K0").get<double>();
    }
  }

  if (j.contains("sampling")) {
    const json& s = j.at("sampling");
    cfg.sampling.xmin = s.value("xmin", cfg.sampling.xmin);
    cfg.sampling.xmax = s.value("xmax", cfg.sampling.xmax);
    cfg.sampling.ymin = s.value("ymin", cfg.sampling.ymin);
    cfg.sampling.ymax = s.value("ymax", cfg.sampling.ymax);
    cfg.sampling.nx = s.value("nx", cfg.sampling.nx);
    cfg.sampling.ny = s.value("ny", cfg.sampling.ny);
    if (cfg.sampling.nx < 2 || cfg.sampling.ny < 2)
      throw std::runtime_error("sampling: nx and ny must be >= 2");
  }

  cfg.seed = j.value("seed", std::uint64_t{0});
  if (cfg.seed != 0) {
    cfg.verify.pde.seed = cfg.seed;
    cfg.verify.gradient.seed = cfg.seed ^ 0x9e3779b97f4a7c15ull;
  }
  cfg.R_split = j.value("R_split", 0.0);
  cfg.verify.quadrature.R_split = cfg.R_split;

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    auto& v = cfg.verify;
    v.pde.tol = t.value("pde_residual", v.pde.tol);
    v.pde.h = t.value("pde_h", v.pde.h);
    v.pde.min_dist = t.value("pde_min_dist", v.pde.min_dist);
    v.pde.max_dist = t.value("pde_max_dist", v.pde.max_dist);
    v.pde.n_points = t.value("pde_points", v.pde.n_points);
    v.gradient.tol = t.value("gradient", v.gradient.tol);
    v.gradient.h = t.value("gradient_h", v.gradient.h);
    v.cone_tol = t.value("cone_angle", v.cone_tol);
    v.cusp.s_tol = t.value("cusp_s", v.cusp.s_tol);
    v.cusp.t_agreement = t.value("cusp_t_agreement", v.cusp.t_agreement);
    v.energy_tol = t.value("energy", v.energy_tol);
    v.energy_tol_n3 = t.value("energy_n3", v.energy_tol_n3);
    v.energy_n_max = t.value("energy_n_max", v.energy_n_max);
    v.quadrature.rel_tol = t.value("quadrature_rel", v.quadrature.rel_tol);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }
  return parse_config(j);
}

Bundle synthesize(const RunConfig& config) {
  Realization real = realize_on_sphere(config.plan);

  CurvatureParams params;
  if (config.normalization.p0) {
    params = make_params(real.report.Lambda, real.form, *config.normalization.p0,
                         config.normalization.K0.value());
  } else {
    params = make_params(real.report.Lambda, config.normalization.A0.value_or(0.0));
  }

  Bundle b{real.form, params, real.realized_saddles, {}, real.report};
  b.classification = classify(b.form, b.params);
  return b;
}

json bundle_to_json(const Bundle& bundle) {
  json poles = json::array();
  for (const auto& p : bundle.form.poles()) {
    json jp = complex_json(p.location);
    jp["residue"] = p.residue;
    poles.push_back(jp);
  }
  json saddles = json::array();
  for (const auto& z : bundle.saddles) {
    json jz;
    if (z.at_infinity) {
      jz["at_infinity"] = true;
    } else {
      jz = complex_json(z.location);
    }
    jz["multiplicity"] = z.multiplicity;
    saddles.push_back(jz);
  }
  json cls = json::array();
  for (const auto& r : bundle.classification) {
    json jr;
    jr["kind"] = to_string(r.kind);
    if (r.at_infinity)
      jr["at_infinity"] = true;
    else {
      jr["x"] = r.location.real();
      jr["y"] = r.location.imag();
    }
    if (r.alpha) jr["alpha"] = *r.alpha;
    jr["K_limit"] = r.K_limit;
    cls.push_back(jr);
  }
  return json{{"poles", poles},
              {"mu", bundle.params.mu},
              {"Lambda", bundle.params.Lambda},
              {"A0", bundle.params.A0},
              {"saddles", saddles},
              {"classification", cls},
              {"S", bundle.report.S},
              {"alpha_max", bundle.report.alpha_max}};
}

Bundle bundle_from_json(const json& j) {
  std::vector<PoleSpec> poles;
  for (const auto& p : j.at("poles"))
    poles.push_back({complex_of(p, "bundle.poles"), p.at("residue").get<double>()});

  // params are taken as stored; a corrupted pair is the audit's to expose
  CurvatureParams params;
  params.mu = j.at("mu").get<double>();
  params.Lambda = j.at("Lambda").get<double>();
  params.A0 = j.at("A0").get<double>();
  if (!(params.mu < 0.0) || !(params.Lambda < 0.0))
    throw std::runtime_error("bundle: mu and Lambda must be negative");

  Bundle b{build_form(std::move(poles)), params, {}, {}, {}};
  if (j.contains("saddles"))
    for (const auto& s : j.at("saddles")) {
      ZeroRecord z;
      z.multiplicity = s.value("multiplicity", 1);
      if (s.value("at_infinity", false)) {
        z.at_infinity = true;
      } else {
        z.location = complex_of(s, "bundle.saddles");
      }
      b.saddles.push_back(z);
    }
  b.classification = classify(b.form, b.params);
  b.report.S = j.value("S", 0);
  b.report.alpha_max = j.value("alpha_max", alpha_max_of(b.classification));
  b.report.Lambda = params.Lambda;
  b.report.feasible = true;
  b.report.synthesis_supported = true;
  return b;
}

Bundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bundle: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("bundle parse error in " + path + ": " + e.what());
  }
  return bundle_from_json(j);
}

MetricField metric_of(const Bundle& bundle) {
  return {{bundle.form, bundle.params}};
}

json existence_to_json(const ExistenceReport& rep) {
  return json{{"S", rep.S},
              {"Lambda", rep.Lambda},
              {"alpha_max", rep.alpha_max},
              {"feasible", rep.feasible},
              {"synthesis_supported", rep.synthesis_supported},
              {"diagnostics", rep.diagnostics}};
}

json verification_to_json(const VerificationReport& rep) {
  json pde{{"max_residual_h", rep.pde.max_residual_h},
           {"max_residual_h2", rep.pde.max_residual_h2},
           {"order", rep.pde.order},
           {"pass", rep.pde.pass}};
  json grad{{"max_rel_error", rep.gradient.max_rel_error}, {"pass", rep.gradient.pass}};
  json cones = json::array();
  for (const auto& c : rep.cones) {
    json jc{{"kind", to_string(c.record.kind)},
            {"alpha_estimated", c.alpha_estimated},
            {"alpha_expected", c.alpha_expected},
            {"rel_error", c.rel_error},
            {"pass", c.pass}};
    if (c.record.at_infinity)
      jc["at_infinity"] = true;
    else {
      jc["x"] = c.record.location.real();
      jc["y"] = c.record.location.imag();
    }
    cones.push_back(jc);
  }
  json cusps = json::array();
  for (const auto& c : rep.cusps) {
    cusps.push_back(json{{"radii", c.radii},
                         {"s", c.s},
                         {"t", c.t},
                         {"s_small", c.s_small},
                         {"s_decreasing", c.s_decreasing},
                         {"t_agree", c.t_agree},
                         {"t_nonzero", c.t_nonzero},
                         {"pass", c.pass}});
  }
  json energy = json::array();
  for (const auto& e : rep.energy) {
    energy.push_back(json{{"n", e.n},
                          {"quadrature", e.quadrature},
                          {"closed_form", e.closed_form},
                          {"rel_error", e.rel_error},
                          {"pass", e.pass}});
  }
  return json{{"pde", pde},
              {"gradient", grad},
              {"cone_angles", cones},
              {"cusps", cusps},
              {"energy", energy},
              {"pass", rep.pass}};
}

void write_sample_csv(std::ostream& os, const Bundle& bundle, const Sampling& s) {
  MetricField metric = metric_of(bundle);
  const double tol = bundle.form.evaluation_tol();
  os << "# grid samples of the curvature and conformal factor\r\n";
  os << "# rows landing on a singular point carry nan sentinels\r\n";
  os << "x,y,K,conformal_factor\r\n";
  for (int j = 0; j < s.ny; ++j) {
    double y = s.ymin + (s.ymax - s.ymin) * j / (s.ny - 1);
    for (int i = 0; i < s.nx; ++i) {
      double x = s.xmin + (s.xmax - s.xmin) * i / (s.nx - 1);
      Complex z(x, y);
      os << fmt17(x) << ',' << fmt17(y) << ',';
      if (bundle.form.min_pole_distance(z) < tol) {
        os << "nan,nan\r\n";
        continue;
      }
      double k = K(metric.field, z);
      double e2p = conformal_factor(metric, z);
      os << fmt17(k) << ',' << fmt17(e2p) << "\r\n";
    }
  }
}

}  // namespace hcmu::io
