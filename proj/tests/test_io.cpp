#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hcmu/io.hpp"

using namespace hcmu;

namespace {

io::RunConfig config_a() {
  io::json j = io::json::parse(R"({
    "plan": {
      "genus": 0,
      "cusps": [{"x": 0.0, "y": 0.0, "residue": 0.3333333333333333}],
      "smooth_maxima": [{"x": 1.0, "y": 0.0}]
    },
    "normalization": {"A0": 0.0}
  })");
  return io::parse_config(j);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("config parsing and field diagnostics") {
  auto cfg = config_a();
  CHECK(cfg.plan.cusps.size() == 1);
  CHECK(cfg.plan.smooth_maxima.size() == 1);
  CHECK(cfg.normalization.A0.value() == 0.0);

  CHECK_THROWS_WITH_AS(io::parse_config(io::json::parse("{}")),
                       "config: missing \"plan\"", std::runtime_error);
  CHECK_THROWS_AS(io::parse_config(io::json::parse(
                      R"({"plan": {"cusps": [{"x": 0, "y": 0}]}})")),
                  std::runtime_error);
  CHECK_THROWS_AS(io::parse_config(io::json::parse(
                      R"({"plan": {}, "normalization": {"p0": {"x": 0.5, "y": 0}}})")),
                  std::runtime_error);
}

TEST_CASE("bundle round trip reproduces the fields to the last digit") {
  auto bundle = io::synthesize(config_a());
  auto j = io::bundle_to_json(bundle);

  // through text, as a file would go
  auto reread = io::bundle_from_json(io::json::parse(j.dump()));
  auto m1 = io::metric_of(bundle);
  auto m2 = io::metric_of(reread);

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-2.0, 3.0);
  int probes = 0;
  while (probes < 100) {
    Complex z(u(rng), u(rng));
    if (bundle.form.min_pole_distance(z) < 1e-3) continue;
    ++probes;
    CHECK(K(m1.field, z) == K(m2.field, z));
    CHECK(conformal_factor(m1, z) == conformal_factor(m2, z));
  }
}

TEST_CASE("synthesized bundle carries the classification and budget") {
  auto bundle = io::synthesize(config_a());
  CHECK(bundle.report.S == 1);
  CHECK(bundle.classification.size() == 2);
  CHECK(bundle.params.mu == doctest::Approx(-1.0).epsilon(1e-15));

  auto j = io::bundle_to_json(bundle);
  CHECK(j.at("poles").size() == 2);
  CHECK(j.at("alpha_max").get<double>() ==
        doctest::Approx(2 * 3.14159265358979).epsilon(1e-10));
}

TEST_CASE("corrupted bundle parameters are loaded and then fail the audit") {
  auto bundle = io::synthesize(config_a());
  auto j = io::bundle_to_json(bundle);
  j["mu"] = j.at("mu").get<double>() * 1.01;  // breaks the mu/Lambda coupling

  auto corrupted = io::bundle_from_json(j);  // loads: audits own consistency
  CHECK(!corrupted.params.consistent());
  auto rep = check_curvature_pde(io::metric_of(corrupted), {});
  CHECK(!rep.pass);
  CHECK(rep.max_residual_h > 1e-3);
}

TEST_CASE("csv output is deterministic and marks singular nodes") {
  auto bundle = io::synthesize(config_a());
  io::Sampling s;
  s.xmin = -0.5; s.xmax = 1.5; s.ymin = -0.5; s.ymax = 0.5;
  s.nx = 41; s.ny = 21;  // grid hits the poles at (0,0) and (1,0)
  std::ostringstream a, b;
  io::write_sample_csv(a, bundle, s);
  io::write_sample_csv(b, bundle, s);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("nan,nan") != std::string::npos);
  CHECK(a.str().find("x,y,K,conformal_factor\r\n") != std::string::npos);
}

TEST_CASE("phi climbs into a cusp while phi + ln r sinks") {
  auto bundle = io::synthesize(config_a());
  auto m = io::metric_of(bundle);
  double p3 = phi(m, Complex(1e-3, 0));
  double p5 = phi(m, Complex(1e-5, 0));
  CHECK(p5 > p3);                                    // phi ~ -ln r
  CHECK(p5 + std::log(1e-5) < p3 + std::log(1e-3));  // phi + ln r -> -inf
}

}  // TEST_SUITE
