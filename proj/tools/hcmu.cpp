// hcmu: build and audit HCMU metrics with cusp and conical singularities on
// the sphere.
//
//   hcmu check      --config plan.json
//   hcmu synthesize --config plan.json [--out bundle.json]
//   hcmu sample     --config plan.json [--bundle bundle.json] [--out grid.csv]
//   hcmu verify     --config plan.json [--bundle bundle.json] [--out report.json]
//   hcmu energy     --config plan.json [--bundle bundle.json] [--n-max 3]
//
// exit codes: 0 pass, 1 domain/check failure, 2 usage or parse errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "hcmu/io.hpp"

namespace {

struct Args {
  std::string config;
  std::string bundle;
  std::string out;
  int n_max = 3;
};

std::ostream& open_out(const Args& args, std::ofstream& file) {
  if (args.out.empty()) return std::cout;
  file.open(args.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + args.out);
  return file;
}

hcmu::io::Bundle obtain_bundle(const Args& args, const hcmu::io::RunConfig& cfg) {
  if (!args.bundle.empty()) return hcmu::io::load_bundle(args.bundle);
  return hcmu::io::synthesize(cfg);
}

int cmd_check(const Args& args) {
  auto cfg = hcmu::io::load_config(args.config);
  auto rep = hcmu::check_plan(cfg.plan);
  std::ofstream file;
  open_out(args, file) << hcmu::io::existence_to_json(rep).dump(2) << "\n";
  return rep.feasible ? 0 : 1;
}

int cmd_synthesize(const Args& args) {
  auto cfg = hcmu::io::load_config(args.config);
  auto bundle = hcmu::io::synthesize(cfg);
  std::ofstream file;
  open_out(args, file) << hcmu::io::bundle_to_json(bundle).dump(2) << "\n";
  return 0;
}

int cmd_sample(const Args& args) {
  auto cfg = hcmu::io::load_config(args.config);
  auto bundle = obtain_bundle(args, cfg);
  std::ofstream file;
  hcmu::io::write_sample_csv(open_out(args, file), bundle, cfg.sampling);
  return 0;
}

int cmd_verify(const Args& args) {
  auto cfg = hcmu::io::load_config(args.config);
  auto bundle = obtain_bundle(args, cfg);
  auto report = hcmu::run_verification(hcmu::io::metric_of(bundle), cfg.verify);
  std::ofstream file;
  open_out(args, file) << hcmu::io::verification_to_json(report).dump(2) << "\n";
  return report.pass ? 0 : 1;
}

int cmd_energy(const Args& args) {
  auto cfg = hcmu::io::load_config(args.config);
  auto bundle = obtain_bundle(args, cfg);
  auto metric = hcmu::io::metric_of(bundle);
  double amax = hcmu::alpha_max_of(bundle.classification);
  nlohmann::json rows = nlohmann::json::array();
  for (int n = 0; n <= args.n_max; ++n) {
    double quad = hcmu::integrate_Cn(metric, n, cfg.verify.quadrature);
    double closed = hcmu::closed_form_Cn(bundle.params, amax, n);
    rows.push_back({{"n", n},
                    {"quadrature", quad},
                    {"closed_form", closed},
                    {"rel_error", std::fabs(quad - closed) / std::fabs(closed)}});
  }
  std::ofstream file;
  open_out(args, file) << rows.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HCMU metrics with cusp and conical singularities on the sphere"};
  app.require_subcommand(1);

  Args args;
  auto add_common = [&](CLI::App* sub, bool with_bundle) {
    sub->add_option("--config", args.config, "run configuration (JSON)")->required();
    sub->add_option("--out", args.out, "output path (default: stdout)");
    if (with_bundle)
      sub->add_option("--bundle", args.bundle, "metric bundle (JSON); synthesized when absent");
  };

  auto* check = app.add_subcommand("check", "feasibility of a singularity plan");
  add_common(check, false);
  auto* synth = app.add_subcommand("synthesize", "realize the plan as a metric bundle");
  add_common(synth, false);
  auto* sample = app.add_subcommand("sample", "grid CSV of K and the conformal factor");
  add_common(sample, true);
  auto* verify = app.add_subcommand("verify", "run the full numerical audit");
  add_common(verify, true);
  auto* energy = app.add_subcommand("energy", "quadrature of the curvature integrals");
  add_common(energy, true);
  energy->add_option("--n-max", args.n_max, "highest power of K (default 3)")
      ->check(CLI::Range(0, 3));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(args);
    if (synth->parsed()) return cmd_synthesize(args);
    if (sample->parsed()) return cmd_sample(args);
    if (verify->parsed()) return cmd_verify(args);
    if (energy->parsed()) return cmd_energy(args);
  } catch (const hcmu::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
