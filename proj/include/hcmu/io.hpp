#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "hcmu/existence.hpp"
#include "hcmu/verify.hpp"

namespace hcmu::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// run configuration
// ---------------------------------------------------------------------------

struct Normalization {
  // either A0 directly or a base point (p0, K0)
  std::optional<double> A0;
  std::optional<Complex> p0;
  std::optional<double> K0;
};

struct Sampling {
  double xmin = -1.0, xmax = 2.0;
  double ymin = -1.0, ymax = 1.0;
  int nx = 200, ny = 200;
};

struct RunConfig {
  SingularityPlan plan;
  Normalization normalization;
  Sampling sampling;
  VerifyOptions verify;
  std::uint64_t seed = 0;
  double R_split = 0.0;
};

// throws std::runtime_error with a field-level message on malformed input
RunConfig parse_config(const json& j);
RunConfig load_config(const std::string& path);

// ---------------------------------------------------------------------------
// metric bundle: everything needed to rebuild the fields deterministically
// ---------------------------------------------------------------------------

struct Bundle {
  RationalOneForm form;
  CurvatureParams params;
  std::vector<ZeroRecord> saddles;
  std::vector<SingularityRecord> classification;
  ExistenceReport report;
};

Bundle synthesize(const RunConfig& config);
json bundle_to_json(const Bundle& bundle);
Bundle bundle_from_json(const json& j);  // permissive: audits catch inconsistencies
Bundle load_bundle(const std::string& path);

MetricField metric_of(const Bundle& bundle);

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

json existence_to_json(const ExistenceReport& rep);
json verification_to_json(const VerificationReport& rep);

// grid samples as RFC-4180 CSV with 17-significant-digit floats; nodes on a
// singular point emit NaN sentinel rows (flagged in the header comment)
void write_sample_csv(std::ostream& os, const Bundle& bundle, const Sampling& s);

}  // namespace hcmu::io
