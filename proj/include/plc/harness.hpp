#pragma once

// Named verification scenarios: each check id draws deterministic random
// instances, evaluates a residual suite and renders a verdict. Sample
// evaluation may run on several threads; aggregation is ordered by sample
// index, so results are thread-count independent.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plc/gw_flow.hpp"
#include "plc/json_io.hpp"

namespace plc {

struct ResidualStats {
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  int count = 0;
};

struct StatBlock {
  std::string name;
  ResidualStats stats;
  double tolerance = 0.0;
  bool lower_bound = false;  // pass iff min >= tolerance instead of max <=
  bool pass = false;
};

struct CheckReport {
  std::string check_id;
  Json config_echo;
  std::vector<StatBlock> blocks;
  std::vector<std::string> sample_errors;  // "<index>: <tag>: <message>"
  bool pass = false;
  std::string version;
  std::string timestamp;
};

struct RunConfig {
  int n = 2;
  Family family = Family::generic;
  double t = 0.5;
  CartanForm u;  // u for generic checks, w for the special family
  std::uint64_t seed = 42;
  int samples = 100;
  int threads = 1;
  int group_elements = 20;  // theorem1_invariance
  int orbit_count = 50;     // convexity
  int flow_steps = 100;     // gw_flow
  int flow_pairs = 6;       // gw_flow
  FdConfig fd;
  std::map<std::string, double> tolerance_overrides;  // "check.block" -> tol

  void validate() const;
};

/// Check ids applicable to a family at rank n, in execution order.
std::vector<std::string> check_ids(Family family, int n);

CheckReport run_check(const std::string& check_id, const RunConfig& config);

struct RunSummary {
  int total = 0;
  int passed = 0;
  bool all_pass = false;
};

struct RunAllResult {
  std::vector<CheckReport> reports;
  RunSummary summary;
};

struct GridConfig {
  std::vector<int> ns{2, 3};
  std::vector<double> ts{0.1, 0.5, 1.0};
  bool include_random_u = true;
  bool include_special = true;
  std::uint64_t seed = 42;
  int samples = 100;
  int threads = 1;
  int flow_steps = 60;
  int flow_pairs = 4;
  std::map<std::string, double> tolerance_overrides;
};

RunAllResult run_all(const GridConfig& config);

/// Deterministic random Cartan form: uniform [-1,1] entries antisymmetrized.
CartanForm random_cartan_form(int rank, std::uint64_t seed);

/// Regular coalgebra sample: eigenvalue gaps of i alpha at least `gap`.
CoalgebraVector random_regular_point(int n, std::uint64_t seed, double gap = 0.1);

Json report_to_json(const CheckReport& report, bool include_timestamp = true);
Json run_all_to_json(const RunAllResult& result, bool include_timestamp = true);
std::string reports_to_csv(const std::vector<CheckReport>& reports);

}  // namespace plc
