#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bslab/lattice.hpp"
#include "bslab/schreier.hpp"
#include "bslab/testfn.hpp"
#include "bslab/zcover.hpp"
#include "json.hpp"

namespace bslab {

// One experiment = one config file = one output directory. Every config is
// schema-checked: unknown keys are rejected, required keys must be present,
// and all lattice data is exact (integers or "p/q" strings; non-integral
// floating-point literals are refused to keep the arithmetic exact).

struct EuclidConfig {
  LatticeFamily family;
  std::string family_kind;
  std::vector<TestFunction> functions;
  std::vector<Rat> radii;
  long long n_begin = 1;
  long long n_end = 1;
  double tail_tol = 1e-10;
};

struct SchreierConfig {
  SubgroupScheme scheme;
  long long n_begin = 1;
  long long n_end = 1;
  std::vector<int> r_list;
  long long ball_budget = 1000000;
};

struct HypConfig {
  std::string task;  // filled from the CLI subcommand, not the file
  double cutoff = 8.0;
  double margin = 0.05;
  long long ball_budget = 400000;
  long long samples = 1000;
  unsigned long long seed = 0;
  std::vector<long long> covers;  // chi-multiple conditions, each >= 1
  bool include_kernel = false;    // adds the limit subgroup as row n = 0
  std::vector<double> radii;
  double band = 1e-6;
};

struct ZCoverConfig {
  ZCoverScheme scheme;
  std::vector<TestFunction> functions;
  std::vector<long long> n_list;
  long long quadrature_m = 0;  // 0 = smallest admissible (2*degree + 1)
  long long theta_grid = 16;
  double tail_tol = 1e-10;
  long long budget = 20000000;
};

struct ParsedConfig {
  std::string model;
  nlohmann::json raw;  // validated document, hashed for provenance
  std::string hash;
  std::string out_dir;  // empty unless the file sets "out"
  std::optional<EuclidConfig> euclid;
  std::optional<SchreierConfig> schreier;
  std::optional<HypConfig> hyp;
  std::optional<ZCoverConfig> zcover;
};

// Field-level parsers, exposed for tests. All throw ConfigError naming the
// offending field.
Rat parse_rat(const nlohmann::json& v, const std::string& field);
TestFunction parse_test_function(const nlohmann::json& v, const std::string& field);
RatMat parse_rat_matrix(const nlohmann::json& v, const std::string& field);

ParsedConfig parse_config(const nlohmann::json& doc);
ParsedConfig load_config(const std::string& path);

}  // namespace bslab
