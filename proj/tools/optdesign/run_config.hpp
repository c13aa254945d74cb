#ifndef OPTDESIGN_TOOLS_RUN_CONFIG_HPP
#define OPTDESIGN_TOOLS_RUN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "optdesign/design.hpp"
#include "optdesign/michaelis_menten.hpp"

namespace optdesign::cli {

/// Everything a run needs. Unset optionals take command-specific defaults.
struct RunConfig {
  std::string model = "slr";  // slr | michaelis_menten
  std::optional<double> a;
  std::optional<double> b;
  double V = 43.73;
  double K = 227.27;
  double eps = 0.0;
  bool absolute_eps = false;

  std::string criterion = "D";
  std::optional<Vec2> c;
  std::optional<double> lambda;

  std::uint64_t seed = 42;
  std::string out;
  int grid = 200;
  int n_support = 2;
  bool compat = false;

  std::vector<double> a_list;
  std::vector<double> eps_list;

  std::size_t n = 1000;
  std::string law = "anchored";  // anchored | uniform

  std::string mode = "criterion";  // criterion | compound
  std::optional<double> a_fixed;
  std::vector<double> lambdas;
  int points = 99;

  std::vector<std::string> designs;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Accepts "slr", "mm" and "michaelis_menten"; returns the canonical name.
std::string canonical_model(const std::string& name);

/// Seed from OPTDESIGN_SEED when set and valid, otherwise 42.
std::uint64_t default_seed();

std::string to_json(const RunConfig& config);

/// Keys absent from the JSON keep the values already in `config`.
/// Throws InvalidArgument on malformed JSON or unknown keys.
void merge_json(RunConfig& config, const std::string& text);

RunConfig from_json(const std::string& text);

/// MM parameters from the config; b defaults to 5.
MMParams mm_params(const RunConfig& config);

/// Throws InvalidArgument when a required SLR endpoint is missing.
Model build_model(const RunConfig& config);

}  // namespace optdesign::cli

#endif  // OPTDESIGN_TOOLS_RUN_CONFIG_HPP
