#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hopfgroup/schwartz.hpp"

namespace hopfgroup {

struct GenConfig {
  std::uint64_t seed = 0;
  int trials = 100;
  /// Overrides the per-group default level span; intersected with the group's range.
  std::optional<std::pair<int, int>> levels;
  std::size_t max_support = 6;
  std::vector<std::string> groups;
};

/// A shrunk counterexample: the inputs still fail `check`.
struct Failure {
  std::string check;
  int level = 0;
  std::vector<BSFunction> inputs;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::string group;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<Failure> failures;
  std::string status;  ///< "pass", "fail" or "skipped"
  std::string reason;  ///< why a suite was skipped
  /// Suite-specific counters, e.g. how often left and right integrals differed.
  nlohmann::json observations = nlohmann::json::object();
  double wall_ms = 0;
};

const std::vector<std::string>& suite_names();

/// Level span used when GenConfig::levels is unset.
std::pair<int, int> default_levels(const Group& g);

/// Deterministic in (suite, cfg.seed, cfg.trials, levels, max_support, group).
SuiteReport run_suite(std::string_view suite, const GenConfig& cfg, const std::string& group);
/// One report per group in cfg.groups.
std::vector<SuiteReport> run_suite(std::string_view suite, const GenConfig& cfg);

/// Returns a failure description, or nothing when the inputs pass.
using FailurePredicate = std::function<std::optional<std::string>(const std::vector<BSFunction>&)>;

/// Greedy shrinking (zero an input, drop a term, coarsen a level) while
/// `fails` keeps failing. Returns the smaller inputs and their failure text.
std::pair<std::vector<BSFunction>, std::string> shrink_counterexample(std::vector<BSFunction> inputs,
                                                                      const FailurePredicate& fails,
                                                                      std::string detail);

/// Report JSON; `timing` adds the wall_ms field, the only nondeterministic one.
nlohmann::json to_json(const SuiteReport& r, bool timing = true);

/// Seeded generator of levels, points, coefficients and functions.
class Generator {
 public:
  Generator(std::uint64_t seed, std::string_view stream, GroupPtr g, std::pair<int, int> levels,
            std::size_t max_support);

  /// Uniform in [0, n); rejection sampling so the sequence is portable.
  std::uint64_t below(std::uint64_t n);
  int level();
  int level_in(int lo, int hi);
  CycScalar coefficient();
  GElem point(int n);
  /// Random function with level drawn from [lo, hi].
  BSFunction function(int lo, int hi, bool unit_coefficients = false);
  BSFunction function();
  const GroupPtr& group() const { return group_; }
  std::pair<int, int> levels() const { return levels_; }

 private:
  const std::vector<GElem>& window(int n);

  std::mt19937_64 rng_;
  GroupPtr group_;
  std::pair<int, int> levels_;
  std::size_t max_support_;
  std::vector<std::pair<int, std::vector<GElem>>> windows_;
};

}  // namespace hopfgroup
