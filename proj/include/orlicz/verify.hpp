#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "orlicz/energy.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/musielak.hpp"

namespace orlicz {

struct VerifySuite {
  std::vector<MusielakFamily> families;
  std::vector<ReactionFamily> reactions;
  std::vector<GridPtr> grids;
  /// Scales every property's base sample count by n_samples / 1000 (at least one sample).
  std::size_t n_samples = 1000;
  std::uint64_t seed = 1;
  /// When nonempty, only these properties run.
  std::vector<std::string> only;
  /// Exact per-property sample counts, bypassing the scaling.
  std::map<std::string, std::size_t> sample_overrides;
};

/// Families I (p = 2+x1), II (p = 3+x1), III (p = 2+x1, alpha = 1); reactions 1 (q = 2+x1/2),
/// 2 (q = 4+x1), 3 (q = 3+x1/2); grids 101 nodes on [0,1] and 33x33 on [0,1]^2.
VerifySuite default_suite();

/// Reads a suite config: `families`, `reactions` (lists of descriptor file paths relative to the
/// config, or `default`), `grids` ("1 0 1 101; 2 0 1 0 1 33 33"), `samples`, `seed`, `only`.
VerifySuite load_suite(const std::string& path, std::optional<std::size_t> samples = std::nullopt,
                       std::optional<std::uint64_t> seed = std::nullopt);

struct PropertyResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t passes = 0;
  double worst_margin = 0.0;
  double slack = 0.0;
  double seconds = 0.0;
  nlohmann::json witness;  // inputs of the worst case
  std::string error;       // message if the worst case threw

  [[nodiscard]] bool passed() const { return passes == samples; }
};

struct VerifyReport {
  std::vector<PropertyResult> properties;
  bool overall = true;

  [[nodiscard]] const PropertyResult& property(const std::string& name) const;
  [[nodiscard]] nlohmann::json to_json() const;
  /// property,samples,passes,worst_margin
  [[nodiscard]] std::string to_csv() const;
};

/// Names of every property in evaluation order.
std::vector<std::string> property_names();

/// Evaluates every property on its generated cases. Property failures and numeric errors inside a
/// case are recorded, never thrown; only invalid configuration throws InputError.
VerifyReport run_property_suite(const VerifySuite& suite);

/// Margin of one case; replaying a reported witness reproduces its worst margin.
double evaluate_case(const VerifySuite& suite, const std::string& property, const nlohmann::json& witness);

}  // namespace orlicz
