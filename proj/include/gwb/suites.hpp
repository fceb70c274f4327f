#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwb/json_io.hpp"
#include "gwb/homology.hpp"

namespace gwb {

/// Rings cycled through by seeded batches: Z, Q, F2, F3, Z[1/2], Z[1/6].
const std::vector<Ring>& batch_rings();

struct SuiteOptions {
  uint64_t seed = 0;
  size_t count = 100;
  std::optional<size_t> n_max;  // suite default when unset
  std::optional<Ring> ring;     // drawn from batch_rings() when unset
  size_t max_rank = 2;
  HomologyOptions homology;
};

struct SuiteOutcome {
  size_t index = 0;
  uint64_t seed = 0;  // instance seed, derived from the batch seed
  bool pass = false;
  Json report;
};

struct SuiteResult {
  std::string suite;
  uint64_t seed = 0;
  std::vector<SuiteOutcome> outcomes;
  size_t passed = 0;
  bool all_pass() const { return passed == outcomes.size(); }
};

/// "shapiro", "morita", "les", "kernel-gen" or "continuity". Throws Malformed
/// for other names.
SuiteResult run_suite(const std::string& suite, const SuiteOptions& opts);
const std::vector<std::string>& suite_names();

/// Per-instance reports are kept only for failures unless `full` is set.
Json suite_to_json(const SuiteResult& r, bool full = false);

}  // namespace gwb
