#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "vrprox/reducers.hpp"
#include "vrprox/types.hpp"

namespace vrprox {

enum class RunStatus { Completed, CapReached, Diverged };

// One sampled point of a run. step counts stochastic steps (or outer stages
// for two-loop methods); oracle_calls is the cumulative component
// gradient/prox budget spent by the algorithm itself (instrumentation such
// as computing F for the record is not charged).
struct TraceRecord {
  std::int64_t step = 0;
  double fgap = 0.0;
  double dist2 = std::numeric_limits<double>::quiet_NaN();
  std::int64_t oracle_calls = 0;
  std::int64_t wall_ns = 0;
};

struct RunTrace {
  std::vector<TraceRecord> records;
  // Parallel to records when iterate storage is enabled, empty otherwise.
  std::vector<Vector> iterates;
  RunStatus status = RunStatus::Completed;
  std::int64_t total_steps = 0;
  std::int64_t total_oracle_calls = 0;
  Vector final_x;
  // Set when the run used the SVRP/SVRG last-inner-iterate anchor, which the
  // convergence analysis does not cover.
  bool uncertified_anchor = false;
};

struct RunOptions {
  // Record cadence in steps; 0 means once per effective pass (n steps).
  std::int64_t record_every = 0;
  // Explicit sorted record steps; overrides record_every when non-empty.
  std::vector<std::int64_t> record_points;
  bool store_iterates = false;
  double fstar = 0.0;
  // Stop as soon as a recorded fgap falls to this level (0 disables).
  double stop_fgap = 0.0;
  // Optional squared-distance-to-argmin evaluator for dist2 records.
  std::function<double(const Vector&)> dist2;
  // Optional observer invoked at record points with the current iterate and
  // variance-reduction state.
  std::function<void(std::int64_t step, const Vector& x,
                     const ReducerState& state)>
      probe;
};

}  // namespace vrprox
