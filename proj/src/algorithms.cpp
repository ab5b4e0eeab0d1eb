#include "vrprox/algorithms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace vrprox {

namespace {

constexpr std::int64_t kTableResyncInterval = 100000;
constexpr double kDivergenceFactor = 1e12;

void validate_start(const FiniteSumProblem& problem, const Vector& x0) {
  if (x0.size() != problem.dimension())
    throw std::invalid_argument("run: x0 dimension mismatch");
  if (!x0.allFinite()) throw std::invalid_argument("run: x0 must be finite");
}

class TraceBuilder {
 public:
  TraceBuilder(const FiniteSumProblem& problem, const RunOptions& options)
      : problem_(problem),
        options_(options),
        start_(std::chrono::steady_clock::now()) {
    cadence_ = options.record_every > 0 ? options.record_every
                                        : problem.num_components();
  }

  bool due(std::int64_t step) const {
    if (!options_.record_points.empty())
      return std::binary_search(options_.record_points.begin(),
                                options_.record_points.end(), step);
    return step % cadence_ == 0;
  }

  // Appends a record at the given step; returns false when the run must stop
  // (divergence or the accuracy target was reached).
  bool record(std::int64_t step, const Vector& x, std::int64_t oracle_calls) {
    TraceRecord rec;
    rec.step = step;
    rec.oracle_calls = oracle_calls;
    rec.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                      std::chrono::steady_clock::now() - start_)
                      .count();
    const bool finite = x.allFinite();
    rec.fgap = finite ? problem_.full_value(x) - options_.fstar
                      : std::numeric_limits<double>::quiet_NaN();
    if (options_.dist2 && finite) rec.dist2 = options_.dist2(x);
    trace_.records.push_back(rec);
    if (options_.store_iterates) trace_.iterates.push_back(x);
    if (step == 0) {
      initial_gap_ = std::max(rec.fgap, 1e-300);
      return true;
    }
    if (!finite || !(rec.fgap < kDivergenceFactor * initial_gap_)) {
      trace_.status = RunStatus::Diverged;
      return false;
    }
    if (options_.stop_fgap > 0 && rec.fgap <= options_.stop_fgap) {
      reached_target_ = true;
      return false;
    }
    return true;
  }

  void record_final(std::int64_t step, const Vector& x,
                    std::int64_t oracle_calls) {
    if (!trace_.records.empty() && trace_.records.back().step == step) return;
    record(step, x, oracle_calls);
  }

  void mark_diverged() { trace_.status = RunStatus::Diverged; }
  void mark_uncertified() { trace_.uncertified_anchor = true; }
  bool diverged() const { return trace_.status == RunStatus::Diverged; }

  RunTrace finish(std::int64_t total_steps, std::int64_t oracle_calls,
                  Vector final_x) {
    trace_.total_steps = total_steps;
    trace_.total_oracle_calls = oracle_calls;
    trace_.final_x = std::move(final_x);
    if (trace_.status != RunStatus::Diverged) {
      trace_.status = (options_.stop_fgap > 0 && !reached_target_)
                          ? RunStatus::CapReached
                          : RunStatus::Completed;
    }
    return std::move(trace_);
  }

 private:
  const FiniteSumProblem& problem_;
  const RunOptions& options_;
  std::chrono::steady_clock::time_point start_;
  std::int64_t cadence_ = 1;
  double initial_gap_ = 1.0;
  bool reached_target_ = false;
  RunTrace trace_;
};

// Per-component gradient coefficients at a fixed point: grad f_i = c_i a_i.
// Caching the scalars c_i makes anchored corrections O(d) per step.
void anchored_coefficients(const FiniteSumProblem& problem, const Vector& at,
                           Vector& coeff, Vector& gbar) {
  const Index n = problem.num_components();
  gbar.setZero();
  for (Index i = 0; i < n; ++i) {
    const double t = problem.design().row(i).dot(at);
    coeff[i] = loss_derivative(problem.loss(), t, problem.labels()[i]);
    gbar.noalias() += coeff[i] * problem.design().row(i).transpose();
  }
  gbar /= static_cast<double>(n);
}

}  // namespace

Vector unified_step(const FiniteSumProblem& problem, const Vector& x,
                    double alpha, Index i, const Vector& e) {
  if (e.size() != problem.dimension())
    throw std::invalid_argument("unified_step: correction dimension mismatch");
  return prox_component(problem, i, alpha, x + alpha * e);
}

RunTrace run_sppa(const FiniteSumProblem& problem, const StepSchedule& schedule,
                  const Vector& x0, std::int64_t num_steps, RunSeed seed,
                  const RunOptions& options) {
  if (num_steps < 1) throw std::invalid_argument("run_sppa: num_steps must be >= 1");
  validate_start(problem, x0);
  const Index n = problem.num_components();
  CounterRng rng(seed.master, seed.stream);
  TraceBuilder tb(problem, options);

  Vector x = x0;
  std::int64_t calls = 0;
  std::int64_t k = 0;
  bool live = tb.record(0, x, 0);
  const ReducerState no_state{};
  while (k < num_steps && live) {
    if (options.probe) options.probe(k, x, no_state);
    const Index i = static_cast<Index>(rng.uniform_below(n));
    prox_component_inplace(problem, i, schedule.at(k), x);
    ++k;
    ++calls;
    if (tb.due(k)) live = tb.record(k, x, calls);
  }
  if (live) tb.record_final(k, x, calls);
  return tb.finish(k, calls, std::move(x));
}

RunTrace run_svrp(const FiniteSumProblem& problem, double alpha,
                  std::int64_t inner_steps, std::int64_t outer_stages,
                  const Vector& x0, RunSeed seed, OuterMode mode,
                  const RunOptions& options) {
  if (!(alpha > 0)) throw std::invalid_argument("run_svrp: alpha must be positive");
  if (inner_steps < 1 || outer_stages < 1)
    throw std::invalid_argument("run_svrp: m and S must be >= 1");
  validate_start(problem, x0);

  const Index n = problem.num_components();
  CounterRng rng(seed.master, seed.stream);
  TraceBuilder tb(problem, options);

  Vector anchor = x0;
  Vector x(problem.dimension());
  Vector z(problem.dimension());
  Vector gbar(problem.dimension());
  Vector coeff(n);
  Vector accum(problem.dimension());
  Vector picked(problem.dimension());
  std::int64_t calls = 0;
  std::int64_t stages = 0;

  bool live = tb.record(0, anchor, 0);
  for (std::int64_t s = 0; s < outer_stages && live; ++s) {
    anchored_coefficients(problem, anchor, coeff, gbar);
    x = anchor;
    const std::int64_t pick =
        mode == OuterMode::RandomInner
            ? static_cast<std::int64_t>(rng.uniform_below(
                  static_cast<std::uint64_t>(inner_steps)))
            : -1;
    if (mode == OuterMode::AverageInner) accum.setZero();
    for (std::int64_t k = 0; k < inner_steps; ++k) {
      if (options.probe)
        options.probe(s * inner_steps + k, x, SvrpAnchorState{anchor, gbar});
      if (k == pick) picked = x;
      if (mode == OuterMode::AverageInner) accum += x;
      const Index i = static_cast<Index>(rng.uniform_below(n));
      z = x - alpha * gbar;
      z.noalias() += (alpha * coeff[i]) * problem.design().row(i).transpose();
      prox_component_inplace(problem, i, alpha, z);
      x.swap(z);
    }
    switch (mode) {
      case OuterMode::RandomInner:
        anchor = picked;
        break;
      case OuterMode::AverageInner:
        anchor = accum / static_cast<double>(inner_steps);
        break;
      case OuterMode::LastInner:
        anchor = x;
        tb.mark_uncertified();
        break;
    }
    calls += inner_steps + n + 1;
    ++stages;
    live = tb.record(s + 1, anchor, calls);
  }
  return tb.finish(stages, calls, std::move(anchor));
}

RunTrace run_lsvrp(const FiniteSumProblem& problem, double alpha,
                   double refresh_prob, const Vector& x0,
                   std::int64_t num_steps, RunSeed seed,
                   const RunOptions& options) {
  if (!(alpha > 0)) throw std::invalid_argument("run_lsvrp: alpha must be positive");
  if (!(refresh_prob > 0.0 && refresh_prob <= 1.0))
    throw std::invalid_argument("run_lsvrp: p must lie in (0, 1]");
  if (num_steps < 1) throw std::invalid_argument("run_lsvrp: num_steps must be >= 1");
  validate_start(problem, x0);

  const Index n = problem.num_components();
  CounterRng rng(seed.master, seed.stream);
  TraceBuilder tb(problem, options);

  Vector x = x0;
  Vector anchor = x0;
  Vector z(problem.dimension());
  Vector gbar(problem.dimension());
  Vector coeff(n);
  anchored_coefficients(problem, anchor, coeff, gbar);
  std::int64_t calls = n;
  std::int64_t k = 0;
  bool live = tb.record(0, x, calls);
  while (k < num_steps && live) {
    if (options.probe)
      options.probe(k, x, LsvrpAnchorState{anchor, gbar, refresh_prob});
    const Index i = static_cast<Index>(rng.uniform_below(n));
    z = x - alpha * gbar;
    z.noalias() += (alpha * coeff[i]) * problem.design().row(i).transpose();
    prox_component_inplace(problem, i, alpha, z);
    // The anchor moves to the pre-step iterate x^k, not to x^{k+1}.
    if (rng.bernoulli(refresh_prob)) {
      anchor = x;
      anchored_coefficients(problem, anchor, coeff, gbar);
      calls += n;
    }
    x.swap(z);
    ++k;
    ++calls;
    if (tb.due(k)) live = tb.record(k, x, calls);
  }
  if (live) tb.record_final(k, x, calls);
  return tb.finish(k, calls, std::move(x));
}

RunTrace run_sapa(const FiniteSumProblem& problem, double alpha,
                  const Vector& x0, std::int64_t num_steps, RunSeed seed,
                  const RunOptions& options) {
  if (!(alpha > 0)) throw std::invalid_argument("run_sapa: alpha must be positive");
  if (num_steps < 1) throw std::invalid_argument("run_sapa: num_steps must be >= 1");
  validate_start(problem, x0);

  const Index n = problem.num_components();
  const double inv_n = 1.0 / static_cast<double>(n);
  CounterRng rng(seed.master, seed.stream);
  TraceBuilder tb(problem, options);

  Vector x = x0;
  Vector z(problem.dimension());
  RowMatrix table(n, problem.dimension());
  Vector gsum = Vector::Zero(problem.dimension());
  for (Index i = 0; i < n; ++i) {
    const double t = problem.design().row(i).dot(x0);
    const double c = loss_derivative(problem.loss(), t, problem.labels()[i]);
    table.row(i) = c * problem.design().row(i);
    gsum.noalias() += table.row(i).transpose();
  }
  std::int64_t calls = n;
  std::int64_t k = 0;
  std::int64_t resync_countdown = kTableResyncInterval;
  bool live = tb.record(0, x, calls);
  while (k < num_steps && live) {
    if (options.probe) options.probe(k, x, SapaTableState{table, gsum});
    const Index i = static_cast<Index>(rng.uniform_below(n));
    z = x - (alpha * inv_n) * gsum;
    z.noalias() += alpha * table.row(i).transpose();
    // Gradient at the pre-step iterate x^k feeds the table slot.
    const double t_prev = problem.design().row(i).dot(x);
    const double c_prev =
        loss_derivative(problem.loss(), t_prev, problem.labels()[i]);
    prox_component_inplace(problem, i, alpha, z);
    x.swap(z);
    gsum.noalias() +=
        (c_prev * problem.design().row(i) - table.row(i)).transpose();
    table.row(i) = c_prev * problem.design().row(i);
    ++k;
    ++calls;
    if (--resync_countdown == 0) {
      gsum = table.colwise().sum().transpose();
      resync_countdown = kTableResyncInterval;
    }
    if (tb.due(k)) live = tb.record(k, x, calls);
  }
  if (live) tb.record_final(k, x, calls);
  return tb.finish(k, calls, std::move(x));
}

RunTrace run_sgd(const FiniteSumProblem& problem, const StepSchedule& schedule,
                 const Vector& x0, std::int64_t num_steps, RunSeed seed,
                 const RunOptions& options) {
  if (num_steps < 1) throw std::invalid_argument("run_sgd: num_steps must be >= 1");
  validate_start(problem, x0);
  const Index n = problem.num_components();
  CounterRng rng(seed.master, seed.stream);
  TraceBuilder tb(problem, options);

  Vector x = x0;
  std::int64_t calls = 0;
  std::int64_t k = 0;
  bool live = tb.record(0, x, 0);
  const ReducerState no_state{};
  while (k < num_steps && live) {
    if (options.probe) options.probe(k, x, no_state);
    const Index i = static_cast<Index>(rng.uniform_below(n));
    const double t = problem.design().row(i).dot(x);
    if (!std::isfinite(t)) {
      tb.mark_diverged();
      live = false;
      break;
    }
    const double c = loss_derivative(problem.loss(), t, problem.labels()[i]);
    x.noalias() -=
        (schedule.at(k) * c) * problem.design().row(i).transpose();
    ++k;
    ++calls;
    if (tb.due(k)) live = tb.record(k, x, calls);
  }
  if (live) tb.record_final(k, x, calls);
  return tb.finish(k, calls, std::move(x));
}

RunTrace run_svrg(const FiniteSumProblem& problem, double alpha,
                  std::int64_t inner_steps, std::int64_t outer_stages,
                  const Vector& x0, RunSeed seed, OuterMode mode,
                  const RunOptions& options) {
  if (!(alpha > 0)) throw std::invalid_argument("run_svrg: alpha must be positive");
  if (inner_steps < 1 || outer_stages < 1)
    throw std::invalid_argument("run_svrg: m and S must be >= 1");
  validate_start(problem, x0);

  const Index n = problem.num_components();
  CounterRng rng(seed.master, seed.stream);
  TraceBuilder tb(problem, options);

  Vector anchor = x0;
  Vector x(problem.dimension());
  Vector gbar(problem.dimension());
  Vector coeff(n);
  Vector accum(problem.dimension());
  Vector picked(problem.dimension());
  std::int64_t calls = 0;
  std::int64_t stages = 0;

  bool live = tb.record(0, anchor, 0);
  for (std::int64_t s = 0; s < outer_stages && live; ++s) {
    anchored_coefficients(problem, anchor, coeff, gbar);
    x = anchor;
    const std::int64_t pick =
        mode == OuterMode::RandomInner
            ? static_cast<std::int64_t>(rng.uniform_below(
                  static_cast<std::uint64_t>(inner_steps)))
            : -1;
    if (mode == OuterMode::AverageInner) accum.setZero();
    bool stage_ok = true;
    for (std::int64_t k = 0; k < inner_steps && stage_ok; ++k) {
      if (options.probe)
        options.probe(s * inner_steps + k, x, SvrpAnchorState{anchor, gbar});
      if (k == pick) picked = x;
      if (mode == OuterMode::AverageInner) accum += x;
      const Index i = static_cast<Index>(rng.uniform_below(n));
      const double t = problem.design().row(i).dot(x);
      if (!std::isfinite(t)) {
        tb.mark_diverged();
        stage_ok = false;
        break;
      }
      const double c = loss_derivative(problem.loss(), t, problem.labels()[i]);
      x.noalias() -=
          (alpha * (c - coeff[i])) * problem.design().row(i).transpose();
      x.noalias() -= alpha * gbar;
    }
    if (!stage_ok) {
      live = false;
      break;
    }
    switch (mode) {
      case OuterMode::RandomInner:
        anchor = picked;
        break;
      case OuterMode::AverageInner:
        anchor = accum / static_cast<double>(inner_steps);
        break;
      case OuterMode::LastInner:
        anchor = x;
        tb.mark_uncertified();
        break;
    }
    calls += inner_steps + n + 1;
    ++stages;
    live = tb.record(s + 1, anchor, calls);
  }
  return tb.finish(stages, calls, std::move(anchor));
}

RunTrace run_saga(const FiniteSumProblem& problem, double alpha,
                  const Vector& x0, std::int64_t num_steps, RunSeed seed,
                  const RunOptions& options) {
  if (!(alpha > 0)) throw std::invalid_argument("run_saga: alpha must be positive");
  if (num_steps < 1) throw std::invalid_argument("run_saga: num_steps must be >= 1");
  validate_start(problem, x0);

  const Index n = problem.num_components();
  const double inv_n = 1.0 / static_cast<double>(n);
  CounterRng rng(seed.master, seed.stream);
  TraceBuilder tb(problem, options);

  Vector x = x0;
  RowMatrix table(n, problem.dimension());
  Vector gsum = Vector::Zero(problem.dimension());
  for (Index i = 0; i < n; ++i) {
    const double t = problem.design().row(i).dot(x0);
    const double c = loss_derivative(problem.loss(), t, problem.labels()[i]);
    table.row(i) = c * problem.design().row(i);
    gsum.noalias() += table.row(i).transpose();
  }
  std::int64_t calls = n;
  std::int64_t k = 0;
  std::int64_t resync_countdown = kTableResyncInterval;
  bool live = tb.record(0, x, calls);
  while (k < num_steps && live) {
    if (options.probe) options.probe(k, x, SapaTableState{table, gsum});
    const Index i = static_cast<Index>(rng.uniform_below(n));
    const double t = problem.design().row(i).dot(x);
    if (!std::isfinite(t)) {
      tb.mark_diverged();
      live = false;
      break;
    }
    const double c = loss_derivative(problem.loss(), t, problem.labels()[i]);
    // Step direction uses the old table slot; the slot then takes the
    // just-computed gradient at x^k.
    x.noalias() -= (alpha * c) * problem.design().row(i).transpose();
    x.noalias() += alpha * table.row(i).transpose();
    x.noalias() -= (alpha * inv_n) * gsum;
    gsum.noalias() +=
        (c * problem.design().row(i) - table.row(i)).transpose();
    table.row(i) = c * problem.design().row(i);
    ++k;
    ++calls;
    if (--resync_countdown == 0) {
      gsum = table.colwise().sum().transpose();
      resync_countdown = kTableResyncInterval;
    }
    if (tb.due(k)) live = tb.record(k, x, calls);
  }
  if (live) tb.record_final(k, x, calls);
  return tb.finish(k, calls, std::move(x));
}

Vector weighted_average_iterate(const RunTrace& trace,
                                std::span<const double> weights) {
  if (trace.iterates.empty())
    throw std::invalid_argument("weighted_average_iterate: trace stores no iterates");
  if (weights.size() != trace.iterates.size())
    throw std::invalid_argument("weighted_average_iterate: weights length mismatch");
  double total = 0.0;
  for (const double w : weights) {
    if (w < 0) throw std::invalid_argument("weighted_average_iterate: negative weight");
    total += w;
  }
  if (!(total > 0))
    throw std::invalid_argument("weighted_average_iterate: weights sum to zero");
  Vector out = Vector::Zero(trace.iterates.front().size());
  for (std::size_t t = 0; t < trace.iterates.size(); ++t)
    out.noalias() += weights[t] * trace.iterates[t];
  return out / total;
}

}  // namespace vrprox
