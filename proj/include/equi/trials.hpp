#pragma once

// Independent seeded trials: a serial reference loop and an OpenMP loop that
// must produce the same rows in the same order.

#include <cstdint>
#include <exception>
#include <vector>

#include <omp.h>

namespace equi {

/// Seed of trial `index` for a run started with `base`.
inline std::uint64_t trial_seed(std::uint64_t base, int index) {
  return base + static_cast<std::uint64_t>(index);
}

template <class F>
auto run_trials_serial(int trials, std::uint64_t base_seed, F&& trial) {
  using Row = decltype(trial(0, std::uint64_t{}));
  std::vector<Row> rows;
  rows.reserve(trials);
  for (int i = 0; i < trials; ++i) rows.push_back(trial(i, trial_seed(base_seed, i)));
  return rows;
}

/// Same rows as run_trials_serial; `threads` <= 0 uses the OpenMP default.
/// The first exception thrown by any trial is rethrown after the loop.
template <class F>
auto run_trials_parallel(int trials, std::uint64_t base_seed, int threads, F&& trial) {
  using Row = decltype(trial(0, std::uint64_t{}));
  std::vector<Row> rows(trials);
  std::exception_ptr error;
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (int i = 0; i < trials; ++i) {
    try {
      rows[i] = trial(i, trial_seed(base_seed, i));
    } catch (...) {
#pragma omp critical(equi_trial_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

template <class F>
auto run_trials(int trials, std::uint64_t base_seed, int threads, F&& trial) {
  if (threads == 1) return run_trials_serial(trials, base_seed, trial);
  return run_trials_parallel(trials, base_seed, threads, trial);
}

}  // namespace equi
