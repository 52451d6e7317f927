#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rabi/config.hpp"
#include "rabi/cycle.hpp"
#include "rabi/measures.hpp"

namespace rabi {

struct SweepRow {
  int index = 0;
  CycleSpec spec;
  std::optional<CycleResult> result;
  std::optional<MeasureReport> hot;
  std::optional<MeasureReport> cold;
  std::string error;
};

/// Cycle result plus, optionally, measures of the hot (T_h) and cold (T_l) Gibbs states.
SweepRow evaluate_point(const CycleSpec& spec, bool with_measures, int index = 0);

/// Rows in grid order. Per-point failures land in the error field.
std::vector<SweepRow> run_sweep(const SweepGrid& grid, bool with_measures, int workers = 1);

/// Runs fn(i) for i in [0, count) on a pool of worker threads.
template <class Fn>
void parallel_for(int count, int workers, Fn&& fn);

}  // namespace rabi

#include "rabi/detail/parallel_for.hpp"
