#include "rabi/sweep.hpp"

#include <exception>

namespace rabi {

SweepRow evaluate_point(const CycleSpec& spec, bool with_measures, int index) {
  SweepRow row;
  row.index = index;
  row.spec = spec;
  try {
    const StageSpectra stages = stage_hamiltonians(spec);
    row.result = cycle_from_spectra(stages, spec.T_h, spec.T_l);
    if (with_measures) {
      row.hot = measure(DensityMatrix::from_thermal(gibbs_state(stages.hot, spec.T_h), stages.hot.basis));
      row.cold = measure(DensityMatrix::from_thermal(gibbs_state(stages.cold, spec.T_l), stages.cold.basis));
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepGrid& grid, bool with_measures, int workers) {
  grid.validate();
  std::vector<SweepRow> rows(grid.points);
  parallel_for(grid.points, workers, [&](int i) {
    CycleSpec spec;
    try {
      spec = grid.spec_at(i);
    } catch (const std::exception& e) {
      rows[i].index = i;
      rows[i].spec = grid.fixed;
      rows[i].error = e.what();
      return;
    }
    rows[i] = evaluate_point(spec, with_measures, i);
  });
  return rows;
}

}  // namespace rabi
