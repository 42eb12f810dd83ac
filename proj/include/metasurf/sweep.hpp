#ifndef METASURF_SWEEP_HPP
#define METASURF_SWEEP_HPP

#include <functional>
#include <string>

#include "metasurf/config.hpp"
#include "metasurf/shape_optim.hpp"

namespace metasurf {

struct SweepRow {
  double wavelength_nm = 0.0;
  Cplx alpha;
  Cplx z;
  int dominant_mode = -1;
  double dominant_lambda = 0.0;
  bool ok = false;
  std::string error;
};

struct Peak {
  int index;
  double wavelength_nm;
  double abs_alpha;
  double prominence;  // relative to the global max
  int dominant_mode;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<Peak> peaks;
  int failures = 0;
};

struct OutputOptions {
  std::string out_dir = ".";
  bool svg = true;
  bool timestamp = true;
  bool dump_operators = false;
};

// Peaks: samples exceeding both neighbours with topographic prominence at
// least min_prominence_frac of the global maximum.
std::vector<Peak> find_peaks(const std::vector<double>& values,
                             double min_prominence_frac);

// One row per wavelength; operators and spectrum are built once, wavelength
// evaluations run on a worker pool, output is assembled in wavelength order.
SweepResult run_sweep(const ProjectConfig& cfg);
SweepResult run_sweep(const ProjectConfig& cfg, const OutputOptions& out);

struct OptimizeOutcome {
  std::vector<AscentResult> runs;  // one per multistart shape
};

OptimizeOutcome run_optimize(const ProjectConfig& cfg, const OutputOptions& out);

// Locale-independent shortest-round-trip formatting (used by all CSV output).
std::string format_double(double v);
std::string csv_timestamp_line();

}  // namespace metasurf

#endif
