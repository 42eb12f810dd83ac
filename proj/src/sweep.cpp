#include "metasurf/sweep.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>

#include "metasurf/parallel.hpp"
#include "metasurf/svg.hpp"

namespace metasurf {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_timestamp_line() {
  const std::time_t now = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return std::string("# generated ") + buf;
}

std::vector<Peak> find_peaks(const std::vector<double>& y, double min_prom_frac) {
  std::vector<Peak> peaks;
  const int n = static_cast<int>(y.size());
  if (n < 3) return peaks;
  double gmax = 0.0;
  for (double v : y) gmax = std::max(gmax, v);
  if (gmax <= 0.0) return peaks;
  for (int i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1] && y[i] > y[i + 1])) continue;
    // Walk outward to the nearest higher ground on each side; the prominence
    // is the drop to the higher of the two intervening minima.
    double lmin = y[i];
    for (int j = i - 1; j >= 0; --j) {
      if (y[j] > y[i]) break;
      lmin = std::min(lmin, y[j]);
    }
    double rmin = y[i];
    for (int j = i + 1; j < n; ++j) {
      if (y[j] > y[i]) break;
      rmin = std::min(rmin, y[j]);
    }
    const double prom = (y[i] - std::max(lmin, rmin)) / gmax;
    if (prom >= min_prom_frac) peaks.push_back({i, 0.0, y[i], prom, -1});
  }
  return peaks;
}

namespace {

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& res,
                     bool timestamp) {
  std::ofstream out(path, std::ios::binary);
  if (timestamp) out << csv_timestamp_line() << "\n";
  out << "wavelength_nm,re_alpha,im_alpha,abs_alpha,re_z,im_z,"
         "dominant_mode_index,dominant_mode_lambda\n";
  for (const auto& r : res.rows) {
    out << format_double(r.wavelength_nm) << ',' << format_double(r.alpha.real())
        << ',' << format_double(r.alpha.imag()) << ','
        << format_double(std::abs(r.alpha)) << ',' << format_double(r.z.real())
        << ',' << format_double(r.z.imag()) << ',' << r.dominant_mode << ','
        << format_double(r.dominant_lambda) << "\n";
  }
  for (const auto& p : res.peaks)
    out << "# peak," << format_double(p.wavelength_nm) << ','
        << format_double(p.abs_alpha) << ',' << format_double(p.prominence) << ','
        << p.dominant_mode << "\n";
}

void dump_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path, std::ios::binary);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << "\n";
  }
}

}  // namespace

SweepResult run_sweep(const ProjectConfig& cfg) {
  OutputOptions out;
  out.svg = false;
  out.out_dir.clear();  // no files
  return run_sweep(cfg, out);
}

SweepResult run_sweep(const ProjectConfig& cfg, const OutputOptions& out) {
  const ParticleBoundary boundary = build_geometry(cfg.geometry);
  const PeriodicOperators ops = assemble(boundary);
  const SpectralDecomposition spec = eigendecompose(ops, boundary);

  SweepResult res;
  res.rows.resize(cfg.count);
  std::atomic<int> failures{0};
  parallel_for(cfg.count, cfg.threads, [&](int i) {
    SweepRow& row = res.rows[i];
    row.wavelength_nm =
        cfg.start_nm + (cfg.stop_nm - cfg.start_nm) * i / double(cfg.count - 1);
    try {
      const MaterialState mat = drude_gold(row.wavelength_nm * 1e-9, cfg.material);
      ImpedanceResult imp = alpha_inf_spectral(spec, boundary, mat.lambda_mu);
      row.alpha = imp.alpha_inf;
      row.z = imp.impedance_z;
      row.dominant_mode = imp.dominant_mode;
      row.dominant_lambda = imp.dominant_lambda;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
      row.alpha = row.z = Cplx(std::nan(""), std::nan(""));
      failures.fetch_add(1);
    }
  });
  res.failures = failures.load();

  std::vector<double> mags(res.rows.size(), 0.0);
  for (size_t i = 0; i < res.rows.size(); ++i)
    mags[i] = res.rows[i].ok ? std::abs(res.rows[i].alpha) : 0.0;
  res.peaks = find_peaks(mags, 0.05);
  for (auto& p : res.peaks) {
    p.wavelength_nm = res.rows[p.index].wavelength_nm;
    p.dominant_mode = res.rows[p.index].dominant_mode;
  }

  if (!out.out_dir.empty()) {
    const std::filesystem::path dir(out.out_dir);
    std::filesystem::create_directories(dir);
    write_sweep_csv(dir / "sweep.csv", res, out.timestamp);
    if (out.svg) {
      std::vector<double> xs;
      for (const auto& r : res.rows) xs.push_back(r.wavelength_nm);
      write_line_chart((dir / "sweep.svg").string(), xs, mags,
                       "|alpha_inf| vs wavelength", "wavelength [nm]",
                       "|alpha_inf|");
    }
    if (out.dump_operators) {
      dump_matrix_csv(dir / "operator_single_layer.csv", ops.S);
      dump_matrix_csv(dir / "operator_np.csv", ops.K);
      dump_matrix_csv(dir / "gram.csv", ops.gram);
      std::ofstream eig(dir / "eigenvalues.csv", std::ios::binary);
      eig << "index,lambda,coupling_nu2,pairing_y2\n";
      for (int j = 0; j < spec.lambda.size(); ++j)
        eig << j << ',' << format_double(spec.lambda(j)) << ','
            << format_double(spec.coupling_nu2(j)) << ','
            << format_double(spec.pairing_y2(j)) << "\n";
    }
  }
  return res;
}

OptimizeOutcome run_optimize(const ProjectConfig& cfg, const OutputOptions& out) {
  const ParticleBoundary start = build_geometry(cfg.geometry);
  const MaterialState mat =
      drude_gold(cfg.optimize.wavelength_nm * 1e-9, cfg.material);

  AscentOptions opts;
  opts.steps = cfg.optimize.steps;
  opts.modes = cfg.optimize.modes;
  opts.initial_move = cfg.optimize.initial_move;

  // Multistart: shape 0 is the configured geometry, the rest are seeded
  // random Fourier perturbations of it.
  std::mt19937_64 rng(cfg.optimize.multistart.seed);
  std::vector<ParticleBoundary> starts;
  starts.push_back(start);
  for (int k = 1; k < cfg.optimize.multistart.count; ++k) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(start.size());
    for (const auto& c : start.components) {
      for (int m = 1; m <= 4; ++m) {
        const double a = gauss(rng), b = gauss(rng);
        for (int i = 0; i < c.size(); ++i) {
          const double t = start.param(c.begin + i);
          h(c.begin + i) += a * std::cos(m * t) + b * std::sin(m * t);
        }
      }
    }
    const double scale = h.cwiseAbs().maxCoeff();
    starts.push_back(
        perturb(start, {h, cfg.optimize.multistart.amplitude / std::max(scale, 1e-30)}));
  }

  OptimizeOutcome outcome;
  const std::filesystem::path dir(out.out_dir.empty() ? "." : out.out_dir);
  std::filesystem::create_directories(dir);
  for (size_t k = 0; k < starts.size(); ++k) {
    AscentResult run = ascend_j(starts[k], mat.mu_ratio, opts);
    const std::string suffix = starts.size() > 1 ? "_" + std::to_string(k) : "";
    std::ofstream csv(dir / ("trajectory" + suffix + ".csv"), std::ios::binary);
    if (out.timestamp) csv << csv_timestamp_line() << "\n";
    csv << "iteration,j_value,grad_norm,step";
    const size_t ncoef = run.trajectory.empty() ? 0 : run.trajectory[0].boundary_coeffs.size();
    for (size_t c = 0; c < ncoef; ++c) csv << ",c" << c;
    csv << "\n";
    for (const auto& rowt : run.trajectory) {
      csv << rowt.iteration << ',' << format_double(rowt.j_value) << ','
          << format_double(rowt.grad_norm) << ',' << format_double(rowt.step);
      for (double cv : rowt.boundary_coeffs) csv << ',' << format_double(cv);
      csv << "\n";
    }
    csv << "# status," << run.status << "\n";
    if (out.svg)
      write_boundary_chart((dir / ("boundary" + suffix + ".svg")).string(),
                           starts[k], run.boundary);
    outcome.runs.push_back(std::move(run));
  }
  return outcome;
}

}  // namespace metasurf
