#include <CLI11.hpp>
#include <iostream>

#include "metasurf/sweep.hpp"
#include "metasurf/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerify = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective impedance of a periodic plasmonic monolayer on a plate"};
  app.require_subcommand(1);

  std::string config_path;
  metasurf::OutputOptions out;
  int threads = -1;  // -1: take from config

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out-dir", out.out_dir, "Output directory");
    cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");
    cmd->add_flag("!--no-svg", out.svg, "Skip SVG plots");
    cmd->add_flag("!--no-timestamp", out.timestamp,
                  "Omit the timestamp header line for byte-stable output");
    cmd->add_flag("--dump-operators", out.dump_operators,
                  "Dump operator matrices and spectrum to CSV");
  };

  CLI::App* sweep = app.add_subcommand("sweep", "Wavelength sweep of alpha_inf");
  sweep->add_option("config", config_path, "JSON config")->required();
  add_common(sweep);

  CLI::App* opt = app.add_subcommand("optimize", "Gradient ascent on |alpha_inf|^2/2");
  opt->add_option("config", config_path, "JSON config")->required();
  add_common(opt);

  bool fast = false;
  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_flag("--fast", fast, "Reduced grids and probes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      metasurf::ProjectConfig cfg = metasurf::load_config(config_path);
      if (threads >= 0) cfg.threads = threads;
      const metasurf::SweepResult res = metasurf::run_sweep(cfg, out);
      std::cout << "sweep: " << res.rows.size() << " wavelengths, "
                << res.peaks.size() << " peak(s)";
      for (const auto& p : res.peaks)
        std::cout << "  [" << p.wavelength_nm << " nm, |alpha|=" << p.abs_alpha
                  << "]";
      std::cout << "\n";
      if (res.failures > 0) {
        std::cerr << res.failures << " wavelength(s) failed numerically\n";
        return kExitNumerical;
      }
      return kExitOk;
    }
    if (opt->parsed()) {
      metasurf::ProjectConfig cfg = metasurf::load_config(config_path);
      if (threads >= 0) cfg.threads = threads;
      const metasurf::OptimizeOutcome res = metasurf::run_optimize(cfg, out);
      for (size_t k = 0; k < res.runs.size(); ++k) {
        const auto& t = res.runs[k].trajectory;
        std::cout << "run " << k << ": J " << t.front().j_value << " -> "
                  << t.back().j_value << " in " << t.size() - 1 << " step(s), "
                  << res.runs[k].status << "\n";
      }
      return kExitOk;
    }
    if (verify->parsed()) {
      metasurf::VerifyOptions vo;
      vo.fast = fast;
      const metasurf::VerifyReport rep = metasurf::run_verify(vo);
      metasurf::print_report(rep, std::cout);
      return rep.passed() ? kExitOk : kExitVerify;
    }
  } catch (const metasurf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const metasurf::GeometryError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const metasurf::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
