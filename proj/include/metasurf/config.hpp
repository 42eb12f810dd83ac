#ifndef METASURF_CONFIG_HPP
#define METASURF_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "metasurf/geometry.hpp"
#include "metasurf/impedance.hpp"

namespace metasurf {

struct GeometryConfig {
  std::string kind;  // disk | star | multi
  CellPoint center;
  double radius = 0.0;       // disk
  double base_radius = 0.0;  // star
  double amplitude = 0.0;
  int lobes = 0;
  int nodes = 128;
  std::vector<GeometryConfig> parts;  // multi
};

struct MultistartConfig {
  int count = 1;
  unsigned long long seed = 0;
  double amplitude = 0.0;  // random Fourier perturbation of the start shape
};

struct OptimizeConfig {
  double wavelength_nm = 625.0;
  int steps = 20;
  int modes = 16;
  double initial_move = 0.02;
  MultistartConfig multistart;
};

struct ProjectConfig {
  int schema_version = 1;
  GeometryConfig geometry;
  double start_nm = 300.0;
  double stop_nm = 1500.0;
  int count = 241;
  DrudeParams material;
  double delta = 0.05;
  double incidence_deg = 0.0;  // from vertical
  int threads = 0;             // 0 = hardware concurrency
  OptimizeConfig optimize;
};

ProjectConfig load_config(const std::string& path);
ProjectConfig parse_config(const std::string& json_text);
ParticleBoundary build_geometry(const GeometryConfig& g);

}  // namespace metasurf

#endif
