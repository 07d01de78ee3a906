#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "atom.hpp"
#include "laser.hpp"
#include "materials.hpp"
#include "quad.hpp"

namespace cpneq {

// One scan dimension as written in the config: name fixes the swept
// quantity and its boundary unit (angles in degrees, converted on entry).
struct ScanAxisSpec {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 1;
  bool log_scale = false;
};

struct DispersionSpec {
  double k_min = 0.0;  // 0 -> task default
  double k_max = 0.0;
  int count = 200;
  double L = 0.0;  // residue evaluation height; 0 -> lambda_p of the film
};

// Fully materialized run description: tables loaded, angles in radians,
// defaults applied. hash is FNV-1a over the canonical serialized form and
// is echoed into every output header.
struct RunConfig {
  LayerStack stack{TabulatedDielectric::builtin_sapphire(), gold_drude(),
                   50e-9};
  bool atom_is_rb = true;
  TwoLevelAtom two_level = atom_from_volume(2.4e15, 46e-30);
  double T = 300.0;
  double T_a = 300.0;
  double T_sp = 300.0;
  std::vector<double> T_sp_list;
  std::vector<LaserBeam> beams;
  std::vector<ScanAxisSpec> axes;
  std::string quantity;  // "", "features", "potential"
  DispersionSpec dispersion;
  double L_eval = 200e-9;
  double x_eval = 0.0;
  double t_eval = 0.0;
  double delta_zeta = 0.0;
  std::string out_format = "csv";
  std::string out_units = "both";
  std::string out_path;
  bool strict = false;
  QuadCfg quad;
  int threads = 0;
  std::uint64_t hash = 0;
};

// Strict parse: unknown keys anywhere are a ConfigError, as are type or
// domain mistakes the schema can catch. Table-file problems keep their
// DomainError identity (exit code 4, not 2).
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// CPNEQ_DATA_DIR when set, else the baked-in default. Relative glass-table
// paths resolve against this.
std::string data_dir();

std::uint64_t fnv1a64(std::string_view s);

}  // namespace cpneq
