#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "core/config.hpp"
#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/materials.hpp"
#include "core/quad.hpp"

using namespace cpneq;
using doctest::Approx;

TEST_CASE("empty config carries the documented defaults") {
  const RunConfig cfg = parse_config("{}");
  CHECK(cfg.atom_is_rb);
  CHECK(cfg.T == 300.0);
  CHECK(cfg.T_a == 300.0);
  CHECK(cfg.T_sp == 300.0);
  CHECK(cfg.T_sp_list.empty());
  CHECK(cfg.beams.empty());
  CHECK(cfg.axes.empty());
  CHECK(cfg.quantity.empty());
  CHECK(cfg.L_eval == 200e-9);
  CHECK(cfg.x_eval == 0.0);
  CHECK(cfg.t_eval == 0.0);
  CHECK(cfg.delta_zeta == 0.0);
  CHECK(cfg.out_format == "csv");
  CHECK(cfg.out_units == "both");
  CHECK(cfg.out_path.empty());
  CHECK(!cfg.strict);
  CHECK(cfg.threads == 0);
  CHECK(cfg.stack.thickness == 50e-9);
  CHECK(cfg.stack.film.omega_p == gold_drude().omega_p);
  CHECK(cfg.stack.film.gamma == gold_drude().gamma);
  CHECK(cfg.dispersion.k_min == 0.0);
  CHECK(cfg.dispersion.k_max == 0.0);
  CHECK(cfg.dispersion.count == 200);
  CHECK(cfg.dispersion.L == 0.0);
  // quadrature at the relaxed defaults
  CHECK(cfg.quad.gl_order == QuadCfg{}.gl_order);
  // the hash every output header echoes for an empty config
  CHECK(cfg.hash == 0x08f44b07b5901a25ull);
}

TEST_CASE("unknown keys are refused at every level") {
  const char* bad[] = {
      R"({"bogus": 1})",
      R"({"material": {"bogus": 1}})",
      R"({"atom": {"bogus": 1}})",
      R"({"temperature": {"bogus": 1}})",
      R"({"beams": [{"omega_rad_s": 24.6e14, "theta_deg": 40, "power_W": 1,
                     "waist_m": 1e-4, "bogus": 1}]})",
      R"({"scan": {"bogus": 1}})",
      R"({"scan": {"axes": [{"name": "L_m", "min": 1e-9, "bogus": 1}]}})",
      R"({"dispersion": {"bogus": 1}})",
      R"({"evaluation": {"bogus": 1}})",
      R"({"output": {"bogus": 1}})",
      R"({"numerics": {"bogus": 1}})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    try {
      parse_config(text);
      CHECK(false);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("bogus") != std::string::npos);
      CHECK(e.code == 2);
    }
  }
}

TEST_CASE("malformed roots and types") {
  CHECK_THROWS_AS(parse_config("not json at all"), ConfigError);
  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"material": 3})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"beams": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"threads": 2.5})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"threads": -1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"numerics": {"strict": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"temperature": {"T_K": "hot"}})"),
                  ConfigError);
}

TEST_CASE("atom block") {
  CHECK(parse_config(R"({"atom": {"model": "rb"}})").atom_is_rb);

  const RunConfig two = parse_config(
      R"({"atom": {"model": "two_level", "omega_a_rad_s": 2.4e15,
                   "alpha0_vol_m3": 46e-30}})");
  CHECK(!two.atom_is_rb);
  CHECK(two.two_level.omega_a == 2.4e15);
  CHECK(two.two_level.alpha0_si ==
        Approx(46e-30 * four_pi_eps0).epsilon(1e-14));

  CHECK_THROWS_AS(parse_config(R"({"atom": {"model": "cs"}})"), ConfigError);
  // rb takes no two-level parameters
  CHECK_THROWS_AS(
      parse_config(R"({"atom": {"model": "rb", "omega_a_rad_s": 1e15}})"),
      ConfigError);
  // two_level needs both parameters
  CHECK_THROWS_AS(
      parse_config(R"({"atom": {"model": "two_level", "omega_a_rad_s": 1e15}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(
          R"({"atom": {"model": "two_level", "omega_a_rad_s": -1e15,
                       "alpha0_vol_m3": 46e-30}})"),
      ConfigError);
}

TEST_CASE("temperature block") {
  const RunConfig cfg = parse_config(
      R"({"temperature": {"T_K": 250, "T_sp_K": 1100,
                          "T_sp_K_list": [1100, 2000]}})");
  CHECK(cfg.T == 250.0);
  CHECK(cfg.T_a == 250.0);  // follows T_K unless given
  CHECK(cfg.T_sp == 1100.0);
  REQUIRE(cfg.T_sp_list.size() == 2);
  CHECK(cfg.T_sp_list[0] == 1100.0);
  CHECK(cfg.T_sp_list[1] == 2000.0);

  CHECK(parse_config(R"({"temperature": {"T_a_K": 10}})").T_a == 10.0);
  CHECK_THROWS_AS(parse_config(R"({"temperature": {"T_K": -1}})"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"temperature": {"T_sp_K_list": [-5]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"temperature": {"T_sp_K_list": 7}})"),
                  ConfigError);
}

TEST_CASE("beam block with angle resolution") {
  const std::string base =
      R"({"beams": [{"omega_rad_s": 24.6e14, "power_W": 0.2,
                     "waist_m": 180e-6, )";

  const RunConfig abs =
      parse_config(base + R"("theta_deg": 40}]})");
  REQUIRE(abs.beams.size() == 1);
  CHECK(abs.beams[0].theta == Approx(40.0 * pi / 180.0).epsilon(1e-15));
  CHECK(abs.beams[0].power == 0.2);
  CHECK(abs.beams[0].waist == 180e-6);
  CHECK(abs.beams[0].phase == 0.0);
  CHECK(abs.beams[0].direction == 1);

  // an offset counts from the total-internal-reflection angle of the glass
  const RunConfig off =
      parse_config(base + R"("theta_offset_deg": 0.7}]})");
  const double want =
      tir_angle(TabulatedDielectric::builtin_sapphire(), 24.6e14) +
      0.7 * pi / 180.0;
  CHECK(off.beams[0].theta == Approx(want).epsilon(1e-14));

  // exactly one of the two angle spellings
  CHECK_THROWS_AS(
      parse_config(base + R"("theta_deg": 40, "theta_offset_deg": 0.7}]})"),
      ConfigError);
  CHECK_THROWS_AS(parse_config(base + "}]}"), ConfigError);

  CHECK_THROWS_AS(
      parse_config(
          R"({"beams": [{"omega_rad_s": 24.6e14, "theta_deg": 40}]})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"beams": [{"theta_deg": 40, "power_W": 1,
                                  "waist_m": 1e-4}]})"),
      ConfigError);

  // two beams fine, three refused
  const std::string one =
      R"({"omega_rad_s": 24.6e14, "theta_deg": 40, "power_W": 1,
          "waist_m": 1e-4})";
  CHECK(parse_config(R"({"beams": [)" + one + "," + one + "]}").beams.size() ==
        2);
  CHECK_THROWS_AS(
      parse_config(R"({"beams": [)" + one + "," + one + "," + one + "]}"),
      ConfigError);

  const RunConfig dir = parse_config(
      R"({"beams": [{"omega_rad_s": 24.6e14, "theta_deg": 40, "power_W": 1,
                     "waist_m": 1e-4, "phase_rad": 0.4, "direction": -1}]})");
  CHECK(dir.beams[0].phase == 0.4);
  CHECK(dir.beams[0].direction == -1);
}

TEST_CASE("scan block") {
  const RunConfig cfg = parse_config(
      R"({"scan": {"quantity": "features",
                   "axes": [{"name": "theta_b_deg", "min": 34.4, "max": 35.4,
                             "count": 60},
                            {"name": "L_m", "min": 2e-8, "max": 5e-6,
                             "count": 160, "scale": "log"}]}})");
  CHECK(cfg.quantity == "features");
  REQUIRE(cfg.axes.size() == 2);
  CHECK(cfg.axes[0].name == "theta_b_deg");
  CHECK(cfg.axes[0].count == 60);
  CHECK(!cfg.axes[0].log_scale);
  CHECK(cfg.axes[1].log_scale);

  // single-point axis: max defaults to min
  const RunConfig pt = parse_config(
      R"({"scan": {"axes": [{"name": "x_m", "min": 5e-8}]}})");
  CHECK(pt.axes[0].min == 5e-8);
  CHECK(pt.axes[0].max == 5e-8);
  CHECK(pt.axes[0].count == 1);

  CHECK_THROWS_AS(
      parse_config(R"({"scan": {"quantity": "wells"}})"), ConfigError);
  CHECK_THROWS_AS(
      parse_config(
          R"({"scan": {"axes": [{"name": "height", "min": 1e-9}]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"scan": {"axes": [{"name": "L_m", "min": 1e-9,
                                          "count": 0}]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"scan": {"axes": [{"name": "L_m", "min": 2e-9,
                                          "max": 1e-9, "count": 5}]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"scan": {"axes": [{"name": "L_m", "min": 0,
                                          "max": 1e-6, "count": 5,
                                          "scale": "log"}]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"scan": {"axes": [{"name": "L_m", "min": 1e-9,
                                          "scale": "cubic"}]}})"),
      ConfigError);
  // three axes refused
  CHECK_THROWS_AS(
      parse_config(
          R"({"scan": {"axes": [{"name": "x_m", "min": 0},
                                {"name": "L_m", "min": 1e-9},
                                {"name": "P_r_W", "min": 1}]}})"),
      ConfigError);
}

TEST_CASE("dispersion, evaluation, and output blocks") {
  const RunConfig cfg = parse_config(
      R"({"dispersion": {"k_min_per_m": 1e6, "k_max_per_m": 1e8,
                         "count": 50, "L_m": 1.4e-7},
          "evaluation": {"L_m": 1e-7, "x_m": 2e-8, "t_s": 1e-15,
                         "delta_zeta_rad": 0.4},
          "output": {"format": "json", "units": "uK", "path": "out.json"}})");
  CHECK(cfg.dispersion.k_min == 1e6);
  CHECK(cfg.dispersion.k_max == 1e8);
  CHECK(cfg.dispersion.count == 50);
  CHECK(cfg.dispersion.L == 1.4e-7);
  CHECK(cfg.L_eval == 1e-7);
  CHECK(cfg.x_eval == 2e-8);
  CHECK(cfg.t_eval == 1e-15);
  CHECK(cfg.delta_zeta == 0.4);
  CHECK(cfg.out_format == "json");
  CHECK(cfg.out_units == "uK");
  CHECK(cfg.out_path == "out.json");

  CHECK_THROWS_AS(parse_config(R"({"dispersion": {"count": 1}})"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"dispersion": {"k_min_per_m": 2e8,
                                      "k_max_per_m": 1e8}})"),
      ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"evaluation": {"L_m": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"output": {"format": "xml"}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"output": {"units": "mK"}})"),
                  ConfigError);
}

TEST_CASE("strict numerics tightens every quadrature knob") {
  const RunConfig cfg = parse_config(R"({"numerics": {"strict": true}})");
  CHECK(cfg.strict);
  const QuadCfg want = QuadCfg::strict();
  CHECK(cfg.quad.gl_order == want.gl_order);
  CHECK(cfg.quad.gl_order_minor == want.gl_order_minor);
  CHECK(cfg.quad.xi_cut_factor == want.xi_cut_factor);
  CHECK(cfg.quad.xi_panels == want.xi_panels);
  CHECK(cfg.quad.k_cut_over_L == want.k_cut_over_L);
  CHECK(cfg.quad.k_floor_factor == want.k_floor_factor);
  CHECK(cfg.quad.matsubara_reltol == want.matsubara_reltol);
  CHECK(cfg.quad.tail_panels == want.tail_panels);
  CHECK(cfg.quad.pole_window == want.pole_window);
  CHECK(cfg.quad.ev_cut_over_L == want.ev_cut_over_L);
}

TEST_CASE("material block and the config/domain error split") {
  const RunConfig cfg = parse_config(
      R"({"material": {"omega_p_rad_s": 1.2e16, "gamma_rad_s": 0,
                       "film_thickness_m": 30e-9}})");
  CHECK(cfg.stack.film.omega_p == 1.2e16);
  CHECK(cfg.stack.film.gamma == 0.0);
  CHECK(cfg.stack.thickness == 30e-9);

  CHECK_THROWS_AS(parse_config(R"({"material": {"omega_p_rad_s": 0}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"material": {"gamma_rad_s": -1}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"material": {"film_thickness_m": 0}})"),
                  ConfigError);

  // a missing table file is a domain problem (exit 4), not a config typo
  try {
    parse_config(R"({"material": {"glass_table": "/nonexistent/eps.dat"}})");
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(e.code == 4);
  }

  // a beam whose frequency falls outside the glass table also keeps its
  // domain identity when the angle needs the table
  try {
    parse_config(
        R"({"beams": [{"omega_rad_s": 1e12, "theta_offset_deg": 0.7,
                       "power_W": 1, "waist_m": 1e-4}]})");
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(e.code == 4);
  }
}

TEST_CASE("glass table resolves against the data directory override") {
  const std::string dir = "/tmp/cpneq_cfg_data_test";
  std::remove((dir + "/table.dat").c_str());
  (void)std::system(("mkdir -p " + dir).c_str());
  {
    std::ifstream src(std::string(CPNEQ_SOURCE_DIR) +
                      "/data/sapphire_eps.dat");
    REQUIRE(src.good());
    std::ofstream dst(dir + "/table.dat");
    dst << src.rdbuf();
  }

  setenv("CPNEQ_DATA_DIR", dir.c_str(), 1);
  CHECK(data_dir() == dir);
  const RunConfig cfg =
      parse_config(R"({"material": {"glass_table": "table.dat"}})");
  // identical content to the builtin table
  CHECK(cfg.stack.glass.size() ==
        TabulatedDielectric::builtin_sapphire().size());
  CHECK(cfg.stack.glass.n(24.6e14) ==
        Approx(TabulatedDielectric::builtin_sapphire().n(24.6e14))
            .epsilon(1e-15));
  unsetenv("CPNEQ_DATA_DIR");
}

TEST_CASE("config hash is canonical over key order, sensitive to content") {
  const std::uint64_t a =
      parse_config(R"({"temperature": {"T_K": 400}, "threads": 2})").hash;
  const std::uint64_t b =
      parse_config(R"({"threads": 2, "temperature": {"T_K": 400}})").hash;
  const std::uint64_t c =
      parse_config(R"({"threads": 2, "temperature": {"T_K": 401}})").hash;
  CHECK(a == b);
  CHECK(a != c);

  // whitespace does not matter either
  CHECK(parse_config("{ }").hash == parse_config("{}").hash);

  // FNV-1a reference vectors
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("config file loading") {
  const std::string path = "/tmp/cpneq_cfg_roundtrip.json";
  const std::string text = R"({"evaluation": {"L_m": 3e-7}})";
  {
    std::ofstream out(path);
    out << text;
  }
  const RunConfig from_file = load_config_file(path);
  const RunConfig from_text = parse_config(text);
  CHECK(from_file.L_eval == 3e-7);
  CHECK(from_file.hash == from_text.hash);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_config_file("/nonexistent/cpneq.json"), ConfigError);
}
