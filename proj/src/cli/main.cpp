// Thin shell over the C API: parse arguments, read the config file, run one
// task, route the table to a file or stdout and diagnostics to stderr. All
// physics and all JSON handling live behind cpneq.h.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cpneq.h"

namespace {

int run_one(const std::string& task, const std::string& config_path,
            const std::string& out_path, const std::string& format,
            int threads, bool verbose) {
  std::string text;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read config file \"" << config_path
                << "\"\n";
      return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  char errbuf[2048] = {0};
  cpneq_ctx* ctx = nullptr;
  int status = cpneq_ctx_create(text.c_str(), &ctx, errbuf, sizeof errbuf);
  if (status != 0) {
    std::cerr << "error: " << errbuf << "\n";
    return status;
  }
  if (verbose)
    std::cerr << "cpneq " << cpneq_version() << ", task " << task << "\n";

  char* out = nullptr;
  status = cpneq_run(ctx, task.c_str(),
                     format.empty() ? nullptr : format.c_str(), threads,
                     &out, errbuf, sizeof errbuf);
  const char* warn = cpneq_last_warnings(ctx);
  if (warn && *warn) std::cerr << warn << "\n";
  if (!out) {
    std::cerr << "error: " << errbuf << "\n";
    cpneq_ctx_destroy(ctx);
    return status;
  }

  // --out wins over the config's output.path; "" or "-" means stdout.
  std::string dest = out_path.empty() ? cpneq_output_path(ctx) : out_path;
  if (dest.empty() || dest == "-") {
    std::fwrite(out, 1, std::strlen(out), stdout);
  } else {
    std::ofstream f(dest, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write \"" << dest << "\"\n";
      cpneq_string_free(out);
      cpneq_ctx_destroy(ctx);
      return 2;
    }
    f << out;
    if (verbose) std::cerr << "wrote " << dest << "\n";
  }
  cpneq_string_free(out);
  cpneq_ctx_destroy(ctx);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Atom-surface Casimir-Polder potentials: equilibrium splits, "
      "plasmon-bath imbalance, and evanescent-wave trap landscapes"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path, out_path, format;
  int threads = -1;
  bool verbose = false;
  app.add_option("--config", config_path, "JSON run description")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_path,
                 "output file (default: config output.path, else stdout)");
  app.add_option("--format", format, "table format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", threads, "worker threads (0 = hardware)")
      ->check(CLI::Range(0, 4096));
  app.add_flag("--verbose", verbose, "progress notes on stderr");

  app.add_subcommand("dispersion",
                     "surface-plasmon branch and pole residue over k");
  app.add_subcommand("split",
                     "equilibrium potential and field/atom parts over L");
  app.add_subcommand("imbalance",
                     "total potential with a hot or cold plasmon bath");
  app.add_subcommand("laser1", "single evanescent beam landscape");
  app.add_subcommand("laser2", "two-beam landscape");
  app.add_subcommand("lattice", "beam plus retro-reflection lattice");
  app.add_subcommand("verify", "internal cross-checks (failures exit 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string task = app.get_subcommands().front()->get_name();
  return run_one(task, config_path, out_path, format, threads, verbose);
}
