#include "cpneq.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/landscape.hpp"
#include "core/potentials.hpp"
#include "core/report.hpp"
#include "core/tasks.hpp"

struct cpneq_ctx {
  cpneq::RunConfig cfg;
  std::string warnings;
};

namespace {

void set_err(char* errbuf, size_t errlen, const char* msg) {
  if (!errbuf || errlen == 0) return;
  std::snprintf(errbuf, errlen, "%s", msg);
}

int status_of(const std::exception& e) {
  if (const auto* err = dynamic_cast<const cpneq::Error*>(&e))
    return err->code;
  return 1;
}

template <class F>
int guarded(char* errbuf, size_t errlen, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    set_err(errbuf, errlen, e.what());
    return status_of(e);
  } catch (...) {
    set_err(errbuf, errlen, "unknown failure");
    return 1;
  }
}

}  // namespace

extern "C" {

int cpneq_ctx_create(const char* config_json, cpneq_ctx** out, char* errbuf,
                     size_t errlen) {
  if (!out) {
    set_err(errbuf, errlen, "output handle pointer is null");
    return 2;
  }
  *out = nullptr;
  return guarded(errbuf, errlen, [&]() -> int {
    const std::string text =
        (config_json && *config_json) ? config_json : "{}";
    auto* ctx = new cpneq_ctx;
    try {
      ctx->cfg = cpneq::parse_config(text);
    } catch (...) {
      delete ctx;
      throw;
    }
    *out = ctx;
    return 0;
  });
}

void cpneq_ctx_destroy(cpneq_ctx* ctx) { delete ctx; }

int cpneq_run(cpneq_ctx* ctx, const char* task, const char* format,
              int threads, char** out, char* errbuf, size_t errlen) {
  if (!ctx || !task || !out) {
    set_err(errbuf, errlen, "null argument");
    return 2;
  }
  *out = nullptr;
  return guarded(errbuf, errlen, [&]() -> int {
    ctx->warnings.clear();
    const cpneq::TaskResult res = cpneq::run_task(task, ctx->cfg, threads);
    for (const auto& w : res.warnings) {
      if (!ctx->warnings.empty()) ctx->warnings += '\n';
      ctx->warnings += w;
    }
    const std::string fmt =
        (format && *format) ? format : ctx->cfg.out_format;
    std::string text;
    if (fmt == "csv")
      text = cpneq::to_csv(res.table);
    else if (fmt == "json")
      text = cpneq::to_json(res.table);
    else
      throw cpneq::ConfigError("format must be \"csv\" or \"json\"");
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    return res.exit_code;
  });
}

void cpneq_string_free(char* s) { std::free(s); }

const char* cpneq_version(void) { return cpneq::version_string(); }

const char* cpneq_last_warnings(cpneq_ctx* ctx) {
  return ctx ? ctx->warnings.c_str() : "";
}

const char* cpneq_output_path(cpneq_ctx* ctx) {
  return ctx ? ctx->cfg.out_path.c_str() : "";
}

const char* cpneq_output_format(cpneq_ctx* ctx) {
  return ctx ? ctx->cfg.out_format.c_str() : "";
}

int cpneq_equilibrium_energy(cpneq_ctx* ctx, double L, double T, double* U_J,
                             char* errbuf, size_t errlen) {
  if (!ctx || !U_J) {
    set_err(errbuf, errlen, "null argument");
    return 2;
  }
  return guarded(errbuf, errlen, [&]() -> int {
    const cpneq::DrudeMetal m = ctx->cfg.stack.film;
    *U_J = ctx->cfg.atom_is_rb
               ? cpneq::equilibrium_U_finiteT(cpneq::rb_alpha_model(), L, T,
                                              m, ctx->cfg.quad)
               : cpneq::equilibrium_U_finiteT(ctx->cfg.two_level, L, T, m,
                                              ctx->cfg.quad);
    return 0;
  });
}

int cpneq_split_energies(cpneq_ctx* ctx, double L, double T, double out_J[4],
                         char* errbuf, size_t errlen) {
  if (!ctx || !out_J) {
    set_err(errbuf, errlen, "null argument");
    return 2;
  }
  return guarded(errbuf, errlen, [&]() -> int {
    if (ctx->cfg.atom_is_rb)
      throw cpneq::ConfigError(
          "field/atom split requires atom.model \"two_level\"");
    const cpneq::EnergySplit s = cpneq::split_energies(
        ctx->cfg.two_level, L, T, ctx->cfg.stack.film, ctx->cfg.quad);
    out_J[0] = s.U_total;
    out_J[1] = s.U_field;
    out_J[2] = s.U_atom;
    out_J[3] = s.delta;
    return 0;
  });
}

int cpneq_total_potential(cpneq_ctx* ctx, double L, double x, double* U_J,
                          char* errbuf, size_t errlen) {
  if (!ctx || !U_J) {
    set_err(errbuf, errlen, "null argument");
    return 2;
  }
  return guarded(errbuf, errlen, [&]() -> int {
    const cpneq::TrapSetup s = cpneq::trap_from_config(ctx->cfg);
    *U_J = cpneq::total_potential(s, L, x);
    return 0;
  });
}

}  // extern "C"
