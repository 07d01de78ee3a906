#pragma once

#include <string>

#include "core/config.hpp"
#include "core/landscape.hpp"
#include "core/materials.hpp"
#include "core/report.hpp"

namespace cpneq {

// One computation the tool can run end to end: a named task plus a parsed
// config in, a data table plus warnings out. Tasks:
//
//   dispersion  surface-mode branch and pole residue over a k grid
//   split       equilibrium potential and its field/atom parts over L
//   imbalance   total potential with the plasmon bath held at other
//               temperatures, one column set per T_sp
//   laser1      single evanescent beam: potential curves or trap features
//   laser2      two beams, same sweep machinery
//   lattice     one beam plus its retro-reflection
//   verify      internal cross-checks; any FAIL row sets exit_code 3
//
// `threads` > 0 overrides the config's thread count.
struct TaskResult {
  Table table;
  Warnings warnings;
  int exit_code = 0;
};

TaskResult run_task(const std::string& task, const RunConfig& cfg,
                    int threads = 0);

// The trap scenario a config describes, for direct point evaluations.
TrapSetup trap_from_config(const RunConfig& cfg);

const char* version_string();

}  // namespace cpneq
