#pragma once

#include "bso/config.hpp"

namespace bso {

// Executes one batch run: emits <mode>.csv (and <mode>.svg when enabled)
// into cfg.output.dir. Returns the process exit status:
//   0  success
//   1  configuration or I/O error
//   2  numerical-accuracy failure (quadrature/fit non-convergence, or an
//      oracle_compare bound violation)
int run(const RunConfig& cfg);

}  // namespace bso
