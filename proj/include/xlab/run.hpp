#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "xlab/config.hpp"

namespace xlab {

// Executes the configured experiment and writes <out_dir>/<experiment>.csv
// plus <out_dir>/summary.json.  Returns 0 when every binding verdict passes,
// 2 when any fails, 1 on solver breakdown (partial results are still
// written).  Identical configs produce byte-identical files.
int run_experiment(const RunConfig& cfg, const std::string& out_dir,
                   std::ostream& log);

// The full command-line surface (run / suites / verify), shared by main()
// and the CLI tests.  `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace xlab
