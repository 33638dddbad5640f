#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "relcone/json_io.hpp"

namespace relcone::cli {

enum Exit : int { kOk = 0, kInputError = 1, kNegativeVerdict = 2 };

/// Runs one command line (without the program name). Reports go to `out`
/// (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerbInfo {
  std::string verb;
  std::vector<std::string> operations;  ///< library operations the verb reaches
};
const std::vector<VerbInfo>& dispatch_table();

/// Named fixture corpus.
std::vector<std::string> fixture_names();
/// Throws IoError for an unknown name.
io::Json fixture_json(const std::string& name);
/// Homology, cone comparison, cohomology and classification of every fixture.
io::Json sweep_report();

}  // namespace relcone::cli
