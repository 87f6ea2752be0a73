#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace fcpoly::cli {

enum ExitCode { kOk = 0, kCheckFailure = 1, kUsage = 2 };

struct RunReport {
  int exitCode = kOk;
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> artifacts;
  std::vector<std::pair<std::string, double>> timings;  // seconds
};

// args excludes the program name.
RunReport run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Recomputes P^4_2(d_0 d_1 s^0 s^1) and P^4_1(d_0 d_1 d_2 s^0) and compares
// them with fig3.json / fig4.json in `dir`.
RunReport checkFigures(const std::string& dir, std::ostream& out);

std::string defaultFiguresDir();

}  // namespace fcpoly::cli
