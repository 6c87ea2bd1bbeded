#pragma once

#include "config.hpp"

#include <string>
#include <vector>

namespace fpedss {

struct MomentRow {
  std::string method;
  double x2 = 0.0;
  double x2_rel_error = 0.0; // relative to the exact density
};

struct RunReport {
  std::vector<MomentRow> moments;
  std::vector<std::string> files; // written, relative to output_dir
  std::vector<std::string> warnings;
};

/// Runs config.method and writes its CSV files into config.output_dir.
/// Every file starts with file_header(config).
RunReport run_pipeline(const RunConfig &config);

/// "# fpe-dss <version> config_hash=<16 hex digits> seed=<seed>"
std::string file_header(const RunConfig &config);

const char *library_version();

} // namespace fpedss
