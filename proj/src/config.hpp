#pragma once

#include "fpe_operator.hpp"
#include "hermite_basis.hpp"
#include "langevin_dns.hpp"
#include "qpe.hpp"
#include "vqe.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fpedss {

enum class Method { classical, qpe, vqe, dns, compare };

struct PdfGrid {
  double x_min = -2.0;
  double x_max = 2.0;
  int points = 401;
};

struct HistogramSpec {
  int bins = 100;
  double x_min = -2.0;
  double x_max = 2.0;
};

/// Everything one pipeline run needs. Field defaults are the documented
/// configuration defaults.
struct RunConfig {
  ModelParams model{-1.0, 2.0, 1.0};
  BasisSpec basis{8, 0.5, 4};
  Method method = Method::classical;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
  PdfGrid grid;

  QpeConfig qpe;
  bool qpe_auto_time_scale = false;
  bool qpe_sign_correction = true;

  VqeConfig vqe;

  DnsConfig dns;
  HistogramSpec histogram;

  bool compare_qpe = true;
  bool compare_vqe = true;
  bool compare_dns = true;
  int compare_mitigation_seeds = 0;
};

/// Strict key=value parser. Lines are `key = value`, `# comment` or a
/// `[section]` header; inside a section `key` means `section.key`, and the
/// dotted form is accepted anywhere. Unknown or repeated keys, malformed
/// values and invariant violations raise ConfigError with the line number.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path &path);

/// Sets one key (dotted form, or an alias such as `iters`) on an existing
/// configuration, then revalidates it.
void set_config_value(RunConfig &config, std::string_view key, std::string_view value);
std::string get_config_value(const RunConfig &config, std::string_view key);

/// Canonical `key=value` listing of every key, one per line.
std::string echo_config(const RunConfig &config);
/// FNV-1a 64 of the echo without output_dir.
std::uint64_t config_hash(const RunConfig &config);

std::vector<std::string> config_keys();
std::string_view method_name(Method m);

} // namespace fpedss
