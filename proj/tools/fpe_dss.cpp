#include "fpedss/fpedss.h"

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace {

struct ConfigDeleter {
  void operator()(fpedss_config *c) const { fpedss_config_free(c); }
};
struct ReportDeleter {
  void operator()(fpedss_report *r) const { fpedss_report_free(r); }
};
using ConfigPtr = std::unique_ptr<fpedss_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<fpedss_report, ReportDeleter>;

struct Failure {
  fpedss_status status = FPEDSS_OK;
  std::string message;
  std::string key;
  int line = 0;
};

Failure capture(fpedss_status status) {
  return {status, fpedss_last_error(), fpedss_last_error_key(), fpedss_last_error_line()};
}

const char *kind_name(fpedss_status s) {
  switch (s) {
  case FPEDSS_OK:
    return "ok";
  case FPEDSS_ERR_INVALID_ARGUMENT:
  case FPEDSS_ERR_CONFIG:
    return "config";
  case FPEDSS_ERR_NUMERICAL:
    return "numerical";
  case FPEDSS_ERR_IO:
    return "io";
  case FPEDSS_ERR_INTERNAL:
    break;
  }
  return "internal";
}

int exit_code(fpedss_status s) {
  switch (s) {
  case FPEDSS_OK:
    return 0;
  case FPEDSS_ERR_INVALID_ARGUMENT:
  case FPEDSS_ERR_CONFIG:
    return 2;
  case FPEDSS_ERR_NUMERICAL:
    return 3;
  default:
    return 1;
  }
}

std::string quoted(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

int report_failure(const Failure &f, const std::string &context = {}) {
  std::cerr << "fpe-dss: error kind=" << kind_name(f.status) << " code=" << exit_code(f.status);
  if (!context.empty())
    std::cerr << " run=" << quoted(context);
  if (f.line > 0)
    std::cerr << " line=" << f.line;
  if (!f.key.empty())
    std::cerr << " key=" << f.key;
  std::cerr << " message=" << quoted(f.message) << '\n';
  return exit_code(f.status);
}

std::string get_string(fpedss_status (*fn)(const fpedss_config *, char *, size_t, size_t *),
                       const fpedss_config *c) {
  size_t needed = 0;
  fn(c, nullptr, 0, &needed);
  std::string out(needed, '\0');
  fn(c, out.data(), out.size(), nullptr);
  out.resize(needed ? needed - 1 : 0);
  return out;
}

std::string config_value(const fpedss_config *c, const std::string &key) {
  size_t needed = 0;
  if (fpedss_config_get(c, key.c_str(), nullptr, 0, &needed) != FPEDSS_OK)
    return {};
  std::string out(needed, '\0');
  fpedss_config_get(c, key.c_str(), out.data(), out.size(), nullptr);
  out.resize(needed - 1);
  return out;
}

int load(const std::string &path, const std::string &output_dir, ConfigPtr &out) {
  fpedss_config *raw = nullptr;
  if (const fpedss_status st = fpedss_config_load(path.c_str(), &raw); st != FPEDSS_OK)
    return report_failure(capture(st));
  out.reset(raw);
  if (!output_dir.empty())
    if (const fpedss_status st = fpedss_config_set(raw, "output_dir", output_dir.c_str());
        st != FPEDSS_OK)
      return report_failure(capture(st));
  return 0;
}

void print_report(const fpedss_report *r, std::ostream &out) {
  for (size_t i = 0; i < fpedss_report_moment_count(r); ++i) {
    char line[160];
    std::snprintf(line, sizeof line, "%-20s x2=%.10g rel_error=%.3e", fpedss_report_method(r, i),
                  fpedss_report_x2(r, i), fpedss_report_x2_rel_error(r, i));
    out << line << '\n';
  }
  for (size_t i = 0; i < fpedss_report_warning_count(r); ++i)
    std::cerr << "fpe-dss: warning " << fpedss_report_warning(r, i) << '\n';
}

int run_single(const std::string &path, const std::string &output_dir, bool compare) {
  ConfigPtr config;
  if (int rc = load(path, output_dir, config))
    return rc;
  fpedss_report *raw = nullptr;
  const fpedss_status st =
      compare ? fpedss_compare(config.get(), &raw) : fpedss_solve(config.get(), &raw);
  if (st != FPEDSS_OK)
    return report_failure(capture(st));
  ReportPtr report(raw);
  print_report(report.get(), std::cout);
  return 0;
}

struct Axis {
  std::string key;
  std::vector<std::string> values;
};

Axis parse_axis(const std::string &spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
    throw CLI::ValidationError("--vary", "expected KEY=v1,v2,... got '" + spec + "'");
  Axis axis{spec.substr(0, eq), {}};
  std::string rest = spec.substr(eq + 1);
  size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const std::string v = rest.substr(start, comma == std::string::npos ? comma : comma - start);
    if (v.empty())
      throw CLI::ValidationError("--vary", "empty value in '" + spec + "'");
    axis.values.push_back(v);
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return axis;
}

unsigned worker_count(size_t jobs) {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("FPE_DSS_THREADS"); env && *env) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end == '\0' && v >= 1)
      cap = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<size_t>(cap, jobs));
}

int run_sweep(const std::string &path, const std::string &output_dir,
              const std::vector<std::string> &vary) {
  ConfigPtr base;
  if (int rc = load(path, output_dir, base))
    return rc;
  std::vector<Axis> axes;
  for (const std::string &v : vary)
    axes.push_back(parse_axis(v));

  struct Job {
    std::string name;
    std::vector<std::string> values;
    ConfigPtr config;
    ReportPtr report;
    Failure failure;
  };
  const std::filesystem::path root = config_value(base.get(), "output_dir");
  std::vector<Job> jobs(1);
  for (const Axis &axis : axes) {
    std::vector<Job> next;
    for (const Job &j : jobs)
      for (const std::string &v : axis.values) {
        Job n;
        n.name = j.name.empty() ? axis.key + "=" + v : j.name + "_" + axis.key + "=" + v;
        n.values = j.values;
        n.values.push_back(v);
        next.push_back(std::move(n));
      }
    jobs = std::move(next);
  }

  for (Job &j : jobs) {
    fpedss_config *raw = nullptr;
    fpedss_config_clone(base.get(), &raw);
    j.config.reset(raw);
    for (size_t k = 0; k < axes.size(); ++k)
      if (const fpedss_status st =
              fpedss_config_set(raw, axes[k].key.c_str(), j.values[k].c_str());
          st != FPEDSS_OK)
        return report_failure(capture(st), j.name);
    const std::string dir = (root / j.name).string();
    fpedss_config_set(raw, "output_dir", dir.c_str());
  }

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      fpedss_report *raw = nullptr;
      const fpedss_status st = fpedss_solve(jobs[i].config.get(), &raw);
      if (st == FPEDSS_OK)
        jobs[i].report.reset(raw);
      else
        jobs[i].failure = capture(st);
    }
  };
  const unsigned threads = worker_count(jobs.size());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t)
    pool.emplace_back(worker);
  worker();
  for (std::thread &t : pool)
    t.join();

  std::filesystem::create_directories(root);
  std::ofstream csv(root / "sweep.csv", std::ios::binary | std::ios::trunc);
  csv << get_string(fpedss_config_header, base.get()) << '\n' << "run";
  for (const Axis &axis : axes)
    csv << ',' << axis.key;
  csv << ",method,x2,x2_rel_error\n";
  int rc = 0;
  for (const Job &j : jobs) {
    if (!j.report) {
      if (rc == 0)
        rc = report_failure(j.failure, j.name);
      continue;
    }
    std::cout << "[" << j.name << "]\n";
    print_report(j.report.get(), std::cout);
    for (size_t i = 0; i < fpedss_report_moment_count(j.report.get()); ++i) {
      char num[64];
      csv << j.name;
      for (const std::string &v : j.values)
        csv << ',' << v;
      std::snprintf(num, sizeof num, ",%.17g,%.17g", fpedss_report_x2(j.report.get(), i),
                    fpedss_report_x2_rel_error(j.report.get(), i));
      csv << ',' << fpedss_report_method(j.report.get(), i) << num << '\n';
    }
  }
  return rc;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Stationary Fokker-Planck solver: classical, QPE, VQE and Langevin pipelines"};
  app.set_version_flag("--version", std::string(fpedss_version()));
  app.require_subcommand(1);

  std::string config_path, output_dir;
  std::vector<std::string> vary;

  auto *solve = app.add_subcommand("solve", "Run the method selected in the config");
  auto *compare = app.add_subcommand("compare", "Run classical, exact, DNS and enabled quantum methods");
  auto *sweep = app.add_subcommand("sweep", "Run the config over a grid of overridden keys");
  for (CLI::App *sub : {solve, compare, sweep}) {
    sub->add_option("--config", config_path, "Configuration file")->required();
    sub->add_option("--output-dir", output_dir, "Override output_dir");
  }
  sweep->add_option("--vary", vary, "KEY=v1,v2,... (repeatable)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "fpe-dss: error kind=usage code=2 message=" << quoted(e.what()) << '\n';
    return 2;
  }

  try {
    if (*solve)
      return run_single(config_path, output_dir, false);
    if (*compare)
      return run_single(config_path, output_dir, true);
    return run_sweep(config_path, output_dir, vary);
  } catch (const CLI::ValidationError &e) {
    std::cerr << "fpe-dss: error kind=usage code=2 message=" << quoted(e.what()) << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "fpe-dss: error kind=io code=1 message=" << quoted(e.what()) << '\n';
    return 1;
  }
}
