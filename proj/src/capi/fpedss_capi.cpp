#include "fpedss/fpedss.h"

#include "classical_solver.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "exact_solution.hpp"
#include "pipeline.hpp"

#include <algorithm>
#include <cstring>
#include <ios>
#include <filesystem>
#include <new>
#include <string>

struct fpedss_config {
  fpedss::RunConfig value;
};

struct fpedss_report {
  fpedss::RunReport value;
};

struct fpedss_solution {
  fpedss::ClassicalSolution value;
};

namespace {

struct LastError {
  std::string message;
  std::string key;
  int line = 0;
};

thread_local LastError last_error;

fpedss_status fail(fpedss_status status, std::string message, std::string key = {}, int line = 0) {
  last_error = {std::move(message), std::move(key), line};
  return status;
}

template <class F> fpedss_status guarded(F &&body) {
  try {
    body();
    last_error = {};
    return FPEDSS_OK;
  } catch (const fpedss::ConfigError &e) {
    return fail(FPEDSS_ERR_CONFIG, e.what(), e.key(), e.line());
  } catch (const fpedss::NumericalError &e) {
    return fail(FPEDSS_ERR_NUMERICAL, e.what());
  } catch (const std::invalid_argument &e) {
    return fail(FPEDSS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::filesystem::filesystem_error &e) {
    return fail(FPEDSS_ERR_IO, e.what());
  } catch (const std::ios_base::failure &e) {
    return fail(FPEDSS_ERR_IO, e.what());
  } catch (const std::bad_alloc &) {
    return fail(FPEDSS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(FPEDSS_ERR_INTERNAL, e.what());
  }
}

fpedss_status copy_out(const std::string &s, char *buf, size_t cap, size_t *needed) {
  if (needed)
    *needed = s.size() + 1;
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  return FPEDSS_OK;
}

fpedss_status null_argument(const char *what) {
  return fail(FPEDSS_ERR_INVALID_ARGUMENT, std::string(what) + " must not be NULL");
}

fpedss_status run(const fpedss_config *config, fpedss_report **report, bool compare) {
  if (!config)
    return null_argument("config");
  if (report)
    *report = nullptr;
  return guarded([&] {
    fpedss::RunConfig c = config->value;
    if (compare)
      c.method = fpedss::Method::compare;
    fpedss::RunReport r = fpedss::run_pipeline(c);
    if (report)
      *report = new fpedss_report{std::move(r)};
  });
}

} // namespace

extern "C" {

const char *fpedss_version(void) { return fpedss::library_version(); }
const char *fpedss_last_error(void) { return last_error.message.c_str(); }
const char *fpedss_last_error_key(void) { return last_error.key.c_str(); }
int fpedss_last_error_line(void) { return last_error.line; }

fpedss_status fpedss_config_parse(const char *text, fpedss_config **out) {
  if (!text || !out)
    return null_argument("text/out");
  *out = nullptr;
  return guarded([&] { *out = new fpedss_config{fpedss::parse_config(text)}; });
}

fpedss_status fpedss_config_load(const char *path, fpedss_config **out) {
  if (!path || !out)
    return null_argument("path/out");
  *out = nullptr;
  return guarded([&] { *out = new fpedss_config{fpedss::load_config(path)}; });
}

fpedss_status fpedss_config_clone(const fpedss_config *config, fpedss_config **out) {
  if (!config || !out)
    return null_argument("config/out");
  *out = nullptr;
  return guarded([&] { *out = new fpedss_config{config->value}; });
}

fpedss_status fpedss_config_set(fpedss_config *config, const char *key, const char *value) {
  if (!config || !key || !value)
    return null_argument("config/key/value");
  return guarded([&] { fpedss::set_config_value(config->value, key, value); });
}

fpedss_status fpedss_config_get(const fpedss_config *config, const char *key, char *buf,
                                size_t cap, size_t *needed) {
  if (!config || !key)
    return null_argument("config/key");
  std::string v;
  const fpedss_status st = guarded([&] { v = fpedss::get_config_value(config->value, key); });
  return st == FPEDSS_OK ? copy_out(v, buf, cap, needed) : st;
}

fpedss_status fpedss_config_echo(const fpedss_config *config, char *buf, size_t cap,
                                 size_t *needed) {
  if (!config)
    return null_argument("config");
  return copy_out(fpedss::echo_config(config->value), buf, cap, needed);
}

fpedss_status fpedss_config_header(const fpedss_config *config, char *buf, size_t cap,
                                   size_t *needed) {
  if (!config)
    return null_argument("config");
  return copy_out(fpedss::file_header(config->value), buf, cap, needed);
}

void fpedss_config_free(fpedss_config *config) { delete config; }

fpedss_status fpedss_solve(const fpedss_config *config, fpedss_report **report) {
  return run(config, report, false);
}

fpedss_status fpedss_compare(const fpedss_config *config, fpedss_report **report) {
  return run(config, report, true);
}

size_t fpedss_report_moment_count(const fpedss_report *report) {
  return report ? report->value.moments.size() : 0;
}

const char *fpedss_report_method(const fpedss_report *report, size_t index) {
  if (!report || index >= report->value.moments.size())
    return nullptr;
  return report->value.moments[index].method.c_str();
}

double fpedss_report_x2(const fpedss_report *report, size_t index) {
  if (!report || index >= report->value.moments.size())
    return 0.0;
  return report->value.moments[index].x2;
}

double fpedss_report_x2_rel_error(const fpedss_report *report, size_t index) {
  if (!report || index >= report->value.moments.size())
    return 0.0;
  return report->value.moments[index].x2_rel_error;
}

size_t fpedss_report_warning_count(const fpedss_report *report) {
  return report ? report->value.warnings.size() : 0;
}

const char *fpedss_report_warning(const fpedss_report *report, size_t index) {
  if (!report || index >= report->value.warnings.size())
    return nullptr;
  return report->value.warnings[index].c_str();
}

void fpedss_report_free(fpedss_report *report) { delete report; }

fpedss_status fpedss_classical_solve(double a, double b, double gamma, double ell,
                                     int num_even_states, fpedss_solution **out) {
  if (!out)
    return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new fpedss_solution{fpedss::solve_classical(fpedss::ModelParams{a, b, gamma},
                                                       fpedss::BasisSpec{num_even_states, ell, 4})};
  });
}

size_t fpedss_solution_size(const fpedss_solution *solution) {
  return solution ? solution->value.mode.amplitudes.size() : 0;
}

size_t fpedss_solution_amplitudes(const fpedss_solution *solution, double *out, size_t cap) {
  if (!solution || !out)
    return 0;
  const auto &b = solution->value.mode.amplitudes;
  const size_t n = std::min(cap, b.size());
  std::copy_n(b.begin(), n, out);
  return n;
}

double fpedss_solution_eigenvalue(const fpedss_solution *solution) {
  return solution ? solution->value.mode.eigenvalue : 0.0;
}

double fpedss_solution_second_moment(const fpedss_solution *solution) {
  return solution ? solution->value.second_moment : 0.0;
}

fpedss_status fpedss_solution_pdf(const fpedss_solution *solution, const double *x, size_t count,
                                  double *out) {
  if (!solution || (count > 0 && (!x || !out)))
    return null_argument("solution/x/out");
  return guarded([&] {
    const auto r = fpedss::reconstruct_pdf(solution->value.mode, solution->value.fpe.basis,
                                           std::span<const double>(x, count));
    std::copy(r.density.begin(), r.density.end(), out);
  });
}

void fpedss_solution_free(fpedss_solution *solution) { delete solution; }

fpedss_status fpedss_exact_pdf(double a, double b, double gamma, const double *x, size_t count,
                               double *out) {
  if (count > 0 && (!x || !out))
    return null_argument("x/out");
  return guarded([&] {
    const fpedss::ExactPdf pdf = fpedss::make_exact_pdf(fpedss::ModelParams{a, b, gamma});
    for (size_t i = 0; i < count; ++i)
      out[i] = pdf(x[i]);
  });
}

fpedss_status fpedss_exact_second_moment(double a, double b, double gamma, double *out) {
  if (!out)
    return null_argument("out");
  return guarded([&] {
    *out = fpedss::exact_moment(fpedss::make_exact_pdf(fpedss::ModelParams{a, b, gamma}), 2);
  });
}

} // extern "C"
