#include "pipeline.hpp"

#include "classical_solver.hpp"
#include "errors.hpp"
#include "exact_solution.hpp"
#include "format.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#ifndef FPEDSS_VERSION
#define FPEDSS_VERSION "0.0.0"
#endif

namespace fpedss {

namespace {

namespace fs = std::filesystem;

struct Context {
  const RunConfig &config;
  fs::path dir;
  std::string header;
  ExactPdf exact;
  ClassicalSolution classical;
  double exact_x2;
  std::vector<double> grid;
  RunReport report;
};

class CsvFile {
public:
  CsvFile(Context &ctx, const std::string &name, const std::string &columns)
      : out_(ctx.dir / name, std::ios::binary | std::ios::trunc) {
    if (!out_)
      throw std::ios_base::failure("cannot write '" + (ctx.dir / name).string() + "'");
    out_ << ctx.header << '\n' << columns << '\n';
    ctx.report.files.push_back(name);
  }

  std::ostream &stream() { return out_; }

  template <class... Cells> void row(const Cells &...cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }

private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string &v) { return v; }
  static std::string cell(const char *v) { return v; }
  static std::string cell(const std::optional<double> &v) { return v ? format_double(*v) : ""; }

  std::ofstream out_;
};

double rel_error(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

void add_moment(Context &ctx, const std::string &method, double x2) {
  ctx.report.moments.push_back({method, x2, rel_error(x2, ctx.exact_x2)});
}

void write_moments(Context &ctx) {
  CsvFile f(ctx, "moments.csv", "method,x2,x2_rel_error");
  for (const MomentRow &m : ctx.report.moments)
    f.row(m.method, m.x2, m.x2_rel_error);
}

std::vector<double> pdf_on_grid(Context &ctx, const ZeroMode &mode) {
  return reconstruct_pdf(mode, ctx.classical.fpe.basis, ctx.grid).density;
}

ZeroMode mode_from_amplitudes(const Context &ctx, std::vector<double> amps) {
  return normalize_zero_mode(ZeroMode{std::move(amps), 0.0, false}, ctx.classical.integrals);
}

void write_pdf(Context &ctx, std::span<const double> x, std::span<const double> method,
               const std::vector<std::pair<std::string, std::vector<double>>> &extra = {}) {
  std::string columns = "x,p_method,p_exact,p_classical,negative_region";
  for (const auto &[name, values] : extra)
    columns += "," + name;
  CsvFile f(ctx, "pdf.csv", columns);
  const std::vector<double> classical =
      reconstruct_pdf(ctx.classical.mode, ctx.classical.fpe.basis, x).density;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::ostream &o = f.stream();
    o << format_double(x[i]) << ',' << format_double(method[i]) << ','
      << format_double(ctx.exact(x[i])) << ',' << format_double(classical[i]) << ','
      << (method[i] < 0.0 ? 1 : 0);
    for (const auto &[name, values] : extra)
      o << ',' << format_double(values[i]);
    o << '\n';
  }
}

void write_amplitudes(Context &ctx, const std::string &name, std::span<const double> b) {
  CsvFile f(ctx, name, "n,b_n");
  for (std::size_t k = 0; k < b.size(); ++k)
    f.row(2 * k, b[k]);
}

// ---------------------------------------------------------------- methods

struct QpeOutcome {
  ZeroMode uncorrected;
  std::optional<ZeroMode> corrected;
};

QpeOutcome run_qpe_method(Context &ctx) {
  const RunConfig &c = ctx.config;
  const PaddedHamiltonian padded = pad_hamiltonian(ctx.classical.hamiltonian.entries);
  QpeConfig qc = c.qpe;
  qc.seed = c.seed;
  if (c.qpe_auto_time_scale)
    qc.time_scale = default_time_scale(padded.matrix);

  const auto &ref = ctx.classical.mode.amplitudes;
  const QpeResult r =
      c.qpe_sign_correction
          ? qpe_zero_mode(padded, qc, std::span<const double>(ref.data(), ref.size()))
          : qpe_zero_mode(padded, qc);

  {
    CsvFile f(ctx, "qpe_amplitudes.csv", "n,abs_amplitude,signed_amplitude_or_blank");
    for (std::size_t k = 0; k < r.abs_amplitudes.size(); ++k) {
      std::optional<double> s;
      if (!r.signed_amplitudes.empty())
        s = r.signed_amplitudes[k];
      f.row(2 * k, r.abs_amplitudes[k], s);
    }
  }
  if (r.sampled) {
    CsvFile f(ctx, "qpe_phases.csv", "bitstring,count");
    for (const auto &[bits, count] : r.phase_histogram)
      f.row(bits, count);
  } else {
    CsvFile f(ctx, "qpe_phases.csv", "bitstring,probability");
    for (const auto &[bits, p] : r.phase_distribution)
      f.row(bits, p);
  }

  QpeOutcome out{mode_from_amplitudes(ctx, r.abs_amplitudes), std::nullopt};
  if (!r.signed_amplitudes.empty())
    out.corrected = mode_from_amplitudes(ctx, r.signed_amplitudes);
  add_moment(ctx, "qpe", moment_from_amplitudes(out.uncorrected, ctx.classical.integrals));
  if (out.corrected)
    add_moment(ctx, "qpe_sign_corrected",
               moment_from_amplitudes(*out.corrected, ctx.classical.integrals));
  return out;
}

struct VqeOutcome {
  ZeroMode mode;
  VqeResult result;
};

VqeOutcome vqe_once(const Context &ctx, VqeConfig vc) {
  VqeResult r = run_vqe(ctx.classical.hamiltonian, vc);
  ZeroMode mode = mode_from_amplitudes(ctx, r.amplitudes);
  return {std::move(mode), std::move(r)};
}

ZeroMode run_vqe_method(Context &ctx) {
  VqeConfig vc = ctx.config.vqe;
  vc.seed = ctx.config.seed;
  VqeOutcome o = vqe_once(ctx, vc);
  {
    CsvFile f(ctx, "energy_trace.csv", "iteration,energy_estimate");
    for (std::size_t i = 0; i < o.result.energy_trace.size(); ++i)
      f.row(i + 1, o.result.energy_trace[i]);
  }
  write_amplitudes(ctx, "vqe_result.csv", o.mode.amplitudes);
  {
    CsvFile f(ctx, "vqe_summary.csv", "final_energy,leakage,leakage_flag,evaluations,num_qubits");
    f.row(o.result.final_energy, o.result.leakage, o.result.leakage_flag ? 1 : 0,
          o.result.evaluations, o.result.num_qubits);
  }
  if (o.result.leakage_flag)
    ctx.report.warnings.push_back("vqe: leakage " + format_double(o.result.leakage) +
                                  " into padding states exceeds 0.05");
  add_moment(ctx, "vqe", moment_from_amplitudes(o.mode, ctx.classical.integrals));
  return o.mode;
}

PdfEstimate run_dns_method(Context &ctx) {
  const RunConfig &c = ctx.config;
  DnsConfig dc = c.dns;
  dc.seed = c.seed;
  const std::vector<double> samples = simulate(c.model, dc);
  const PdfEstimate h =
      histogram_pdf(samples, c.histogram.bins, c.histogram.x_min, c.histogram.x_max);
  {
    CsvFile f(ctx, "histogram.csv", "bin_left,bin_right,density");
    for (std::size_t i = 0; i < h.densities.size(); ++i)
      f.row(h.bin_edges[i], h.bin_edges[i + 1], h.densities[i]);
  }
  add_moment(ctx, "dns", sample_moment(samples, 2));
  return h;
}

std::optional<double> histogram_at(const PdfEstimate &h, double x) {
  if (x < h.bin_edges.front() || x > h.bin_edges.back())
    return std::nullopt;
  for (std::size_t i = 0; i + 1 < h.bin_edges.size(); ++i)
    if (x < h.bin_edges[i + 1] || i + 2 == h.bin_edges.size())
      return h.densities[i];
  return std::nullopt;
}

void run_mitigation_study(Context &ctx) {
  const RunConfig &c = ctx.config;
  CsvFile f(ctx, "mitigation.csv", "seed,method,x2_rel_error,final_energy");
  for (int s = 0; s < c.compare_mitigation_seeds; ++s) {
    for (Mitigation m : {Mitigation::none, Mitigation::zne, Mitigation::trex}) {
      VqeConfig vc = c.vqe;
      vc.seed = c.seed + static_cast<std::uint64_t>(s);
      vc.noisy = true;
      vc.mitigation = m;
      const VqeOutcome o = vqe_once(ctx, vc);
      const double x2 = moment_from_amplitudes(o.mode, ctx.classical.integrals);
      const char *name = m == Mitigation::none ? "none" : m == Mitigation::zne ? "zne" : "trex";
      f.row(static_cast<long>(vc.seed), name, rel_error(x2, ctx.exact_x2), o.result.final_energy);
    }
  }
}

} // namespace

const char *library_version() { return FPEDSS_VERSION; }

std::string file_header(const RunConfig &config) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(config_hash(config)));
  return std::string("# fpe-dss ") + FPEDSS_VERSION + " config_hash=" + hash +
         " seed=" + std::to_string(config.seed);
}

RunReport run_pipeline(const RunConfig &c) {
  fs::create_directories(c.output_dir);
  const ExactPdf exact = make_exact_pdf(c.model);
  Context ctx{c,
              fs::path(c.output_dir),
              file_header(c),
              exact,
              solve_classical(c.model, c.basis),
              exact_moment(exact, 2),
              uniform_grid(c.grid.x_min, c.grid.x_max, c.grid.points),
              {}};

  {
    std::ofstream echo(ctx.dir / "config_echo.txt", std::ios::binary | std::ios::trunc);
    echo << ctx.header << '\n' << echo_config(c);
    ctx.report.files.push_back("config_echo.txt");
  }
  add_moment(ctx, "exact", ctx.exact_x2);
  add_moment(ctx, "classical", ctx.classical.second_moment);

  switch (c.method) {
  case Method::classical: {
    {
      CsvFile f(ctx, "L.csv", "# row-major, 17 significant digits");
      write_matrix_csv(f.stream(), ctx.classical.fpe);
    }
    write_amplitudes(ctx, "classical_amplitudes.csv", ctx.classical.mode.amplitudes);
    const std::vector<double> p = pdf_on_grid(ctx, ctx.classical.mode);
    write_pdf(ctx, ctx.grid, p);
    break;
  }
  case Method::qpe: {
    const QpeOutcome q = run_qpe_method(ctx);
    const std::vector<double> p = pdf_on_grid(ctx, q.uncorrected);
    if (q.corrected)
      write_pdf(ctx, ctx.grid, p, {{"p_qpe_sign_corrected", pdf_on_grid(ctx, *q.corrected)}});
    else
      write_pdf(ctx, ctx.grid, p);
    break;
  }
  case Method::vqe: {
    const ZeroMode mode = run_vqe_method(ctx);
    write_pdf(ctx, ctx.grid, pdf_on_grid(ctx, mode));
    break;
  }
  case Method::dns: {
    const PdfEstimate h = run_dns_method(ctx);
    std::vector<double> centers(h.densities.size());
    for (std::size_t i = 0; i < centers.size(); ++i)
      centers[i] = 0.5 * (h.bin_edges[i] + h.bin_edges[i + 1]);
    write_pdf(ctx, centers, h.densities);
    break;
  }
  case Method::compare: {
    std::vector<std::pair<std::string, std::vector<double>>> columns;
    columns.emplace_back("p_exact", std::vector<double>{});
    for (double x : ctx.grid)
      columns.back().second.push_back(exact(x));
    columns.emplace_back("p_classical", pdf_on_grid(ctx, ctx.classical.mode));
    if (c.compare_qpe) {
      const QpeOutcome q = run_qpe_method(ctx);
      columns.emplace_back("p_qpe", pdf_on_grid(ctx, q.uncorrected));
      if (q.corrected)
        columns.emplace_back("p_qpe_sign_corrected", pdf_on_grid(ctx, *q.corrected));
    }
    if (c.compare_vqe)
      columns.emplace_back("p_vqe", pdf_on_grid(ctx, run_vqe_method(ctx)));
    std::optional<PdfEstimate> hist;
    if (c.compare_dns)
      hist = run_dns_method(ctx);
    if (c.compare_mitigation_seeds > 0)
      run_mitigation_study(ctx);

    std::string header = "x";
    for (const auto &col : columns)
      header += "," + col.first;
    if (hist)
      header += ",p_dns";
    CsvFile f(ctx, "compare.csv", header);
    for (std::size_t i = 0; i < ctx.grid.size(); ++i) {
      std::ostream &o = f.stream();
      o << format_double(ctx.grid[i]);
      for (const auto &col : columns)
        o << ',' << format_double(col.second[i]);
      if (hist) {
        const std::optional<double> d = histogram_at(*hist, ctx.grid[i]);
        o << ',' << (d ? format_double(*d) : "");
      }
      o << '\n';
    }
    break;
  }
  }
  write_moments(ctx);
  return ctx.report;
}

} // namespace fpedss
