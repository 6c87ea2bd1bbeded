#include "config.hpp"

#include "errors.hpp"
#include "format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fpedss {

namespace {

using Setter = std::function<void(RunConfig &, std::string_view)>;
using Getter = std::function<std::string(const RunConfig &)>;

struct KeySpec {
  std::string name;
  Setter set;
  Getter get;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view v) {
  double out = 0.0;
  if (!v.empty() && v.front() == '+')
    v.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    throw std::invalid_argument("expected a finite real number, got '" + std::string(v) + "'");
  return out;
}

template <class Int> Int parse_int(std::string_view v) {
  Int out = 0;
  if (!v.empty() && v.front() == '+')
    v.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    // Accept integral values written in floating notation such as 1e7.
    try {
      const double d = parse_double(v);
      if (d == std::floor(d) && std::abs(d) < 9.0e15)
        return static_cast<Int>(d);
    } catch (const std::invalid_argument &) {
    }
    throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on")
    return true;
  if (v == "false" || v == "0" || v == "no" || v == "off")
    return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(v) + "'");
}

template <class E>
E parse_enum(std::string_view v, std::initializer_list<std::pair<std::string_view, E>> options) {
  std::string allowed;
  for (const auto &[name, value] : options) {
    if (v == name)
      return value;
    allowed += (allowed.empty() ? "" : "|") + std::string(name);
  }
  throw std::invalid_argument("expected one of " + allowed + ", got '" + std::string(v) + "'");
}

template <class E>
std::string enum_name(E v, std::initializer_list<std::pair<std::string_view, E>> options) {
  for (const auto &[name, value] : options)
    if (value == v)
      return std::string(name);
  return "?";
}

void require(bool ok, const char *message) {
  if (!ok)
    throw std::invalid_argument(message);
}

const std::initializer_list<std::pair<std::string_view, Method>> kMethods = {
    {"classical", Method::classical}, {"qpe", Method::qpe},         {"vqe", Method::vqe},
    {"dns", Method::dns},             {"compare", Method::compare}};
const std::initializer_list<std::pair<std::string_view, Optimizer>> kOptimizers = {
    {"spsa", Optimizer::spsa}, {"imfil", Optimizer::imfil}};
const std::initializer_list<std::pair<std::string_view, Mitigation>> kMitigations = {
    {"none", Mitigation::none}, {"zne", Mitigation::zne}, {"trex", Mitigation::trex}};
const std::initializer_list<std::pair<std::string_view, Entanglement>> kEntanglements = {
    {"linear", Entanglement::linear}, {"full", Entanglement::full}};
const std::initializer_list<std::pair<std::string_view, Extrapolation>> kExtrapolations = {
    {"linear", Extrapolation::linear}, {"quadratic", Extrapolation::quadratic}};

#define REAL_KEY(name, field, check, message)                                                      \
  KeySpec {                                                                                        \
    name,                                                                                          \
        [](RunConfig &c, std::string_view v) {                                                     \
          const double x = parse_double(v);                                                        \
          require(check, message);                                                                 \
          c.field = x;                                                                             \
        },                                                                                         \
        [](const RunConfig &c) { return format_short(c.field); }                                   \
  }

#define INT_KEY(name, field, type, check, message)                                                 \
  KeySpec {                                                                                        \
    name,                                                                                          \
        [](RunConfig &c, std::string_view v) {                                                     \
          const auto x = parse_int<type>(v);                                                       \
          require(check, message);                                                                 \
          c.field = x;                                                                             \
        },                                                                                         \
        [](const RunConfig &c) { return std::to_string(c.field); }                                 \
  }

#define BOOL_KEY(name, field)                                                                      \
  KeySpec {                                                                                        \
    name, [](RunConfig &c, std::string_view v) { c.field = parse_bool(v); },                       \
        [](const RunConfig &c) { return std::string(c.field ? "true" : "false"); }                 \
  }

#define ENUM_KEY(name, field, table)                                                               \
  KeySpec {                                                                                        \
    name, [](RunConfig &c, std::string_view v) { c.field = parse_enum(v, table); },                \
        [](const RunConfig &c) { return enum_name(c.field, table); }                               \
  }

const std::vector<KeySpec> &key_table() {
  static const std::vector<KeySpec> table = {
      REAL_KEY("a", model.drift_linear, true, ""),
      REAL_KEY("b", model.drift_cubic, x >= 0.0, "b must be >= 0 (stability)"),
      REAL_KEY("gamma", model.diffusivity, x > 0.0, "gamma must be > 0"),
      REAL_KEY("ell", basis.length_scale, x > 0.0, "ell must be > 0"),
      INT_KEY("N", basis.num_even_states, int, x >= 1 && x <= 64, "N must lie in [1, 64]"),
      INT_KEY("headroom", basis.headroom, int, x >= 4 && x <= 64, "headroom must lie in [4, 64]"),
      ENUM_KEY("method", method, kMethods),
      KeySpec{"output_dir",
              [](RunConfig &c, std::string_view v) {
                require(!v.empty(), "output_dir must not be empty");
                c.output_dir = std::string(v);
              },
              [](const RunConfig &c) { return c.output_dir; }},
      INT_KEY("seed", seed, std::uint64_t, true, ""),

      REAL_KEY("pdf.x_min", grid.x_min, true, ""),
      REAL_KEY("pdf.x_max", grid.x_max, true, ""),
      INT_KEY("pdf.points", grid.points, int, x >= 2 && x <= 1000000,
              "pdf.points must lie in [2, 1e6]"),

      INT_KEY("qpe.precision_qubits", qpe.num_precision_qubits, int, x >= 1 && x <= 16,
              "qpe.precision_qubits must lie in [1, 16]"),
      INT_KEY("qpe.shots", qpe.shots, long, x >= 0, "qpe.shots must be >= 0"),
      KeySpec{"qpe.time_scale",
              [](RunConfig &c, std::string_view v) {
                if (v == "auto") {
                  c.qpe_auto_time_scale = true;
                  return;
                }
                const double x = parse_double(v);
                require(x > 0.0, "qpe.time_scale must be > 0 or auto");
                c.qpe_auto_time_scale = false;
                c.qpe.time_scale = x;
              },
              [](const RunConfig &c) {
                return c.qpe_auto_time_scale ? std::string("auto") : format_short(c.qpe.time_scale);
              }},
      BOOL_KEY("qpe.sign_correction", qpe_sign_correction),

      ENUM_KEY("vqe.optimizer", vqe.optimizer, kOptimizers),
      INT_KEY("vqe.iterations", vqe.max_iterations, int, x >= 1, "vqe.iterations must be >= 1"),
      INT_KEY("vqe.shots", vqe.shots, long, x >= 0, "vqe.shots must be >= 0"),
      INT_KEY("vqe.reps", vqe.reps, int, x >= 0 && x <= 32, "vqe.reps must lie in [0, 32]"),
      ENUM_KEY("vqe.entanglement", vqe.entanglement, kEntanglements),
      REAL_KEY("vqe.penalty", vqe.penalty, x >= 0.0, "vqe.penalty must be >= 0 (0 = auto)"),
      BOOL_KEY("vqe.noisy", vqe.noisy),
      ENUM_KEY("vqe.mitigation", vqe.mitigation, kMitigations),
      REAL_KEY("vqe.spsa_a", vqe.spsa_a, x >= 0.0, "vqe.spsa_a must be >= 0 (0 = calibrate)"),
      REAL_KEY("vqe.spsa_c", vqe.spsa_c, x > 0.0, "vqe.spsa_c must be > 0"),
      REAL_KEY("vqe.imfil_step", vqe.imfil_initial_step, x > 0.0, "vqe.imfil_step must be > 0"),
      REAL_KEY("vqe.imfil_min_step", vqe.imfil_min_step, x > 0.0,
               "vqe.imfil_min_step must be > 0"),

      REAL_KEY("noise.p1", vqe.noise.p1, x >= 0.0 && x <= 1.0, "noise.p1 must lie in [0, 1]"),
      REAL_KEY("noise.p2", vqe.noise.p2, x >= 0.0 && x <= 1.0, "noise.p2 must lie in [0, 1]"),
      REAL_KEY("noise.readout_p01", vqe.noise.readout_p01, x >= 0.0 && x < 0.5,
               "noise.readout_p01 must lie in [0, 0.5)"),
      REAL_KEY("noise.readout_p10", vqe.noise.readout_p10, x >= 0.0 && x < 0.5,
               "noise.readout_p10 must lie in [0, 0.5)"),

      KeySpec{"zne.scale_factors",
              [](RunConfig &c, std::string_view v) {
                ZneConfig z = c.vqe.zne;
                z.scale_factors.clear();
                std::string_view rest = v;
                while (!rest.empty()) {
                  const auto comma = rest.find(',');
                  z.scale_factors.push_back(parse_int<int>(trim(rest.substr(0, comma))));
                  rest = comma == std::string_view::npos ? std::string_view{}
                                                         : rest.substr(comma + 1);
                }
                z.validate();
                c.vqe.zne = z;
              },
              [](const RunConfig &c) {
                std::string out;
                for (int s : c.vqe.zne.scale_factors)
                  out += (out.empty() ? "" : ",") + std::to_string(s);
                return out;
              }},
      ENUM_KEY("zne.extrapolation", vqe.zne.extrapolation, kExtrapolations),

      INT_KEY("trex.num_twirls", vqe.trex.num_twirls, int, x >= 1, "trex.num_twirls must be >= 1"),
      INT_KEY("trex.calibration_shots", vqe.trex.calibration_shots, long, x >= 1,
              "trex.calibration_shots must be >= 1"),

      REAL_KEY("dns.step", dns.step, x > 0.0, "dns.step must be > 0"),
      INT_KEY("dns.steps", dns.num_steps, long, x >= 1, "dns.steps must be >= 1"),
      INT_KEY("dns.burn_in", dns.burn_in, long, x >= 0, "dns.burn_in must be >= 0"),
      REAL_KEY("dns.x0", dns.x0, std::abs(x) < 100.0, "dns.x0 must satisfy |x0| < 100"),
      INT_KEY("dns.bins", histogram.bins, int, x >= 2, "dns.bins must be >= 2"),
      REAL_KEY("dns.x_min", histogram.x_min, true, ""),
      REAL_KEY("dns.x_max", histogram.x_max, true, ""),

      BOOL_KEY("compare.qpe", compare_qpe),
      BOOL_KEY("compare.vqe", compare_vqe),
      BOOL_KEY("compare.dns", compare_dns),
      INT_KEY("compare.mitigation_seeds", compare_mitigation_seeds, int, x >= 0 && x <= 1000,
              "compare.mitigation_seeds must lie in [0, 1000]"),
  };
  return table;
}

#undef REAL_KEY
#undef INT_KEY
#undef BOOL_KEY
#undef ENUM_KEY

std::string canonical_key(std::string_view key) {
  if (key == "iters" || key == "iterations")
    return "vqe.iterations";
  if (key == "n")
    return "N";
  return std::string(key);
}

const KeySpec &find_key(std::string_view key, int line) {
  const std::string name = canonical_key(key);
  for (const KeySpec &k : key_table())
    if (k.name == name)
      return k;
  throw ConfigError("unknown key '" + std::string(key) + "'", line, std::string(key));
}

// Cross-field invariants that cannot be checked key by key.
void validate_config(const RunConfig &c) {
  auto fail = [](const std::string &key, const std::string &msg) {
    throw ConfigError(msg, 0, key);
  };
  if (!(c.grid.x_min < c.grid.x_max))
    fail("pdf.x_max", "pdf.x_min must be below pdf.x_max");
  if (!(c.histogram.x_min < c.histogram.x_max))
    fail("dns.x_max", "dns.x_min must be below dns.x_max");
  if (c.dns.burn_in >= c.dns.num_steps)
    fail("dns.burn_in", "dns.burn_in must be below dns.steps");
  if (c.vqe.mitigation != Mitigation::none && !c.vqe.noisy)
    fail("vqe.mitigation", "vqe.mitigation requires vqe.noisy = true");
  if (c.model.drift_cubic == 0.0 && c.model.drift_linear <= 0.0)
    fail("a", "b = 0 requires a > 0 for a normalizable density");
}

} // namespace

std::string_view method_name(Method m) {
  for (const auto &[name, value] : kMethods)
    if (value == m)
      return name;
  return "?";
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const KeySpec &k : key_table())
    out.push_back(k.name);
  return out;
}

void set_config_value(RunConfig &config, std::string_view key, std::string_view value) {
  const KeySpec &k = find_key(trim(key), 0);
  RunConfig updated = config;
  try {
    k.set(updated, trim(value));
  } catch (const std::invalid_argument &e) {
    throw ConfigError(k.name + ": " + e.what(), 0, k.name);
  }
  validate_config(updated);
  config = std::move(updated);
}

std::string get_config_value(const RunConfig &config, std::string_view key) {
  return find_key(trim(key), 0).get(config);
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::set<std::string> seen;
  std::string section;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF"))
      line.remove_prefix(3);
    line = trim(line);
    if (line.empty() || line.front() == '#' || line.front() == ';')
      continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      static const std::set<std::string> sections = {"",     "model", "pdf",  "qpe",  "vqe",
                                                     "noise", "zne",  "trex", "dns", "compare"};
      if (!sections.contains(section))
        throw ConfigError("unknown section '" + section + "'", line_no, section);
      if (section == "model")
        section.clear();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected key = value", line_no);
    std::string_view raw_key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (const auto hash = value.find(" #"); hash != std::string_view::npos)
      value = trim(value.substr(0, hash));
    if (raw_key.empty())
      throw ConfigError("empty key", line_no);
    std::string key = std::string(raw_key);
    if (!section.empty() && key.find('.') == std::string::npos)
      key = section + "." + key;
    const KeySpec &k = find_key(key, line_no);
    if (!seen.insert(k.name).second)
      throw ConfigError("duplicate key '" + k.name + "'", line_no, k.name);
    try {
      k.set(config, value);
    } catch (const std::invalid_argument &e) {
      throw ConfigError(k.name + ": " + e.what(), line_no, k.name);
    }
  }
  validate_config(config);
  return config;
}

RunConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string echo_config(const RunConfig &config) {
  std::string out;
  for (const KeySpec &k : key_table())
    out += k.name + "=" + k.get(config) + "\n";
  return out;
}

std::uint64_t config_hash(const RunConfig &config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const KeySpec &k : key_table()) {
    if (k.name == "output_dir")
      continue;
    for (char ch : k.name + "=" + k.get(config) + "\n") {
      h ^= static_cast<unsigned char>(ch);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

} // namespace fpedss
