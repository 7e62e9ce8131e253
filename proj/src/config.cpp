#include "chemo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "chemo/error.hpp"
#include "chemo/profiles.hpp"

namespace chemo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
    throw ConfigError("expected a finite number, got '" + text + "'");
  return value;
}

template <class Int>
Int to_integer(const std::string& text) {
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("expected an integer, got '" + text + "'");
  return value;
}

bool to_bool(const std::string& text) {
  if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
  if (text == "false" || text == "no" || text == "off" || text == "0") return false;
  throw ConfigError("expected a boolean, got '" + text + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&)>;
using KeyTable = std::map<std::string, Setter, std::less<>>;

template <class T>
Setter number(T RunConfig::*section, double T::*field) {
  return [=](RunConfig& c, const std::string& v) { (c.*section).*field = to_double(v); };
}

template <class T, class Int>
Setter integer(T RunConfig::*section, Int T::*field) {
  return [=](RunConfig& c, const std::string& v) { (c.*section).*field = to_integer<Int>(v); };
}

template <class T>
Setter optional_number(T RunConfig::*section, std::optional<double> T::*field) {
  return [=](RunConfig& c, const std::string& v) { (c.*section).*field = to_double(v); };
}

template <class T>
Setter text(T RunConfig::*section, std::string T::*field) {
  return [=](RunConfig& c, const std::string& v) { (c.*section).*field = v; };
}

template <class T>
Setter flag(T RunConfig::*section, bool T::*field) {
  return [=](RunConfig& c, const std::string& v) { (c.*section).*field = to_bool(v); };
}

const std::map<std::string, KeyTable, std::less<>>& schema() {
  static const std::map<std::string, KeyTable, std::less<>> table = {
      {"model",
       {{"m", number(&RunConfig::model, &ModelParams::m)},
        {"alpha", number(&RunConfig::model, &ModelParams::alpha)},
        {"k", number(&RunConfig::model, &ModelParams::k)},
        {"mu", number(&RunConfig::model, &ModelParams::mu)},
        {"chi0", number(&RunConfig::model, &ModelParams::chi0)},
        {"a", number(&RunConfig::model, &ModelParams::a)},
        {"b", number(&RunConfig::model, &ModelParams::b)}}},
      {"grid",
       {{"dim", integer(&RunConfig::grid, &GridSpec::dim)},
        {"nx", integer(&RunConfig::grid, &GridSpec::nx)},
        {"ny", integer(&RunConfig::grid, &GridSpec::ny)},
        {"Lx", number(&RunConfig::grid, &GridSpec::Lx)},
        {"Ly", number(&RunConfig::grid, &GridSpec::Ly)}}},
      {"time",
       {{"t_end", number(&RunConfig::time, &SolverConfig::t_end)},
        {"safety", number(&RunConfig::time, &SolverConfig::safety)},
        {"dt_min", number(&RunConfig::time, &SolverConfig::dt_min)},
        {"u_max", number(&RunConfig::time, &SolverConfig::u_max)}}},
      {"init", {{"u0", text(&RunConfig::init, &InitSpec::u0)}, {"v0", text(&RunConfig::init, &InitSpec::v0)}}},
      {"monitor",
       {{"p", optional_number(&RunConfig::monitor, &MonitorSpec::p)},
        {"tol_mass", number(&RunConfig::monitor, &MonitorSpec::tol_mass)},
        {"tol_grad", number(&RunConfig::monitor, &MonitorSpec::tol_grad)},
        {"tol_maxprin", number(&RunConfig::monitor, &MonitorSpec::tol_maxprin)},
        {"cadence", number(&RunConfig::monitor, &MonitorSpec::cadence)}}},
      {"output",
       {{"dir", text(&RunConfig::output, &OutputSpec::dir)},
        {"csv", text(&RunConfig::output, &OutputSpec::csv)},
        {"json", text(&RunConfig::output, &OutputSpec::json)},
        {"dump_fields", flag(&RunConfig::output, &OutputSpec::dump_fields)}}},
      {"certificate",
       {{"q1", optional_number(&RunConfig::certificate, &CertificateSpec::q1)},
        {"q2", optional_number(&RunConfig::certificate, &CertificateSpec::q2)},
        {"p", optional_number(&RunConfig::certificate, &CertificateSpec::p)},
        {"k1_literal", flag(&RunConfig::certificate, &CertificateSpec::k1_literal)}}},
      {"sweep",
       {{"mu_lo", number(&RunConfig::sweep, &SweepSpec::mu_lo)},
        {"mu_hi", number(&RunConfig::sweep, &SweepSpec::mu_hi)},
        {"bisection_steps", integer(&RunConfig::sweep, &SweepSpec::bisection_steps)}}},
      {"oracle",
       {{"trials", integer(&RunConfig::oracle, &OracleSpec::trials)},
        {"seed", integer(&RunConfig::oracle, &OracleSpec::seed)},
        {"dim", integer(&RunConfig::oracle, &OracleSpec::dim)},
        {"nx", integer(&RunConfig::oracle, &OracleSpec::nx)},
        {"num_modes", integer(&RunConfig::oracle, &OracleSpec::num_modes)}}},
  };
  return table;
}

struct Entry {
  std::string value;
  int line = 0;  // 0 for command-line overrides
};

// section -> key -> entry. Setters are independent; validation runs after all of them.
using RawConfig = std::map<std::string, std::map<std::string, Entry>>;

const Setter& lookup(std::string_view section, std::string_view key, int line) {
  const auto& table = schema();
  const auto s = table.find(section);
  if (s == table.end()) throw ConfigError("unknown section [" + std::string(section) + "]", line);
  const auto k = s->second.find(key);
  if (k == s->second.end())
    throw ConfigError("unknown key '" + std::string(key) + "' in [" + std::string(section) + "]", line);
  return k->second;
}

RawConfig read_raw(std::string_view text) {
  RawConfig raw;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view line = trim(text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos));
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().contains(section)) throw ConfigError("unknown section [" + section + "]", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    if (section.empty()) throw ConfigError("key outside of any section", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("empty key", line_no);
    lookup(section, key, line_no);
    auto& keys = raw[section];
    if (keys.contains(key)) throw ConfigError("duplicate key '" + key + "' in [" + section + "]", line_no);
    keys[key] = {value, line_no};
  }
  return raw;
}

class Validator {
 public:
  explicit Validator(const RawConfig& raw) : raw_(raw) {}

  void require(bool ok, const std::string& message, const char* section, const char* key) const {
    if (!ok) throw ConfigError(message, line_of(section, key));
  }

 private:
  int line_of(const char* section, const char* key) const {
    const auto s = raw_.find(section);
    if (s == raw_.end()) return 0;
    const auto k = s->second.find(key);
    return k == s->second.end() ? 0 : k->second.line;
  }

  const RawConfig& raw_;
};

void validate(const RunConfig& c, const RawConfig& raw) {
  const Validator v(raw);
  const ModelParams& m = c.model;
  v.require(m.mu > 0.0, "mu must be positive", "model", "mu");
  v.require(m.alpha < (m.m + 1.0) / 2.0, "alpha < (m+1)/2 violated", "model", "alpha");
  v.require(m.chi0 >= 0.0, "chi0 must be nonnegative", "model", "chi0");
  v.require(m.a >= 0.0, "a must be nonnegative", "model", "a");
  v.require(m.b > 0.0, "b must be positive", "model", "b");

  const GridSpec& g = c.grid;
  v.require(g.dim == 1 || g.dim == 2, "dim must be 1 or 2", "grid", "dim");
  v.require(g.nx >= 4, "nx must be >= 4", "grid", "nx");
  v.require(g.dim == 1 || g.ny >= 4, "ny must be >= 4", "grid", "ny");
  v.require(g.Lx > 0.0, "Lx must be positive", "grid", "Lx");
  v.require(g.Ly > 0.0, "Ly must be positive", "grid", "Ly");

  const SolverConfig& t = c.time;
  v.require(t.t_end > 0.0, "t_end must be positive", "time", "t_end");
  v.require(t.safety > 0.0 && t.safety <= 1.0, "safety must be in (0, 1]", "time", "safety");
  v.require(t.dt_min > 0.0, "dt_min must be positive", "time", "dt_min");
  v.require(t.u_max > 0.0, "u_max must be positive", "time", "u_max");

  for (const auto& [key, profile] : {std::pair{"u0", c.init.u0}, std::pair{"v0", c.init.v0}}) {
    try {
      parse_profile(profile, g.dim);
    } catch (const DomainError& e) {
      v.require(false, e.what(), "init", key);
    }
  }

  const MonitorSpec& mon = c.monitor;
  v.require(!mon.p || *mon.p >= 1.0, "monitor p must be >= 1", "monitor", "p");
  v.require(mon.tol_mass > 0.0, "tol_mass must be positive", "monitor", "tol_mass");
  v.require(mon.tol_grad > 0.0, "tol_grad must be positive", "monitor", "tol_grad");
  v.require(mon.tol_maxprin > 0.0, "tol_maxprin must be positive", "monitor", "tol_maxprin");
  v.require(mon.cadence >= 0.0, "cadence must be nonnegative", "monitor", "cadence");

  v.require(!c.output.csv.empty(), "csv file name must not be empty", "output", "csv");
  v.require(!c.output.json.empty(), "json file name must not be empty", "output", "json");

  const CertificateSpec& cert = c.certificate;
  const int n = g.dim;
  v.require(!cert.q1 || *cert.q1 > n + 2.0, "q1 > n+2 violated", "certificate", "q1");
  v.require(!cert.q2 || *cert.q2 > (n + 2.0) / 2.0, "q2 > (n+2)/2 violated", "certificate", "q2");
  v.require(!cert.p || *cert.p > 1.0, "p > 1 violated", "certificate", "p");

  const SweepSpec& s = c.sweep;
  v.require(s.mu_lo > 0.0, "mu_lo must be positive", "sweep", "mu_lo");
  v.require(s.mu_lo < s.mu_hi, "mu_lo < mu_hi violated", "sweep", "mu_hi");
  v.require(s.bisection_steps >= 1, "bisection_steps must be >= 1", "sweep", "bisection_steps");

  const OracleSpec& o = c.oracle;
  v.require(o.trials >= 1, "trials must be >= 1", "oracle", "trials");
  v.require(o.dim == 1 || o.dim == 2, "oracle dim must be 1 or 2", "oracle", "dim");
  v.require(o.nx >= 4, "oracle nx must be >= 4", "oracle", "nx");
  v.require(o.num_modes >= 1, "num_modes must be >= 1", "oracle", "num_modes");
}

}  // namespace

Grid GridSpec::make() const { return dim == 1 ? Grid(nx, Lx) : Grid(nx, ny, Lx, Ly); }

AuxiliaryExponents RunConfig::exponents() const {
  AuxiliaryExponents e = default_exponents(model);
  if (certificate.q1) e.q1 = *certificate.q1;
  if (certificate.q2) e.q2 = *certificate.q2;
  if (certificate.p) {
    e.p = *certificate.p;
  } else if (certificate.q1 || certificate.q2) {
    e.p = std::ceil(compute_p_bar(model.n, model.m, model.alpha, e.q1, e.q2));
  }
  return e;
}

MonitorConfig RunConfig::monitor_config(double p_default) const {
  MonitorConfig m;
  m.p = monitor.p.value_or(p_default);
  m.tol_mass = monitor.tol_mass;
  m.tol_grad = monitor.tol_grad;
  m.tol_maxprin = monitor.tol_maxprin;
  m.cadence = monitor.cadence;
  return m;
}

SolverConfig RunConfig::solver_config() const {
  SolverConfig s = time;
  s.output_interval = monitor.cadence;
  s.output_every_steps = 0;
  return s;
}

Override parse_override(std::string_view text) {
  const auto eq = text.find('=');
  const auto dot = text.substr(0, eq).find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos)
    throw ConfigError("--set expects section.key=value, got '" + std::string(text) + "'");
  Override o{std::string(trim(text.substr(0, dot))), std::string(trim(text.substr(dot + 1, eq - dot - 1))),
             std::string(trim(text.substr(eq + 1)))};
  if (o.section.empty() || o.key.empty())
    throw ConfigError("--set expects section.key=value, got '" + std::string(text) + "'");
  return o;
}

RunConfig parse_config(std::string_view text, const std::vector<Override>& overrides) {
  RawConfig raw = read_raw(text);
  for (const Override& o : overrides) {
    try {
      lookup(o.section, o.key, 0);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("--set: ") + e.what());
    }
    raw[o.section][o.key] = {o.value, 0};
  }

  RunConfig config;
  for (const auto& [section, keys] : raw) {
    for (const auto& [key, entry] : keys) {
      try {
        lookup(section, key, entry.line)(config, entry.value);
      } catch (const ConfigError& e) {
        const std::string where = entry.line > 0 ? "" : "--set " + section + "." + key + ": ";
        throw ConfigError(where + section + "." + key + ": " + e.what(), entry.line);
      }
    }
  }
  config.model.n = config.grid.dim;
  const bool u0_given = raw.contains("init") && raw.at("init").contains("u0");
  if (!u0_given && config.grid.dim == 2) config.init.u0 = kDefaultBump2D;
  validate(config, raw);
  return config;
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), overrides);
}

}  // namespace chemo
