#include "core/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace alphadisk {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(const std::string& source, int line) {
  return source + ":" + std::to_string(line) + ": ";
}

}  // namespace

double parse_number(const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  double x = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, x, std::chars_format::general);
  if (t.empty() || ec != std::errc() || ptr != last || !std::isfinite(x)) {
    throw ConfigError("'" + trim(text) + "' is not a finite decimal number");
  }
  return x;
}

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------

ConfigSection::ConfigSection(std::string source, std::string name, int line)
    : source_(std::move(source)), name_(std::move(name)), line_(line) {}

void ConfigSection::set(const std::string& key, const std::string& value, int line) {
  if (entries_.count(key) != 0) {
    throw ConfigError(where(source_, line) + "duplicate key '" + key + "' in [" + name_ +
                      "] (first set on line " + std::to_string(entries_.at(key).line) + ")");
  }
  entries_[key] = {value, line};
}

bool ConfigSection::has(const std::string& key) const { return entries_.count(key) != 0; }

const ConfigSection::Entry& ConfigSection::entry(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ConfigError(where(source_, line_) + "missing required key '" + key + "' in [" +
                      name_ + "]");
  }
  return it->second;
}

void ConfigSection::fail(const Entry& e, const std::string& key, const std::string& what) const {
  throw ConfigError(where(source_, e.line) + "key '" + key + "': " + what);
}

std::string ConfigSection::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? entry(key).value : fallback;
}

double ConfigSection::get_double(const std::string& key, double fallback) const {
  return has(key) ? require_double(key) : fallback;
}

double ConfigSection::require_double(const std::string& key) const {
  const Entry& e = entry(key);
  try {
    return parse_number(e.value);
  } catch (const ConfigError& err) {
    fail(e, key, err.what());
  }
}

int ConfigSection::get_int(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const Entry& e = entry(key);
  const double x = require_double(key);
  if (x != std::floor(x) || std::abs(x) > 2e9) fail(e, key, "expected an integer");
  return static_cast<int>(x);
}

bool ConfigSection::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Entry& e = entry(key);
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  fail(e, key, "expected true or false");
}

std::vector<double> ConfigSection::get_doubles(const std::string& key,
                                               const std::vector<double>& fallback) const {
  return has(key) ? require_doubles(key) : fallback;
}

std::vector<double> ConfigSection::require_doubles(const std::string& key) const {
  const Entry& e = entry(key);
  std::vector<double> out;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_number(item));
    } catch (const ConfigError& err) {
      fail(e, key, err.what());
    }
  }
  if (out.empty()) fail(e, key, "expected a comma-separated list of numbers");
  return out;
}

void ConfigSection::check_keys(const std::vector<std::string>& known) const {
  for (const auto& [key, e] : entries_) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail(e, key, "unknown key in [" + name_ + "]");
    }
  }
}

// ---------------------------------------------------------------------------

ConfigFile ConfigFile::parse(const std::string& text, const std::string& source) {
  ConfigFile f;
  f.source_ = source;
  std::stringstream in(text);
  std::string raw;
  int line = 0;
  ConfigSection* current = nullptr;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) {
        throw ConfigError(where(source, line) + "malformed section header '" + s + "'");
      }
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (f.sections_.count(name) != 0) {
        throw ConfigError(where(source, line) + "duplicate section [" + name + "]");
      }
      current = &f.sections_.emplace(name, ConfigSection(source, name, line)).first->second;
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where(source, line) + "expected 'key = value', got '" + s + "'");
    }
    if (current == nullptr) {
      throw ConfigError(where(source, line) + "entry outside of any [section]");
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(where(source, line) + "empty key");
    if (value.empty()) throw ConfigError(where(source, line) + "empty value for '" + key + "'");
    current->set(key, value, line);
  }
  return f;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

bool ConfigFile::has(const std::string& name) const { return sections_.count(name) != 0; }

const ConfigSection* ConfigFile::find(const std::string& name) const {
  const auto it = sections_.find(name);
  return it == sections_.end() ? nullptr : &it->second;
}

const ConfigSection& ConfigFile::section(const std::string& name) const {
  const ConfigSection* s = find(name);
  if (s == nullptr) throw ConfigError(source_ + ": missing required section [" + name + "]");
  return *s;
}

// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string> kVorticityKeys = {"q0",     "amplitude",   "centre_x",  "centre_y",
                                                 "radius", "ring_radius", "ring_width"};

std::vector<std::string> with_vorticity(std::vector<std::string> keys) {
  keys.insert(keys.end(), kVorticityKeys.begin(), kVorticityKeys.end());
  return keys;
}

// Rethrows domain errors from validation as configuration errors.
template <class F>
void validated(const std::string& source, const std::string& section, F&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    throw ConfigError(source + ": [" + section + "]: " + e.what());
  }
}

VorticitySpec read_vorticity(const ConfigSection& s) {
  VorticitySpec q;
  if (s.has("q0")) {
    try {
      q.kind = parse_vorticity_kind(s.get_string("q0", "bump"));
    } catch (const DomainError& e) {
      throw ConfigError(std::string("[") + s.name() + "] key 'q0': " + e.what());
    }
  }
  q.amplitude = s.get_double("amplitude", q.amplitude);
  q.centre.x1 = s.get_double("centre_x", q.centre.x1);
  q.centre.x2 = s.get_double("centre_y", q.centre.x2);
  q.radius = s.get_double("radius", q.radius);
  q.ring_radius = s.get_double("ring_radius", q.ring_radius);
  q.ring_width = s.get_double("ring_width", q.ring_width);
  return q;
}

void echo_vorticity(std::ostream& o, const VorticitySpec& q) {
  o << "q0 = " << to_string(q.kind) << "\n"
    << "amplitude = " << format_number(q.amplitude) << "\n"
    << "centre_x = " << format_number(q.centre.x1) << "\n"
    << "centre_y = " << format_number(q.centre.x2) << "\n"
    << "radius = " << format_number(q.radius) << "\n"
    << "ring_radius = " << format_number(q.ring_radius) << "\n"
    << "ring_width = " << format_number(q.ring_width) << "\n";
}

Lattice parse_lattice(const ConfigSection& s, const std::string& key, Lattice fallback) {
  if (!s.has(key)) return fallback;
  const std::string v = s.get_string(key, "");
  if (v == "cartesian") return Lattice::cartesian;
  if (v == "polar") return Lattice::polar;
  throw ConfigError("[" + s.name() + "] key '" + key + "': expected cartesian or polar");
}

const char* lattice_name(Lattice l) { return l == Lattice::polar ? "polar" : "cartesian"; }

const std::vector<std::string> kExteriorKeys = with_vorticity(
    {"alpha", "eps", "gamma", "dt", "t_end", "snapshot_stride", "n_modes", "r_max", "n_r",
     "n_theta", "grading", "r_join", "interpolation", "corrector", "max_foot_violations"});

ExteriorSimConfig read_exterior(const ConfigSection* s, bool strict) {
  ExteriorSimConfig c;
  if (s == nullptr) return c;
  s->check_keys(kExteriorKeys);
  c.params.alpha = s->get_double("alpha", c.params.alpha);
  c.params.eps = strict ? s->require_double("eps") : s->get_double("eps", c.params.eps);
  c.params.gamma = s->get_double("gamma", c.params.gamma);
  c.dt = s->get_double("dt", c.dt);
  c.t_end = strict ? s->require_double("t_end") : s->get_double("t_end", c.t_end);
  c.snapshot_stride = s->get_int("snapshot_stride", c.snapshot_stride);
  c.n_modes = s->get_int("n_modes", c.n_modes);
  c.grid.eps = c.params.eps;
  c.grid.r_max = s->get_double("r_max", c.grid.r_max);
  c.grid.n_r = s->get_int("n_r", c.grid.n_r);
  c.grid.n_theta = s->get_int("n_theta", c.grid.n_theta);
  c.grid.grading = s->get_double("grading", c.grid.grading);
  c.grid.r_join = s->get_double("r_join", c.grid.r_join);
  const std::string interp = s->get_string("interpolation", "cubic");
  if (interp == "cubic") {
    c.interpolation = Interpolation::cubic;
  } else if (interp == "bilinear") {
    c.interpolation = Interpolation::bilinear;
  } else {
    throw ConfigError("[" + s->name() + "] key 'interpolation': expected cubic or bilinear");
  }
  c.corrector = s->get_bool("corrector", c.corrector);
  c.max_foot_violations = s->get_int("max_foot_violations", c.max_foot_violations);
  c.q0 = read_vorticity(*s);
  return c;
}

void echo_exterior_body(std::ostream& o, const ExteriorSimConfig& c) {
  o << "alpha = " << format_number(c.params.alpha) << "\n"
    << "eps = " << format_number(c.params.eps) << "\n"
    << "gamma = " << format_number(c.params.gamma) << "\n"
    << "dt = " << format_number(c.dt) << "\n"
    << "t_end = " << format_number(c.t_end) << "\n"
    << "snapshot_stride = " << c.snapshot_stride << "\n"
    << "n_modes = " << c.n_modes << "\n"
    << "r_max = " << format_number(c.grid.r_max) << "\n"
    << "n_r = " << c.grid.n_r << "\n"
    << "n_theta = " << c.grid.n_theta << "\n"
    << "grading = " << format_number(c.grid.grading) << "\n"
    << "r_join = " << format_number(c.grid.r_join) << "\n"
    << "interpolation = " << (c.interpolation == Interpolation::cubic ? "cubic" : "bilinear")
    << "\n"
    << "corrector = " << (c.corrector ? "true" : "false") << "\n"
    << "max_foot_violations = " << c.max_foot_violations << "\n";
  echo_vorticity(o, c.q0);
}

}  // namespace

PlaneSimConfig plane_config(const ConfigFile& file) {
  const ConfigSection& s = file.section("plane");
  s.check_keys(with_vorticity({"alpha", "gamma", "dt", "t_end", "h", "snapshot_stride",
                               "lattice"}));
  PlaneSimConfig c;
  c.alpha = s.get_double("alpha", c.alpha);
  c.gamma = s.get_double("gamma", c.gamma);
  c.dt = s.get_double("dt", c.dt);
  c.t_end = s.require_double("t_end");
  c.h = s.get_double("h", c.h);
  c.snapshot_stride = s.get_int("snapshot_stride", c.snapshot_stride);
  c.lattice = parse_lattice(s, "lattice", c.lattice);
  c.q0 = read_vorticity(s);
  validated(file.source(), "plane", [&] { c.validate(); });
  return c;
}

ExteriorSimConfig exterior_config(const ConfigFile& file, bool require_run_keys) {
  ExteriorSimConfig c = require_run_keys ? read_exterior(&file.section("exterior"), true)
                                         : read_exterior(file.find("exterior"), false);
  validated(file.source(), "exterior", [&] { c.validate(); });
  return c;
}

PicardConfig picard_config(const ConfigFile& file) {
  const ConfigSection& s = file.section("picard");
  s.check_keys({"n_iters", "t0", "dt"});
  PicardConfig p;
  p.n_iters = s.get_int("n_iters", p.n_iters);
  p.t0 = s.require_double("t0");
  p.dt = s.get_double("dt", p.dt);
  if (p.n_iters < 2) throw ConfigError(file.source() + ": [picard]: n_iters must be >= 2");
  if (!(p.t0 > 0.0)) throw ConfigError(file.source() + ": [picard]: t0 must be > 0");
  if (p.dt < 0.0) throw ConfigError(file.source() + ": [picard]: dt must be >= 0");
  return p;
}

PlaneSimConfig ConvergeConfig::plane() const {
  PlaneSimConfig p;
  p.alpha = exterior.params.alpha;
  p.gamma = exterior.params.gamma;
  p.dt = exterior.dt;
  p.t_end = exterior.t_end;
  p.h = plane_h;
  p.snapshot_stride = exterior.snapshot_stride;
  p.lattice = plane_lattice;
  p.q0 = exterior.q0;
  return p;
}

ConvergeConfig converge_config(const ConfigFile& file) {
  const ConfigSection& s = file.section("converge");
  s.check_keys({"eps", "plane_h", "plane_lattice", "excise"});
  ConvergeConfig c;
  c.exterior = read_exterior(file.find("exterior"), false);
  c.eps = s.require_doubles("eps");
  c.plane_h = s.get_double("plane_h", c.plane_h);
  c.plane_lattice = parse_lattice(s, "plane_lattice", c.plane_lattice);
  c.excise = s.get_bool("excise", c.excise);
  if (c.eps.size() < 2) {
    throw ConfigError(file.source() + ": [converge]: eps needs at least two values for a trend");
  }
  validated(file.source(), "converge", [&] {
    for (double e : c.eps) {
      ExteriorSimConfig x = c.exterior;
      x.params.eps = x.grid.eps = e;
      x.validate();
    }
    c.plane().validate();
  });
  return c;
}

std::string echo(const PlaneSimConfig& c) {
  std::ostringstream o;
  o << "[plane]\n"
    << "alpha = " << format_number(c.alpha) << "\n"
    << "gamma = " << format_number(c.gamma) << "\n"
    << "dt = " << format_number(c.dt) << "\n"
    << "t_end = " << format_number(c.t_end) << "\n"
    << "h = " << format_number(c.h) << "\n"
    << "snapshot_stride = " << c.snapshot_stride << "\n"
    << "lattice = " << lattice_name(c.lattice) << "\n";
  echo_vorticity(o, c.q0);
  return o.str();
}

std::string echo(const ExteriorSimConfig& c) {
  std::ostringstream o;
  o << "[exterior]\n";
  echo_exterior_body(o, c);
  return o.str();
}

std::string echo(const PicardConfig& c) {
  std::ostringstream o;
  o << "[picard]\n"
    << "n_iters = " << c.n_iters << "\n"
    << "t0 = " << format_number(c.t0) << "\n"
    << "dt = " << format_number(c.dt) << "\n";
  return o.str();
}

std::string echo(const ConvergeConfig& c) {
  std::ostringstream o;
  o << echo(c.exterior) << "\n[converge]\neps = ";
  for (std::size_t k = 0; k < c.eps.size(); ++k) o << (k ? ", " : "") << format_number(c.eps[k]);
  o << "\nplane_h = " << format_number(c.plane_h) << "\n"
    << "plane_lattice = " << lattice_name(c.plane_lattice) << "\n"
    << "excise = " << (c.excise ? "true" : "false") << "\n";
  return o.str();
}

}  // namespace alphadisk
