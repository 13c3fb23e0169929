#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/exterior_solver.hpp"
#include "core/plane_solver.hpp"

namespace alphadisk {

// Line-oriented configuration:
//
//   # comment
//   [exterior]
//   eps = 0.1
//   t_end = 1
//
// Every error names the source and line. Keys are checked against the set a
// section understands, so typos are reported instead of silently ignored.
class ConfigSection {
 public:
  ConfigSection() = default;
  ConfigSection(std::string source, std::string name, int line);

  void set(const std::string& key, const std::string& value, int line);
  bool has(const std::string& key) const;
  const std::string& name() const { return name_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key,
                                  const std::vector<double>& fallback) const;

  double require_double(const std::string& key) const;
  std::vector<double> require_doubles(const std::string& key) const;

  // Throws ConfigError for the first key not in `known`.
  void check_keys(const std::vector<std::string>& known) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  const Entry& entry(const std::string& key) const;
  [[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& what) const;

  std::string source_;
  std::string name_;
  int line_ = 0;
  std::map<std::string, Entry> entries_;
};

class ConfigFile {
 public:
  static ConfigFile parse(const std::string& text, const std::string& source = "<config>");
  static ConfigFile load(const std::string& path);

  bool has(const std::string& section) const;
  // Throws ConfigError naming the section when it is absent.
  const ConfigSection& section(const std::string& name) const;
  const ConfigSection* find(const std::string& name) const;
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, ConfigSection> sections_;
};

double parse_number(const std::string& text);

struct ConvergeConfig {
  ExteriorSimConfig exterior;
  std::vector<double> eps;
  double plane_h = 0.02;
  Lattice plane_lattice = Lattice::cartesian;
  bool excise = false;

  PlaneSimConfig plane() const;
};

// Builders read the named section and validate the result.
PlaneSimConfig plane_config(const ConfigFile& file);
// With require_run_keys = false the [exterior] section may be absent and
// eps / t_end fall back to their defaults.
ExteriorSimConfig exterior_config(const ConfigFile& file, bool require_run_keys = true);
PicardConfig picard_config(const ConfigFile& file);
ConvergeConfig converge_config(const ConfigFile& file);

// Config text that reproduces the resolved configuration when parsed again.
std::string echo(const PlaneSimConfig& c);
std::string echo(const ExteriorSimConfig& c);
std::string echo(const PicardConfig& c);
std::string echo(const ConvergeConfig& c);

std::string format_number(double x);

}  // namespace alphadisk
