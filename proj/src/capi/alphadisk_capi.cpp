#include "alphadisk/alphadisk.h"

#include <exception>
#include <memory>
#include <new>
#include <string>
#include <variant>

#include "core/commands.hpp"
#include "core/config.hpp"
#include "core/error.hpp"
#include "core/exterior_solver.hpp"
#include "core/kernels.hpp"
#include "core/plane_solver.hpp"
#include "core/radial_exterior.hpp"
#include "core/run_record.hpp"
#include "core/specfun.hpp"

struct alphadisk_config {
  alphadisk::ConfigFile file;
};

struct alphadisk_run {
  std::variant<alphadisk::PlaneRun, alphadisk::ExteriorRun> run;
  alphadisk::Provenance provenance;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_output_root;

alphadisk_status fail(alphadisk_status s, const std::string& what) {
  g_last_error = what;
  return s;
}

// Maps every exception to a status; nothing escapes the C boundary.
template <class F>
alphadisk_status guarded(F&& f) {
  try {
    return f();
  } catch (const alphadisk::ConfigError& e) {
    return fail(ALPHADISK_E_CONFIG, e.what());
  } catch (const alphadisk::DomainError& e) {
    return fail(ALPHADISK_E_DOMAIN, e.what());
  } catch (const alphadisk::NumericalError& e) {
    return fail(ALPHADISK_E_NUMERICAL, e.what());
  } catch (const alphadisk::IoError& e) {
    return fail(ALPHADISK_E_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ALPHADISK_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ALPHADISK_E_INTERNAL, e.what());
  } catch (...) {
    return fail(ALPHADISK_E_INTERNAL, "unknown error");
  }
}

alphadisk_status null_arg(const char* name) {
  return fail(ALPHADISK_E_ARGUMENT, std::string(name) + " must not be NULL");
}

alphadisk::LogFn make_log(alphadisk_log_fn fn, void* user) {
  if (fn == nullptr) return {};
  return [fn, user](const std::string& line) { fn(line.c_str(), user); };
}

alphadisk_status from_outcome(alphadisk::Outcome o) {
  if (o == alphadisk::Outcome::ok) return ALPHADISK_OK;
  return fail(ALPHADISK_E_ACCEPTANCE, "acceptance check failed (see log)");
}

bool valid_kind(alphadisk_sim_kind k) {
  return k == ALPHADISK_SIM_PLANE || k == ALPHADISK_SIM_EXTERIOR;
}

}  // namespace

extern "C" {

const char* alphadisk_version(void) { return ALPHADISK_VERSION; }

const char* alphadisk_status_name(alphadisk_status status) {
  switch (status) {
    case ALPHADISK_OK: return "ok";
    case ALPHADISK_E_ARGUMENT: return "invalid argument";
    case ALPHADISK_E_CONFIG: return "configuration error";
    case ALPHADISK_E_ACCEPTANCE: return "acceptance failure";
    case ALPHADISK_E_NUMERICAL: return "numerical abort";
    case ALPHADISK_E_DOMAIN: return "domain error";
    case ALPHADISK_E_IO: return "i/o error";
    case ALPHADISK_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* alphadisk_last_error(void) { return g_last_error.c_str(); }

const char* alphadisk_default_output_root(void) {
  g_output_root = alphadisk::default_output_root();
  return g_output_root.c_str();
}

alphadisk_status alphadisk_bessel_k(int order, double z, double* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = alphadisk::bessel_k(order, z);
    return ALPHADISK_OK;
  });
}

alphadisk_status alphadisk_g_alpha(double r, double alpha, double* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    alphadisk::FilterParams p;
    p.alpha = alpha;
    p.validate();
    *out = alphadisk::g_alpha(r, p);
    return ALPHADISK_OK;
  });
}

alphadisk_status alphadisk_k_theta(double r, double alpha, double* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    alphadisk::FilterParams p;
    p.alpha = alpha;
    p.validate();
    *out = alphadisk::k_theta(r, p);
    return ALPHADISK_OK;
  });
}

alphadisk_status alphadisk_filtered_harmonic(double r, double alpha, double eps, double* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    alphadisk::FilterParams p;
    p.alpha = alpha;
    p.eps = eps;
    p.validate();
    *out = alphadisk::filtered_harmonic(r, p);
    return ALPHADISK_OK;
  });
}

alphadisk_status alphadisk_radial_constants(double alpha, double eps, double* a_eps,
                                            double* b_eps, double* energy) {
  return guarded([&] {
    alphadisk::FilterParams p;
    p.alpha = alpha;
    p.eps = eps;
    p.validate();
    if (a_eps != nullptr) *a_eps = alphadisk::a_eps(p);
    if (b_eps != nullptr) *b_eps = alphadisk::b_eps(p);
    if (energy != nullptr) {
      *energy = alphadisk::w4_h1_energy(p, alphadisk::EnergyMode::identity);
    }
    return ALPHADISK_OK;
  });
}

// ---------------------------------------------------------------------------

alphadisk_status alphadisk_config_load(const char* path, alphadisk_config** out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new alphadisk_config{alphadisk::ConfigFile::load(path)};
    return ALPHADISK_OK;
  });
}

alphadisk_status alphadisk_config_parse(const char* text, alphadisk_config** out) {
  if (text == nullptr) return null_arg("text");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new alphadisk_config{alphadisk::ConfigFile::parse(text)};
    return ALPHADISK_OK;
  });
}

void alphadisk_config_free(alphadisk_config* config) { delete config; }

alphadisk_status alphadisk_run_simulation(const alphadisk_config* config, alphadisk_sim_kind kind,
                                          alphadisk_run** out) {
  if (config == nullptr) return null_arg("config");
  if (out == nullptr) return null_arg("out");
  if (!valid_kind(kind)) return fail(ALPHADISK_E_ARGUMENT, "unknown simulation kind");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<alphadisk_run>();
    handle->provenance.tool_version = ALPHADISK_VERSION;
    handle->provenance.started_utc = alphadisk::utc_timestamp();
    if (kind == ALPHADISK_SIM_PLANE) {
      handle->run = alphadisk::run_plane(alphadisk::plane_config(config->file));
    } else {
      handle->run = alphadisk::run_exterior(alphadisk::exterior_config(config->file));
    }
    *out = handle.release();
    return ALPHADISK_OK;
  });
}

void alphadisk_run_free(alphadisk_run* run) { delete run; }

alphadisk_status alphadisk_run_steps(const alphadisk_run* run, size_t* steps, double* dt) {
  if (run == nullptr) return null_arg("run");
  std::visit(
      [&](const auto& r) {
        if (steps != nullptr) *steps = static_cast<size_t>(r.steps);
        if (dt != nullptr) *dt = r.dt;
      },
      run->run);
  return ALPHADISK_OK;
}

alphadisk_status alphadisk_run_diagnostics_count(const alphadisk_run* run, size_t* count) {
  if (run == nullptr) return null_arg("run");
  if (count == nullptr) return null_arg("count");
  *count = std::visit([](const auto& r) { return r.diagnostics.size(); }, run->run);
  return ALPHADISK_OK;
}

alphadisk_status alphadisk_run_diagnostic(const alphadisk_run* run, size_t row, double* t,
                                          double* mass) {
  if (run == nullptr) return null_arg("run");
  return std::visit(
      [&](const auto& r) {
        if (row >= r.diagnostics.size()) {
          return fail(ALPHADISK_E_ARGUMENT, "diagnostics row out of range");
        }
        if (t != nullptr) *t = r.diagnostics[row].t;
        if (mass != nullptr) *mass = r.diagnostics[row].mass;
        return ALPHADISK_OK;
      },
      run->run);
}

alphadisk_status alphadisk_run_snapshot_count(const alphadisk_run* run, size_t* count) {
  if (run == nullptr) return null_arg("run");
  if (count == nullptr) return null_arg("count");
  *count = std::visit([](const auto& r) { return r.snapshots.size(); }, run->run);
  return ALPHADISK_OK;
}

alphadisk_status alphadisk_run_write(const alphadisk_run* run, const char* dir) {
  if (run == nullptr) return null_arg("run");
  if (dir == nullptr) return null_arg("dir");
  return guarded([&] {
    std::visit([&](const auto& r) { alphadisk::write_run(dir, r, run->provenance); }, run->run);
    return ALPHADISK_OK;
  });
}

// ---------------------------------------------------------------------------

void alphadisk_kernel_table_defaults(alphadisk_kernel_table_options* options) {
  if (options == nullptr) return;
  const alphadisk::KernelTableOptions d;
  options->alpha = d.alpha;
  options->samples = d.samples;
  options->r_min = d.r_min;
  options->r_max = d.r_max;
  options->svg = d.svg ? 1 : 0;
}

alphadisk_status alphadisk_cmd_kernel_table(const alphadisk_kernel_table_options* options,
                                            const char* out_dir, alphadisk_log_fn log,
                                            void* user) {
  if (options == nullptr) return null_arg("options");
  if (out_dir == nullptr) return null_arg("out_dir");
  return guarded([&] {
    alphadisk::KernelTableOptions o;
    o.alpha = options->alpha;
    o.samples = options->samples;
    o.r_min = options->r_min;
    o.r_max = options->r_max;
    o.svg = options->svg != 0;
    return from_outcome(alphadisk::cmd_kernel_table(o, out_dir, make_log(log, user)));
  });
}

alphadisk_status alphadisk_cmd_radial_verify(const double* alphas, size_t n_alphas,
                                             const double* eps, size_t n_eps, int svg,
                                             const char* out_dir, alphadisk_log_fn log,
                                             void* user) {
  if (out_dir == nullptr) return null_arg("out_dir");
  return guarded([&] {
    alphadisk::RadialVerifyOptions o;
    if (alphas != nullptr && n_alphas > 0) o.alphas.assign(alphas, alphas + n_alphas);
    if (eps != nullptr && n_eps > 0) o.eps.assign(eps, eps + n_eps);
    o.svg = svg != 0;
    return from_outcome(alphadisk::cmd_radial_verify(o, out_dir, make_log(log, user)));
  });
}

alphadisk_status alphadisk_cmd_simulate(alphadisk_sim_kind kind, const char* config_path,
                                        const char* out_dir, alphadisk_log_fn log, void* user) {
  if (config_path == nullptr) return null_arg("config_path");
  if (out_dir == nullptr) return null_arg("out_dir");
  if (!valid_kind(kind)) return fail(ALPHADISK_E_ARGUMENT, "unknown simulation kind");
  return guarded([&] {
    const auto k =
        kind == ALPHADISK_SIM_PLANE ? alphadisk::SimKind::plane : alphadisk::SimKind::exterior;
    return from_outcome(alphadisk::cmd_simulate(k, config_path, out_dir, make_log(log, user)));
  });
}

alphadisk_status alphadisk_cmd_converge(const char* config_path, const char* out_dir,
                                        alphadisk_log_fn log, void* user) {
  if (config_path == nullptr) return null_arg("config_path");
  if (out_dir == nullptr) return null_arg("out_dir");
  return guarded([&] {
    return from_outcome(alphadisk::cmd_converge(config_path, out_dir, make_log(log, user)));
  });
}

alphadisk_status alphadisk_cmd_picard(const char* config_path, const char* out_dir,
                                      alphadisk_log_fn log, void* user) {
  if (config_path == nullptr) return null_arg("config_path");
  if (out_dir == nullptr) return null_arg("out_dir");
  return guarded([&] {
    return from_outcome(alphadisk::cmd_picard(config_path, out_dir, make_log(log, user)));
  });
}

}  // extern "C"
