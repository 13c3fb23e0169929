// Command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alphadisk/alphadisk.h"

namespace {

void print_line(const char* line, void*) { std::printf("%s\n", line); }

// 0 success, 2 configuration or usage error, 3 acceptance failure,
// 4 numerical abort.
int exit_code(alphadisk_status s) {
  switch (s) {
    case ALPHADISK_OK: return 0;
    case ALPHADISK_E_ACCEPTANCE: return 3;
    case ALPHADISK_E_NUMERICAL:
    case ALPHADISK_E_INTERNAL: return 4;
    default: return 2;
  }
}

int report(alphadisk_status s) {
  if (s != ALPHADISK_OK) {
    std::fprintf(stderr, "alphadisk: %s: %s\n", alphadisk_status_name(s), alphadisk_last_error());
  }
  return exit_code(s);
}

std::string out_or_default(const std::string& out, const std::string& name) {
  if (!out.empty()) return out;
  return std::string(alphadisk_default_output_root()) + "/" + name;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alphadisk: alpha-Euler flow in the plane and outside a small disk"};
  app.set_version_flag("--version", std::string(alphadisk_version()));
  app.require_subcommand(1);

  std::string out;
  std::string config;

  auto* kt = app.add_subcommand("kernel-table", "tabulate the filtered kernel and its bounds");
  alphadisk_kernel_table_options kopt;
  alphadisk_kernel_table_defaults(&kopt);
  bool ksvg = false;
  kt->add_option("--alpha", kopt.alpha, "filter length squared")->capture_default_str();
  kt->add_option("--samples", kopt.samples, "number of log-spaced radii")->capture_default_str();
  kt->add_option("--r-min", kopt.r_min, "smallest radius")->capture_default_str();
  kt->add_option("--r-max", kopt.r_max, "largest radius")->capture_default_str();
  kt->add_flag("--svg", ksvg, "also write a log-log plot");
  kt->add_option("--out", out, "output directory");

  auto* rv = app.add_subcommand("radial-verify", "boundary constants and energy identity");
  std::vector<double> alphas, eps;
  bool rsvg = false;
  rv->add_option("--alpha", alphas, "alpha values (comma separated)")->delimiter(',');
  rv->add_option("--eps", eps, "eps values (comma separated)")->delimiter(',');
  rv->add_flag("--svg", rsvg, "also write a plot of the rate ratio");
  rv->add_option("--out", out, "output directory");

  auto* sim = app.add_subcommand("simulate", "run the plane or exterior solver");
  std::string kind;
  sim->add_option("kind", kind, "plane or exterior")
      ->required()
      ->check(CLI::IsMember({"plane", "exterior"}));
  sim->add_option("--config", config, "configuration file")->required();
  sim->add_option("--out", out, "run directory");

  auto* conv = app.add_subcommand("converge", "exterior runs against the plane limit");
  conv->add_option("--config", config, "configuration file")->required();
  conv->add_option("--out", out, "output directory");

  auto* pic = app.add_subcommand("picard", "contraction of the Picard iteration");
  pic->add_option("--config", config, "configuration file")->required();
  pic->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (kt->parsed()) {
    kopt.svg = ksvg ? 1 : 0;
    return report(alphadisk_cmd_kernel_table(&kopt, out_or_default(out, "kernel-table").c_str(),
                                             print_line, nullptr));
  }
  if (rv->parsed()) {
    return report(alphadisk_cmd_radial_verify(alphas.data(), alphas.size(), eps.data(),
                                              eps.size(), rsvg ? 1 : 0,
                                              out_or_default(out, "radial-verify").c_str(),
                                              print_line, nullptr));
  }
  if (sim->parsed()) {
    const alphadisk_sim_kind k = kind == "plane" ? ALPHADISK_SIM_PLANE : ALPHADISK_SIM_EXTERIOR;
    return report(alphadisk_cmd_simulate(k, config.c_str(),
                                         out_or_default(out, "simulate-" + kind).c_str(),
                                         print_line, nullptr));
  }
  if (conv->parsed()) {
    return report(alphadisk_cmd_converge(config.c_str(), out_or_default(out, "converge").c_str(),
                                         print_line, nullptr));
  }
  return report(alphadisk_cmd_picard(config.c_str(), out_or_default(out, "picard").c_str(),
                                     print_line, nullptr));
}
