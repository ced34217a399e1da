// rotor-caustics <mode> [--config FILE] [--set key=value ...] [--out DIR] [--workers N]

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotor_caustics.h"

namespace {

struct Handles {
  rc_config* config = nullptr;
  rc_manifest* manifest = nullptr;
  ~Handles() {
    rc_manifest_destroy(manifest);
    rc_config_destroy(config);
  }
};

int report(rc_status status, const char* what) {
  std::fprintf(stderr, "rotor-caustics: %s: %s\n", what, rc_last_error());
  return rc_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Near-resonant kicked rotor caustics: simulations and plot-ready data"};
  app.set_version_flag("--version", std::string(rc_version()));

  std::string mode;
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir;
  std::string workers;
  app.add_option("mode", mode, "evolve | classical | semiclassical | caustics | scaling | nonlinear | sweep")
      ->required()
      ->check(CLI::IsMember({"evolve", "classical", "semiclassical", "caustics", "scaling",
                             "nonlinear", "sweep"}));
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--set", sets, "override one key (key=value); repeatable")->take_all();
  app.add_option("--out", out_dir, "output directory (output_dir)");
  app.add_option("--workers", workers, "parallel workers for scaling and sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  Handles h;
  if (rc_status s = rc_config_create(mode.c_str(), &h.config); s != RC_OK) return report(s, "mode");
  if (!config_path.empty()) {
    if (rc_status s = rc_config_load_file(h.config, config_path.c_str()); s != RC_OK) {
      return report(s, "config");
    }
  }
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::fprintf(stderr, "rotor-caustics: --set expects key=value, got '%s'\n", kv.c_str());
      return 1;
    }
    rc_config_set(h.config, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
  }
  if (!out_dir.empty()) rc_config_set(h.config, "output_dir", out_dir.c_str());
  if (!workers.empty()) rc_config_set(h.config, "workers", workers.c_str());

  const rc_status s = rc_run(h.config, &h.manifest);
  if (s != RC_OK) {
    if (rc_config_problem_count(h.config) > 0) {
      std::fprintf(stderr, "rotor-caustics: invalid configuration\n");
      for (size_t i = 0; i < rc_config_problem_count(h.config); ++i) {
        std::fprintf(stderr, "  %s\n", rc_config_problem(h.config, i));
      }
      return rc_exit_code(s);
    }
    return report(s, "run");
  }
  for (size_t i = 0; i < rc_manifest_file_count(h.manifest); ++i) {
    std::printf("%s\n", rc_manifest_file_name(h.manifest, i));
  }
  std::printf("manifest.json\n");
  const int code = rc_manifest_exit_code(h.manifest);
  if (code != 0) std::fprintf(stderr, "rotor-caustics: %s\n", rc_manifest_error(h.manifest));
  return code;
}
