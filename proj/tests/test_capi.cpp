#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "rotor_caustics.h"

namespace fs = std::filesystem;

TEST_CASE("status helpers") {
  CHECK(std::string(rc_status_name(RC_ERR_NO_ROOT)) == "no_root");
  CHECK(rc_exit_code(RC_OK) == 0);
  CHECK(rc_exit_code(RC_ERR_VALIDATION) == 1);
  CHECK(rc_exit_code(RC_ERR_TAIL_MASS) == 2);
  CHECK(rc_exit_code(RC_ERR_NON_CONVERGENCE) == 2);
  CHECK(std::string(rc_version()).size() > 0);
}

TEST_CASE("parameter handles") {
  rc_params* p = nullptr;
  CHECK(rc_params_create(5.0, 1e-4, 64, -1, 0.0, &p) == RC_ERR_VALIDATION);
  CHECK(p == nullptr);
  CHECK(std::string(rc_last_error()).find("n_kicks") != std::string::npos);
  CHECK(rc_params_create(-5.0, 1e-4, 64, 3, 0.0, &p) == RC_ERR_VALIDATION);
  CHECK(rc_params_create(5.0, 1e-4, 63, 3, 0.0, &p) == RC_ERR_VALIDATION);
  CHECK(rc_params_create(5.0, 1e-4, 64, 3, 0.0, nullptr) == RC_ERR_NULL_ARGUMENT);
  REQUIRE(rc_params_create(5.0, 1e-4, 64, 3, 0.0, &p) == RC_OK);
  CHECK(rc_params_period(p) == doctest::Approx(4 * M_PI + 1e-4));
  CHECK(rc_params_basis_size(p) == 64);
  CHECK(rc_params_kicks(p) == 3);
  rc_params_destroy(p);
  rc_params_destroy(nullptr);
}

TEST_CASE("evolution through the C interface") {
  rc_params* p = nullptr;
  REQUIRE(rc_params_create(5.0, 1e-4, 1024, 20, 0.0, &p) == RC_OK);
  rc_record* rec = nullptr;
  REQUIRE(rc_evolve_uniform(p, 1, &rec) == RC_OK);
  CHECK(rc_record_rows(rec) == 21);
  CHECK(rc_record_cols(rec) == 1024);
  CHECK(rc_record_axis_cut(rec)[20] == rc_record_field(rec)[20 * 1024 + 512]);
  CHECK(rc_record_tail_mass(rec) < 1e-10);

  // Stepping by hand reproduces the recorded rows.
  std::vector<double> state(2048, 0.0);
  state[0] = 1.0;
  std::vector<double> angle(2048);
  for (int n = 0; n < 20; ++n) REQUIRE(rc_floquet_step(p, state.data(), state.data()) == RC_OK);
  REQUIRE(rc_to_angle(state.data(), 1024, angle.data()) == RC_OK);
  for (std::size_t j = 0; j < 1024; ++j) {
    CHECK(std::hypot(angle[2 * j], angle[2 * j + 1]) ==
          doctest::Approx(rc_record_field(rec)[20 * 1024 + j]).epsilon(1e-12));
  }
  double tail = -1.0;
  CHECK(rc_tail_mass(state.data(), 1024, &tail) == RC_OK);
  CHECK(tail < 1e-10);

  rc_peak peak{};
  CHECK(rc_record_peak(rec, 0, 20, 1, &peak) == RC_OK);
  CHECK(peak.node == 512);
  CHECK(rc_record_peak(rec, 5, 30, 0, &peak) == RC_ERR_VALIDATION);

  rc_record* again = nullptr;
  REQUIRE(rc_evolve_state(p, std::vector<double>(2048, 0.0).data(), 1, &again) == RC_ERR_NOT_NORMALIZED);
  CHECK(again == nullptr);

  rc_params* pg = nullptr;
  REQUIRE(rc_params_create(5.0, 1e-4, 1024, 20, 0.0, &pg) == RC_OK);
  rc_record* nl = nullptr;
  REQUIRE(rc_evolve_nonlinear(pg, "kicked", 1, &nl) == RC_OK);
  CHECK(rc_record_field(nl)[20 * 1024 + 3] == rc_record_field(rec)[20 * 1024 + 3]);
  CHECK(rc_evolve_nonlinear(pg, "bogus", 1, &nl) == RC_ERR_VALIDATION);

  rc_record_destroy(nl);
  rc_record_destroy(rec);
  rc_params_destroy(pg);
  rc_params_destroy(p);
}

TEST_CASE("numerical entry points and their errors") {
  double v = 0.0;
  CHECK(rc_complete_K(0.0, &v) == RC_OK);
  CHECK(v == doctest::Approx(M_PI / 2));
  CHECK(rc_complete_K(1.0, &v) == RC_ERR_DIVERGENCE);
  double sn, cn, dn;
  CHECK(rc_jacobi(0.3, 0.5, &sn, &cn, &dn) == RC_OK);
  CHECK(sn * sn + cn * cn == doctest::Approx(1.0));
  CHECK(rc_jacobi(0.3, 2.0, &sn, &cn, &dn) == RC_ERR_VALIDATION);
  CHECK(rc_pendulum_solution(0.0, 0.1, 5.0, 1e-4, &v) == RC_ERR_SEPARATRIX);
  CHECK(rc_solve_caustic(1.0, 5.0, 1e-4, 0, &v) == RC_ERR_SEPARATRIX);
  CHECK(rc_solve_caustic(std::nextafter(1.0, 0.0), 5.0, 1e-4, 0, &v) == RC_ERR_NO_ROOT);
  CHECK(rc_solve_caustic(0.5, 5.0, 1e-4, 0, &v) == RC_OK);
  CHECK(v / 1e-4 == doctest::Approx(87.2196).epsilon(1e-5));
  CHECK(rc_caustic_time(0.0, 5.0, 1e-4, 0, &v) == RC_OK);
  CHECK(v == doctest::Approx(70.24814731040726));
  CHECK(rc_gelfand_yaglom(M_PI + 1e-6, 0.001, 5.0, 1e-4, &v) == RC_OK);
  CHECK(rc_variational_derivative(M_PI + 1e-6, 0.0, 5.0, 1e-4, &v) == RC_OK);
  CHECK(v == 1.0);
  CHECK(rc_lambda(1.0, 1.0) == doctest::Approx(-M_PI / 48));
  double re, im;
  CHECK(rc_cusp_integral(0.0, 1e-3, 1.0, 1e-3, 4096, &re, &im) == RC_OK);
  CHECK(std::hypot(re, im) == doctest::Approx(2 * M_PI * std::cyl_bessel_j(0.0, 1.0)).epsilon(1e-9));
  CHECK(rc_cusp_integral(0.0, 1e-3, 1.0, 1e-3, 10, &re, &im) == RC_ERR_VALIDATION);

  rc_params* p = nullptr;
  REQUIRE(rc_params_create(1.0, 1e-3, 1024, 0, 0.0, &p) == RC_OK);
  rc_scaling_record r{};
  CHECK(rc_measure_cusp_amplitude(p, &r) == RC_OK);
  CHECK(r.measured > 2.0);
  double th, pp;
  CHECK(rc_map_step(p, "eps_classical", 1.0, 0.0, &th, &pp) == RC_OK);
  CHECK(th == 1.0);
  CHECK(pp == doctest::Approx(1e-3 * std::sin(1.0)));
  CHECK(rc_map_step(p, "nope", 1.0, 0.0, &th, &pp) == RC_ERR_VALIDATION);
  rc_params_destroy(p);
}

TEST_CASE("configuration and runs") {
  rc_config* cfg = nullptr;
  CHECK(rc_config_create("plot", &cfg) == RC_ERR_VALIDATION);
  REQUIRE(rc_config_create("evolve", &cfg) == RC_OK);
  rc_config_set(cfg, "K", "-1");
  rc_config_set(cfg, "delta", "1e-4");
  CHECK(rc_config_validate(cfg) == RC_ERR_VALIDATION);
  CHECK(rc_config_problem_count(cfg) == 2);  // K and kicks
  rc_manifest* m = nullptr;
  CHECK(rc_run(cfg, &m) == RC_ERR_VALIDATION);
  CHECK(m == nullptr);

  const auto dir = fs::temp_directory_path() / "rotor_capi_run";
  fs::remove_all(dir);
  rc_config_set(cfg, "K", "5");
  rc_config_set(cfg, "kicks", "10");
  rc_config_set(cfg, "basis_size", "512");
  rc_config_set(cfg, "output_dir", dir.c_str());
  CHECK(rc_config_validate(cfg) == RC_OK);
  REQUIRE(rc_run(cfg, &m) == RC_OK);
  CHECK(rc_manifest_exit_code(m) == 0);
  CHECK(std::string(rc_manifest_error(m)).empty());
  CHECK(rc_manifest_file_count(m) == 2);
  CHECK(std::string(rc_manifest_file_name(m, 0)) == "axis_cut.csv");
  CHECK(std::string(rc_manifest_json(m)).find("\"fnv1a64:") != std::string::npos);
  rc_manifest_destroy(m);

  rc_config_set(cfg, "delta", "0.5");
  rc_config_set(cfg, "kicks", "40");
  rc_config_set(cfg, "basis_size", "64");
  REQUIRE(rc_run(cfg, &m) == RC_OK);
  CHECK(rc_manifest_exit_code(m) == 2);
  CHECK(std::string(rc_manifest_error(m)).find("tail mass") != std::string::npos);
  rc_manifest_destroy(m);

  CHECK(rc_config_load_file(cfg, "/nonexistent/x.cfg") == RC_ERR_IO);
  rc_config_destroy(cfg);
}
