#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int cli(const std::string& args) {
  const std::string cmd = std::string(ROTOR_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("rotor_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& p) {
  const auto s = slurp(p);
  return s.substr(0, s.find('\n'));
}

}  // namespace

TEST_CASE("evolve writes the field and the axis cut") {
  const auto dir = scratch("evolve");
  const auto cfg = dir.string() + ".cfg";
  {
    std::ofstream f(cfg);
    f << "K = 5\ndelta = 1e-4\nkicks = 300\n";
  }
  REQUIRE(cli("evolve --config " + cfg + " --out " + dir.string()) == 0);
  CHECK(first_line(dir / "axis_cut.csv") == "kick,theta,amplitude");
  CHECK(fs::file_size(dir / "field.bin") == 301u * 2048u * 8u);
  CHECK(slurp(dir / "manifest.json").find("\"rows\": 301") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(cli("evolve --set K=-1 --set delta=1e-4 --set kicks=3") == 1);
  CHECK(cli("evolve --set K=5 --set delta=1e-4 --set kicks=3 --set color=red") == 1);
  CHECK(cli("fly") == 1);
  CHECK(cli("evolve --set K") == 1);
  CHECK(cli("evolve --config /nonexistent.cfg") == 2);
  const auto dir = scratch("tail");
  CHECK(cli("evolve --set K=5 --set delta=0.5 --set kicks=40 --set basis_size=64 --out " +
            dir.string()) == 2);
  CHECK(slurp(dir / "manifest.json").find("\"tail_mass\"") != std::string::npos);
  CHECK(cli("--help") == 0);
}

TEST_CASE("csv schemas") {
  const auto c = scratch("caustics");
  REQUIRE(cli("caustics --set K=5 --set delta=1e-4 --set m_max=1 --out " + c.string()) == 0);
  CHECK(first_line(c / "caustics.csv") == "m,k,time,kick_index,theta");
  const auto s = scratch("scaling");
  REQUIRE(cli("scaling --set K_list=0.5,1 --set delta_list=1e-3,1e-4 --workers 2 --out " +
              s.string()) == 0);
  CHECK(first_line(s / "scaling.csv") == "K,delta,lambda,measured,predicted");
}

TEST_CASE("sweep output does not depend on the worker count") {
  const auto a = scratch("sweep1");
  const auto b = scratch("sweep4");
  const std::string grid = "sweep --set K_list=0.1,0.5,1 --set delta_list=1e-4,5e-4,1e-3 ";
  REQUIRE(cli(grid + "--workers 1 --out " + a.string()) == 0);
  REQUIRE(cli(grid + "--workers 4 --out " + b.string()) == 0);
  int compared = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    const auto name = e.path().filename();
    if (name == "manifest.json") continue;
    CHECK_MESSAGE(slurp(e.path()) == slurp(b / name), name.string());
    ++compared;
  }
  CHECK(compared == 10);
}

TEST_CASE("remaining modes run") {
  const auto base = scratch("modes");
  CHECK(cli("classical --set K=5 --set delta=1e-4 --set kicks=100 --set section_seeds=3 --out " +
            (base / "cl").string()) == 0);
  CHECK(fs::exists(base / "cl" / "folds.csv"));
  CHECK(cli("semiclassical --set K=5 --set delta=1e-4 --out " + (base / "se").string()) == 0);
  CHECK(fs::exists(base / "se" / "tangent_zeros.csv"));
  CHECK(cli("nonlinear --set K=5 --set delta=1e-4 --set g=0.25 --set field_format=none --out " +
            (base / "nl").string()) == 0);
  CHECK(first_line(base / "nl" / "suppression.csv") == "m,lo,hi,first_kick,last_kick,ratio");
}
