#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qdot/cli.hpp"

using namespace qdot;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qdot_cli_" + name);
  fs::remove_all(p);
  return p;
}

int run_args(std::initializer_list<std::string> a) {
  std::vector<std::string> v{"qdot"};
  v.insert(v.end(), a);
  return run(v);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("usage errors exit 64") {
  CHECK(run_args({}) == kExitUsage);
  CHECK(run_args({"nonsense"}) == kExitUsage);
  CHECK(run_args({"hardy", "--bogus", "1"}) == kExitUsage);
  CHECK(run_args({"disk-curves", "--operator", "laplace"}) == kExitUsage);
  const fs::path bad = scratch("bad") / "bad.dom";
  fs::create_directories(bad.parent_path());
  std::ofstream(bad) << "kind = disk\nradius = 2\ncolor = red\n";
  CHECK(run_args({"s-omega", "--domain", bad.string(), "--out", bad.parent_path().string()}) == kExitUsage);
  CHECK(run_args({"fk-sweep", "--operator", "robin"}) == kExitUsage);
}

TEST_CASE("outputs are deterministic and carry the manifest hash") {
  const fs::path a = scratch("a"), b = scratch("b");
  CHECK(run_args({"hardy", "--out", a.string()}) == kExitOk);
  CHECK(run_args({"hardy", "--out", b.string()}) == kExitOk);
  for (const char* f : {"hardy.csv", "pullback.csv"}) {
    const std::string x = slurp(a / f);
    CHECK(x == slurp(b / f));
    CHECK(x.rfind("# manifest: ", 0) == 0);
  }
  CHECK(fs::exists(a / "manifest.json"));
}

TEST_CASE("thread count does not change disk curves") {
  const fs::path a = scratch("j1"), b = scratch("j3");
  CHECK(run_args({"disk-curves", "--radius", "2", "--mass", "1", "--operator", "dirac", "--orders", "3",
                  "--points", "12", "--jobs", "1", "--out", a.string()}) == kExitOk);
  CHECK(run_args({"disk-curves", "--radius", "2", "--mass", "1", "--operator", "dirac", "--orders", "3",
                  "--points", "12", "--jobs", "3", "--out", b.string()}) == kExitOk);
  CHECK(slurp(a / "disk_curves.csv") == slurp(b / "disk_curves.csv"));
  CHECK(slurp(a / "zigzag_levels.csv") == slurp(b / "zigzag_levels.csv"));
}

TEST_CASE("s-omega on a domain file") {
  const fs::path d = scratch("so");
  CHECK(run_args({"s-omega", "--domain", QDOT_DOMAINS "/ellipse_aspect2.dom", "--degree", "10", "--out",
                  d.string()}) == kExitOk);
  const std::string csv = slurp(d / "s_omega.csv");
  CHECK(csv.find("N,S,bound,margin") != std::string::npos);
}

TEST_CASE("disk self-sweep exits with the inconclusive code") {
  const fs::path d = scratch("fk");
  CHECK(run_args({"fk-sweep", "--domain", QDOT_DOMAINS "/disk_r2.dom", "--points", "3", "--out",
                  d.string()}) == kExitInconclusive);
  CHECK(fs::exists(d / "fk_sweep_summary.txt"));
}

}
