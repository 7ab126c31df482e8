#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cheeger/cli.hpp"

using namespace cheeger;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "cheeger");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Workspace {
  fs::path dir = fs::temp_directory_path() / ("cheeger_cli_" + std::to_string(std::rand()));
  Workspace() {
    fs::create_directories(dir);
    write("square.json", R"({"type":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]})");
    write("two.json", R"({"type":"disks","disks":[{"c":[0,0],"r":1},{"c":[2.2,0],"r":0.6667}]})");
    write("spine.json", R"({"type":"strip","spine":[[0,0],[20,0]],"halfwidth":1})");
    write("disk.json", R"({"type":"disks","disks":[{"c":[0,0],"r":1}]})");
    write("broken.json", "{\"type\": \"polygon\",\n \"vertices\": [[0,0]]]\n}");
  }
  ~Workspace() { fs::remove_all(dir); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }
  std::string operator[](const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("convex") {
  Workspace ws;
  const auto r = run({"convex", ws["square.json"]});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j.at("h").get<double>() - (2 + std::sqrt(pi))) <= 1e-10);
  CHECK(r.out.find("3.7724538509") != std::string::npos);
  CHECK_FALSE(j.at("checks").empty());
  for (const auto& c : j.at("checks")) CHECK(c.at("pass").get<bool>());

  const auto two = run({"convex", ws["two.json"]});
  CHECK(two.code == kExitError);
  CHECK(two.err.find("not-convex") != std::string::npos);
}

TEST_CASE("grid") {
  Workspace ws;
  const auto r = run({"grid", ws["square.json"], "--resolution", "64", "--neighborhood", "16"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j.at("h").get<double>() / (2 + std::sqrt(pi)) - 1) <= 0.03);
  CHECK(j.at("method") == "grid_dinkelbach");
  CHECK(run({"grid", ws["square.json"], "--neighborhood", "5"}).code == kExitUsage);
}

TEST_CASE("strip") {
  Workspace ws;
  const auto r = run({"strip", ws["spine.json"], "--resolution", "32", "--check-bounds"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  const auto& d = j.at("diagnostics");
  CHECK(d.at("bound_lower").get<double>() == doctest::Approx(1 + 1.0 / 8000));
  CHECK(d.at("bound_upper").get<double>() == doctest::Approx(1.1));
  CHECK(d.at("asymptotic").get<double>() == doctest::Approx(1 + pi / 40));
  bool asymptotic = false;
  for (const auto& c : j.at("checks")) asymptotic = asymptotic || c.at("name") == "strip_asymptotic";
  CHECK(asymptotic);
  CHECK(run({"strip", ws["square.json"]}).code == kExitError);
}

TEST_CASE("rof") {
  Workspace ws;
  const auto r = run({"rof", ws["disk.json"], "--resolution", "32", "--lambda", "0.6"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("rof").at("entries").size() == 1);
  CHECK(j.at("rof").at("ratio").get<double>() == doctest::Approx(2.0));
  CHECK(run({"rof", ws["disk.json"], "--lambda", "-1"}).code == kExitError);
}

TEST_CASE("example") {
  const auto ok = run({"example", "two_disks", "--resolution", "32"});
  CHECK(ok.code == kExitOk);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j.at("domain").at("name") == "two_disks");
  // Four cells per unit cannot resolve the small disk: the expected h check fails.
  CHECK(run({"example", "two_disks", "--resolution", "4"}).code == kExitCheckFailed);
  CHECK(run({"example", "--example", "triangle"}).code == kExitOk);
  const auto unknown = run({"example", "three_disks"});
  CHECK(unknown.code == kExitError);
  CHECK(unknown.err.find("unknown example") != std::string::npos);
}

TEST_CASE("verify") {
  Workspace ws;
  const auto r = run({"verify", ws["square.json"]});
  CHECK(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out).at("method") == "convex_exact");
  CHECK(run({"verify", ws["two.json"], "--resolution", "16"}).code == kExitOk);
  CHECK(run({"verify", "--example", "bowtie", "--resolution", "32"}).code == kExitOk);
}

TEST_CASE("usage and input errors") {
  Workspace ws;
  const auto none = run({});
  CHECK(none.code == kExitUsage);
  CHECK(none.err.find("\"type\": \"polygon\"") != std::string::npos);
  CHECK(run({"solve", ws["square.json"]}).code == kExitUsage);
  CHECK(run({"convex"}).code == kExitUsage);
  CHECK(run({"grid", ws["square.json"], "--resolution", "-2"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  const auto broken = run({"convex", ws["broken.json"]});
  CHECK(broken.code == kExitError);
  CHECK(broken.err.find("broken.json:2") != std::string::npos);
  CHECK(run({"convex", ws["missing.json"]}).code == kExitError);
}

TEST_CASE("output files are deterministic") {
  Workspace ws;
  for (const std::string cmd : {"convex", "grid"}) {
    CAPTURE(cmd);
    const std::string a_json = ws["a.json"], a_svg = ws["a.svg"], b_json = ws["b.json"], b_svg = ws["b.svg"];
    const auto a = run({cmd, ws["square.json"], "--resolution", "32", "--json", a_json, "--svg", a_svg});
    const auto b = run({cmd, ws["square.json"], "--resolution", "32", "--json", b_json, "--svg", b_svg});
    CHECK(a.code == kExitOk);
    CHECK(b.code == kExitOk);
    CHECK(a.out.empty());
    CHECK_FALSE(slurp(a_json).empty());
    CHECK(slurp(a_json) == slurp(b_json));
    CHECK(slurp(a_svg).starts_with("<?xml"));
    CHECK(slurp(a_svg) == slurp(b_svg));
  }
  const auto timed = run({"convex", ws["square.json"], "--timings"});
  CHECK(nlohmann::json::parse(timed.out).contains("timings_ms"));
  CHECK(run({"convex", ws["square.json"], "--json", ws["no/such/dir.json"]}).code == kExitError);
}
