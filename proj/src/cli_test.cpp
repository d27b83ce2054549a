#include "scalescope/cli.hpp"

#include <doctest.h>

#include <sstream>

using namespace scalescope;
using namespace scalescope::cli;

namespace {

int run_args(std::vector<const char*> args, std::string& out, std::string& err) {
  args.insert(args.begin(), "scalescope");
  std::ostringstream o, e;
  const int code = run(static_cast<int>(args.size()), args.data(), o, e);
  out = o.str();
  err = e.str();
  return code;
}

} // namespace

TEST_CASE("tsv layout") {
  CHECK(tsv_header() == "path\tscale\tL_units\tscope_L\tdiversity_D\tentropy_h\tspecific_d\n");
  ScaleReport r;
  r.scale_name = "words";
  r.total_units = 35;
  r.scope = 7;
  r.diversity = 7;
  r.entropy = 0.95666214;
  r.specific_diversity = 1.0;
  CHECK(tsv_row("T.txt", r) == "T.txt\twords\t35\t7\t7\t0.956662\t1.000000\n");
}

TEST_CASE("manifest document") {
  RunManifest m;
  m.command = "search";
  m.inputs = {"a.txt"};
  m.scales = {"words"};
  m.seed = 9;
  const auto j = m.to_json();
  CHECK(j["tool"] == "scalescope");
  CHECK(j["version"] == tool_version);
  CHECK(j["config"]["seed"] == 9);
  CHECK_FALSE(j["config"].contains("target_S"));
  m.target_S = 65;
  CHECK(m.to_json()["config"]["target_S"] == 65);

  const auto cfg = m.search_config();
  CHECK(cfg.rng_seed == 9);
  REQUIRE(cfg.initializations.size() == 1);
  CHECK(cfg.initializations[0].kind == ScaleSelector::Kind::words);
  m.acceptance = "equal";
  CHECK(m.search_config().acceptance == Acceptance::decrease_or_equal);
}

TEST_CASE("usage errors exit with 1") {
  std::string out, err;
  CHECK(run_args({}, out, err) == exit_usage);
  CHECK(run_args({"frobnicate"}, out, err) == exit_usage);
  CHECK(run_args({"analyze"}, out, err) == exit_usage);
  CHECK(run_args({"analyze", "x", "--format", "xml"}, out, err) == exit_usage);
  CHECK(run_args({"analyze", "x", "--scale", "letters"}, out, err) == exit_usage);
  CHECK(run_args({"search", "x", "--scale", "fundamental"}, out, err) == exit_usage);
  CHECK(run_args({"downgrade", "x"}, out, err) == exit_usage);
  CHECK(run_args({"search", "x", "--restarts", "0"}, out, err) == exit_usage);
  CHECK(run_args({"--help"}, out, err) == exit_ok);
  CHECK(out.find("analyze") != std::string::npos);
  CHECK(run_args({"--version"}, out, err) == exit_ok);
  CHECK(out.find(tool_version) != std::string::npos);
}

TEST_CASE("missing input exits with 2") {
  std::string out, err;
  CHECK(run_args({"analyze", "/nonexistent/file"}, out, err) == exit_input);
  CHECK(out.find("\"error\"") != std::string::npos);
  CHECK(run_args({"search", "/nonexistent/file"}, out, err) == exit_input);
  CHECK(run_args({"corpus", "/nonexistent/dir"}, out, err) == exit_input);
  CHECK(run_args({"grid", "/nonexistent/grid"}, out, err) == exit_input);
  CHECK(run_args({"downgrade", "/nonexistent/p.json", "-S", "3"}, out, err) == exit_input);
}
