// qstab: analyse qudit stabiliser groups and Kitaev models from JSON input.

#include <iostream>

#include <CLI11.hpp>

#include "qstab/io.hpp"

namespace {

using qstab::io::json;

json load(const std::string& path) {
  if (path == "-") {
    try {
      return json::parse(std::cin);
    } catch (const json::exception& e) {
      throw qstab::Error(qstab::ErrorKind::ParseError, std::string("stdin: ") + e.what());
    }
  }
  return qstab::io::read_json_file(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qudit stabiliser analysis: protected spaces, logical structure, Kitaev models"};
  app.require_subcommand(1);
  std::string format = "json";
  std::size_t bound = qstab::oracle_bound();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--bound", bound, "Oracle size bound on d^n (default: QSTAB_ORACLE_BOUND or 200000)");
  app.set_version_flag("--version", std::string(qstab::io::kVersion));

  std::string input, report_path, graph_path, shift_path, twist_path;
  qstab::io::KitaevOptions kopt;

  auto* analyze = app.add_subcommand("analyze", "Analyse a stabiliser group");
  analyze->add_option("--input,input", input, "Group JSON ({d, n, generators}) or - for stdin")->required();

  auto* canon = app.add_subcommand("canonicalize", "Clifford conjugation of a free group onto <Z_1..Z_k>");
  canon->add_option("--input,input", input, "Group JSON or - for stdin")->required();

  auto* oracle = app.add_subcommand("oracle", "Brute-force oracle");
  oracle->require_subcommand(1);
  auto* verify = oracle->add_subcommand("verify", "Check a report against the phase-permutation oracle");
  verify->add_option("--input", input, "Group JSON")->required();
  verify->add_option("--report", report_path, "Report JSON (default: the engine's own report)");

  auto* kitaev = app.add_subcommand("kitaev", "Kitaev models");
  kitaev->require_subcommand(1);
  auto* build = kitaev->add_subcommand("build", "Build and analyse a Kitaev model");
  build->add_option("--graph", graph_path, "Surface graph JSON")->required();
  build->add_option("--d", kopt.d, "Qudit dimension")->required()->check(CLI::Range(2, 1 << 20));
  auto* shift_opt = build->add_option("--shift", shift_path, "Shift pairs JSON (a_r b_r = d)");
  build->add_option("--twist", twist_path, "Twist pairs JSON (d | a_r b_r)")->excludes(shift_opt);
  build->add_flag("--verify", kopt.verify, "Run the oracle on the result");

  CLI11_PARSE(app, argc, argv);

  qstab::io::Outcome out{json(), qstab::io::kOk};
  try {
    if (*analyze) {
      out = qstab::io::cmd_analyze(load(input));
    } else if (*canon) {
      out = qstab::io::cmd_canonicalize(load(input));
    } else if (*verify) {
      out = qstab::io::cmd_oracle_verify(load(input), report_path.empty() ? json() : load(report_path), bound);
    } else if (*build) {
      kopt.bound = bound;
      if (!shift_path.empty()) kopt.shift = load(shift_path);
      if (!twist_path.empty()) kopt.twist = load(twist_path);
      out = qstab::io::cmd_kitaev_build(load(graph_path), kopt);
    }
  } catch (const qstab::Error& e) {
    out = {qstab::io::error_json(e), qstab::io::kValidation};
  }
  std::cout << qstab::io::render(out, format == "text");
  return out.exit_code;
}
