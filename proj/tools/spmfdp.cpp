#include <CLI11.hpp>

#include <iostream>

#include "spmfdp/cli.hpp"

namespace {

using spmfdp::cli::CliRequest;

void add_inputs(CLI::App* cmd, CliRequest& req, std::string& theta, std::vector<std::string>& sincos,
                std::string& system) {
  auto* t = cmd->add_option("--theta", theta, "motor angles in radians: a,b,c");
  auto* s = cmd->add_option("--sincos", sincos, "exact sine,cosine pairs: A1,B1 A2,B2 A3,B3")->expected(3);
  auto* f = cmd->add_option("--system", system, "JSON file: quadric system, leg triple or motor angles");
  t->excludes(s)->excludes(f);
  s->excludes(f);
  cmd->add_option("--format", req.format, "text or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, spmfdp::cli::Format>{{"text", spmfdp::cli::Format::kText},
                                                     {"json", spmfdp::cli::Format::kJson}},
          CLI::ignore_case));
  cmd->add_option("--precision", req.precision, "significant digits in output")->default_val(17);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward displacement solver for spherical parallel manipulators"};
  app.require_subcommand(1);
  CliRequest req;
  std::string theta, system;
  std::vector<std::string> sincos;
  std::string retain, point;

  auto* solve = app.add_subcommand("solve", "solve the forward displacement problem");
  add_inputs(solve, req, theta, sincos, system);
  solve->add_flag("--include-extraneous", req.include_extraneous, "keep the eight +-rho points");

  auto* det = app.add_subcommand("dixon-det", "print the Dixon determinant");
  add_inputs(det, req, theta, sincos, system);
  det->add_option("--retain", retain, "retained unknown")->check(CLI::IsMember({"q0", "q1", "q2", "q3"}));

  auto* verify = app.add_subcommand("verify", "evaluate the system at a point");
  add_inputs(verify, req, theta, sincos, system);
  verify->add_option("--point", point, "q0,q1,q2,q3")->required();

  auto* oracle = app.add_subcommand("oracle", "");
  oracle->group("");  // hidden
  add_inputs(oracle, req, theta, sincos, system);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[" << spmfdp::to_string(spmfdp::ErrorCode::kInvalidInput) << "]: " << e.what() << "\n";
    return 1;
  }

  try {
    if (solve->parsed()) req.subcommand = spmfdp::cli::Subcommand::kSolve;
    if (det->parsed()) req.subcommand = spmfdp::cli::Subcommand::kDixonDet;
    if (verify->parsed()) req.subcommand = spmfdp::cli::Subcommand::kVerify;
    if (oracle->parsed()) req.subcommand = spmfdp::cli::Subcommand::kOracle;
    if (!theta.empty()) req.theta = spmfdp::cli::parse_theta(theta);
    if (!sincos.empty()) req.sincos = spmfdp::cli::parse_sincos(sincos);
    if (!system.empty()) req.system_file = system;
    if (!retain.empty()) req.retain = retain;
    if (!point.empty()) req.point = spmfdp::cli::parse_point(point);
  } catch (const spmfdp::Error& e) {
    spmfdp::cli::report(e, std::cerr);
    return 1;
  }
  return spmfdp::cli::run(req, std::cout, std::cerr);
}
