#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "spmfdp/cli.hpp"
#include "support.hpp"

using namespace spmfdp;
using nlohmann::json;
using testing_support::worked_motors;

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status;
  std::string out, err;
};

Outcome run_request(const cli::CliRequest& r) {
  std::ostringstream out, err;
  const int status = cli::run(r, out, err);
  return {status, out.str(), err.str()};
}

cli::CliRequest worked_request(cli::Subcommand sub, cli::Format f = cli::Format::kJson) {
  cli::CliRequest r;
  r.subcommand = sub;
  r.sincos = worked_motors();
  r.format = f;
  return r;
}

/// Runs the installed binary; stdout is captured, stderr is discarded.
Outcome run_binary(const std::string& args) {
  const std::string cmd = std::string(SPMFDP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out, ""};
}

fs::path write_temp(const std::string& name, const json& j) {
  const fs::path dir = fs::temp_directory_path() / ("spmfdp_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

dixon::QuadricSystem worked_system() { return spm::build_3rrrr_system(spm::MotorAngles::from_exact(worked_motors())); }

json degenerate_system_json() {
  dixon::QuadricSystem sys;
  sys.polys = {poly::parse_poly("q1^2 - q0"), poly::parse_poly("q1^2 - q0"), poly::parse_poly("q2 - q3"),
               poly::parse_poly("q0^2 + q1^2 + q2^2 + q3^2 - 1")};
  sys.eliminated = {"q1", "q2", "q3"};
  sys.retained = "q0";
  return io::to_json(sys);
}

}  // namespace

TEST(CliParsing, ExactNumbers) {
  EXPECT_EQ(cli::parse_exact_number("0.5"), Rational(1, 2));
  EXPECT_EQ(cli::parse_exact_number("0.25"), Rational(1, 4));
  EXPECT_EQ(cli::parse_exact_number("0.08"), Rational(2, 25));
  EXPECT_EQ(cli::parse_exact_number("-1.25e-2"), Rational(-1, 80));
  EXPECT_EQ(cli::parse_exact_number("3/5"), Rational(3, 5));
  EXPECT_EQ(cli::parse_exact_number("2E3"), Rational(2000));
  EXPECT_THROW(cli::parse_exact_number("1.2.3"), Error);
  EXPECT_THROW(cli::parse_exact_number("e5"), Error);
  EXPECT_THROW(cli::parse_exact_number("x"), Error);
}

TEST(CliParsing, AnglesAndPairs) {
  const auto t = cli::parse_theta("0.1,-2,3e-1");
  EXPECT_DOUBLE_EQ(t[2], 0.3);
  EXPECT_THROW(cli::parse_theta("0.1,0.2"), Error);
  EXPECT_THROW(cli::parse_theta("0.1,,0.2"), Error);
  EXPECT_THROW(cli::parse_theta("0.1,0.2,abc"), Error);
  const auto p = cli::parse_sincos({"3/5,4/5", "5/13,12/13", "0.28,0.96"});
  EXPECT_EQ(p[2].sin, Rational(7, 25));
  EXPECT_THROW(cli::parse_sincos({"3/5,4/5", "5/13,12/13", "1/2,1/2"}), Error);
  EXPECT_THROW(cli::parse_sincos({"3/5,4/5"}), Error);
  EXPECT_THROW(cli::parse_point("1,2,3"), Error);
}

TEST(CliRequest, ExactlyOneSource) {
  cli::CliRequest r;
  EXPECT_THROW(r.validate(), Error);
  r.sincos = worked_motors();
  EXPECT_NO_THROW(r.validate());
  r.theta = std::array<double, 3>{0.1, 0.2, 0.3};
  EXPECT_THROW(r.validate(), Error);
  r.theta.reset();
  r.precision = 0;
  EXPECT_THROW(r.validate(), Error);
  r.precision = 17;
  r.retain = "q1";
  EXPECT_THROW(r.validate(), Error);
  r.retain.reset();
  r.subcommand = cli::Subcommand::kVerify;
  EXPECT_THROW(r.validate(), Error);
}

TEST(CliSolve, WorkedExampleJson) {
  const Outcome o = run_request(worked_request(cli::Subcommand::kSolve));
  ASSERT_EQ(o.status, 0) << o.err;
  const json j = json::parse(o.out);
  ASSERT_EQ(j.at("solutions").size(), 8u);
  EXPECT_EQ(j["solutions"][0]["q"][0].get<double>(), 0.22420547189459832);
  EXPECT_EQ(j.at("status"), "ok");
  EXPECT_EQ(j.at("determinant_coeffs").size(), 17u);
  EXPECT_EQ(j.at("G_coeffs").size(), 9u);
  EXPECT_EQ(j.at("roots").size(), 8u);
  EXPECT_EQ(j["diagnostics"]["closed_form_agrees"], true);
  for (const auto& s : j["solutions"]) {
    EXPECT_EQ(s.at("rotation").size(), 3u);
    EXPECT_EQ(s.at("residuals").size(), 4u);
    EXPECT_FALSE(s.at("extraneous").get<bool>());
  }
}

TEST(CliSolve, TextAndJsonAgree) {
  for (int digits : {6, 12, 17, 25}) {
    cli::CliRequest r = worked_request(cli::Subcommand::kSolve);
    r.precision = digits;
    const json j = json::parse(run_request(r).out);
    r.format = cli::Format::kText;
    std::istringstream text(run_request(r).out);
    std::string line;
    while (std::getline(text, line) && line.find("orbit") == std::string::npos) {
    }
    std::size_t row = 0;
    while (std::getline(text, line) && !line.empty()) {
      std::istringstream fields(line);
      std::string index, orbit;
      fields >> index >> orbit;
      for (std::size_t k = 0; k < 4; ++k) {
        std::string value;
        fields >> value;
        EXPECT_EQ(std::strtod(value.c_str(), nullptr), j["solutions"][row]["q"][k].get<double>()) << value;
        EXPECT_LE(value.size(), static_cast<std::size_t>(digits) + 3);
      }
      ++row;
    }
    EXPECT_EQ(row, 8u);
  }
}

TEST(CliSolve, IncludeExtraneous) {
  cli::CliRequest r = worked_request(cli::Subcommand::kSolve);
  r.include_extraneous = true;
  const json j = json::parse(run_request(r).out);
  ASSERT_EQ(j["solutions"].size(), 16u);
  int flagged = 0;
  for (const auto& s : j["solutions"]) flagged += s["extraneous"].get<bool>();
  EXPECT_EQ(flagged, 8);
}

TEST(CliDixonDet, MatchesLibraryCoefficients) {
  const auto det = dixon::dixon_determinant(worked_system());
  cli::CliRequest r = worked_request(cli::Subcommand::kDixonDet);
  r.retain = "q0";
  const json j = json::parse(run_request(r).out);
  EXPECT_EQ(j.at("degree"), 16);
  EXPECT_EQ(j.at("coeffs"), io::coefficient_list(det));
  r.retain = "q2";
  const json other = json::parse(run_request(r).out);
  EXPECT_EQ(other.at("retained"), "q2");
  EXPECT_EQ(other.at("degree"), 16);
}

TEST(CliVerify, ExtraneousPointFromSystemFile) {
  const fs::path file = write_temp("worked.json", io::to_json(worked_system()));
  cli::CliRequest r;
  r.subcommand = cli::Subcommand::kVerify;
  r.system_file = file.string();
  r.point = cli::parse_point("0.5,0.5,0.5,0.5");
  r.format = cli::Format::kJson;
  const Outcome o = run_request(r);
  ASSERT_EQ(o.status, 0) << o.err;
  const json j = json::parse(o.out);
  for (const auto& v : j["exact_residuals"]) EXPECT_EQ(v, "0/1");
  EXPECT_EQ(j["max_residual"], 0.0);
  EXPECT_TRUE(j["extraneous"].get<bool>());
  r.point = cli::parse_point("1,0,0,0");
  const json k = json::parse(run_request(r).out);
  EXPECT_EQ(k["exact_residuals"][2], "7/25");
  EXPECT_FALSE(k["extraneous"].get<bool>());
}

TEST(CliErrors, StatusCodes) {
  const fs::path bad = write_temp("degenerate.json", degenerate_system_json());
  cli::CliRequest r;
  r.subcommand = cli::Subcommand::kDixonDet;
  r.system_file = bad.string();
  const Outcome degenerate = run_request(r);
  EXPECT_EQ(degenerate.status, 2);
  EXPECT_EQ(degenerate.err.rfind("error[DegenerateSystem]: ", 0), 0u) << degenerate.err;
  r.system_file = "/nonexistent/system.json";
  const Outcome missing = run_request(r);
  EXPECT_EQ(missing.status, 1);
  EXPECT_EQ(missing.err.rfind("error[InvalidInput]: ", 0), 0u) << missing.err;
  const fs::path garbage = write_temp("garbage.json", json{{"polys", 3}});
  r.system_file = garbage.string();
  EXPECT_EQ(run_request(r).status, 1);
}

TEST(CliBinary, EndToEnd) {
  const Outcome solve = run_binary("solve --sincos 3/5,4/5 5/13,12/13 7/25,24/25 --format json");
  ASSERT_EQ(solve.status, 0);
  const json j = json::parse(solve.out);
  EXPECT_EQ(j["solutions"].size(), 8u);
  EXPECT_EQ(j["solutions"][0]["q"][0].get<double>(), 0.22420547189459832);

  const fs::path sys = write_temp("bin_worked.json", io::to_json(worked_system()));
  const Outcome det = run_binary("dixon-det --system " + sys.string() + " --retain q0 --format json");
  ASSERT_EQ(det.status, 0);
  EXPECT_EQ(json::parse(det.out)["coeffs"], io::coefficient_list(dixon::dixon_determinant(worked_system())));

  const Outcome verify = run_binary("verify --system " + sys.string() + " --point 0.5,0.5,0.5,0.5 --format json");
  ASSERT_EQ(verify.status, 0);
  EXPECT_TRUE(json::parse(verify.out)["extraneous"].get<bool>());

  const Outcome angles = run_binary("solve --theta 0.6435011087932844,0.3947911196997615,0.2837941092083278");
  EXPECT_EQ(angles.status, 0);
  EXPECT_NE(angles.out.find("solutions: 8"), std::string::npos) << angles.out;

  const fs::path bad = write_temp("bin_degenerate.json", degenerate_system_json());
  EXPECT_EQ(run_binary("dixon-det --system " + bad.string()).status, 2);
  EXPECT_EQ(run_binary("solve --sincos 1/2,1/2 5/13,12/13 7/25,24/25").status, 1);
  EXPECT_EQ(run_binary("solve --theta 1,2,3 --sincos 3/5,4/5 5/13,12/13 7/25,24/25").status, 1);
  EXPECT_EQ(run_binary("solve").status, 1);
  EXPECT_EQ(run_binary("frobnicate").status, 1);
  EXPECT_EQ(run_binary("verify --sincos 3/5,4/5 5/13,12/13 7/25,24/25").status, 1);
  EXPECT_EQ(run_binary("--help").status, 0);
  EXPECT_EQ(run_binary("oracle --sincos 3/5,4/5 5/13,12/13 7/25,24/25").out.rfind("16 points", 0), 0u);
}

TEST(JsonRoundTrip, SystemsLegsAndAngles) {
  const auto sys = worked_system();
  const auto back = io::system_from_json(json::parse(io::to_json(sys).dump()));
  EXPECT_EQ(back.polys, sys.polys);
  EXPECT_EQ(back.eliminated, sys.eliminated);
  EXPECT_EQ(back.retained, sys.retained);
  const auto legs = spm::architecture_legs(worked_motors());
  json arr = json::array();
  for (const auto& leg : legs) arr.push_back(io::to_json(leg));
  const auto legs_back = io::legs_from_json(arr);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(legs_back[i].w, legs[i].w);
    EXPECT_EQ(legs_back[i].nu, legs[i].nu);
    EXPECT_EQ(legs_back[i].c, legs[i].c);
  }
  const auto angles = io::motor_angles_from_json(io::to_json(spm::MotorAngles::from_exact(worked_motors())));
  EXPECT_EQ((*angles.exact)[1].sin, Rational(5, 13));
}

TEST(JsonRoundTrip, MalformedInputs) {
  EXPECT_THROW(io::motor_angles_from_json(json::parse(R"({"exact": [[[3,5],[4,5]]]})")), Error);
  EXPECT_THROW(io::motor_angles_from_json(json::parse(R"({"theta_rad": [1,2,3], "exact": []})")), Error);
  EXPECT_THROW(io::motor_angles_from_json(json::parse(R"({"exact": [["1/2","1/2"],["3/5","4/5"],["3/5","4/5"]]})")), Error);
  EXPECT_THROW(io::system_from_json(json::parse(R"({"polys": ["q0","q1","q2"], "eliminated": ["q1","q2","q3"]})")), Error);
  EXPECT_THROW(io::result_from_json(json::parse(R"({"parameters": {}})")), Error);
}

TEST(JsonRoundTripProperty, ResultDocumentsAreFixedPoints) {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    cli::CliRequest r;
    r.sincos = testing_support::motor_draw(rng);
    r.format = cli::Format::kJson;
    r.include_extraneous = trial % 2 == 1;
    const json emitted = json::parse(run_request(r).out);
    const json again = io::to_json(io::result_from_json(emitted));
    ASSERT_EQ(again, emitted);
    ASSERT_EQ(json::parse(again.dump()), emitted);
  }
}
