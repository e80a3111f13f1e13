// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "risbf/experiment.hpp"

using namespace risbf;

namespace {

const char* kSmallConfig = R"(
# two-user desk-scale run
[system]
num_users = 2
units_per_user = 4
noise_power = -114dBm
sinr_target = 3dB
pathloss_exponent = 3
deployment = centralized
area_side = 500m

[scenario]
seed = 9
fading_variance = 1

[experiment]
methods = MRT, ZF
sweep = sinr_target: 0dB, 3dB
trials_per_point = 3
phase_bits = 0
)";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("quantity parsing with unit suffixes") {
  CHECK(parse_power_w("-114dBm") == doctest::Approx(3.981e-15).epsilon(1e-3));
  CHECK(parse_power_w("1") == 1.0);
  CHECK(parse_power_w("5mW") == doctest::Approx(5e-3).epsilon(1e-14));
  CHECK(parse_ratio_linear("3dB") == doctest::Approx(1.9952623).epsilon(1e-6));
  CHECK(parse_ratio_linear("2") == 2.0);
  CHECK(parse_length_m("500m") == 500.0);
  CHECK(parse_length_m("0.5km") == 500.0);
  CHECK(parse_freq_hz("1MHz") == 1e6);
  CHECK(parse_freq_hz("250kHz") == 250e3);
  CHECK_THROWS_AS(parse_power_w("12parsec"), std::invalid_argument);
  CHECK_THROWS_AS(parse_ratio_linear("abc"), std::invalid_argument);

  const Deployment d = parse_deployment("distributed:100m");
  CHECK(d.kind == DeploymentKind::Distributed);
  CHECK(d.radius_m == 100.0);
  CHECK(deployment_to_string(d) == "distributed:100");
  CHECK(parse_deployment("centralized").kind == DeploymentKind::Centralized);
  CHECK_THROWS_AS(parse_deployment("orbit"), std::invalid_argument);
}

TEST_CASE("config parsing fills every field") {
  std::istringstream in(kSmallConfig);
  const ExperimentConfig ec = parse_experiment_config(in);
  CHECK(ec.base.num_users == 2);
  CHECK(ec.base.units_per_user == 4);
  CHECK(ec.base.noise_power_w == doctest::Approx(dbm_to_watts(-114)).epsilon(1e-12));
  CHECK(ec.base.sinr_targets[0] == doctest::Approx(1.9952623).epsilon(1e-6));
  CHECK(ec.seed == 9);
  REQUIRE(ec.methods.size() == 2);
  CHECK(ec.methods[0] == Method::MRT);
  CHECK(ec.methods[1] == Method::ZF);
  REQUIRE(ec.sweep.has_value());
  CHECK(ec.sweep->parameter == "sinr_target");
  CHECK(ec.sweep->values.size() == 2);
  CHECK(ec.trials_per_point == 3);

  const auto pts = resolve_points(ec);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].config.sinr_targets[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pts[1].config.sinr_targets[0] == doctest::Approx(1.9952623).epsilon(1e-6));
}

TEST_CASE("config errors carry line numbers") {
  std::istringstream bad1("[system]\nnum_users == 2\n");
  try {
    parse_experiment_config(bad1);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 2);
  }

  std::istringstream bad2("[system]\nwarp_factor = 9\n");
  CHECK_THROWS_AS(parse_experiment_config(bad2), ConfigError);

  std::istringstream bad3("num_users = 2\n");
  CHECK_THROWS_AS(parse_experiment_config(bad3), ConfigError);

  std::istringstream bad4("[system]\nnum_users = 2\n");  // no methods
  CHECK_THROWS_AS(parse_experiment_config(bad4), ConfigError);
}

TEST_CASE("the units = 3K convention tracks the user sweep") {
  std::istringstream in(R"(
[system]
num_users = 2
units_per_user = 3K
[experiment]
methods = MRT
sweep = num_users: 2, 3
trials_per_point = 1
)");
  const ExperimentConfig ec = parse_experiment_config(in);
  CHECK(ec.units_multiplier == 3);
  CHECK(ec.base.units_per_user == 6);
  const auto pts = resolve_points(ec);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].config.units_per_user == 6);
  CHECK(pts[1].config.num_users == 3);
  CHECK(pts[1].config.units_per_user == 9);
}

TEST_CASE("deployment can be swept") {
  std::istringstream in(R"(
[system]
num_users = 2
units_per_user = 4
[experiment]
methods = MRT
sweep = deployment: centralized, distributed:100m
trials_per_point = 1
)");
  const ExperimentConfig ec = parse_experiment_config(in);
  const auto pts = resolve_points(ec);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].config.deployment.kind == DeploymentKind::Centralized);
  CHECK(pts[1].config.deployment.kind == DeploymentKind::Distributed);
  CHECK(pts[1].config.deployment.radius_m == 100.0);

  const std::string dir = "exp_out_dep";
  const RunOutcome out = run_experiment(ec, dir, Exec::Serial);
  CHECK(out.rows == 2);
  const std::string csv = read_file(out.csv_path);
  CHECK(csv.find(",distributed:100,") != std::string::npos);
  CHECK(csv.find(",centralized,") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("runner writes the documented CSV and is deterministic") {
  std::istringstream in(kSmallConfig);
  const ExperimentConfig ec = parse_experiment_config(in);

  const std::string dir1 = "exp_out_a", dir2 = "exp_out_b";
  const RunOutcome a = run_experiment(ec, dir1, Exec::Parallel);
  const RunOutcome b = run_experiment(ec, dir2, Exec::Serial);
  CHECK(a.rows == 2 * 3 * 2);  // points x trials x methods

  const std::string csv_a = read_file(a.csv_path);
  const std::string csv_b = read_file(b.csv_path);
  CHECK(csv_a == csv_b);  // bit-identical across runs and policies

  std::istringstream first_line(csv_a);
  std::string header;
  std::getline(first_line, header);
  CHECK(header ==
        "scenario_id,seed,method,K,N,sinr_target_db,pathloss_exponent,"
        "deployment,phase_bits,status,sum_power_w,sum_power_dbm,"
        "ee_bits_per_joule,iterations,duality_gap_rel,max_leakage");

  const std::string summary = read_file(a.summary_path);
  CHECK(summary.find("savings(MRT over ZF)") != std::string::npos);

  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("summary medians and savings from a hand-written CSV") {
  const std::string path = "summary_test.csv";
  std::ofstream out(path, std::ios::binary);
  out << "scenario_id,seed,method,K,N,sinr_target_db,pathloss_exponent,"
         "deployment,phase_bits,status,sum_power_w,sum_power_dbm,"
         "ee_bits_per_joule,iterations,duality_gap_rel,max_leakage\n";
  // two methods with identical powers -> savings 0; one infeasible row
  // excluded from medians; one malformed row skipped with a warning.
  for (int t = 0; t < 3; ++t) {
    const double p = 1.0 + t;
    for (const char* m : {"A", "B"}) {
      out << "p0_t" << t << ",1," << m << ",2,4,3,3,centralized,0,feasible,"
          << p << ",30," << 1e6 << ",5,na,na\n";
    }
  }
  out << "p0_t3,1,A,2,4,3,3,centralized,0,infeasible,na,na,na,na,na,na\n";
  out << "p0_t4,broken\n";
  out.close();

  int skipped = 0;
  const std::string text = compare_summary(path, &skipped);
  CHECK(skipped == 1);
  CHECK(text.find("savings(A over B) = 0.0%") != std::string::npos);
  CHECK(text.find("warning: skipped 1") != std::string::npos);
  std::filesystem::remove(path);

  std::ofstream empty("summary_empty.csv", std::ios::binary);
  empty << "scenario_id\n";
  empty.close();
  CHECK_THROWS(compare_summary("summary_empty.csv"));
  std::filesystem::remove("summary_empty.csv");
}

TEST_CASE("quantized runs re-solve the power control") {
  std::istringstream in(R"(
[system]
num_users = 2
units_per_user = 8
[scenario]
seed = 4
[experiment]
methods = MRT
trials_per_point = 2
phase_bits = 3
)");
  const ExperimentConfig ec = parse_experiment_config(in);
  const std::string dir = "exp_out_q";
  const RunOutcome out = run_experiment(ec, dir, Exec::Serial);
  CHECK(out.rows == 2);
  const std::string csv = read_file(out.csv_path);
  CHECK(csv.find(",3,feasible,") != std::string::npos);  // phase_bits column
  std::filesystem::remove_all(dir);
}
