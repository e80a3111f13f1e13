// SPDX-License-Identifier: Apache-2.0

#include "risbf/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "risbf/baselines.hpp"
#include "risbf/dualmethod.hpp"
#include "risbf/rng.hpp"
#include "risbf/sdr.hpp"

namespace risbf {

const char* to_string(Method m) {
  switch (m) {
    case Method::DM: return "DM";
    case Method::SDR: return "SDR";
    case Method::MRT: return "MRT";
    case Method::ZF: return "ZF";
  }
  return "?";
}

std::optional<Method> method_from_string(const std::string& s) {
  if (s == "DM") return Method::DM;
  if (s == "SDR") return Method::SDR;
  if (s == "MRT") return Method::MRT;
  if (s == "ZF") return Method::ZF;
  return std::nullopt;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Splits "<number><suffix>"; suffix may be empty.
bool split_quantity(const std::string& text, double& value, std::string& suffix) {
  const std::string t = trim(text);
  size_t pos = 0;
  try {
    value = std::stod(t, &pos);
  } catch (const std::exception&) {
    return false;
  }
  suffix = trim(t.substr(pos));
  return true;
}

[[noreturn]] void bad_quantity(const std::string& text, const std::string& kind) {
  throw std::invalid_argument("cannot parse " + kind + " from '" + text + "'");
}

}  // namespace

double parse_power_w(const std::string& text) {
  double v;
  std::string su;
  if (!split_quantity(text, v, su)) bad_quantity(text, "power");
  if (su.empty() || su == "W") return v;
  if (su == "mW") return v * 1e-3;
  if (su == "dBm") return dbm_to_watts(v);
  bad_quantity(text, "power");
}

double parse_ratio_linear(const std::string& text) {
  double v;
  std::string su;
  if (!split_quantity(text, v, su)) bad_quantity(text, "ratio");
  if (su.empty()) return v;
  if (su == "dB") return std::pow(10.0, v / 10.0);
  bad_quantity(text, "ratio");
}

double parse_length_m(const std::string& text) {
  double v;
  std::string su;
  if (!split_quantity(text, v, su)) bad_quantity(text, "length");
  if (su.empty() || su == "m") return v;
  if (su == "km") return v * 1e3;
  bad_quantity(text, "length");
}

double parse_freq_hz(const std::string& text) {
  double v;
  std::string su;
  if (!split_quantity(text, v, su)) bad_quantity(text, "frequency");
  if (su.empty() || su == "Hz") return v;
  if (su == "kHz") return v * 1e3;
  if (su == "MHz") return v * 1e6;
  if (su == "GHz") return v * 1e9;
  bad_quantity(text, "frequency");
}

Deployment parse_deployment(const std::string& text) {
  const std::string t = trim(text);
  if (t == "centralized") return Deployment::centralized();
  const std::string prefix = "distributed:";
  if (t.rfind(prefix, 0) == 0)
    return Deployment::distributed(parse_length_m(t.substr(prefix.size())));
  throw std::invalid_argument("cannot parse deployment from '" + text + "'");
}

std::string deployment_to_string(const Deployment& d) {
  if (d.kind == DeploymentKind::Centralized) return "centralized";
  char buf[64];
  std::snprintf(buf, sizeof buf, "distributed:%.12g", d.radius_m);
  return buf;
}

void ExperimentConfig::check() const {
  base.check();
  if (methods.empty())
    throw std::invalid_argument("experiment: at least one method required");
  if (trials_per_point < 1)
    throw std::invalid_argument("experiment: trials_per_point must be >= 1");
  if (phase_bits < 0)
    throw std::invalid_argument("experiment: phase_bits must be >= 0");
  if (sdr_samples < 0)
    throw std::invalid_argument("experiment: sdr_samples must be >= 0");
  if (!(fading_variance > 0.0))
    throw std::invalid_argument("experiment: fading_variance must be > 0");
  if (sweep) {
    static const char* allowed[] = {"sinr_target",   "pathloss_exponent",
                                    "units_per_user", "num_users",
                                    "phase_bits",    "deployment"};
    bool ok = false;
    for (const char* a : allowed) ok = ok || sweep->parameter == a;
    if (!ok)
      throw std::invalid_argument("experiment: unknown sweep parameter '" +
                                  sweep->parameter + "'");
    if (sweep->values.empty())
      throw std::invalid_argument("experiment: sweep has no values");
  }
  resolve_points(*this);  // validates every sweep value parses
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig ec;
  double base_sinr_target = 2.0;
  std::string section;
  std::string line;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "system" && section != "scenario" && section != "energy" &&
          section != "experiment")
        throw ConfigError(line_no, "unknown section [" + section + "]");
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(line_no, "key outside of a section");

    try {
      if (section == "system") {
        if (key == "num_users") ec.base.num_users = std::stoi(value);
        else if (key == "units_per_user") {
          if (!value.empty() && (value.back() == 'K' || value.back() == 'k')) {
            ec.units_multiplier = std::stoi(value.substr(0, value.size() - 1));
            if (ec.units_multiplier < 1)
              throw std::invalid_argument("multiplier must be >= 1");
          } else {
            ec.base.units_per_user = std::stoi(value);
          }
        } else if (key == "noise_power") ec.base.noise_power_w = parse_power_w(value);
        else if (key == "sinr_target") base_sinr_target = parse_ratio_linear(value);
        else if (key == "pathloss_exponent") ec.base.pathloss_exponent = std::stod(value);
        else if (key == "deployment") ec.base.deployment = parse_deployment(value);
        else if (key == "area_side") ec.base.area_side_m = parse_length_m(value);
        else throw std::invalid_argument("unknown key '" + key + "'");
      } else if (section == "scenario") {
        if (key == "seed") ec.seed = std::stoull(value);
        else if (key == "fading_variance") ec.fading_variance = std::stod(value);
        else throw std::invalid_argument("unknown key '" + key + "'");
      } else if (section == "energy") {
        if (key == "amplifier_efficiency")
          ec.energy.amplifier_inverse_efficiency = 1.0 / std::stod(value);
        else if (key == "bs_circuit_power")
          ec.energy.bs_circuit_power_w = parse_power_w(value);
        else if (key == "user_circuit_power")
          ec.energy.user_circuit_power_w = parse_power_w(value);
        else if (key == "ris_element_power")
          ec.energy.ris_element_power_w = parse_power_w(value);
        else if (key == "bandwidth") ec.energy.bandwidth_hz = parse_freq_hz(value);
        else throw std::invalid_argument("unknown key '" + key + "'");
      } else if (section == "experiment") {
        if (key == "methods") {
          ec.methods.clear();
          for (const std::string& tok : split(value, ',')) {
            const auto m = method_from_string(trim(tok));
            if (!m) throw std::invalid_argument("unknown method '" + trim(tok) + "'");
            ec.methods.push_back(*m);
          }
        } else if (key == "sweep") {
          const size_t colon = value.find(':');
          if (colon == std::string::npos)
            throw std::invalid_argument("sweep needs 'parameter: v1, v2, ...'");
          SweepSpec sw;
          sw.parameter = trim(value.substr(0, colon));
          for (const std::string& tok : split(value.substr(colon + 1), ','))
            sw.values.push_back(trim(tok));
          ec.sweep = std::move(sw);
        } else if (key == "trials_per_point") ec.trials_per_point = std::stoi(value);
        else if (key == "phase_bits") ec.phase_bits = std::stoi(value);
        else if (key == "zf_penalty") ec.zf_penalty = std::stod(value);
        else if (key == "sdr_samples") ec.sdr_samples = std::stoi(value);
        else throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(line_no, std::string(e.what()));
    }
  }

  ec.base.sinr_targets =
      Eigen::VectorXd::Constant(ec.base.num_users, base_sinr_target);
  if (ec.units_multiplier > 0)
    ec.base.units_per_user = ec.units_multiplier * ec.base.num_users;
  try {
    ec.check();
  } catch (const std::exception& e) {
    throw ConfigError(line_no, std::string(e.what()));
  }
  return ec;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_experiment_config(in);
}

std::vector<ResolvedPoint> resolve_points(const ExperimentConfig& ec) {
  std::vector<ResolvedPoint> pts;
  if (!ec.sweep) {
    pts.push_back({ec.base, ec.phase_bits});
    return pts;
  }
  const double target0 = ec.base.sinr_targets.size()
                             ? ec.base.sinr_targets[0]
                             : 2.0;
  for (const std::string& v : ec.sweep->values) {
    ResolvedPoint pt{ec.base, ec.phase_bits};
    const std::string& param = ec.sweep->parameter;
    if (param == "sinr_target") {
      pt.config.sinr_targets = Eigen::VectorXd::Constant(
          pt.config.num_users, parse_ratio_linear(v));
    } else if (param == "pathloss_exponent") {
      pt.config.pathloss_exponent = std::stod(v);
    } else if (param == "units_per_user") {
      pt.config.units_per_user = std::stoi(v);
    } else if (param == "num_users") {
      pt.config.num_users = std::stoi(v);
      pt.config.sinr_targets =
          Eigen::VectorXd::Constant(pt.config.num_users, target0);
      if (ec.units_multiplier > 0)
        pt.config.units_per_user = ec.units_multiplier * pt.config.num_users;
    } else if (param == "phase_bits") {
      pt.phase_bits = std::stoi(v);
    } else if (param == "deployment") {
      pt.config.deployment = parse_deployment(v);
    } else {
      throw std::invalid_argument("unknown sweep parameter '" + param + "'");
    }
    pt.config.check();
    pts.push_back(std::move(pt));
  }
  return pts;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string diag_or_na(const BeamformingSolution& sol, const char* key) {
  const auto it = sol.diagnostics.find(key);
  return it == sol.diagnostics.end() ? "na" : fmt(it->second);
}

struct Row {
  std::string text;
  SolutionStatus status = SolutionStatus::NumericalFailure;
};

Row make_row(const std::string& scenario_id, std::uint64_t seed, Method method,
             const ResolvedPoint& pt, const BeamformingSolution& sol,
             const EnergyModel& energy) {
  const SystemConfig& cfg = pt.config;
  std::ostringstream os;
  os << scenario_id << "," << seed << "," << to_string(method) << ","
     << cfg.num_users << "," << cfg.units_per_user << ","
     << fmt(10.0 * std::log10(cfg.sinr_targets[0])) << ","
     << fmt(cfg.pathloss_exponent) << ","
     << deployment_to_string(cfg.deployment) << "," << pt.phase_bits << ","
     << to_string(sol.status) << ",";
  if (sol.feasible()) {
    os << fmt(sol.sum_power_w) << "," << fmt(watts_to_dbm(sol.sum_power_w))
       << "," << fmt(energy_efficiency(sol, cfg, energy)) << ",";
  } else {
    os << "na,na,na,";
  }
  os << diag_or_na(sol, "iterations") << ","
     << diag_or_na(sol, "duality_gap_rel") << ","
     << diag_or_na(sol, "max_leakage");
  return {os.str(), sol.status};
}

BeamformingSolution run_method(Method method, const Scenario& scenario,
                               const ResolvedPoint& pt,
                               const ExperimentConfig& ec, std::uint64_t sdr_seed) {
  const SystemConfig& cfg = pt.config;
  BeamformingSolution sol;
  switch (method) {
    case Method::DM:
      sol = solve_dual_method(scenario.channels, cfg);
      break;
    case Method::SDR: {
      const RelaxationResult relax = solve_relaxation(scenario.channels, cfg);
      sol = extract_rank_one(relax, scenario.channels, cfg, ec.sdr_samples,
                             sdr_seed, Exec::Serial);
      break;
    }
    case Method::MRT:
      sol = solve_with_phases(mrt_phase(scenario.channels), scenario.channels, cfg);
      break;
    case Method::ZF: {
      PhaseBeamformer pb;
      pb.phases.resize(cfg.num_users);
      for (int k = 0; k < cfg.num_users; ++k)
        pb.phases[k] = zf_phase(scenario.channels, k, ec.zf_penalty).theta;
      sol = solve_with_phases(pb, scenario.channels, cfg);
      break;
    }
  }
  if (pt.phase_bits > 0 && sol.feasible()) {
    const double dual_obj = sol.diagnostics.count("dual_objective_w")
                                ? sol.diagnostics.at("dual_objective_w")
                                : -1.0;
    BeamformingSolution quant = solve_with_phases(
        quantize_phases(sol.phases, pt.phase_bits), scenario.channels, cfg);
    // keep the continuous run's method diagnostics; insert() preserves the
    // quantized run's own iteration and leakage entries
    quant.diagnostics.insert(sol.diagnostics.begin(), sol.diagnostics.end());
    if (quant.feasible() && dual_obj > 0.0)
      quant.diagnostics["duality_gap_rel"] =
          (quant.sum_power_w - dual_obj) / quant.sum_power_w;
    return quant;
  }
  return sol;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& ec,
                          const std::string& output_dir, Exec exec) {
  ec.check();
  const std::vector<ResolvedPoint> points = resolve_points(ec);
  const int npoints = static_cast<int>(points.size());
  const int ntrials = ec.trials_per_point;
  const int nmethods = static_cast<int>(ec.methods.size());

  std::filesystem::create_directories(output_dir);

  std::vector<Row> rows(static_cast<size_t>(npoints) * ntrials * nmethods);
  const int njobs = npoints * ntrials;
  auto job = [&](int idx) {
    const int point = idx / ntrials;
    const int trial = idx % ntrials;
    const ResolvedPoint& pt = points[point];
    const std::uint64_t trial_seed =
        derive_seed(ec.seed, {3, static_cast<std::uint64_t>(point),
                              static_cast<std::uint64_t>(trial)});
    const std::uint64_t sdr_seed =
        derive_seed(ec.seed, {4, static_cast<std::uint64_t>(point),
                              static_cast<std::uint64_t>(trial)});
    ScenarioSpec spec{pt.config, trial_seed, ec.fading_variance};
    const Scenario scenario = generate_scenario(spec);
    const std::string scenario_id =
        "p" + std::to_string(point) + "_t" + std::to_string(trial);
    for (int m = 0; m < nmethods; ++m) {
      BeamformingSolution sol;
      try {
        sol = run_method(ec.methods[m], scenario, pt, ec, sdr_seed);
        if (sol.feasible() &&
            !validate(sol, pt.config, scenario.channels, 1e-6).all_pass())
          sol.status = SolutionStatus::NumericalFailure;
      } catch (const std::exception&) {
        sol.status = SolutionStatus::NumericalFailure;
      }
      rows[(static_cast<size_t>(point) * ntrials + trial) * nmethods + m] =
          make_row(scenario_id, trial_seed, ec.methods[m], pt, sol, ec.energy);
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < njobs; ++idx) job(idx);
  } else {
    for (int idx = 0; idx < njobs; ++idx) job(idx);
  }

  RunOutcome out;
  out.csv_path = (std::filesystem::path(output_dir) / "results.csv").string();
  out.summary_path = (std::filesystem::path(output_dir) / "summary.txt").string();

  std::ofstream csv(out.csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write '" + out.csv_path + "'");
  csv << "scenario_id,seed,method,K,N,sinr_target_db,pathloss_exponent,"
         "deployment,phase_bits,status,sum_power_w,sum_power_dbm,"
         "ee_bits_per_joule,iterations,duality_gap_rel,max_leakage\n";
  for (const Row& r : rows) {
    csv << r.text << "\n";
    ++out.rows;
    if (r.status == SolutionStatus::Infeasible) ++out.infeasible;
    if (r.status == SolutionStatus::NumericalFailure) ++out.numerical_failures;
  }
  csv.close();

  std::ofstream summary(out.summary_path, std::ios::binary);
  summary << compare_summary(out.csv_path);
  return out;
}

namespace {

struct CsvRow {
  std::string point;
  std::string method;
  std::string status;
  double sum_power_w = 0.0;
  double ee = 0.0;
  bool feasible = false;
  std::string label;  // point parameters for display
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string compare_summary(const std::string& csv_path, int* skipped_rows) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open CSV '" + csv_path + "'");

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV");

  std::vector<CsvRow> rows;
  int skipped = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 16) {
      ++skipped;
      continue;
    }
    CsvRow r;
    const size_t us = f[0].find("_t");
    r.point = (us == std::string::npos) ? f[0] : f[0].substr(0, us);
    r.method = f[2];
    r.status = f[9];
    r.feasible = (r.status == "optimal" || r.status == "feasible");
    if (r.feasible) {
      try {
        r.sum_power_w = std::stod(f[10]);
        r.ee = std::stod(f[12]);
      } catch (const std::exception&) {
        ++skipped;
        continue;
      }
    }
    r.label = "K=" + f[3] + " N=" + f[4] + " sinr_db=" + f[5] + " alpha=" + f[6] +
              " " + f[7] + " bits=" + f[8];
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw std::runtime_error("CSV has no usable rows");
  if (skipped_rows) *skipped_rows = skipped;

  // Group stable by point, then method, preserving first-seen order.
  std::vector<std::string> point_order;
  std::map<std::string, std::vector<const CsvRow*>> by_point;
  for (const CsvRow& r : rows) {
    if (!by_point.count(r.point)) point_order.push_back(r.point);
    by_point[r.point].push_back(&r);
  }

  std::ostringstream os;
  if (skipped) os << "warning: skipped " << skipped << " malformed row(s)\n";
  for (const std::string& pt : point_order) {
    const auto& prow = by_point[pt];
    os << "== point " << pt << " (" << prow.front()->label << ")\n";
    os << "  method  rows  feasible  median_dbm      mean_dbm   median_ee\n";

    std::vector<std::string> method_order;
    std::map<std::string, std::vector<const CsvRow*>> by_method;
    for (const CsvRow* r : prow) {
      if (!by_method.count(r->method)) method_order.push_back(r->method);
      by_method[r->method].push_back(r);
    }
    std::map<std::string, double> med_w;
    for (const std::string& m : method_order) {
      std::vector<double> powers, ees;
      for (const CsvRow* r : by_method[m])
        if (r->feasible) {
          powers.push_back(r->sum_power_w);
          ees.push_back(r->ee);
        }
      char buf[160];
      if (powers.empty()) {
        std::snprintf(buf, sizeof buf, "  %-6s %5zu %9zu %11s %13s %11s\n",
                      m.c_str(), by_method[m].size(), powers.size(), "na", "na",
                      "na");
      } else {
        med_w[m] = median(powers);
        double mean = 0.0;
        for (double p : powers) mean += p;
        mean /= powers.size();
        std::snprintf(buf, sizeof buf, "  %-6s %5zu %9zu %11.3f %13.3f %11.4g\n",
                      m.c_str(), by_method[m].size(), powers.size(),
                      watts_to_dbm(med_w[m]), watts_to_dbm(mean), median(ees));
      }
      os << buf;
    }
    for (const std::string& a : method_order)
      for (const std::string& b : method_order) {
        if (a == b || !med_w.count(a) || !med_w.count(b)) continue;
        char buf[96];
        std::snprintf(buf, sizeof buf, "  savings(%s over %s) = %.1f%%\n",
                      a.c_str(), b.c_str(), 100.0 * (1.0 - med_w[a] / med_w[b]));
        os << buf;
      }
  }
  return os.str();
}

}  // namespace risbf
