#include "hemiguard/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "hemiguard/errors.hpp"

namespace hemiguard::io {

namespace {

template <typename... Ts>
void row(std::string& out, const Ts&... cols) {
  bool first = true;
  auto put = [&](const auto& c) {
    if (!first) out += ',';
    first = false;
    if constexpr (std::is_arithmetic_v<std::decay_t<decltype(c)>>) {
      out += format_number(static_cast<double>(c));
    } else {
      out += c;
    }
  };
  (put(cols), ...);
  out += '\n';
}

nlohmann::ordered_json run_json(const NashRun& r) {
  nlohmann::ordered_json j;
  j["defender"] = r.defender;
  j["intruder"] = r.intruder;
  j["outcome"] = std::string(to_string(r.outcome));
  j["t_f"] = round9(r.t_f);
  j["p_initial"] = round9(r.p_initial);
  j["p_terminal"] = round9(r.p_terminal);
  return j;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double round9(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

std::string barrier_csv(const BarrierCurve& curve) {
  std::string out = "theta,beta,x,r,psi\n";
  for (const auto& s : curve.samples) row(out, s.theta, s.beta, s.x, s.r, s.psi);
  return out;
}

std::string raster_csv(const std::vector<kernels::RegionCell>& cells) {
  std::string out = "psi,r,p_star,label\n";
  for (const auto& c : cells) row(out, c.psi, c.r, c.p_star, std::string(to_string(c.label)));
  return out;
}

std::string trajectory_csv(const Trajectory& tr) {
  std::string out = "t,psi_d,phi_d,psi_a,r,omega_d,gamma_a,tau_d,tau_a,p\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    row(out, tr.times[i], tr.defender_states[i].psi_d(), tr.defender_states[i].phi_d(),
        tr.intruder_states[i].psi_a(), tr.intruder_states[i].r(), tr.defender_controls[i].omega_d,
        tr.intruder_controls[i].gamma_a, tr.tau_d_trace[i], tr.tau_a_trace[i],
        tr.payoff_trace[i]);
  }
  return out;
}

std::string solution_csv(const BreachSolution& sol, RegionLabel region) {
  std::string out = "theta_star,beta_star,tau_d,tau_a,p_star,region\n";
  row(out, sol.theta_star, sol.beta_star, sol.tau_d, sol.tau_a, sol.p_star,
      std::string(to_string(region)));
  return out;
}

nlohmann::ordered_json solution_json(const BreachSolution& sol, RegionLabel region) {
  nlohmann::ordered_json j;
  j["theta_star"] = round9(sol.theta_star);
  j["beta_star"] = round9(sol.beta_star);
  j["tau_d"] = round9(sol.tau_d);
  j["tau_a"] = round9(sol.tau_a);
  j["p_star"] = round9(sol.p_star);
  j["region"] = std::string(to_string(region));
  return j;
}

nlohmann::ordered_json trajectory_summary_json(const Trajectory& tr) {
  nlohmann::ordered_json j;
  j["defender"] = tr.defender_strategy;
  j["intruder"] = tr.intruder_strategy;
  j["outcome"] = std::string(to_string(tr.terminal.kind));
  j["t_f"] = round9(tr.terminal.t_f);
  j["p_initial"] = round9(tr.payoff_trace.front());
  j["p_terminal"] = round9(tr.payoff_trace.back());
  j["steps"] = tr.size() - 1;
  j["max_p_deviation"] = round9(max_payoff_deviation(tr));
  j["max_breach_drift"] = round9(max_breach_drift(tr));
  j["p_non_increasing"] = non_increasing(tr);
  j["p_non_decreasing"] = non_decreasing(tr);
  return j;
}

nlohmann::ordered_json nash_report_json(const NashReport& report) {
  nlohmann::ordered_json j;
  j["equilibrium"] = run_json(report.equilibrium);
  j["max_p_intruder_deviation"] = round9(report.max_p_intruder_deviation);
  j["min_p_defender_deviation"] = round9(report.min_p_defender_deviation);
  j["slack"] = round9(report.slack);
  j["ordering_holds"] = report.ordering_holds;
  j["intruder_deviations"] = nlohmann::ordered_json::array();
  for (const auto& r : report.intruder_deviations) j["intruder_deviations"].push_back(run_json(r));
  j["defender_deviations"] = nlohmann::ordered_json::array();
  for (const auto& r : report.defender_deviations) j["defender_deviations"].push_back(run_json(r));
  return j;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("rename to " + path.string() + " failed: " + ec.message());
  }
}

std::string percent_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (const unsigned char c : s) {
    if (std::isalnum(c) || c == '.' || c == '_' || c == '=' || c == ',' || c == '-') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 15];
    }
  }
  return out;
}

std::string sweep_filename(double phi_d, double nu, std::optional<double> level) {
  std::string name = "phiD=" + format_number(phi_d / kPi) + "pi,nu=" + format_number(nu);
  if (level) name += ",k=" + format_number(*level);
  return percent_encode(name) + ".csv";
}

}  // namespace hemiguard::io
