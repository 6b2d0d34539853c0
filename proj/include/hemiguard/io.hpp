#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hemiguard/barrier.hpp"
#include "hemiguard/breach_solver.hpp"
#include "hemiguard/kernels.hpp"
#include "hemiguard/simulation.hpp"

namespace hemiguard::io {

/// 9 significant digits, "%.9g", with -0 printed as 0.
std::string format_number(double v);

/// v rounded to what format_number prints, so JSON and CSV agree.
double round9(double v);

/// Header theta,beta,x,r,psi.
std::string barrier_csv(const BarrierCurve& curve);

/// Header psi,r,p_star,label.
std::string raster_csv(const std::vector<kernels::RegionCell>& cells);

/// Header t,psi_d,phi_d,psi_a,r,omega_d,gamma_a,tau_d,tau_a,p.
std::string trajectory_csv(const Trajectory& tr);

/// Header theta_star,beta_star,tau_d,tau_a,p_star,region plus one row.
std::string solution_csv(const BreachSolution& sol, RegionLabel region);

nlohmann::ordered_json solution_json(const BreachSolution& sol, RegionLabel region);
nlohmann::ordered_json trajectory_summary_json(const Trajectory& tr);
nlohmann::ordered_json nash_report_json(const NashReport& report);

/// Writes to a sibling temporary file, then renames over path.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// "phiD=0.3pi,nu=0.8.csv", with ",k=<level>" when a level is given. Angles
/// are written as multiples of pi; characters outside [A-Za-z0-9._=,-] are
/// percent-encoded.
std::string sweep_filename(double phi_d, double nu, std::optional<double> level);

std::string percent_encode(std::string_view s);

}  // namespace hemiguard::io
