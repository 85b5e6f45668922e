#pragma once

#include <string>

#include <json.hpp>

#include "maxheat/config.hpp"
#include "maxheat/coupled.hpp"

namespace maxheat
{

inline constexpr const char *kVersion = "0.1.0";

// Rows step,t,E,dissipation,residual[,picard_iter]. Dissipation and residual
// belong to the interval [t_n, t_{n+1}] and are 0 on the final row.
void write_energy_csv(const std::string &path, const CoupledResult &result);

// x,y,theta on every grid node.
void write_theta_csv(const std::string &path, const NodalField &theta, const Domain &dom);

// x,y,Dz,Bx_interp,By_interp,theta on every grid node; B is averaged from the
// neighbouring faces for output only.
void write_fields_csv(const std::string &path, const FieldState &fields, const NodalField &theta,
                      const Domain &dom);

struct RunSummary
{
  double wall_time_s = 0.0;
  int threads = 1;
};

nlohmann::json make_report(const RunConfig &cfg, const CoupledResult &result,
                           const RunSummary &summary);

// Writes energy.csv, theta_final.csv and report.json into cfg.output.dir,
// creating it when missing. Throws ConfigError naming the path on I/O failure.
void write_outputs(const RunConfig &cfg, const CoupledResult &result, const RunSummary &summary);

// Runs cfg (snapshots included) and writes all outputs. Sets the thread
// count for the calling thread.
CoupledResult execute(const RunConfig &cfg);

}  // namespace maxheat
