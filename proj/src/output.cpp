#include "maxheat/output.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "maxheat/errors.hpp"
#include "maxheat/parallel.hpp"

namespace maxheat
{

namespace
{

std::ofstream open_for_write(const std::string &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw ConfigError("cannot write " + path);
  }
  out.precision(std::numeric_limits<double>::max_digits10);
  return out;
}

void close_checked(std::ofstream &out, const std::string &path)
{
  out.close();
  if (!out)
  {
    throw ConfigError("write failed: " + path);
  }
}

}  // namespace

void write_energy_csv(const std::string &path, const CoupledResult &result)
{
  std::ofstream out = open_for_write(path);
  const bool picard = result.picard.has_value();
  out << "step,t,E,dissipation,residual" << (picard ? ",picard_iter" : "") << '\n';
  const auto &e = result.energy.samples;
  for (std::size_t n = 0; n < e.size(); ++n)
  {
    const bool interval = n < result.steps.size();
    out << n << ',' << double(n) * result.energy.dt << ',' << e[n] << ','
        << (interval ? result.steps[n].dissipation : 0.0) << ','
        << (interval ? result.steps[n].residual : 0.0);
    if (picard)
    {
      out << ',' << result.picard->applications;
    }
    out << '\n';
  }
  close_checked(out, path);
}

void write_theta_csv(const std::string &path, const NodalField &theta, const Domain &dom)
{
  std::ofstream out = open_for_write(path);
  out << "x,y,theta\n";
  for (int j = 0; j < dom.node_rows(); ++j)
  {
    for (int i = 0; i < dom.node_cols(); ++i)
    {
      out << dom.x(i) << ',' << dom.y(j) << ',' << theta[dom.node(i, j)] << '\n';
    }
  }
  close_checked(out, path);
}

void write_fields_csv(const std::string &path, const FieldState &fields, const NodalField &theta,
                      const Domain &dom)
{
  std::ofstream out = open_for_write(path);
  out << "x,y,Dz,Bx_interp,By_interp,theta\n";
  for (int j = 0; j < dom.node_rows(); ++j)
  {
    for (int i = 0; i < dom.node_cols(); ++i)
    {
      double bx = 0.0, by = 0.0;
      int cx = 0, cy = 0;
      if (j > 0)
      {
        bx += fields.b.x[dom.bx(i, j - 1)];
        ++cx;
      }
      if (j < dom.ny())
      {
        bx += fields.b.x[dom.bx(i, j)];
        ++cx;
      }
      if (i > 0)
      {
        by += fields.b.y[dom.by(i - 1, j)];
        ++cy;
      }
      if (i < dom.nx())
      {
        by += fields.b.y[dom.by(i, j)];
        ++cy;
      }
      const std::size_t k = dom.node(i, j);
      out << dom.x(i) << ',' << dom.y(j) << ',' << fields.dz[k] << ',' << bx / cx << ','
          << by / cy << ',' << theta[k] << '\n';
    }
  }
  close_checked(out, path);
}

nlohmann::json make_report(const RunConfig &cfg, const CoupledResult &result,
                           const RunSummary &summary)
{
  const GronwallBound bound = gronwall_bound(cfg.coupled);
  nlohmann::json report;
  report["config"] = cfg.document;
  report["gronwall_N"] = bound.n;
  report["gronwall"] = {{"F0", bound.f0}, {"C1", bound.c1}, {"C2", bound.c2}};
  report["max_E"] = result.energy.max_abs();
  report["E0"] = result.energy.samples.empty() ? 0.0 : result.energy.samples.front();
  report["steps"] = result.energy.samples.empty() ? 0 : result.energy.samples.size() - 1;
  report["dt"] = result.energy.dt;
  if (result.picard)
  {
    const PicardReport &p = *result.picard;
    report["picard"] = {{"converged", p.converged},
                        {"applications", p.applications},
                        {"deltas", p.deltas},
                        {"contraction_ratios", p.contraction_ratios},
                        {"outside_K", p.outside_k}};
  }
  else
  {
    report["picard"] = nullptr;
  }
  long cg_total = 0;
  for (int it : result.cg_iterations)
  {
    cg_total += it;
  }
  report["cg_iterations_total"] = cg_total;
  report["wall_time_s"] = summary.wall_time_s;
  report["threads"] = summary.threads;
  report["version"] = kVersion;
  return report;
}

void write_outputs(const RunConfig &cfg, const CoupledResult &result, const RunSummary &summary)
{
  const std::filesystem::path dir(cfg.output.dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
  {
    throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
  write_energy_csv((dir / "energy.csv").string(), result);
  write_theta_csv((dir / "theta_final.csv").string(), result.theta.theta, cfg.coupled.domain);

  const std::string report_path = (dir / "report.json").string();
  std::ofstream out = open_for_write(report_path);
  out << make_report(cfg, result, summary).dump(2) << '\n';
  close_checked(out, report_path);
}

CoupledResult execute(const RunConfig &cfg)
{
  const int threads = resolve_thread_count(cfg.threads);
  set_thread_count(threads);

  CoupledObserver observer;
  if (cfg.output.fields && cfg.output.snapshot_stride > 0)
  {
    std::filesystem::create_directories(cfg.output.dir);
    const int stride = cfg.output.snapshot_stride;
    const Domain &dom = cfg.coupled.domain;
    const std::string dir = cfg.output.dir;
    observer = [stride, &dom, dir](int n, const FieldState &fields, const NodalField &theta) {
      if (n % stride == 0)
      {
        char name[64];
        std::snprintf(name, sizeof(name), "fields_%06d.csv", n);
        write_fields_csv((std::filesystem::path(dir) / name).string(), fields, theta, dom);
      }
    };
  }

  const auto start = std::chrono::steady_clock::now();
  CoupledResult result = run(cfg.coupled, observer);
  const auto stop = std::chrono::steady_clock::now();

  RunSummary summary;
  summary.wall_time_s = std::chrono::duration<double>(stop - start).count();
  summary.threads = threads;
  write_outputs(cfg, result, summary);
  return result;
}

}  // namespace maxheat
