#include "maxheat/coupled.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxheat/errors.hpp"

namespace maxheat
{

namespace
{

void require_boundary_clean(const NodalField &field, const Domain &dom, const char *name)
{
  if (field.size() != dom.node_count())
  {
    throw ConfigError(std::string("initial ") + name + " has the wrong size");
  }
  for (std::size_t k = 0; k < field.size(); ++k)
  {
    if (!std::isfinite(field[k]))
    {
      throw ConfigError(std::string("initial ") + name + " is not finite");
    }
    if (!dom.interior(k) && field[k] != 0.0)
    {
      throw ConfigError(std::string("initial ") + name + " must vanish on boundary nodes");
    }
  }
}

double sup_norm(const NodalField &f)
{
  double m = 0.0;
  for (double v : f.values)
  {
    m = std::max(m, std::abs(v));
  }
  return m;
}

}  // namespace

MaxwellStepParams CoupledConfig::maxwell_params() const
{
  MaxwellStepParams p;
  p.dt = time_grid().dt;
  p.cfl_safety = cfl_safety;
  return p;
}

HeatStepParams CoupledConfig::heat_params() const
{
  HeatStepParams p;
  p.dt = time_grid().dt;
  p.cg_tol = cg_tol;
  p.cg_max_iter = cg_max_iter;
  return p;
}

void CoupledConfig::validate() const
{
  consts.validate();
  if (domain.node_count() == 0)
  {
    throw ConfigError("domain is empty");
  }
  require_boundary_clean(initial.d0, domain, "Dz");
  require_boundary_clean(initial.theta0, domain, "theta");
  if (initial.b0.x.size() != domain.bx_count() || initial.b0.y.size() != domain.by_count())
  {
    throw ConfigError("initial B has the wrong size");
  }
  check_cfl(maxwell_params(), domain, consts);
  heat_params().validate();
  if (!(picard_tol > 0.0))
  {
    throw ConfigError("solver.picard_tol must be positive");
  }
  if (picard_max_iter < 1)
  {
    throw ConfigError("solver.picard_max_iter must be >= 1");
  }
  require_bounds(model, operating_range(*this));
}

GronwallBound gronwall_bound(const CoupledConfig &cfg)
{
  GronwallBound g;
  const double e0 = total_energy(cfg.initial.d0, cfg.initial.b0, cfg.domain, cfg.consts.eps,
                                 cfg.consts.mu);
  g.f0 = 2.0 * e0;
  g.c1 = cfg.source.sup_norm2(cfg.domain);
  // The Young split of the source term is only needed when G is present.
  g.c2 = (2.0 * cfg.model.sigma0() + (g.c1 > 0.0 ? 1.0 : 0.0)) / cfg.consts.eps;
  g.n = (g.f0 + g.c1 * cfg.t_final) * std::exp(g.c2 * cfg.t_final);
  return g;
}

double operating_range(const CoupledConfig &cfg)
{
  const double n = gronwall_bound(cfg).n;
  const double bound = sup_norm(cfg.initial.theta0) + n * cfg.t_final;
  const double range = 10.0 * bound;
  return range > 0.0 && std::isfinite(range) ? range : 1.0;
}

EnergyTrajectory initial_energy_guess(const CoupledConfig &cfg)
{
  const TimeGrid grid = cfg.time_grid();
  const double e0 = total_energy(cfg.initial.d0, cfg.initial.b0, cfg.domain, cfg.consts.eps,
                                 cfg.consts.mu);
  EnergyTrajectory e;
  e.samples.assign(std::size_t(grid.steps) + 1, e0);
  e.dt = grid.dt;
  e.bound_n = gronwall_bound(cfg).n;
  return e;
}

namespace
{

// Shared stepping loop. `heat_source(n, E_n)` returns the value of f for the
// heat step n -> n+1.
template <class HeatSource>
CoupledResult co_advance(const CoupledConfig &cfg, HeatSource &&heat_source,
                         const CoupledObserver &observer)
{
  const Domain &dom = cfg.domain;
  const TimeGrid grid = cfg.time_grid();
  LeapfrogIntegrator fields(dom, cfg.consts, cfg.source, cfg.maxwell_params(), cfg.initial.d0,
                            cfg.initial.b0);
  HeatSolver heat(dom, cfg.consts.kappa, cfg.heat_params());
  NodalField theta = cfg.initial.theta0;
  NodalField sigma(dom);
  CoupledResult result;
  result.cg_iterations.reserve(std::size_t(grid.steps));

  for (int n = 0; n < grid.steps; ++n)
  {
    const double e_n = fields.begin_step();
    if (observer)
    {
      observer(n, fields.synchronized_state(), theta);
    }
    try
    {
      result.cg_iterations.push_back(heat.step(theta, heat_source(n, e_n)).iterations);
    }
    catch (const NumericError &err)
    {
      throw NumericError(std::string(err.what()) + " (heat step " + std::to_string(n) + ")", n,
                         err.residual_history());
    }
    sigma_field(cfg.model, theta, dom, sigma);
    fields.finish_step(sigma);
  }
  fields.begin_step();
  if (observer)
  {
    observer(grid.steps, fields.synchronized_state(), theta);
  }

  result.fields = fields.synchronized_state();
  if (grid.steps == 0)
  {
    result.fields.b = cfg.initial.b0;
  }
  result.theta = ThetaField{std::move(theta), grid.steps * grid.dt};
  result.energy.samples = fields.energies();
  result.energy.dt = grid.dt;
  result.energy.bound_n = gronwall_bound(cfg).n;
  result.steps = fields.diagnostics();
  return result;
}

}  // namespace

CoupledResult run_monolithic(const CoupledConfig &cfg, const CoupledObserver &observer)
{
  cfg.validate();
  return co_advance(cfg, [](int, double e_n) { return e_n; }, observer);
}

CoupledResult apply_picard_t(const EnergyTrajectory &e_in, const CoupledConfig &cfg,
                             const CoupledObserver &observer)
{
  const TimeGrid grid = cfg.time_grid();
  if (e_in.samples.size() != std::size_t(grid.steps) + 1)
  {
    throw ConfigError("energy trajectory does not match the time grid (" +
                      std::to_string(e_in.samples.size()) + " samples, expected " +
                      std::to_string(grid.steps + 1) + ")");
  }
  return co_advance(cfg, [&](int n, double) { return e_in.samples[std::size_t(n)]; }, observer);
}

EnergyTrajectory picard_t(const EnergyTrajectory &e_in, const CoupledConfig &cfg)
{
  return apply_picard_t(e_in, cfg).energy;
}

CoupledResult picard_run(const CoupledConfig &cfg, const CoupledObserver &observer)
{
  cfg.validate();
  PicardReport report;
  EnergyTrajectory current = initial_energy_guess(cfg);
  const double bound = current.bound_n;

  for (int k = 0; k < cfg.picard_max_iter; ++k)
  {
    if (!current.in_k())
    {
      ++report.outside_k;
    }
    report.iterates.push_back(current);
    CoupledResult applied = apply_picard_t(current, cfg);
    ++report.applications;
    const double delta = sup_distance(applied.energy, current);
    if (!report.deltas.empty())
    {
      const double prev = report.deltas.back();
      report.contraction_ratios.push_back(prev > 0.0 ? delta / prev : 0.0);
    }
    report.deltas.push_back(delta);
    if (delta <= cfg.picard_tol * std::max(1.0, current.max_abs()))
    {
      report.converged = true;
      if (observer)
      {
        // Replay the final application for the caller's snapshots.
        applied = apply_picard_t(current, cfg, observer);
      }
      applied.energy.bound_n = bound;
      applied.picard = std::move(report);
      return applied;
    }
    current = std::move(applied.energy);
    current.bound_n = bound;
  }

  std::ostringstream msg;
  msg.precision(3);
  msg << "Picard iteration did not converge in " << cfg.picard_max_iter
      << " applications (last delta " << report.deltas.back() << ")";
  throw NonConvergenceError(msg.str(), report.deltas);
}

CoupledResult run(const CoupledConfig &cfg, const CoupledObserver &observer)
{
  return cfg.mode == SolverMode::picard ? picard_run(cfg, observer) : run_monolithic(cfg, observer);
}

double continuity_probe(const CoupledConfig &cfg, double delta, const EnergyTrajectory &baseline)
{
  if (!(delta > 0.0))
  {
    throw ConfigError("continuity probe needs delta > 0");
  }
  const TimeGrid grid = cfg.time_grid();
  const double pi = std::acos(-1.0);
  EnergyTrajectory perturbed = baseline;
  double p_sup = 0.0;
  for (int n = 0; n <= grid.steps; ++n)
  {
    const double s = grid.steps > 0 ? std::sin(pi * n / grid.steps) : 0.0;
    const double p = delta * s * s;
    perturbed.samples[std::size_t(n)] += p;
    p_sup = std::max(p_sup, p);
  }
  if (p_sup == 0.0)
  {
    return 0.0;
  }
  const EnergyTrajectory base_image = picard_t(baseline, cfg);
  const EnergyTrajectory image = picard_t(perturbed, cfg);
  return sup_distance(image, base_image) / p_sup;
}

}  // namespace maxheat
