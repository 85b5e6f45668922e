#include "maxheat/maxwell.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "maxheat/errors.hpp"
#include "maxheat/parallel.hpp"

namespace maxheat
{

double cfl_limit(const Domain &dom, const PhysicalConstants &consts)
{
  return dom.h() * std::sqrt(consts.eps * consts.mu) / std::sqrt(2.0);
}

void check_cfl(const MaxwellStepParams &params, const Domain &dom, const PhysicalConstants &consts)
{
  if (!(params.cfl_safety > 0.0) || params.cfl_safety > 1.0)
  {
    throw ConfigError("cfl_safety must lie in (0, 1]");
  }
  const double limit = params.cfl_safety * cfl_limit(dom, consts);
  if (!(params.dt > 0.0) || !std::isfinite(params.dt))
  {
    throw ConfigError("time.dt must be positive and finite");
  }
  // Relative slack for a dt computed as exactly cfl_safety * limit.
  if (params.dt > limit * (1.0 + 1e-12))
  {
    throw ConfigError("time.dt = " + std::to_string(params.dt) + " violates the CFL limit " +
                      std::to_string(limit));
  }
}

TimeGrid make_time_grid(double t_final, double dt_requested)
{
  if (!(t_final >= 0.0) || !std::isfinite(t_final))
  {
    throw ConfigError("time.T_final must be finite and >= 0");
  }
  if (!(dt_requested > 0.0))
  {
    throw ConfigError("time.dt must be positive");
  }
  TimeGrid grid;
  if (t_final == 0.0)
  {
    grid.dt = dt_requested;
    return grid;
  }
  grid.steps = static_cast<int>(std::ceil(t_final / dt_requested - 1e-9));
  grid.steps = grid.steps < 1 ? 1 : grid.steps;
  grid.dt = t_final / grid.steps;
  return grid;
}

FaceField stagger_initial_b(const NodalField &d0, const FaceField &b0, double dt,
                            const PhysicalConstants &consts, const Domain &dom)
{
  FaceField b = curl_d(d0, dom);
  const double c = 0.5 * dt / consts.eps;
  for (std::size_t k = 0; k < b.x.size(); ++k)
  {
    b.x[k] = b0.x[k] + c * b.x[k];
  }
  for (std::size_t k = 0; k < b.y.size(); ++k)
  {
    b.y[k] = b0.y[k] + c * b.y[k];
  }
  return b;
}

namespace
{

void half_update_b(const NodalField &dz, const FaceField &b_prev, double dt,
                   const PhysicalConstants &consts, const Domain &dom, FaceField &curl,
                   FaceField &b_next)
{
  curl_d(dz, dom, curl);
  const double c = dt / consts.eps;
  b_next.x.resize(b_prev.x.size());
  b_next.y.resize(b_prev.y.size());
  for (std::size_t k = 0; k < b_prev.x.size(); ++k)
  {
    b_next.x[k] = b_prev.x[k] - c * curl.x[k];
  }
  for (std::size_t k = 0; k < b_prev.y.size(); ++k)
  {
    b_next.y[k] = b_prev.y[k] - c * curl.y[k];
  }
}

// D^{n+1} from D^n in place; `curl` holds curl_B(B^{n+1/2}), `g` is null for
// a zero source.
void update_d(NodalField &dz, const NodalField &curl, const NodalField &s, const NodalField *g,
              double dt, const PhysicalConstants &consts, const Domain &dom, long step)
{
  const double inv_mu = 1.0 / consts.mu;
  const double half_dt_over_eps = 0.5 * dt / consts.eps;
  const int cols = dom.node_cols();
  std::atomic<bool> singular{false};
  for_rows(dom.node_rows(), [&](int j) {
    for (int i = 0; i < cols; ++i)
    {
      const std::size_t k = dom.node(i, j);
      if (!dom.interior(k))
      {
        dz[k] = 0.0;
        continue;
      }
      const double alpha = s[k] * half_dt_over_eps;
      const double rhs = inv_mu * curl[k] + (g ? (*g)[k] : 0.0);
      const double denom = 1.0 + alpha;
      if (!(denom > 0.0))
      {
        singular.store(true, std::memory_order_relaxed);
      }
      dz[k] = ((1.0 - alpha) * dz[k] + dt * rhs) / denom;
    }
  });
  if (singular)
  {
    throw NumericError("conductivity too negative for the damping solve (1 + s dt / 2 eps <= 0)",
                       step);
  }
}

void require_finite(const NodalField &dz, long step)
{
  for (double v : dz.values)
  {
    if (!std::isfinite(v))
    {
      throw NumericError("non-finite electric induction at step " + std::to_string(step), step);
    }
  }
}

}  // namespace

FieldState maxwell_step(const FieldState &state, const NodalField &s, const SourceG &g,
                        const MaxwellStepParams &params, const PhysicalConstants &consts,
                        const Domain &dom)
{
  check_cfl(params, dom, consts);
  const long step = std::lround(state.t / params.dt);
  FieldState next;
  FaceField curl;
  half_update_b(state.dz, state.b, params.dt, consts, dom, curl, next.b);

  NodalField curl_nodes = curl_b(next.b, dom);
  next.dz = state.dz;
  NodalField g_half;
  const bool has_g = !g.is_zero();
  if (has_g)
  {
    g.sample(dom, state.t + 0.5 * params.dt, g_half);
  }
  update_d(next.dz, curl_nodes, s, has_g ? &g_half : nullptr, params.dt, consts, dom, step);
  require_finite(next.dz, step);
  next.t = state.t + params.dt;
  return next;
}

LeapfrogIntegrator::LeapfrogIntegrator(const Domain &dom, const PhysicalConstants &consts,
                                       const SourceG &g, const MaxwellStepParams &params,
                                       const NodalField &d0, const FaceField &b0)
  : dom_(dom), consts_(consts), g_(g), params_(params)
{
  consts_.validate();
  check_cfl(params_, dom_, consts_);
  for (std::size_t k = 0; k < d0.size(); ++k)
  {
    if (!dom_.interior(k) && d0[k] != 0.0)
    {
      throw ConfigError("initial Dz must vanish on boundary nodes");
    }
  }
  state_.dz = d0;
  state_.b = stagger_initial_b(d0, b0, params_.dt, consts_, dom_);
  state_.t = 0.0;
}

double LeapfrogIntegrator::begin_step()
{
  if (!begun_)
  {
    half_update_b(state_.dz, state_.b, params_.dt, consts_, dom_, curl_scratch_, b_next_);
    begun_ = true;
    const double e = synchronized_energy(state_.dz, state_.b, b_next_, dom_, consts_.eps, consts_.mu);
    if (!std::isfinite(e))
    {
      throw NumericError("non-finite energy at step " + std::to_string(n_), n_);
    }
    if (!diagnostics_.empty() && energies_.size() == diagnostics_.size())
    {
      StepDiagnostics &last = diagnostics_.back();
      last.residual = (e - energies_.back()) / params_.dt + last.dissipation - last.source_work;
    }
    energies_.push_back(e);
  }
  return energies_.back();
}

void LeapfrogIntegrator::finish_step(const NodalField &s)
{
  begin_step();
  curl_b(b_next_, dom_, curl_b_scratch_);
  const bool has_g = !g_.is_zero();
  if (has_g)
  {
    g_.sample(dom_, time() + 0.5 * params_.dt, g_scratch_);
  }
  d_prev_ = state_.dz;
  update_d(state_.dz, curl_b_scratch_, s, has_g ? &g_scratch_ : nullptr, params_.dt, consts_, dom_,
           n_);
  require_finite(state_.dz, n_);

  // Interval bookkeeping with D^{n+1/2} = (D^n + D^{n+1}) / 2.
  const auto w = dom_.node_weights();
  const NodalField &d_new = state_.dz;
  StepDiagnostics diag;
  diag.dissipation = reduce_rows(dom_.node_rows(), dom_.node_cols(), [&](int i, int j) {
                       const std::size_t k = dom_.node(i, j);
                       const double mid = 0.5 * (d_prev_[k] + d_new[k]);
                       return s[k] * mid * mid * w[k];
                     }) /
                     (consts_.eps * consts_.eps);
  if (has_g)
  {
    diag.source_work = reduce_rows(dom_.node_rows(), dom_.node_cols(), [&](int i, int j) {
                         const std::size_t k = dom_.node(i, j);
                         return g_scratch_[k] * 0.5 * (d_prev_[k] + d_new[k]) * w[k];
                       }) /
                       consts_.eps;
  }
  diagnostics_.push_back(diag);

  std::swap(state_.b, b_next_);
  ++n_;
  state_.t = n_ * params_.dt;
  begun_ = false;
}

FieldState LeapfrogIntegrator::synchronized_state() const
{
  if (!begun_)
  {
    throw std::logic_error("synchronized_state() requires begin_step() at the current level");
  }
  FieldState out;
  out.dz = state_.dz;
  out.t = state_.t;
  out.b.x.resize(b_next_.x.size());
  out.b.y.resize(b_next_.y.size());
  for (std::size_t k = 0; k < out.b.x.size(); ++k)
  {
    out.b.x[k] = 0.5 * (state_.b.x[k] + b_next_.x[k]);
  }
  for (std::size_t k = 0; k < out.b.y.size(); ++k)
  {
    out.b.y[k] = 0.5 * (state_.b.y[k] + b_next_.y[k]);
  }
  return out;
}

double LeapfrogIntegrator::staggered_energy() const
{
  if (!begun_)
  {
    throw std::logic_error("staggered_energy() requires begin_step() at the current level");
  }
  return maxheat::staggered_energy(state_.dz, state_.b, b_next_, dom_, consts_.eps, consts_.mu);
}

LinearRun run_linear(const NodalField &d0, const FaceField &b0, const ConductivitySchedule &s_of_n,
                     const SourceG &g, double t_final, const MaxwellStepParams &params,
                     const PhysicalConstants &consts, const Domain &dom,
                     const FieldObserver &observer)
{
  const TimeGrid grid = make_time_grid(t_final, params.dt);
  MaxwellStepParams step_params = params;
  step_params.dt = grid.dt;
  LeapfrogIntegrator integrator(dom, consts, g, step_params, d0, b0);
  for (int n = 0; n < grid.steps; ++n)
  {
    integrator.begin_step();
    if (observer)
    {
      observer(n, integrator.state());
    }
    integrator.finish_step(s_of_n(n));
  }
  integrator.begin_step();
  if (observer)
  {
    observer(grid.steps, integrator.state());
  }

  LinearRun run;
  run.final_state = integrator.synchronized_state();
  if (grid.steps == 0)
  {
    run.final_state.b = b0;
  }
  run.energy.samples = integrator.energies();
  run.energy.dt = grid.dt;
  run.steps = integrator.diagnostics();
  return run;
}

}  // namespace maxheat
