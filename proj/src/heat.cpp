#include "maxheat/heat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxheat/errors.hpp"
#include "maxheat/parallel.hpp"

namespace maxheat
{

void HeatStepParams::validate() const
{
  if (!(dt > 0.0) || !std::isfinite(dt))
  {
    throw ConfigError("heat dt must be positive and finite");
  }
  if (!(cg_tol > 0.0) || cg_tol > 1e-6)
  {
    throw ConfigError("solver.cg_tol must lie in (0, 1e-6]");
  }
  if (cg_max_iter < 0)
  {
    throw ConfigError("solver.cg_max_iter must be >= 0");
  }
}

HeatSolver::HeatSolver(const Domain &dom, double kappa, const HeatStepParams &params)
  : dom_(dom), kappa_(kappa), params_(params), rhs_(dom), r_(dom), p_(dom), ap_(dom), previous_(dom), increment_(dom)
{
  params_.validate();
  if (!(kappa > 0.0) || !std::isfinite(kappa))
  {
    throw ConfigError("constants.kappa must be positive and finite");
  }
}

int HeatSolver::max_iterations() const
{
  return params_.cg_max_iter > 0 ? params_.cg_max_iter : 10 * std::max(dom_.nx(), dom_.ny());
}

void HeatSolver::apply(const NodalField &x, double shift, double scale, NodalField &out) const
{
  const double c = kappa_ * scale / (dom_.h() * dom_.h());
  const int cols = dom_.node_cols();
  const std::size_t stride = std::size_t(cols);
  for_rows(dom_.node_rows(), [&](int j) {
    for (int i = 0; i < cols; ++i)
    {
      const std::size_t k = dom_.node(i, j);
      if (!dom_.interior(k))
      {
        out[k] = 0.0;
        continue;
      }
      const double lap = x[k - 1] + x[k + 1] + x[k - stride] + x[k + stride] - 4.0 * x[k];
      out[k] = shift * x[k] - c * lap;
    }
  });
}

double HeatSolver::dot(const NodalField &a, const NodalField &b) const
{
  return reduce_rows(dom_.node_rows(), dom_.node_cols(), [&](int i, int j) {
    const std::size_t k = dom_.node(i, j);
    return a[k] * b[k];
  });
}

CgStats HeatSolver::solve(NodalField &x, const NodalField &rhs, double shift, double scale)
{
  CgStats stats;
  const double b_norm = std::sqrt(dot(rhs, rhs));
  if (b_norm == 0.0)
  {
    std::fill(x.values.begin(), x.values.end(), 0.0);
    return stats;
  }
  apply(x, shift, scale, ap_);
  for (std::size_t k = 0; k < x.size(); ++k)
  {
    r_[k] = rhs[k] - ap_[k];
    p_[k] = r_[k];
  }
  double rr = dot(r_, r_);
  std::vector<double> history{std::sqrt(rr) / b_norm};
  const double target = params_.cg_tol * b_norm;
  const int max_iter = max_iterations();
  while (std::sqrt(rr) > target)
  {
    if (stats.iterations >= max_iter || !std::isfinite(rr))
    {
      throw NumericError("conjugate gradients did not reach relative residual " +
                             std::to_string(params_.cg_tol) + " in " + std::to_string(max_iter) +
                             " iterations",
                         -1, history);
    }
    apply(p_, shift, scale, ap_);
    const double alpha = rr / dot(p_, ap_);
    for (std::size_t k = 0; k < x.size(); ++k)
    {
      x[k] += alpha * p_[k];
      r_[k] -= alpha * ap_[k];
    }
    const double rr_new = dot(r_, r_);
    const double beta = rr_new / rr;
    for (std::size_t k = 0; k < x.size(); ++k)
    {
      p_[k] = r_[k] + beta * p_[k];
    }
    rr = rr_new;
    ++stats.iterations;
    history.push_back(std::sqrt(rr) / b_norm);
  }
  stats.relative_residual = std::sqrt(rr) / b_norm;
  return stats;
}

CgStats HeatSolver::step(NodalField &theta, double f)
{
  if (!std::isfinite(f))
  {
    throw NumericError("non-finite heat source");
  }
  const double df = params_.dt * f;
  for (std::size_t k = 0; k < theta.size(); ++k)
  {
    rhs_[k] = dom_.interior(k) ? theta[k] + df : 0.0;
  }
  apply_dirichlet(theta, dom_);
  // Linear extrapolation from the previous increment as the initial guess.
  if (have_increment_)
  {
    for (std::size_t k = 0; k < theta.size(); ++k)
    {
      previous_[k] = theta[k];
      theta[k] += increment_[k];
    }
  }
  else
  {
    previous_ = theta;
  }
  const CgStats stats = solve(theta, rhs_, 1.0, params_.dt);
  for (std::size_t k = 0; k < theta.size(); ++k)
  {
    increment_[k] = theta[k] - previous_[k];
  }
  have_increment_ = true;
  return stats;
}

CgStats HeatSolver::solve_steady(NodalField &theta, double f)
{
  for (std::size_t k = 0; k < theta.size(); ++k)
  {
    rhs_[k] = dom_.interior(k) ? f : 0.0;
  }
  apply_dirichlet(theta, dom_);
  return solve(theta, rhs_, 0.0, 1.0);
}

ThetaField heat_step(const ThetaField &theta, double f, const HeatStepParams &params, double kappa,
                     const Domain &dom)
{
  HeatSolver solver(dom, kappa, params);
  ThetaField next = theta;
  solver.step(next.theta, f);
  next.t = theta.t + params.dt;
  return next;
}

std::vector<ThetaField> solve_heat_trajectory(const NodalField &theta0, const EnergyTrajectory &energy,
                                              const HeatStepParams &params, double kappa,
                                              const Domain &dom, int stride)
{
  if (energy.samples.empty())
  {
    throw ConfigError("energy trajectory is empty");
  }
  stride = std::max(stride, 1);
  HeatSolver solver(dom, kappa, params);
  ThetaField current{theta0, 0.0};
  apply_dirichlet(current.theta, dom);
  std::vector<ThetaField> levels{current};
  const int steps = static_cast<int>(energy.samples.size()) - 1;
  for (int n = 0; n < steps; ++n)
  {
    solver.step(current.theta, energy.samples[std::size_t(n)]);
    current.t = (n + 1) * params.dt;
    if ((n + 1) % stride == 0 || n + 1 == steps)
    {
      levels.push_back(current);
    }
  }
  return levels;
}

double h1_seminorm(const NodalField &theta, const Domain &dom)
{
  const double sx = reduce_rows(dom.node_rows(), dom.nx(), [&](int i, int j) {
    const double d = theta[dom.node(i + 1, j)] - theta[dom.node(i, j)];
    return d * d;
  });
  const double sy = reduce_rows(dom.ny(), dom.node_cols(), [&](int i, int j) {
    const double d = theta[dom.node(i, j + 1)] - theta[dom.node(i, j)];
    return d * d;
  });
  // (d/h)^2 h^2 = d^2
  return std::sqrt(sx + sy);
}

}  // namespace maxheat
