#pragma once

#include <vector>

#include "maxheat/domain.hpp"
#include "maxheat/fields.hpp"

namespace maxheat
{

struct HeatStepParams
{
  double dt = 0.0;
  double cg_tol = 1e-10;  // relative residual, in (0, 1e-6]
  int cg_max_iter = 0;    // 0 selects 10 * max(nx, ny)

  void validate() const;
};

struct CgStats
{
  int iterations = 0;
  double relative_residual = 0.0;
};

//
// Backward Euler for theta_t = kappa Lap(theta) + f with theta = 0 off the
// interior nodes. Each step solves
//
//   (I - kappa dt L_h) theta^{n+1} = theta^n + dt f
//
// with matrix-free unpreconditioned conjugate gradients; L_h is the five-point
// Laplacian. The source f is a single number applied uniformly on the
// interior (the nonlocal coupling).
//
class HeatSolver
{
public:
  HeatSolver(const Domain &dom, double kappa, const HeatStepParams &params);

  // Advances theta in place. Consecutive calls are assumed to continue one
  // trajectory: the last increment seeds the CG initial guess. Throws
  // NumericError carrying the residual history when CG fails to converge.
  CgStats step(NodalField &theta, double f);

  // Solves kappa L_h theta = -f (the steady state of step() for constant f).
  CgStats solve_steady(NodalField &theta, double f);

  const HeatStepParams &params() const { return params_; }
  int max_iterations() const;

private:
  // out = shift * x - kappa * scale * L_h x on interior nodes.
  void apply(const NodalField &x, double shift, double scale, NodalField &out) const;
  double dot(const NodalField &a, const NodalField &b) const;
  CgStats solve(NodalField &x, const NodalField &rhs, double shift, double scale);

  const Domain &dom_;
  double kappa_;
  HeatStepParams params_;
  NodalField rhs_, r_, p_, ap_;
  NodalField previous_, increment_;
  bool have_increment_ = false;
};

// Single step, functional form.
ThetaField heat_step(const ThetaField &theta, double f, const HeatStepParams &params, double kappa,
                     const Domain &dom);

// theta^{n+1} = heat_step(theta^n, E(t_n)) for n = 0..N-1, where N + 1 is the
// number of energy samples. Returns levels 0, stride, 2 stride, ... and always
// the last level.
std::vector<ThetaField> solve_heat_trajectory(const NodalField &theta0, const EnergyTrajectory &energy,
                                              const HeatStepParams &params, double kappa,
                                              const Domain &dom, int stride = 1);

// Discrete H^1_0 seminorm sqrt(sum over faces of (difference / h)^2 h^2).
double h1_seminorm(const NodalField &theta, const Domain &dom);

}  // namespace maxheat
