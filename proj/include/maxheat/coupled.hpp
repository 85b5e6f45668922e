#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "maxheat/domain.hpp"
#include "maxheat/fields.hpp"
#include "maxheat/heat.hpp"
#include "maxheat/materials.hpp"
#include "maxheat/maxwell.hpp"

namespace maxheat
{

enum class SolverMode
{
  monolithic,
  picard
};

struct InitialData
{
  NodalField d0;
  FaceField b0;
  NodalField theta0;
};

struct CoupledConfig
{
  Domain domain;
  PhysicalConstants consts;
  ConductivityModel model = ConductivityModel::constant(0.0);
  SourceG source;
  InitialData initial;

  double t_final = 0.0;
  double dt = 0.0;  // requested; shrunk to land on t_final
  double cfl_safety = 0.9;

  SolverMode mode = SolverMode::monolithic;
  double picard_tol = 1e-8;
  int picard_max_iter = 100;

  double cg_tol = 1e-10;
  int cg_max_iter = 0;

  // Boundary conditions of the initial data, CFL, constants, solver settings
  // and the conductivity bounds over operating_range(). Throws ConfigError.
  void validate() const;

  TimeGrid time_grid() const { return make_time_grid(t_final, dt); }
  MaxwellStepParams maxwell_params() const;
  HeatStepParams heat_params() const;
};

//
// A-priori bound on F(t) = (1/eps)|D|^2 + (1/mu)|B|^2 = 2 E(t). From the
// energy identity
//   F' = -(2/eps^2)(sigma D, D) + (2/eps)(G, D)
// with |sigma| <= sigma0 and 2|(G, D)|/eps <= |G|^2 + |D|^2/eps^2:
//   F' <= C1 + C2 F,   C1 = sup_t |G(t)|^2,   C2 = (2 sigma0 + 1) / eps,
// hence F(t) <= (F(0) + C1 t) exp(C2 t) =: N on [0, T]. Without a source the
// Young split is unnecessary and C2 = 2 sigma0 / eps. Since E = F/2, N also
// bounds E.
//
struct GronwallBound
{
  double n = 0.0;
  double f0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

GronwallBound gronwall_bound(const CoupledConfig &cfg);

// Temperature range over which the conductivity bounds must hold:
// 10 (|theta0|_inf + N T), the maximum principle bound on |theta| scaled by
// ten. Falls back to 1 when that is zero.
double operating_range(const CoupledConfig &cfg);

struct PicardReport
{
  std::vector<EnergyTrajectory> iterates;  // E^0, E^1, ...
  std::vector<double> deltas;              // |E^{k+1} - E^k|_inf
  std::vector<double> contraction_ratios;  // deltas[k+1] / deltas[k]
  bool converged = false;
  int applications = 0;       // number of evaluations of T
  int outside_k = 0;          // inputs of T exceeding the bound N
};

struct CoupledResult
{
  FieldState fields;  // D and B synchronized at T
  ThetaField theta;   // temperature at T
  EnergyTrajectory energy;
  std::vector<StepDiagnostics> steps;
  std::vector<int> cg_iterations;
  std::optional<PicardReport> picard;
};

// Called at each level n = 0..steps with the fields synchronized at t_n
// (B averaged over the two half steps) and theta^n.
using CoupledObserver =
    std::function<void(int n, const FieldState &fields, const NodalField &theta)>;

// Co-advances fields and temperature. Per step:
//   E^n = energy(D^n, B^n);  theta^{n+1} = heat_step(theta^n, E^n);
//   s^n = sigma(theta^{n+1});  (D, B)^{n+1} = maxwell_step(s^n).
CoupledResult run_monolithic(const CoupledConfig &cfg, const CoupledObserver &observer = {});

// The fixed-point operator on energy trajectories: heat with the prescribed
// E_in, evaluate sigma at the resulting temperature, solve the linear Maxwell
// problem and return its energy. Uses the same time indexing as
// run_monolithic, so a fixed point of T reproduces the monolithic solution.
EnergyTrajectory picard_t(const EnergyTrajectory &e_in, const CoupledConfig &cfg);

// picard_t() that also returns the reconstructed fields and temperature.
CoupledResult apply_picard_t(const EnergyTrajectory &e_in, const CoupledConfig &cfg,
                             const CoupledObserver &observer = {});

// E^0 = E(0) constant, E^{k+1} = T(E^k) until
// |E^{k+1} - E^k|_inf <= picard_tol max(1, |E^k|_inf). The returned solution
// is T applied to the converged E^k. Throws NonConvergenceError with the
// delta history after picard_max_iter applications.
CoupledResult picard_run(const CoupledConfig &cfg, const CoupledObserver &observer = {});

// Dispatches on cfg.mode.
CoupledResult run(const CoupledConfig &cfg, const CoupledObserver &observer = {});

// Empirical Lipschitz quotient |T(E + p) - T(E)|_inf / |p|_inf with
// p = delta sin^2(pi t / T).
double continuity_probe(const CoupledConfig &cfg, double delta, const EnergyTrajectory &baseline);

// Constant trajectory E(t) = E(0) on the time grid of cfg.
EnergyTrajectory initial_energy_guess(const CoupledConfig &cfg);

}  // namespace maxheat
