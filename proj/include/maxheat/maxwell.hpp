#pragma once

#include <functional>
#include <vector>

#include "maxheat/domain.hpp"
#include "maxheat/fields.hpp"
#include "maxheat/materials.hpp"

namespace maxheat
{

struct MaxwellStepParams
{
  double dt = 0.0;
  double cfl_safety = 0.9;
};

// Largest stable leapfrog step h sqrt(eps mu) / sqrt(2) for the 2D grid.
double cfl_limit(const Domain &dom, const PhysicalConstants &consts);

// Throws ConfigError when dt is not positive or exceeds cfl_safety * cfl_limit.
void check_cfl(const MaxwellStepParams &params, const Domain &dom, const PhysicalConstants &consts);

// Uniform time grid on [0, T]: the requested dt is shrunk so that an integer
// number of steps lands exactly on T.
struct TimeGrid
{
  int steps = 0;
  double dt = 0.0;
};
TimeGrid make_time_grid(double t_final, double dt_requested);

// B^{-1/2} = B^0 + (dt / 2 eps) curl_D(D^0), one backward half step of
// dB/dt = -(1/eps) curl_D(D).
FaceField stagger_initial_b(const NodalField &d0, const FaceField &b0, double dt,
                            const PhysicalConstants &consts, const Domain &dom);

// One leapfrog step from (D^n, B^{n-1/2}) at t^n to (D^{n+1}, B^{n+1/2}):
//
//   B^{n+1/2} = B^{n-1/2} - (dt/eps) curl_D(D^n)
//   (D^{n+1} - D^n)/dt + (s/eps)(D^{n+1} + D^n)/2 = (1/mu) curl_B(B^{n+1/2}) + G(t^{n+1/2})
//
// The damping term is solved pointwise in closed form. Throws ConfigError on a
// CFL violation and NumericError if the result is not finite.
FieldState maxwell_step(const FieldState &state, const NodalField &s, const SourceG &g,
                        const MaxwellStepParams &params, const PhysicalConstants &consts,
                        const Domain &dom);

// Per-interval energy bookkeeping for step n -> n+1.
struct StepDiagnostics
{
  double dissipation = 0.0;  // (1/eps^2) <s D^{n+1/2}, D^{n+1/2}>
  double source_work = 0.0;  // (1/eps) <G^{n+1/2}, D^{n+1/2}>
  // (E^{n+1} - E^n)/dt + dissipation - source_work, with E the synchronized
  // energy. Zero up to O(dt^2).
  double residual = 0.0;
};

//
// Stateful leapfrog driver shared by the linear and the coupled solvers.
// Each step is split so the caller can inspect E^n before choosing the
// conductivity for the D update:
//
//   E_n = begin_step();    // B^{n+1/2}, synchronized E^n
//   finish_step(s_n);      // D^{n+1}
//
class LeapfrogIntegrator
{
public:
  LeapfrogIntegrator(const Domain &dom, const PhysicalConstants &consts, const SourceG &g,
                     const MaxwellStepParams &params, const NodalField &d0, const FaceField &b0);

  int step_index() const { return n_; }
  double time() const { return n_ * params_.dt; }

  double begin_step();
  void finish_step(const NodalField &s);

  // Leapfrog state: D^n and B^{n-1/2}.
  const FieldState &state() const { return state_; }

  // D^n with B averaged to t^n. Requires begin_step() for the current level.
  FieldState synchronized_state() const;

  // staggered_energy(D^n, B^{n-1/2}, B^{n+1/2}). Requires begin_step().
  double staggered_energy() const;

  // Energies and per-interval diagnostics so far. After begin_step() at level
  // n, energies() holds E^0..E^n and diagnostics() the intervals 0..n-1.
  const std::vector<double> &energies() const { return energies_; }
  const std::vector<StepDiagnostics> &diagnostics() const { return diagnostics_; }

private:
  const Domain &dom_;
  PhysicalConstants consts_;
  const SourceG &g_;
  MaxwellStepParams params_;

  int n_ = 0;
  bool begun_ = false;
  FieldState state_;
  FaceField b_next_;
  FaceField curl_scratch_;
  NodalField curl_b_scratch_;
  NodalField g_scratch_;
  NodalField d_prev_;
  std::vector<double> energies_;
  std::vector<StepDiagnostics> diagnostics_;
};

struct LinearRun
{
  FieldState final_state;  // synchronized at T
  EnergyTrajectory energy;
  std::vector<StepDiagnostics> steps;
};

// Conductivity field to use for the D update of step n.
using ConductivitySchedule = std::function<const NodalField &(int n)>;

// Called at every level n = 0..steps with the leapfrog state (D^n, B^{n-1/2}).
using FieldObserver = std::function<void(int n, const FieldState &)>;

// Linear problem with prescribed conductivity: loops maxwell steps over the
// time grid of (t_final, params.dt) and records E(t_n).
LinearRun run_linear(const NodalField &d0, const FaceField &b0, const ConductivitySchedule &s_of_n,
                     const SourceG &g, double t_final, const MaxwellStepParams &params,
                     const PhysicalConstants &consts, const Domain &dom,
                     const FieldObserver &observer = {});

}  // namespace maxheat
