#pragma once

#include <string>
#include <vector>

// Reference solutions used as ground truth in tests and the verify command.
// Nothing here calls into the field or heat solvers.
namespace maxheat::oracle
{

struct Vec2
{
  double x = 0.0;
  double y = 0.0;
};

// Curl-free field y/r^2 i - x/r^2 j on the annulus 1 < r^2 < 2. Throws
// std::domain_error outside.
Vec2 annulus_b0(double x, double y);

// Same formula without the domain check, for sampling staircase faces that
// straddle the boundary. Undefined at the origin.
Vec2 annulus_b0_unchecked(double x, double y);

// Nonlocal heat source produced by B0 alone: 1/2 (1/mu) int |B0|^2 = pi log2 / (2 mu).
double annulus_energy(double mu);

//
// Steady temperature on the annulus heated by the constant source E:
//   kappa (1/r) (r theta')' = -E,   theta(1) = theta(sqrt2) = 0.
// Solved by second-order finite differences and a tridiagonal sweep.
//
struct RadialSteadyState
{
  std::vector<double> r;
  std::vector<double> theta;
  double e_const = 0.0;
  double kappa = 1.0;

  // Linear interpolation in r; zero outside [1, sqrt2].
  double at(double radius) const;

  // Max residual of the scaled discrete BVP
  //   r_{i+1/2}(t_{i+1} - t_i) - r_{i-1/2}(t_i - t_{i-1}) + (E/kappa) r_i dr^2.
  double discrete_residual() const;

  void write_csv(const std::string &path) const;
};

RadialSteadyState radial_steady_theta(double kappa, double mu, int n_r);

// theta(r) = a (r^2 - 1) + b log r with a = -pi log2 / (8 kappa mu) and
// b = pi / (4 kappa mu), the exact solution of the same BVP.
double radial_closed_form(double r, double kappa, double mu);

// Exact solution of the five-point problem -L_h u = 1 on the unit square with
// n cells per side, evaluated at node (i, j), by discrete sine expansion.
double torsion_value(int i, int j, int n);

// u(1/2, 1/2) for -Lap u = 1 on (0,1)^2 from the 512 x 512 five-point system.
double square_torsion_center(int n = 512);

}  // namespace maxheat::oracle
