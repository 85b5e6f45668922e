#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxheat/domain.hpp"

namespace maxheat
{

// Scalar field on grid nodes (Dz, theta, conductivity, sources).
struct NodalField
{
  std::vector<double> values;

  NodalField() = default;
  explicit NodalField(const Domain &dom, double fill = 0.0) : values(dom.node_count(), fill) {}

  double &operator[](std::size_t k) { return values[k]; }
  double operator[](std::size_t k) const { return values[k]; }
  std::size_t size() const { return values.size(); }

  friend bool operator==(const NodalField &, const NodalField &) = default;
};

// In-plane vector field on the staggered faces.
struct FaceField
{
  std::vector<double> x;  // Bx at (i, j + 1/2)
  std::vector<double> y;  // By at (i + 1/2, j)

  FaceField() = default;
  explicit FaceField(const Domain &dom) : x(dom.bx_count(), 0.0), y(dom.by_count(), 0.0) {}

  friend bool operator==(const FaceField &, const FaceField &) = default;
};

// Electromagnetic unknowns. Inside the leapfrog integrator `b` lags `dz` by
// half a step: dz is at t, b at t - dt/2. For initial data both are at t.
struct FieldState
{
  NodalField dz;
  FaceField b;
  double t = 0.0;

  FieldState() = default;
  explicit FieldState(const Domain &dom) : dz(dom), b(dom) {}
};

// Temperature on the nodes, zero on every non-interior node.
struct ThetaField
{
  NodalField theta;
  double t = 0.0;
};

// Zero every non-interior node.
void apply_dirichlet(NodalField &field, const Domain &dom);

// Scalar curl of the face field at the nodes:
//   (By(i+1/2,j) - By(i-1/2,j))/h - (Bx(i,j+1/2) - Bx(i,j-1/2))/h
// on interior nodes, zero elsewhere.
NodalField curl_b(const FaceField &b, const Domain &dom);
void curl_b(const FaceField &b, const Domain &dom, NodalField &out);

// Vector curl of the out-of-plane scalar at the faces:
//   x-face (i, j+1/2):  (Dz(i,j+1) - Dz(i,j))/h
//   y-face (i+1/2, j): -(Dz(i+1,j) - Dz(i,j))/h
FaceField curl_d(const NodalField &dz, const Domain &dom);
void curl_d(const NodalField &dz, const Domain &dom, FaceField &out);

// Quadratures with fixed summation order (see reduce_rows).
double integrate_nodal(const NodalField &field, const Domain &dom);
double integrate_nodal(std::span<const double> field, const Domain &dom);
double nodal_inner(const NodalField &a, const NodalField &b, const Domain &dom);
double face_inner(const FaceField &a, const FaceField &b, const Domain &dom);

// 1/2 [ (1/eps) |Dz|^2 + (1/mu) |B|^2 ] with B taken as stored.
double total_energy(const FieldState &state, const Domain &dom, double eps, double mu);
double total_energy(const NodalField &dz, const FaceField &b, const Domain &dom, double eps,
                    double mu);

// Quadratic form conserved exactly by leapfrog without damping or source:
//   1/2 [ (1/eps) |D^n|^2 + (1/mu) <B^{n-1/2}, B^{n+1/2}> ].
double staggered_energy(const NodalField &dz, const FaceField &b_prev, const FaceField &b_next,
                        const Domain &dom, double eps, double mu);

// Energy at integer time level n with B^n = (B^{n-1/2} + B^{n+1/2}) / 2.
// Differs from staggered_energy by (1/8mu) |B^{n+1/2} - B^{n-1/2}|^2 = O(dt^2).
double synchronized_energy(const NodalField &dz, const FaceField &b_prev, const FaceField &b_next,
                           const Domain &dom, double eps, double mu);

}  // namespace maxheat

namespace maxheat
{

// E(t_n) on the uniform time grid t_n = n dt, n = 0..steps.
struct EnergyTrajectory
{
  std::vector<double> samples;
  double dt = 0.0;
  // A-priori bound defining the admissible set K = { |E| <= bound_n }.
  double bound_n = 0.0;

  double max_abs() const;
  bool in_k() const { return max_abs() <= bound_n; }
};

// sup_n |a_n - b_n|; the trajectories must have equal length.
double sup_distance(const EnergyTrajectory &a, const EnergyTrajectory &b);

}  // namespace maxheat
