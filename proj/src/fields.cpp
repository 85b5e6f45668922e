#include "maxheat/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maxheat/parallel.hpp"

namespace maxheat
{

void apply_dirichlet(NodalField &field, const Domain &dom)
{
  const auto mask = dom.interior_mask();
  for (std::size_t k = 0; k < field.size(); ++k)
  {
    if (!mask[k])
    {
      field[k] = 0.0;
    }
  }
}

void curl_b(const FaceField &b, const Domain &dom, NodalField &out)
{
  out.values.resize(dom.node_count());
  const double inv_h = 1.0 / dom.h();
  const int cols = dom.node_cols();
  for_rows(dom.node_rows(), [&](int j) {
    for (int i = 0; i < cols; ++i)
    {
      const std::size_t k = dom.node(i, j);
      if (!dom.interior(k))
      {
        out[k] = 0.0;
        continue;
      }
      const double dby = b.y[dom.by(i, j)] - b.y[dom.by(i - 1, j)];
      const double dbx = b.x[dom.bx(i, j)] - b.x[dom.bx(i, j - 1)];
      out[k] = dby * inv_h - dbx * inv_h;
    }
  });
}

NodalField curl_b(const FaceField &b, const Domain &dom)
{
  NodalField out(dom);
  curl_b(b, dom, out);
  return out;
}

void curl_d(const NodalField &dz, const Domain &dom, FaceField &out)
{
  out.x.resize(dom.bx_count());
  out.y.resize(dom.by_count());
  const double inv_h = 1.0 / dom.h();
  const int cols = dom.node_cols();
  const int nx = dom.nx();
  for_rows(dom.ny(), [&](int j) {
    for (int i = 0; i < cols; ++i)
    {
      out.x[dom.bx(i, j)] = (dz[dom.node(i, j + 1)] - dz[dom.node(i, j)]) * inv_h;
    }
  });
  for_rows(dom.node_rows(), [&](int j) {
    for (int i = 0; i < nx; ++i)
    {
      out.y[dom.by(i, j)] = -(dz[dom.node(i + 1, j)] - dz[dom.node(i, j)]) * inv_h;
    }
  });
}

FaceField curl_d(const NodalField &dz, const Domain &dom)
{
  FaceField out(dom);
  curl_d(dz, dom, out);
  return out;
}

double integrate_nodal(std::span<const double> field, const Domain &dom)
{
  const auto w = dom.node_weights();
  return reduce_rows(dom.node_rows(), dom.node_cols(), [&](int i, int j) {
    const std::size_t k = dom.node(i, j);
    return field[k] * w[k];
  });
}

double integrate_nodal(const NodalField &field, const Domain &dom)
{
  return integrate_nodal(std::span<const double>(field.values), dom);
}

double nodal_inner(const NodalField &a, const NodalField &b, const Domain &dom)
{
  const auto w = dom.node_weights();
  return reduce_rows(dom.node_rows(), dom.node_cols(), [&](int i, int j) {
    const std::size_t k = dom.node(i, j);
    return a[k] * b[k] * w[k];
  });
}

double face_inner(const FaceField &a, const FaceField &b, const Domain &dom)
{
  const auto wx = dom.bx_weights();
  const auto wy = dom.by_weights();
  const double sx = reduce_rows(dom.ny(), dom.node_cols(), [&](int i, int j) {
    const std::size_t k = dom.bx(i, j);
    return a.x[k] * b.x[k] * wx[k];
  });
  const double sy = reduce_rows(dom.node_rows(), dom.nx(), [&](int i, int j) {
    const std::size_t k = dom.by(i, j);
    return a.y[k] * b.y[k] * wy[k];
  });
  return sx + sy;
}

double total_energy(const NodalField &dz, const FaceField &b, const Domain &dom, double eps,
                    double mu)
{
  return 0.5 * (nodal_inner(dz, dz, dom) / eps + face_inner(b, b, dom) / mu);
}

double total_energy(const FieldState &state, const Domain &dom, double eps, double mu)
{
  return total_energy(state.dz, state.b, dom, eps, mu);
}

double staggered_energy(const NodalField &dz, const FaceField &b_prev, const FaceField &b_next,
                        const Domain &dom, double eps, double mu)
{
  return 0.5 * (nodal_inner(dz, dz, dom) / eps + face_inner(b_prev, b_next, dom) / mu);
}

double synchronized_energy(const NodalField &dz, const FaceField &b_prev, const FaceField &b_next,
                           const Domain &dom, double eps, double mu)
{
  FaceField mid(dom);
  for (std::size_t k = 0; k < mid.x.size(); ++k)
  {
    mid.x[k] = 0.5 * (b_prev.x[k] + b_next.x[k]);
  }
  for (std::size_t k = 0; k < mid.y.size(); ++k)
  {
    mid.y[k] = 0.5 * (b_prev.y[k] + b_next.y[k]);
  }
  return total_energy(dz, mid, dom, eps, mu);
}

}  // namespace maxheat

namespace maxheat
{

double EnergyTrajectory::max_abs() const
{
  double m = 0.0;
  for (double v : samples)
  {
    m = std::max(m, std::abs(v));
  }
  return m;
}

double sup_distance(const EnergyTrajectory &a, const EnergyTrajectory &b)
{
  if (a.samples.size() != b.samples.size())
  {
    throw std::invalid_argument("energy trajectories have different lengths");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.samples.size(); ++k)
  {
    m = std::max(m, std::abs(a.samples[k] - b.samples[k]));
  }
  return m;
}

}  // namespace maxheat
