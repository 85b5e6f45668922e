#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "maxheat/domain.hpp"
#include "maxheat/fields.hpp"

namespace testing
{

inline const double kPi = std::acos(-1.0);

inline maxheat::NodalField random_nodal(const maxheat::Domain &dom, std::mt19937_64 &rng,
                                        bool clean = true)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  maxheat::NodalField f(dom);
  for (auto &v : f.values)
  {
    v = u(rng);
  }
  if (clean)
  {
    maxheat::apply_dirichlet(f, dom);
  }
  return f;
}

inline maxheat::FaceField random_faces(const maxheat::Domain &dom, std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  maxheat::FaceField b(dom);
  for (auto &v : b.x)
  {
    v = u(rng);
  }
  for (auto &v : b.y)
  {
    v = u(rng);
  }
  return b;
}

inline double max_abs(const std::vector<double> &v)
{
  double m = 0.0;
  for (double x : v)
  {
    m = std::max(m, std::abs(x));
  }
  return m;
}

inline double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b)
{
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
  {
    m = std::max(m, std::abs(a[k] - b[k]));
  }
  return m;
}

inline bool all_zero(const std::vector<double> &v)
{
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

}  // namespace testing
