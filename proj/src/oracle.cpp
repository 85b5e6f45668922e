#include "maxheat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "maxheat/errors.hpp"

namespace maxheat::oracle
{

namespace
{

const double kPi = std::acos(-1.0);

}  // namespace

Vec2 annulus_b0_unchecked(double x, double y)
{
  const double r2 = x * x + y * y;
  return {y / r2, -x / r2};
}

Vec2 annulus_b0(double x, double y)
{
  const double r2 = x * x + y * y;
  if (!(r2 > 1.0 && r2 < 2.0))
  {
    throw std::domain_error("annulus_b0 evaluated outside 1 < x^2 + y^2 < 2");
  }
  return annulus_b0_unchecked(x, y);
}

double annulus_energy(double mu) { return kPi * std::log(2.0) / (2.0 * mu); }

double radial_closed_form(double r, double kappa, double mu)
{
  const double a = -kPi * std::log(2.0) / (8.0 * kappa * mu);
  const double b = kPi / (4.0 * kappa * mu);
  return a * (r * r - 1.0) + b * std::log(r);
}

RadialSteadyState radial_steady_theta(double kappa, double mu, int n_r)
{
  if (n_r < 100)
  {
    throw ConfigError("radial oracle needs at least 100 points");
  }
  RadialSteadyState out;
  out.kappa = kappa;
  out.e_const = annulus_energy(mu);
  const double r0 = 1.0, r1 = std::sqrt(2.0);
  const int cells = n_r - 1;
  const double dr = (r1 - r0) / cells;
  out.r.resize(std::size_t(n_r));
  for (int i = 0; i < n_r; ++i)
  {
    out.r[std::size_t(i)] = i + 1 == n_r ? r1 : r0 + dr * i;
  }
  out.theta.assign(std::size_t(n_r), 0.0);

  // Unknowns 1..n_r-2: lower t_{i-1}, diag t_i, upper t_{i+1}.
  const std::size_t m = std::size_t(n_r) - 2;
  std::vector<double> lower(m), diag(m), upper(m), rhs(m);
  const double q = out.e_const / kappa * dr * dr;
  for (std::size_t k = 0; k < m; ++k)
  {
    const double ri = out.r[k + 1];
    const double rm = ri - 0.5 * dr, rp = ri + 0.5 * dr;
    lower[k] = rm;
    diag[k] = -(rm + rp);
    upper[k] = rp;
    rhs[k] = -q * ri;
  }
  // Thomas algorithm.
  for (std::size_t k = 1; k < m; ++k)
  {
    const double w = lower[k] / diag[k - 1];
    diag[k] -= w * upper[k - 1];
    rhs[k] -= w * rhs[k - 1];
  }
  std::vector<double> sol(m);
  sol[m - 1] = rhs[m - 1] / diag[m - 1];
  for (std::size_t k = m - 1; k-- > 0;)
  {
    sol[k] = (rhs[k] - upper[k] * sol[k + 1]) / diag[k];
  }
  std::copy(sol.begin(), sol.end(), out.theta.begin() + 1);
  return out;
}

double RadialSteadyState::at(double radius) const
{
  if (radius <= r.front() || radius >= r.back())
  {
    return 0.0;
  }
  const auto it = std::upper_bound(r.begin(), r.end(), radius);
  const std::size_t k = std::size_t(it - r.begin());
  const double w = (radius - r[k - 1]) / (r[k] - r[k - 1]);
  return (1.0 - w) * theta[k - 1] + w * theta[k];
}

double RadialSteadyState::discrete_residual() const
{
  const double dr = r[1] - r[0];
  const double q = e_const / kappa * dr * dr;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < r.size(); ++i)
  {
    const double rm = r[i] - 0.5 * dr, rp = r[i] + 0.5 * dr;
    const double res = rp * (theta[i + 1] - theta[i]) - rm * (theta[i] - theta[i - 1]) + q * r[i];
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

void RadialSteadyState::write_csv(const std::string &path) const
{
  std::ofstream out(path);
  if (!out)
  {
    throw ConfigError("cannot write " + path);
  }
  out << std::setprecision(17) << "r,theta\n";
  for (std::size_t i = 0; i < r.size(); ++i)
  {
    out << r[i] << ',' << theta[i] << '\n';
  }
}

double torsion_value(int i, int j, int n)
{
  if (n < 2 || i < 0 || j < 0 || i > n || j > n)
  {
    throw std::invalid_argument("torsion_value: node outside the grid");
  }
  const double h = 1.0 / n;
  // Discrete sine coefficients of the constant 1: (2/n) cot(k pi / 2n), odd k.
  std::vector<double> coef(std::size_t(n), 0.0), eig(std::size_t(n), 0.0), sx(std::size_t(n), 0.0),
      sy(std::size_t(n), 0.0);
  for (int k = 1; k < n; k += 2)
  {
    const double half_angle = k * kPi / (2.0 * n);
    coef[std::size_t(k)] = 2.0 / n / std::tan(half_angle);
    const double s = std::sin(half_angle);
    eig[std::size_t(k)] = 4.0 / (h * h) * s * s;
    sx[std::size_t(k)] = std::sin(k * kPi * i / n);
    sy[std::size_t(k)] = std::sin(k * kPi * j / n);
  }
  double u = 0.0;
  for (int k = 1; k < n; k += 2)
  {
    double row = 0.0;
    for (int l = 1; l < n; l += 2)
    {
      row += coef[std::size_t(l)] * sy[std::size_t(l)] / (eig[std::size_t(k)] + eig[std::size_t(l)]);
    }
    u += coef[std::size_t(k)] * sx[std::size_t(k)] * row;
  }
  return u;
}

double square_torsion_center(int n)
{
  if (n % 2 != 0)
  {
    throw std::invalid_argument("square_torsion_center needs an even grid");
  }
  return torsion_value(n / 2, n / 2, n);
}

}  // namespace maxheat::oracle
