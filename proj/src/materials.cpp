#include "maxheat/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "maxheat/errors.hpp"

namespace maxheat
{

namespace
{

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

double interpolate(const TabulatedSigma &t, double xi)
{
  if (xi <= t.xi.front())
  {
    return t.sigma.front();
  }
  if (xi >= t.xi.back())
  {
    return t.sigma.back();
  }
  const auto it = std::upper_bound(t.xi.begin(), t.xi.end(), xi);
  const std::size_t k = std::size_t(it - t.xi.begin());
  const double w = (xi - t.xi[k - 1]) / (t.xi[k] - t.xi[k - 1]);
  return (1.0 - w) * t.sigma[k - 1] + w * t.sigma[k];
}

void check_table(const TabulatedSigma &t)
{
  if (t.xi.size() < 2 || t.xi.size() != t.sigma.size())
  {
    throw ConfigError("tabulated conductivity needs at least two (xi, sigma) rows");
  }
  for (std::size_t k = 0; k < t.xi.size(); ++k)
  {
    if (!std::isfinite(t.xi[k]) || !std::isfinite(t.sigma[k]))
    {
      throw ConfigError("tabulated conductivity has a non-finite entry at row " + std::to_string(k));
    }
    if (k > 0 && !(t.xi[k] > t.xi[k - 1]))
    {
      throw ConfigError("tabulated conductivity xi must be strictly increasing (row " +
                        std::to_string(k) + ")");
    }
  }
}

}  // namespace

void PhysicalConstants::validate() const
{
  if (!positive_finite(eps))
  {
    throw ConfigError("constants.eps must be positive and finite");
  }
  if (!positive_finite(mu))
  {
    throw ConfigError("constants.mu must be positive and finite");
  }
  if (!positive_finite(kappa))
  {
    throw ConfigError("constants.kappa must be positive and finite");
  }
}

ConductivityModel::ConductivityModel(Law law, double sigma0, double sigma1)
  : law_(std::move(law)), sigma0_(sigma0), sigma1_(sigma1)
{
  if (!(sigma0 >= 0.0) || !(sigma1 >= 0.0) || !std::isfinite(sigma0) || !std::isfinite(sigma1))
  {
    throw ConfigError("conductivity.sigma0 and conductivity.sigma1 must be finite and >= 0");
  }
  std::visit(overloaded{
                 [](const ConstantSigma &c) {
                   if (!std::isfinite(c.value))
                   {
                     throw ConfigError("conductivity value must be finite");
                   }
                 },
                 [](const AffineClampedSigma &c) {
                   if (!std::isfinite(c.a) || !std::isfinite(c.b) || !std::isfinite(c.lo) ||
                       !std::isfinite(c.hi) || c.lo > c.hi)
                   {
                     throw ConfigError("affine_clamped conductivity needs finite a, b and lo <= hi");
                   }
                 },
                 [](const TabulatedSigma &t) { check_table(t); },
             },
             law_);
}

ConductivityModel ConductivityModel::constant(double value)
{
  return ConductivityModel(ConstantSigma{value}, std::abs(value), 0.0);
}

ConductivityModel ConductivityModel::affine_clamped(double a, double b, double lo, double hi)
{
  return ConductivityModel(AffineClampedSigma{a, b, lo, hi}, std::max(std::abs(lo), std::abs(hi)),
                           std::abs(b));
}

TabulatedSigma ConductivityModel::load_table(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open conductivity table: " + path);
  }
  TabulatedSigma table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    if (line.empty() || line[0] == '#')
    {
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double xi = 0.0, sigma = 0.0;
    if (!(fields >> xi >> sigma))
    {
      if (table.xi.empty() && line_no == 1)
      {
        continue;  // header
      }
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected two numbers");
    }
    table.xi.push_back(xi);
    table.sigma.push_back(sigma);
  }
  check_table(table);
  return table;
}

double ConductivityModel::operator()(double xi, double, double) const
{
  return std::visit(overloaded{
                        [](const ConstantSigma &c) { return c.value; },
                        [xi](const AffineClampedSigma &c) { return std::clamp(c.a + c.b * xi, c.lo, c.hi); },
                        [xi](const TabulatedSigma &t) { return interpolate(t, xi); },
                    },
                    law_);
}

bool ConductivityModel::temperature_independent() const
{
  return std::visit(overloaded{
                        [](const ConstantSigma &) { return true; },
                        [](const AffineClampedSigma &c) { return c.b == 0.0 || c.lo == c.hi; },
                        [](const TabulatedSigma &t) {
                          return std::all_of(t.sigma.begin(), t.sigma.end(),
                                             [&](double s) { return s == t.sigma.front(); });
                        },
                    },
                    law_);
}

BoundsCheck validate_bounds(const ConductivityModel &model, double theta_max, int samples)
{
  if (!(theta_max > 0.0) || !std::isfinite(theta_max) || samples < 2)
  {
    throw ConfigError("bound validation needs a positive finite operating range");
  }
  BoundsCheck check;
  const double value_limit = model.sigma0() * (1.0 + 1e-12);
  const double slope_limit = model.sigma1() * (1.0 + 1e-6);

  auto value_at = [&](double xi) {
    const double s = model(xi, 0.0, 0.0);
    check.max_abs_sigma = std::max(check.max_abs_sigma, std::abs(s));
    if (check.sigma0_ok && std::abs(s) > value_limit)
    {
      check.sigma0_ok = false;
      if (!check.offending_xi)
      {
        check.offending_xi = xi;
      }
    }
    return s;
  };
  auto slope = [&](double x0, double s0, double x1, double s1) {
    const double m = std::abs(s1 - s0) / (x1 - x0);
    check.max_abs_slope = std::max(check.max_abs_slope, m);
    if (check.sigma1_ok && m > slope_limit)
    {
      check.sigma1_ok = false;
      if (!check.offending_xi)
      {
        check.offending_xi = x0;
      }
    }
  };

  const double step = 2.0 * theta_max / (samples - 1);
  double prev_xi = -theta_max;
  double prev_s = value_at(prev_xi);
  for (int k = 1; k < samples; ++k)
  {
    const double xi = k + 1 == samples ? theta_max : -theta_max + step * k;
    const double s = value_at(xi);
    slope(prev_xi, prev_s, xi, s);
    prev_xi = xi;
    prev_s = s;
  }

  if (const auto *table = std::get_if<TabulatedSigma>(&model.law()))
  {
    // Dense sampling can step over a narrow table segment.
    for (std::size_t k = 0; k < table->xi.size(); ++k)
    {
      if (table->xi[k] < -theta_max || table->xi[k] > theta_max)
      {
        continue;
      }
      value_at(table->xi[k]);
      if (k + 1 < table->xi.size() && table->xi[k + 1] <= theta_max)
      {
        slope(table->xi[k], table->sigma[k], table->xi[k + 1], table->sigma[k + 1]);
      }
    }
  }
  return check;
}

void require_bounds(const ConductivityModel &model, double theta_max)
{
  const BoundsCheck check = validate_bounds(model, theta_max);
  if (check.ok())
  {
    return;
  }
  std::ostringstream msg;
  msg.precision(17);
  if (!check.sigma0_ok)
  {
    msg << "conductivity.sigma0 = " << model.sigma0() << " is exceeded (max |sigma| "
        << check.max_abs_sigma << ")";
  }
  else
  {
    msg << "conductivity.sigma1 = " << model.sigma1() << " is exceeded (max slope "
        << check.max_abs_slope << ")";
  }
  msg << " at xi = " << *check.offending_xi;
  throw ConfigError(msg.str());
}

void sigma_field(const ConductivityModel &model, const NodalField &theta, const Domain &dom,
                 NodalField &out)
{
  out.values.resize(dom.node_count());
  for (int j = 0; j < dom.node_rows(); ++j)
  {
    for (int i = 0; i < dom.node_cols(); ++i)
    {
      const std::size_t k = dom.node(i, j);
      if (!dom.interior(k))
      {
        out[k] = 0.0;
        continue;
      }
      if (!std::isfinite(theta[k]))
      {
        throw NumericError("non-finite temperature at node (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
      }
      out[k] = model(theta[k], dom.x(i), dom.y(j));
    }
  }
}

NodalField sigma_field(const ConductivityModel &model, const NodalField &theta, const Domain &dom)
{
  NodalField out(dom);
  sigma_field(model, theta, dom, out);
  return out;
}

SourceG SourceG::separable(const Separable &params)
{
  if (!std::isfinite(params.amplitude) || !std::isfinite(params.omega) ||
      !std::isfinite(params.phase) || !(params.width > 0.0))
  {
    throw ConfigError("source.params must be finite with width > 0");
  }
  SourceG g;
  g.separable_ = params;
  return g;
}

double SourceG::time_factor(double t) const
{
  if (!separable_)
  {
    return 0.0;
  }
  return separable_->amplitude * std::cos(separable_->omega * t + separable_->phase);
}

double SourceG::profile(const Domain &dom, int i, int j) const
{
  const Separable &p = *separable_;
  if (p.profile == Profile::mode)
  {
    const double pi = std::acos(-1.0);
    const double x0 = dom.x(0), y0 = dom.y(0);
    const double lx = dom.x(dom.nx()) - x0, ly = dom.y(dom.ny()) - y0;
    return std::sin(pi * (dom.x(i) - x0) / lx) * std::sin(pi * (dom.y(j) - y0) / ly);
  }
  const double dx = dom.x(i) - p.cx, dy = dom.y(j) - p.cy;
  return std::exp(-(dx * dx + dy * dy) / (p.width * p.width));
}

void SourceG::sample(const Domain &dom, double t, NodalField &out) const
{
  out.values.assign(dom.node_count(), 0.0);
  if (is_zero())
  {
    return;
  }
  const double f = time_factor(t);
  for (int j = 0; j < dom.node_rows(); ++j)
  {
    for (int i = 0; i < dom.node_cols(); ++i)
    {
      const std::size_t k = dom.node(i, j);
      if (dom.interior(k))
      {
        out[k] = f * profile(dom, i, j);
      }
    }
  }
}

double SourceG::sup_norm2(const Domain &dom) const
{
  if (is_zero())
  {
    return 0.0;
  }
  NodalField g(dom);
  for (int j = 0; j < dom.node_rows(); ++j)
  {
    for (int i = 0; i < dom.node_cols(); ++i)
    {
      const std::size_t k = dom.node(i, j);
      if (dom.interior(k))
      {
        g[k] = profile(dom, i, j);
      }
    }
  }
  const double a = separable_->amplitude;
  return a * a * nodal_inner(g, g, dom);
}

}  // namespace maxheat
