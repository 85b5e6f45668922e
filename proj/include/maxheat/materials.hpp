#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "maxheat/domain.hpp"
#include "maxheat/fields.hpp"

namespace maxheat
{

struct PhysicalConstants
{
  double eps = 1.0;    // dielectric constant
  double mu = 1.0;     // magnetic permeability
  double kappa = 1.0;  // thermal diffusivity

  // Throws ConfigError unless all three are positive and finite.
  void validate() const;
};

//
// Temperature-dependent conductivity sigma(xi, x). None of the provided laws
// depend on position, but evaluation takes the node coordinates so that the
// interface matches sigma(theta(x, t), x).
//
struct ConstantSigma
{
  double value = 0.0;
};

// clamp(a + b * xi, lo, hi)
struct AffineClampedSigma
{
  double a = 0.0;
  double b = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Piecewise-linear interpolation of (xi, sigma) samples; constant beyond the
// end points.
struct TabulatedSigma
{
  std::vector<double> xi;
  std::vector<double> sigma;
};

class ConductivityModel
{
public:
  using Law = std::variant<ConstantSigma, AffineClampedSigma, TabulatedSigma>;

  // sigma0 bounds |sigma|, sigma1 bounds |d sigma / d xi|. Only the structural
  // checks run here; see validate_bounds() for the bound checks.
  ConductivityModel(Law law, double sigma0, double sigma1);

  static ConductivityModel constant(double value);
  static ConductivityModel affine_clamped(double a, double b, double lo, double hi);

  // Reads a two-column CSV (xi, sigma) with strictly increasing xi. A header
  // line is permitted.
  static TabulatedSigma load_table(const std::string &path);

  double operator()(double xi, double px, double py) const;

  const Law &law() const { return law_; }
  double sigma0() const { return sigma0_; }
  double sigma1() const { return sigma1_; }

  // True when sigma does not depend on temperature.
  bool temperature_independent() const;

private:
  Law law_;
  double sigma0_;
  double sigma1_;
};

struct BoundsCheck
{
  bool sigma0_ok = true;
  bool sigma1_ok = true;
  std::optional<double> offending_xi;  // first violation, if any
  double max_abs_sigma = 0.0;
  double max_abs_slope = 0.0;

  bool ok() const { return sigma0_ok && sigma1_ok; }
};

// Samples xi on [-theta_max, theta_max] at `samples` points and checks the
// declared value and slope bounds. Tabulated laws also check every secant
// slope of the table that overlaps the range.
BoundsCheck validate_bounds(const ConductivityModel &model, double theta_max,
                            int samples = 10000);

// validate_bounds(), throwing ConfigError that names the offending xi.
void require_bounds(const ConductivityModel &model, double theta_max);

// sigma(theta(x), x) on interior nodes, zero elsewhere. Throws NumericError
// on non-finite temperature.
NodalField sigma_field(const ConductivityModel &model, const NodalField &theta,
                       const Domain &dom);
void sigma_field(const ConductivityModel &model, const NodalField &theta, const Domain &dom,
                 NodalField &out);

//
// Out-of-plane source Gz(x, y, t) of the D equation.
//
class SourceG
{
public:
  enum class Profile
  {
    mode,     // sin(pi (x - x0)/Lx) sin(pi (y - y0)/Ly) over the bounding box
    gaussian  // exp(-|x - c|^2 / w^2)
  };

  struct Separable
  {
    double amplitude = 0.0;
    double omega = 0.0;  // f(t) = amplitude * cos(omega t + phase)
    double phase = 0.0;
    Profile profile = Profile::mode;
    double cx = 0.0, cy = 0.0, width = 1.0;  // gaussian parameters
  };

  static SourceG zero() { return SourceG(); }
  static SourceG separable(const Separable &params);

  bool is_zero() const { return !separable_.has_value() || separable_->amplitude == 0.0; }

  // Fills out with Gz(., t) on interior nodes.
  void sample(const Domain &dom, double t, NodalField &out) const;

  // f(t); zero for the zero source.
  double time_factor(double t) const;

  // sup_t |G(t)|^2 with the nodal quadrature: amplitude^2 |g|^2.
  double sup_norm2(const Domain &dom) const;
  const std::optional<Separable> &params() const { return separable_; }

private:
  double profile(const Domain &dom, int i, int j) const;

  std::optional<Separable> separable_;
};

}  // namespace maxheat
