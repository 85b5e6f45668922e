#include "maxheat/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "maxheat/config.hpp"
#include "maxheat/coupled.hpp"
#include "maxheat/oracle.hpp"

namespace maxheat
{

namespace
{

std::string fmt(double v)
{
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

CheckResult adjoint_curls(const Domain &dom, const std::string &label)
{
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial)
  {
    NodalField d(dom);
    FaceField b(dom);
    for (auto &v : d.values)
    {
      v = u(rng);
    }
    apply_dirichlet(d, dom);
    for (auto &v : b.x)
    {
      v = u(rng);
    }
    for (auto &v : b.y)
    {
      v = u(rng);
    }
    const double lhs = nodal_inner(curl_b(b, dom), d, dom);
    const double rhs = face_inner(b, curl_d(d, dom), dom);
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return {"summation by parts (" + label + ")", worst <= 1e-12, "max rel diff " + fmt(worst)};
}

CheckResult cavity_conservation()
{
  const Domain dom = Domain::rectangle(1.0, 1.0, 32);
  PhysicalConstants c;
  const NodalField s(dom, 0.0);
  MaxwellStepParams p;
  p.dt = 0.9 * cfl_limit(dom, c);
  LeapfrogIntegrator lf(dom, c, SourceG::zero(), p, cavity_mode_dz(dom), FaceField(dom));
  lf.begin_step();
  const double w0 = lf.staggered_energy();
  double worst = 0.0;
  for (int n = 0; n < 500; ++n)
  {
    lf.finish_step(s);
    lf.begin_step();
    worst = std::max(worst, std::abs(lf.staggered_energy() - w0) / w0);
  }
  return {"leapfrog conservation (cavity, n=32, 500 steps)", worst <= 1e-10,
          "max rel drift " + fmt(worst)};
}

CheckResult zero_data()
{
  RunConfig cfg = parse_run_config(preset_document("zero_data"));
  const CoupledResult r = run(cfg.coupled);
  bool zero = std::all_of(r.fields.dz.values.begin(), r.fields.dz.values.end(),
                          [](double v) { return v == 0.0; }) &&
              std::all_of(r.theta.theta.values.begin(), r.theta.theta.values.end(),
                          [](double v) { return v == 0.0; }) &&
              std::all_of(r.energy.samples.begin(), r.energy.samples.end(),
                          [](double v) { return v == 0.0; });
  return {"zero data stays zero", zero, zero ? "all exactly 0" : "nonzero values found"};
}

CheckResult uniform_b_energy()
{
  nlohmann::json doc = preset_document("square_uniform_b");
  doc["domain"]["n"] = 32;
  doc["time"]["T_final"] = 0.2;
  const RunConfig cfg = parse_run_config(doc);
  const CoupledResult r = run(cfg.coupled);
  double worst = 0.0;
  for (double e : r.energy.samples)
  {
    worst = std::max(worst, std::abs(e - 0.5));
  }
  const double bound = gronwall_bound(cfg.coupled).n;
  return {"uniform B energy = 1/2 and below the a-priori bound",
          worst <= 1e-12 && r.energy.max_abs() <= bound,
          "max |E - 0.5| " + fmt(worst) + ", N " + fmt(bound)};
}

}  // namespace

std::vector<CheckResult> run_verification()
{
  std::vector<CheckResult> out;
  out.push_back(adjoint_curls(Domain::rectangle(1.0, 1.0, 32), "square"));
  out.push_back(adjoint_curls(Domain::annulus(32), "annulus"));

  {
    const Domain dom = Domain::annulus(128);
    const double area = integrate_nodal(NodalField(dom, 1.0), dom);
    const double rel = std::abs(area - std::acos(-1.0)) / std::acos(-1.0);
    out.push_back({"annulus quadrature area (n=128)", rel <= 0.05, "rel error " + fmt(rel)});
  }
  {
    const auto radial = oracle::radial_steady_theta(1.0, 1.0, 2001);
    double dev = 0.0;
    for (std::size_t i = 0; i < radial.r.size(); ++i)
    {
      dev = std::max(dev, std::abs(radial.theta[i] - oracle::radial_closed_form(radial.r[i], 1.0, 1.0)));
    }
    out.push_back({"radial oracle vs closed form", dev <= 1e-7 && radial.discrete_residual() <= 1e-12,
                   "max dev " + fmt(dev) + ", residual " + fmt(radial.discrete_residual())});
  }
  {
    const double u = oracle::square_torsion_center();
    out.push_back({"torsion center value", u > 0.0735 && u < 0.0739, "u(1/2,1/2) = " + fmt(u)});
  }
  out.push_back(cavity_conservation());
  out.push_back(zero_data());
  out.push_back(uniform_b_energy());
  return out;
}

}  // namespace maxheat
