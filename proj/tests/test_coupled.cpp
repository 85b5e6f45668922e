#include <doctest.h>

#include <cmath>

#include "maxheat/config.hpp"
#include "maxheat/coupled.hpp"
#include "maxheat/errors.hpp"
#include "maxheat/parallel.hpp"
#include "support.hpp"

using namespace maxheat;
using nlohmann::json;

namespace
{

json affine(double a, double b)
{
  return {{"kind", "affine_clamped"}, {"params", {{"a", a}, {"b", b}, {"lo", 0.0}, {"hi", 5.0}}}};
}

// Damped cavity at modest resolution with a temperature-dependent conductivity.
CoupledConfig weak_coupling(int n = 24, double t_final = 0.5)
{
  json doc = preset_document("dissipative_cavity");
  doc["domain"]["n"] = n;
  doc["time"]["T_final"] = t_final;
  doc["conductivity"] = affine(0.5, 0.1);
  return parse_run_config(doc).coupled;
}

CoupledConfig preset(const std::string &name, int n, double t_final)
{
  json doc = preset_document(name);
  doc["domain"]["n"] = n;
  doc["time"]["T_final"] = t_final;
  return parse_run_config(doc).coupled;
}

double relative_l2(const NodalField &a, const NodalField &b, const Domain &dom)
{
  NodalField d(dom);
  for (std::size_t k = 0; k < d.size(); ++k)
  {
    d[k] = a[k] - b[k];
  }
  return std::sqrt(nodal_inner(d, d, dom) / nodal_inner(b, b, dom));
}

}  // namespace

TEST_CASE("zero data gives zero trajectories in both modes")
{
  CoupledConfig cfg = preset("zero_data", 16, 0.3);
  const CoupledResult mono = run(cfg);
  CHECK(testing::all_zero(mono.energy.samples));
  CHECK(testing::all_zero(mono.theta.theta.values));
  CHECK(testing::all_zero(mono.fields.dz.values));
  CHECK(testing::all_zero(mono.fields.b.x));

  cfg.mode = SolverMode::picard;
  const CoupledResult pic = run(cfg);
  REQUIRE(pic.picard.has_value());
  CHECK(pic.picard->converged);
  CHECK(pic.picard->deltas.size() == 1);
  CHECK(pic.picard->deltas[0] == 0.0);
  CHECK(testing::all_zero(pic.theta.theta.values));

  EnergyTrajectory c = initial_energy_guess(cfg);
  for (auto &v : c.samples)
  {
    v = 3.0;
  }
  CHECK(testing::all_zero(picard_t(c, cfg).samples));
  CHECK(continuity_probe(cfg, 1e-3, c) == 0.0);
}

TEST_CASE("uniform field keeps energy one half and heats the square")
{
  const CoupledConfig cfg = preset("square_uniform_b", 32, 0.3);
  const CoupledResult r = run(cfg);
  for (double e : r.energy.samples)
  {
    CHECK(std::abs(e - 0.5) <= 1e-12);
  }
  CHECK(testing::all_zero(r.fields.dz.values));
  CHECK(r.theta.theta[cfg.domain.node(16, 16)] > 0.0);
  CHECK(r.energy.max_abs() <= gronwall_bound(cfg).n);
}

TEST_CASE("observer sees every level")
{
  const CoupledConfig cfg = weak_coupling(16, 0.2);
  int calls = 0, last = -1;
  const CoupledResult r = run(cfg, [&](int n, const FieldState &fields, const NodalField &theta) {
    CHECK(n == last + 1);
    CHECK(fields.dz.size() == cfg.domain.node_count());
    CHECK(theta.size() == cfg.domain.node_count());
    last = n;
    ++calls;
  });
  CHECK(calls == cfg.time_grid().steps + 1);
  CHECK(r.energy.samples.size() == std::size_t(calls));
  CHECK(r.cg_iterations.size() == std::size_t(cfg.time_grid().steps));
}

TEST_CASE("damped coupled run loses energy and stays below the bound")
{
  const CoupledConfig cfg = weak_coupling(32, 1.0);
  const CoupledResult r = run(cfg);
  const GronwallBound g = gronwall_bound(cfg);
  CHECK(g.n >= r.energy.samples.front());
  CHECK(r.energy.max_abs() <= g.n);
  CHECK(r.energy.samples.back() < 0.8 * r.energy.samples.front());
  for (const auto &d : r.steps)
  {
    CHECK(d.dissipation >= 0.0);
  }
}

TEST_CASE("Gronwall bound without growth terms")
{
  const CoupledConfig cfg = preset("cavity_mode", 32, 1.0);
  const GronwallBound g = gronwall_bound(cfg);
  const double e0 = total_energy(cfg.initial.d0, cfg.initial.b0, cfg.domain, 1.0, 1.0);
  CHECK(g.c1 == 0.0);
  CHECK(g.c2 == 0.0);
  CHECK(g.n == doctest::Approx(2.0 * e0));
  const CoupledResult r = run(cfg);
  for (double e : r.energy.samples)
  {
    CHECK(e <= e0 * (1.0 + 1e-3));
  }
}

TEST_CASE("Gronwall bound holds with a forcing term")
{
  json doc = preset_document("dissipative_cavity");
  doc["domain"]["n"] = 24;
  doc["time"]["T_final"] = 2.0;
  doc["source"] = {{"kind", "separable"}, {"params", {{"amplitude", 3.0}, {"omega", 4.4}}}};
  const CoupledConfig cfg = parse_run_config(doc).coupled;
  const GronwallBound g = gronwall_bound(cfg);
  CHECK(g.c1 > 0.0);
  CHECK(g.c2 == doctest::Approx(2.0));
  const CoupledResult r = run(cfg);
  CHECK(r.energy.max_abs() <= g.n);
}

TEST_CASE("constant conductivity makes the Picard map constant")
{
  CoupledConfig cfg = preset("dissipative_cavity", 24, 0.4);
  EnergyTrajectory low = initial_energy_guess(cfg);
  EnergyTrajectory high = low;
  for (auto &v : low.samples)
  {
    v = 0.0;
  }
  for (auto &v : high.samples)
  {
    v = high.bound_n;
  }
  const EnergyTrajectory a = picard_t(low, cfg);
  const EnergyTrajectory b = picard_t(high, cfg);
  CHECK(a.samples == b.samples);
  CHECK(continuity_probe(cfg, 1e-3, a) == 0.0);

  cfg.mode = SolverMode::picard;
  const CoupledResult r = run(cfg);
  REQUIRE(r.picard.has_value());
  CHECK(r.picard->converged);
  CHECK(r.picard->applications == 2);
  CHECK(r.picard->deltas.back() == 0.0);
}

TEST_CASE("weak coupling: Picard converges to the monolithic solution")
{
  CoupledConfig cfg = weak_coupling(24, 0.5);
  const CoupledResult mono = run(cfg);
  cfg.mode = SolverMode::picard;
  const CoupledResult pic = run(cfg);
  REQUIRE(pic.picard.has_value());
  const PicardReport &rep = *pic.picard;
  CHECK(rep.converged);
  CHECK(rep.applications <= 20);
  CHECK(rep.outside_k == 0);
  for (std::size_t k = 1; k + 1 < rep.contraction_ratios.size(); ++k)
  {
    CHECK(rep.contraction_ratios[k] < 1.0);
  }
  const EnergyTrajectory &fixed = rep.iterates.back();
  CHECK(sup_distance(pic.energy, fixed) <= cfg.picard_tol * std::max(1.0, fixed.max_abs()));
  CHECK(relative_l2(pic.theta.theta, mono.theta.theta, cfg.domain) <=
        std::max(1e-6, 5.0 * cfg.time_grid().dt));
  CHECK(sup_distance(pic.energy, mono.energy) <= 1e-6 * mono.energy.max_abs());
}

TEST_CASE("Picard failure reports the delta history")
{
  CoupledConfig cfg = weak_coupling(16, 0.3);
  cfg.mode = SolverMode::picard;
  cfg.picard_max_iter = 2;
  try
  {
    run(cfg);
    FAIL("expected non-convergence");
  }
  catch (const NonConvergenceError &e)
  {
    CHECK(e.deltas().size() == 2);
    CHECK(e.deltas()[1] < e.deltas()[0]);
  }
}

TEST_CASE("continuity quotient is stable for temperature-dependent conductivity")
{
  const CoupledConfig cfg = weak_coupling(16, 0.5);
  const EnergyTrajectory base = picard_t(initial_energy_guess(cfg), cfg);
  const double q3 = continuity_probe(cfg, 1e-3, base);
  const double q4 = continuity_probe(cfg, 1e-4, base);
  CHECK(q3 > 0.0);
  CHECK(q4 > 0.0);
  CHECK(std::max(q3, q4) / std::min(q3, q4) <= 2.0);
  CHECK_THROWS_AS(continuity_probe(cfg, 0.0, base), ConfigError);
}

TEST_CASE("bitwise identical results across thread counts")
{
  const CoupledConfig cfg = weak_coupling(40, 0.3);
  set_thread_count(1);
  const CoupledResult one = run(cfg);
  for (int threads : {2, 8})
  {
    set_thread_count(threads);
    const CoupledResult other = run(cfg);
    CHECK(other.energy.samples == one.energy.samples);
    CHECK(other.theta.theta == one.theta.theta);
    CHECK(other.fields.dz == one.fields.dz);
    CHECK(other.fields.b == one.fields.b);
  }
  set_thread_count(1);
}

TEST_CASE("configuration checks")
{
  CoupledConfig cfg = weak_coupling(16, 0.2);
  CHECK_NOTHROW(cfg.validate());

  CoupledConfig dirty = cfg;
  dirty.initial.theta0[0] = 1.0;
  CHECK_THROWS_AS(run(dirty), ConfigError);

  CoupledConfig fast = cfg;
  fast.dt = 10.0 * cfl_limit(cfg.domain, cfg.consts);
  CHECK_THROWS_AS(run(fast), ConfigError);

  CoupledConfig loose = cfg;
  loose.model = ConductivityModel(AffineClampedSigma{0.5, 1.0, 0.0, 5.0}, 5.0, 0.1);
  CHECK_THROWS_AS(run(loose), ConfigError);

  CoupledConfig bad_tol = cfg;
  bad_tol.picard_tol = 0.0;
  CHECK_THROWS_AS(bad_tol.validate(), ConfigError);

  const EnergyTrajectory wrong{{1.0, 2.0}, 0.1, 10.0};
  CHECK_THROWS_AS(picard_t(wrong, cfg), ConfigError);
}

TEST_CASE("zero final time")
{
  const CoupledConfig cfg = preset("square_uniform_b", 16, 0.0);
  const CoupledResult r = run(cfg);
  CHECK(r.energy.samples.size() == 1);
  CHECK(r.energy.samples[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.fields.b == cfg.initial.b0);
}
