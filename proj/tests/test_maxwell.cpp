#include <doctest.h>

#include <cmath>

#include "maxheat/config.hpp"
#include "maxheat/errors.hpp"
#include "maxheat/maxwell.hpp"
#include "support.hpp"

using namespace maxheat;
using testing::kPi;

namespace
{

ConductivitySchedule fixed(const NodalField &s)
{
  return [&s](int) -> const NodalField & { return s; };
}

MaxwellStepParams params_for(const Domain &dom, double fraction = 0.9)
{
  MaxwellStepParams p;
  p.dt = fraction * cfl_limit(dom, PhysicalConstants{});
  return p;
}

// Max energy-identity residual of a damped cavity run.
double max_residual(int n, double dt, double t_final)
{
  const Domain dom = Domain::rectangle(1.0, 1.0, n);
  NodalField s(dom, 0.5);
  apply_dirichlet(s, dom);
  MaxwellStepParams p;
  p.dt = dt;
  const LinearRun run = run_linear(cavity_mode_dz(dom), FaceField(dom), fixed(s), SourceG::zero(),
                                   t_final, p, PhysicalConstants{}, dom);
  double worst = 0.0;
  for (const auto &d : run.steps)
  {
    worst = std::max(worst, std::abs(d.residual));
  }
  return worst;
}

double annulus_d_max(int n)
{
  const Domain dom = Domain::annulus(n);
  NodalField s(dom, 1.0);
  apply_dirichlet(s, dom);
  double worst = 0.0;
  run_linear(NodalField(dom), annulus_b0_faces(dom), fixed(s), SourceG::zero(), 0.5,
             params_for(dom), PhysicalConstants{}, dom,
             [&](int, const FieldState &st) { worst = std::max(worst, testing::max_abs(st.dz.values)); });
  return worst;
}

}  // namespace

TEST_CASE("time grid")
{
  const TimeGrid g = make_time_grid(1.0, 0.3);
  CHECK(g.steps == 4);
  CHECK(g.dt == doctest::Approx(0.25));
  CHECK(make_time_grid(1.0, 0.25).steps == 4);
  CHECK(make_time_grid(0.0, 0.1).steps == 0);
  CHECK_THROWS_AS(make_time_grid(-1.0, 0.1), ConfigError);
  CHECK_THROWS_AS(make_time_grid(1.0, 0.0), ConfigError);
}

TEST_CASE("CFL violations are refused")
{
  const Domain dom = Domain::rectangle(1.0, 1.0, 16);
  PhysicalConstants c;
  MaxwellStepParams p;
  p.dt = 0.95 * cfl_limit(dom, c);
  CHECK_THROWS_AS(check_cfl(p, dom, c), ConfigError);
  p.dt = 0.9 * cfl_limit(dom, c);
  CHECK_NOTHROW(check_cfl(p, dom, c));
  CHECK_THROWS_AS(maxwell_step(FieldState(dom), NodalField(dom), SourceG::zero(),
                               MaxwellStepParams{1.0, 0.9}, c, dom),
                  ConfigError);
  // Slower waves allow a larger step.
  CHECK(cfl_limit(dom, PhysicalConstants{4.0, 1.0, 1.0}) == doctest::Approx(2.0 * cfl_limit(dom, c)));
}

TEST_CASE("dirty initial boundary is rejected")
{
  const Domain dom = Domain::rectangle(1.0, 1.0, 16);
  NodalField d0(dom);
  d0[dom.node(0, 5)] = 1.0;
  CHECK_THROWS_AS(LeapfrogIntegrator(dom, PhysicalConstants{}, SourceG::zero(), params_for(dom), d0,
                                     FaceField(dom)),
                  ConfigError);
}

TEST_CASE("zero data stays exactly zero")
{
  const Domain dom = Domain::annulus(32);
  const NodalField s(dom, 3.0);
  FieldState st(dom);
  for (int n = 0; n < 20; ++n)
  {
    st = maxwell_step(st, s, SourceG::zero(), params_for(dom), PhysicalConstants{}, dom);
  }
  CHECK(testing::all_zero(st.dz.values));
  CHECK(testing::all_zero(st.b.x));
  CHECK(testing::all_zero(st.b.y));

  const LinearRun run = run_linear(NodalField(dom), FaceField(dom), fixed(s), SourceG::zero(), 0.3,
                                   params_for(dom), PhysicalConstants{}, dom);
  CHECK(testing::all_zero(run.energy.samples));
  CHECK(testing::all_zero(run.final_state.dz.values));
}

TEST_CASE("single step agrees with the integrator")
{
  std::mt19937_64 rng(2);
  const Domain dom = Domain::rectangle(1.0, 1.0, 24);
  const PhysicalConstants c{2.0, 0.5, 1.0};
  MaxwellStepParams p;
  p.dt = 0.8 * cfl_limit(dom, c);
  const NodalField d0 = testing::random_nodal(dom, rng);
  const FaceField b0 = testing::random_faces(dom, rng);
  NodalField s(dom, 0.7);
  SourceG::Separable gp;
  gp.amplitude = 0.4;
  gp.omega = 2.0;
  const SourceG g = SourceG::separable(gp);

  LeapfrogIntegrator lf(dom, c, g, p, d0, b0);
  FieldState st;
  st.dz = d0;
  st.b = stagger_initial_b(d0, b0, p.dt, c, dom);
  for (int n = 0; n < 5; ++n)
  {
    lf.finish_step(s);
    st = maxwell_step(st, s, g, p, c, dom);
  }
  CHECK(testing::max_abs_diff(lf.state().dz.values, st.dz.values) == 0.0);
  CHECK(testing::max_abs_diff(lf.state().b.x, st.b.x) == 0.0);
  CHECK(st.t == doctest::Approx(5 * p.dt));
}

TEST_CASE("lossless cavity conserves the staggered energy and rings at sqrt(2) pi")
{
  const Domain dom = Domain::rectangle(1.0, 1.0, 64);
  const MaxwellStepParams p = params_for(dom);
  LeapfrogIntegrator lf(dom, PhysicalConstants{}, SourceG::zero(), p, cavity_mode_dz(dom),
                        FaceField(dom));
  const NodalField s(dom, 0.0);
  const std::size_t centre = dom.node(32, 32);
  lf.begin_step();
  const double w0 = lf.staggered_energy();
  double drift = 0.0;
  std::vector<double> crossings;
  double prev = lf.state().dz[centre];
  for (int n = 1; n <= 1000; ++n)
  {
    lf.finish_step(s);
    lf.begin_step();
    drift = std::max(drift, std::abs(lf.staggered_energy() - w0) / w0);
    const double cur = lf.state().dz[centre];
    if ((prev > 0.0) != (cur > 0.0))
    {
      crossings.push_back((n - 1 + prev / (prev - cur)) * p.dt);
    }
    prev = cur;
  }
  CHECK(drift <= 1e-10);
  REQUIRE(crossings.size() >= 4);
  const double half_period = (crossings.back() - crossings.front()) / double(crossings.size() - 1);
  const double omega = kPi / half_period;
  CHECK(std::abs(omega - std::sqrt(2.0) * kPi) / (std::sqrt(2.0) * kPi) < 0.01);
}

TEST_CASE("staggered energy obeys the discrete identity exactly")
{
  std::mt19937_64 rng(4);
  const Domain dom = Domain::annulus(40);
  const PhysicalConstants c{1.5, 0.8, 1.0};
  MaxwellStepParams p;
  p.dt = 0.9 * cfl_limit(dom, c);
  NodalField s = testing::random_nodal(dom, rng);
  for (auto &v : s.values)
  {
    v = std::abs(v);
  }
  SourceG::Separable gp;
  gp.amplitude = 1.0;
  gp.omega = 5.0;
  gp.profile = SourceG::Profile::gaussian;
  gp.cx = 1.2;
  gp.width = 0.3;
  const SourceG g = SourceG::separable(gp);
  LeapfrogIntegrator lf(dom, c, g, p, testing::random_nodal(dom, rng), testing::random_faces(dom, rng));
  lf.begin_step();
  double w = lf.staggered_energy();
  const double scale = w;
  for (int n = 0; n < 50; ++n)
  {
    lf.finish_step(s);
    lf.begin_step();
    const double w_next = lf.staggered_energy();
    const StepDiagnostics &d = lf.diagnostics().back();
    CHECK(std::abs((w_next - w) / p.dt + d.dissipation - d.source_work) <= 1e-11 * scale / p.dt);
    w = w_next;
  }
}

TEST_CASE("constant damping never increases the staggered energy")
{
  const Domain dom = Domain::rectangle(1.0, 1.0, 48);
  for (double sigma : {0.01, 0.5, 5.0})
  {
    for (double fraction : {0.9, 0.45, 0.1})
    {
      NodalField s(dom, sigma);
      LeapfrogIntegrator lf(dom, PhysicalConstants{}, SourceG::zero(), params_for(dom, fraction),
                            cavity_mode_dz(dom), FaceField(dom));
      lf.begin_step();
      double w = lf.staggered_energy();
      const double w0 = w;
      for (int n = 0; n < 200; ++n)
      {
        lf.finish_step(s);
        lf.begin_step();
        const double w_next = lf.staggered_energy();
        CAPTURE(sigma);
        CAPTURE(fraction);
        CHECK(w_next <= w + 1e-15 * w0);
        w = w_next;
      }
      CHECK(lf.energies().back() < lf.energies().front());
    }
  }
}

TEST_CASE("energy residual is second order in dt")
{
  const Domain dom = Domain::rectangle(1.0, 1.0, 32);
  const double dt = 0.9 * cfl_limit(dom, PhysicalConstants{});
  const double coarse = max_residual(32, dt, 1.0);
  const double fine = max_residual(32, dt / 2, 1.0);
  CHECK(coarse > 0.0);
  CHECK(coarse / fine >= 3.0);
}

TEST_CASE("zero final time returns the initial state")
{
  std::mt19937_64 rng(8);
  const Domain dom = Domain::rectangle(1.0, 1.0, 16);
  const NodalField d0 = testing::random_nodal(dom, rng);
  const FaceField b0 = testing::random_faces(dom, rng);
  const NodalField s(dom, 1.0);
  int observed = 0;
  const LinearRun run = run_linear(d0, b0, fixed(s), SourceG::zero(), 0.0, params_for(dom),
                                   PhysicalConstants{}, dom, [&](int, const FieldState &) { ++observed; });
  CHECK(run.energy.samples.size() == 1);
  CHECK(run.steps.empty());
  CHECK(observed == 1);
  CHECK(run.final_state.dz == d0);
  CHECK(run.final_state.b == b0);
  CHECK(run.energy.samples[0] == doctest::Approx(total_energy(d0, b0, dom, 1.0, 1.0)).epsilon(1e-14));
}

TEST_CASE("solution map is linear in the data")
{
  std::mt19937_64 rng(12);
  const Domain dom = Domain::annulus(32);
  NodalField s = testing::random_nodal(dom, rng);
  for (auto &v : s.values)
  {
    v = 2.0 * std::abs(v);
  }
  SourceG::Separable gp;
  gp.omega = 3.0;
  gp.phase = 0.2;
  auto source = [&](double a) {
    gp.amplitude = a;
    return SourceG::separable(gp);
  };
  const NodalField d1 = testing::random_nodal(dom, rng), d2 = testing::random_nodal(dom, rng);
  const FaceField b1 = testing::random_faces(dom, rng), b2 = testing::random_faces(dom, rng);
  NodalField d12(dom);
  FaceField b12(dom);
  for (std::size_t k = 0; k < d12.size(); ++k)
  {
    d12[k] = d1[k] + d2[k];
  }
  for (std::size_t k = 0; k < b12.x.size(); ++k)
  {
    b12.x[k] = b1.x[k] + b2.x[k];
  }
  for (std::size_t k = 0; k < b12.y.size(); ++k)
  {
    b12.y[k] = b1.y[k] + b2.y[k];
  }
  const MaxwellStepParams p = params_for(dom);
  const PhysicalConstants c;
  const LinearRun r1 = run_linear(d1, b1, fixed(s), source(1.0), 0.5, p, c, dom);
  const LinearRun r2 = run_linear(d2, b2, fixed(s), source(2.0), 0.5, p, c, dom);
  const LinearRun r12 = run_linear(d12, b12, fixed(s), source(3.0), 0.5, p, c, dom);
  const double scale = testing::max_abs(r12.final_state.dz.values);
  double err = 0.0;
  for (std::size_t k = 0; k < d12.size(); ++k)
  {
    err = std::max(err, std::abs(r1.final_state.dz[k] + r2.final_state.dz[k] - r12.final_state.dz[k]));
  }
  for (std::size_t k = 0; k < b12.x.size(); ++k)
  {
    err = std::max(err, std::abs(r1.final_state.b.x[k] + r2.final_state.b.x[k] - r12.final_state.b.x[k]));
  }
  CHECK(err <= 1e-12 * scale);
}

TEST_CASE("annulus field stays curl free up to second order")
{
  const double d64 = annulus_d_max(64);
  const double d128 = annulus_d_max(128);
  const double d256 = annulus_d_max(256);
  CHECK(d64 < 1e-3);
  CHECK(d64 / d128 > 3.0);
  CHECK(d128 / d256 > 3.0);
}

TEST_CASE("too negative conductivity is a numeric error")
{
  const Domain dom = Domain::rectangle(1.0, 1.0, 16);
  const MaxwellStepParams p = params_for(dom);
  NodalField s(dom, -3.0 / p.dt);
  LeapfrogIntegrator lf(dom, PhysicalConstants{}, SourceG::zero(), p, cavity_mode_dz(dom),
                        FaceField(dom));
  CHECK_THROWS_AS(lf.finish_step(s), NumericError);
}
