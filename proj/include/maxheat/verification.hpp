#pragma once

#include <string>
#include <vector>

namespace maxheat
{

struct CheckResult
{
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast self-check of the discretization and the oracles on small grids:
// adjointness of the curls, quadrature, oracle self-consistency, discrete
// conservation, zero-data uniqueness and the exact uniform-B energy.
std::vector<CheckResult> run_verification();

}  // namespace maxheat
