#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace maxheat
{

// Base class for all library failures. The CLI maps the subclasses to exit
// codes (config = 2, numeric = 3, nonconvergence = 4).
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Invalid input: bad parameters, schema violations, unreadable files.
class ConfigError : public Error
{
public:
  using Error::Error;
};

// A solver produced a non-finite value, violated a stability limit, or a
// linear solve failed.
class NumericError : public Error
{
public:
  NumericError(const std::string &what, long step = -1,
               std::vector<double> residual_history = {})
    : Error(what), step_(step), residuals_(std::move(residual_history))
  {
  }

  // Time step index where the failure was detected, or -1.
  long step() const { return step_; }
  const std::vector<double> &residual_history() const { return residuals_; }

private:
  long step_;
  std::vector<double> residuals_;
};

// The fixed-point iteration did not reach its tolerance.
class NonConvergenceError : public Error
{
public:
  NonConvergenceError(const std::string &what, std::vector<double> deltas)
    : Error(what), deltas_(std::move(deltas))
  {
  }

  const std::vector<double> &deltas() const { return deltas_; }

private:
  std::vector<double> deltas_;
};

}  // namespace maxheat
