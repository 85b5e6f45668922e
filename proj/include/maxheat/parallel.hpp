#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace maxheat
{

// Thread count used by the grid sweeps issued from the calling thread. The
// setting is per calling thread (OpenMP ICV), so independent simulations
// driven from different threads do not interfere.
void set_thread_count(int threads);
int thread_count();

// Resolve the thread count from an explicit request, falling back to the
// MAXHEAT_THREADS environment variable and then to 1.
int resolve_thread_count(int requested);

// Pairwise (cascade) sum with a fixed split pattern. The result depends only
// on the values and their order.
double pairwise_sum(std::span<const double> values);

// Deterministic reduction over a row-major 2D index space: every row is
// summed pairwise, then the row totals are summed pairwise. Rows are
// distributed over threads but the combination order is fixed, so the result
// is bitwise identical for any thread count.
template <class Term>
double reduce_rows(int rows, int cols, Term &&term)
{
  std::vector<double> row_total(static_cast<std::size_t>(rows), 0.0);
#pragma omp parallel
  {
    std::vector<double> buf(static_cast<std::size_t>(cols));
#pragma omp for schedule(static)
    for (int j = 0; j < rows; ++j)
    {
      for (int i = 0; i < cols; ++i)
      {
        buf[static_cast<std::size_t>(i)] = term(i, j);
      }
      row_total[static_cast<std::size_t>(j)] = pairwise_sum(buf);
    }
  }
  return pairwise_sum(row_total);
}

// Parallel loop over rows; body(j) must only write row-local data.
template <class Body>
void for_rows(int rows, Body &&body)
{
#pragma omp parallel for schedule(static)
  for (int j = 0; j < rows; ++j)
  {
    body(j);
  }
}

}  // namespace maxheat
