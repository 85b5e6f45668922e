#include "maxheat/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maxheat
{

void set_thread_count(int threads)
{
#ifdef _OPENMP
  omp_set_num_threads(threads < 1 ? 1 : threads);
#else
  (void)threads;
#endif
}

int thread_count()
{
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int resolve_thread_count(int requested)
{
  if (requested > 0)
  {
    return requested;
  }
  if (const char *env = std::getenv("MAXHEAT_THREADS"))
  {
    try
    {
      const int value = std::stoi(env);
      if (value > 0)
      {
        return value;
      }
    }
    catch (const std::exception &)
    {
    }
  }
  return 1;
}

namespace
{

constexpr std::size_t kLeafSize = 8;

double cascade(const double *v, std::size_t n)
{
  if (n <= kLeafSize)
  {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
      s += v[i];
    }
    return s;
  }
  const std::size_t half = n / 2;
  return cascade(v, half) + cascade(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values)
{
  return cascade(values.data(), values.size());
}

}  // namespace maxheat
