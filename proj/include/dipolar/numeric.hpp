#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dipolar::numeric {

// Pairwise (tree) summation. Summation order is fixed by the input order, so
// results do not depend on how the input vector was filled across workers.
double pairwise_sum(std::span<const double> values);

// Runs fn(i) for i in [0, n) on the worker pool. Each index must write only
// to its own output slot; reductions go through pairwise_sum afterwards.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Process-wide worker count (0 = hardware concurrency). Set once by the CLI.
void set_worker_count(unsigned workers);
unsigned worker_count();

// 16-point Gauss-Legendre rule on [a, b].
double gauss16(double a, double b, const std::function<double(double)>& f);

struct GaussNodes {
  static constexpr int n = 16;
  static const double abscissa[16];  // on [-1, 1]
  static const double weight[16];
};

// Adaptive Simpson quadrature, used by test oracles and a few smooth 1D
// integrals. Not a performance path.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

inline double sqr(double x) { return x * x; }

// log(x + sqrt(x^2+1)) with the negative-x reflection for stability.
inline double arsinh(double x) {
  return x >= 0 ? std::log(x + std::sqrt(x * x + 1.0)) : -std::log(-x + std::sqrt(x * x + 1.0));
}

// 0.5*log((x+1)/(x-1)), valid for x > 1.
double arcoth(double x);

}  // namespace dipolar::numeric
