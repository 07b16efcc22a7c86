#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace cvrob {

struct Min1D {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Golden-section search on [a, b]; tolerance is relative to |x| (floored at 1).
Min1D golden_section_min(const std::function<double(double)>& f, double a, double b,
                         double rel_tol = 1e-10, int max_iter = 200);

// Uniform scan with `grid` points, then golden section in the bracket of the best point.
Min1D bracketed_min(const std::function<double(double)>& f, double a, double b, int grid = 64,
                    double rel_tol = 1e-10, int max_iter = 200);

struct MinND {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;
};

MinND nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                  std::vector<double> x0, std::vector<double> step, double ftol = 1e-15,
                  double xtol = 1e-11, int max_eval = 20000);

// mt19937_64 with explicit conversions so streams match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double normal();
  int index(int n) { return static_cast<int>(uniform() * n) % n; }
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cvrob
