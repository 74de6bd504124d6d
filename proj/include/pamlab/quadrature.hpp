#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace pamlab {

// Gauss-Legendre nodes/weights on [-1,1], computed by Newton on the
// Legendre recurrence.
struct GaussLegendre {
  std::vector<double> x, w;

  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (z * p0 - p1) / (z * z - 1.0);
        double dz = p0 / pp;
        z -= dz;
        if (std::fabs(dz) < 1e-15) break;
      }
      x[i] = -z;
      x[n - 1 - i] = z;
      w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
  }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a), s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(mid + half * x[i]);
    return s * half;
  }
};

// Adaptive Gauss-Kronrod 15(7) on a finite interval.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double rel_tol = 1e-10, double abs_tol = 1e-300,
                    int max_depth = 30);

// Semi-infinite [a, inf) via x = a + u/(1-u).
double integrate_gk_upper(const std::function<double(double)>& f, double a,
                          double rel_tol = 1e-10);

}  // namespace pamlab
