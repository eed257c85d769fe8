// Copyright 2026 The csgq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Portable random variates.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard *distributions* are implementation-defined, so the
// transforms below are spelled out explicitly to make generated instances
// identical across toolchains:
//
//   uniform01  top 53 bits of one engine word, scaled to [0, 1)
//   normal     Marsaglia polar method, second variate discarded
//   gamma      Marsaglia-Tsang squeeze; shape < 1 boosted via U^(1/shape)
//   beta       X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b)
//   chi2(k)    2 * Gamma(k / 2)
//   F(d1, d2)  (chi2(d1) / d1) / (chi2(d2) / d2)
//   weibull    inverse CDF, scale * (-log(1 - U))^(1 / shape)
//   rayleigh   inverse CDF, scale * sqrt(-2 log(1 - U))
//   laplace    inverse CDF on U - 1/2

#include <cmath>
#include <cstdint>
#include <random>

namespace csgq {

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  double normal(double mean, double stddev) {
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return mean + stddev * u * std::sqrt(-2.0 * std::log(s) / s);
  }

  double gamma(double shape, double scale = 1.0) {
    if (shape < 1.0) {
      const double boost = std::pow(uniform01_open(), 1.0 / shape);
      return gamma(shape + 1.0, scale) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = 0.0;
      double v = 0.0;
      do {
        x = normal(0.0, 1.0);
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
        return scale * d * v;
      }
    }
  }

  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }

  double chi_squared(double k) { return 2.0 * gamma(0.5 * k); }

  double fisher_f(double d1, double d2) {
    const double num = chi_squared(d1) / d1;
    const double den = chi_squared(d2) / d2;
    return num / den;
  }

  double weibull(double shape, double scale) {
    return scale * std::pow(-std::log1p(-uniform01()), 1.0 / shape);
  }

  double rayleigh(double scale) {
    return scale * std::sqrt(-2.0 * std::log1p(-uniform01()));
  }

  double laplace(double loc, double scale) {
    const double u = uniform01() - 0.5;
    const double sign = u < 0.0 ? -1.0 : 1.0;
    return loc - scale * sign * std::log1p(-2.0 * std::fabs(u));
  }

 private:
  // (0, 1], never zero.
  double uniform01_open() { return 1.0 - uniform01(); }

  std::mt19937_64 engine_;
};

}  // namespace csgq
