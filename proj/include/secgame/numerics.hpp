// Copyright 2026 The secgame Authors
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

// Small scalar numerical kernels shared by the model modules.

#ifndef SECGAME_NUMERICS_HPP_
#define SECGAME_NUMERICS_HPP_

#include <functional>
#include <string>
#include <vector>

namespace secgame {

using ScalarFn = std::function<double(double)>;

struct Minimum {
  double x;
  double fx;
};

// Golden-section search for the minimum of a unimodal `f` on [lo, hi].
// Stops when the bracket is narrower than `tol`. The returned point is the
// best evaluated one, with ties going to the smaller x.
Minimum GoldenSectionMinimize(const ScalarFn& f, double lo, double hi,
                              double tol);

// Bisection for a sign change of `f` on [lo, hi]. Requires
// f(lo) * f(hi) <= 0. Returns the midpoint of the final bracket.
double Bisect(const ScalarFn& f, double lo, double hi, double tol,
              int max_iter = 200);

struct Quadrature {
  double value;
  double error_estimate;
};

// Adaptive Simpson rule on [a, b] with absolute tolerance `tol`. Throws
// NumericalError when the recursion depth is exhausted before reaching
// the tolerance.
Quadrature AdaptiveSimpson(const ScalarFn& f, double a, double b, double tol,
                           int max_depth = 50);

// Uniform grid described as "lo:hi:step" (inclusive of hi when it lies on
// the lattice, within a 1e-9 relative slack).
struct GridRange {
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.01;

  std::vector<double> Values() const;
  static GridRange Parse(const std::string& text);
};

// n equally spaced points on [lo, hi], endpoints included.
std::vector<double> Linspace(double lo, double hi, int n);

}  // namespace secgame

#endif  // SECGAME_NUMERICS_HPP_
