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

#include "secgame/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

constexpr double kInvPhi = 0.6180339887498948482;

void Consider(Minimum& best, double x, double fx) {
  if (fx < best.fx || (fx == best.fx && x < best.x)) best = {x, fx};
}

double SimpsonStep(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double AdaptiveSimpsonRec(const ScalarFn& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol,
                          int depth, double& err) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = SimpsonStep(a, m, fa, flm, fm);
  const double right = SimpsonStep(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    err += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    throw NumericalError("adaptive Simpson: recursion depth exhausted",
                         left + right, std::abs(delta) / 15.0);
  }
  return AdaptiveSimpsonRec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                            err) +
         AdaptiveSimpsonRec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                            err);
}

}  // namespace

Minimum GoldenSectionMinimize(const ScalarFn& f, double lo, double hi,
                              double tol) {
  Require(lo <= hi, "golden section: empty interval");
  Minimum best{lo, f(lo)};
  Consider(best, hi, f(hi));
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  Consider(best, c, fc);
  Consider(best, d, fd);
  return best;
}

double Bisect(const ScalarFn& f, double lo, double hi, double tol,
              int max_iter) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  const double fhi = f(hi);
  if (fhi == 0.0) return hi;
  Require(std::signbit(flo) != std::signbit(fhi),
          "bisection: endpoints do not bracket a sign change");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Quadrature AdaptiveSimpson(const ScalarFn& f, double a, double b, double tol,
                           int max_depth) {
  if (a == b) return {0.0, 0.0};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  double err = 0.0;
  const double whole = SimpsonStep(a, b, fa, fm, fb);
  const double value =
      AdaptiveSimpsonRec(f, a, b, fa, fm, fb, whole, tol, max_depth, err);
  return {value, err};
}

std::vector<double> GridRange::Values() const {
  Require(step > 0.0, "grid step must be positive");
  Require(hi >= lo, "grid upper bound below lower bound");
  const double span = (hi - lo) / step;
  const auto count = static_cast<long>(std::floor(span * (1.0 + 1e-9) + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<size_t>(count) + 1);
  for (long i = 0; i <= count; ++i) {
    out.push_back(i == count && std::abs(span - count) < 1e-9 * (1.0 + span)
                      ? hi
                      : lo + static_cast<double>(i) * step);
  }
  return out;
}

GridRange GridRange::Parse(const std::string& text) {
  std::stringstream in(text);
  std::string part;
  std::vector<double> parts;
  while (std::getline(in, part, ':')) {
    char* end = nullptr;
    const double value = std::strtod(part.c_str(), &end);
    Require(!part.empty() && end == part.c_str() + part.size(),
            "malformed grid '" + text + "', expected lo:hi:step");
    parts.push_back(value);
  }
  Require(parts.size() == 3, "malformed grid '" + text + "', expected lo:hi:step");
  GridRange grid{parts[0], parts[1], parts[2]};
  grid.Values();  // validates
  return grid;
}

std::vector<double> Linspace(double lo, double hi, int n) {
  Require(n >= 1, "linspace needs at least one point");
  std::vector<double> out(static_cast<size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < n; ++i) {
    out[static_cast<size_t>(i)] =
        i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  return out;
}

}  // namespace secgame
