// Copyright (c) 2026 The dce-bands authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reference quadrature for the tests: adaptive Gauss-Kronrod on panels cut at
// the given points, with both tails mapped onto [0, 1).

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <complex>
#include <functional>
#include <vector>

namespace dce::test {

  template <class F> auto gk(F f, double a, double b, double tol = 1e-11) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, tol);
  }

  /// Integral over the real line; cuts must be sorted.
  template <class F> auto real_line(F f, std::vector<double> cuts, double scale, double tol = 1e-11) {
    std::sort(cuts.begin(), cuts.end());
    auto sum = gk([&](double u) { return f(cuts.front() - scale * u / (1 - u)) * (scale / ((1 - u) * (1 - u))); },
                  0.0, 1.0, tol);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      sum += gk(f, cuts[i], cuts[i + 1], tol);
    sum += gk([&](double u) { return f(cuts.back() + scale * u / (1 - u)) * (scale / ((1 - u) * (1 - u))); },
              0.0, 1.0, tol);
    return sum;
  }

  /// Cuts at c and c +- w 2^i up to span around each center.
  inline std::vector<double> graded(std::vector<std::pair<double, double>> peaks, double span) {
    std::vector<double> cuts;
    for (auto [c, w] : peaks) {
      cuts.push_back(c);
      for (double d = w; d < span; d *= 2.0) {
        cuts.push_back(c - d);
        cuts.push_back(c + d);
      }
      cuts.push_back(c - span);
      cuts.push_back(c + span);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
  }

} // namespace dce::test
