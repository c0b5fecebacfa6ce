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

// Normalized Lorentzian lineshapes and the exact identities that let every
// frequency integral of the monochromatic limit be done in closed form.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace dce {

  using Complex = std::complex<double>;

  /// L(x; c, w) = (1/pi) w / ((x - c)^2 + w^2), unit area.
  class Lorentzian {
  public:
    Lorentzian(double center, double width);

    double center() const noexcept { return center_; }
    double width() const noexcept { return width_; }
    double operator()(double x) const noexcept;

    friend bool operator==(const Lorentzian &, const Lorentzian &) = default;

  private:
    double center_;
    double width_;
  };

  struct PeakedTerm {
    Complex coeff;
    Lorentzian peak;
  };

  class PeakedSum {
  public:
    PeakedSum() = default;
    explicit PeakedSum(std::vector<PeakedTerm> terms);

    void add(Complex coeff, Lorentzian peak);

    const std::vector<PeakedTerm> &terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    auto begin() const noexcept { return terms_.begin(); }
    auto end() const noexcept { return terms_.end(); }

    /// Sum of coefficients, i.e. the exact integral over the real line.
    Complex integral() const noexcept;

  private:
    std::vector<PeakedTerm> terms_;
  };

  /// Complex function of one real frequency, analytic on the real axis.
  using SmoothFn = std::function<Complex(double)>;

  Complex eval(const PeakedSum &s, double x);

  /// Exact: integral of L_a * L_b = L(c_a; c_b, w_a + w_b).
  double product_integral(const Lorentzian &a, const Lorentzian &b) noexcept;

  /// Exact: L_a * L_b (convolution) = L(.; c_a + c_b, w_a + w_b).
  Lorentzian convolve(const Lorentzian &a, const Lorentzian &b) noexcept;

  /// A tenth of the narrowest width in the sum.
  double default_coincidence_tol(const PeakedSum &s);

  /// Monochromatic-limit integral of smooth * peaked: the smooth factor is
  /// sampled at each peak center and weighted by the peak's exact area.
  /// Centers closer than coincidence_tol share one sample.
  Complex localize(const SmoothFn &smooth, const PeakedSum &peaked, double coincidence_tol);
  Complex localize(const SmoothFn &smooth, const PeakedSum &peaked);

  /// One term of conj(lhs) * rhs: two peaks in the same variable.
  struct PeakedPair {
    Complex coeff;
    Lorentzian a;
    Lorentzian b;
  };

  using PairedSum = std::vector<PeakedPair>;

  /// All pairings conj(lhs_i) * rhs_j.
  PairedSum pair_product(const PeakedSum &lhs, const PeakedSum &rhs);

  /// product_integral(a, b) relative to the same pair moved onto a common
  /// center: (w_a + w_b)^2 / ((c_a - c_b)^2 + (w_a + w_b)^2). In (0, 1].
  double overlap_ratio(const PeakedPair &p) noexcept;

  /// Reduction point of the monochromatic limit: removes pairings whose
  /// overlap ratio is <= rel_cut. For peaks a multiple of omega0 apart with
  /// widths ~1/tau the ratio is O((omega0 tau)^-2). scale is omega0 * tau.
  PairedSum drop_subleading(const PairedSum &pairs, double scale, double rel_cut);

  /// Monochromatic-limit integral of smooth * sum of pairs. Coincident pairs
  /// sample smooth at their common center; separated pairs split their exact
  /// integral between the two centers by the height of the partner peak.
  Complex localize(const SmoothFn &smooth, const PairedSum &pairs, double coincidence_tol);

} // namespace dce
