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

// Order-j Bogoliubov kernels G^(j)(w, xi) in the monochromatic limit.
//
// The operator recurrence
//   O^(j)_{w,xi} = sum_{k=1}^{j} gamma0 int dxi1/(2 pi) K(xi1) F_k(w - xi1) O^(j-k)_{xi1,xi}
//   O^(0)_{xi1,xi} = K(xi1)^-1 delta(xi1 - xi) d/dx,   K(x) = i x / (1 - i x gamma0)
// acting on g(xi, x) = sin(xi x) + xi gamma0 cos(xi x) at x = 0 (where
// d/dx g = xi) produces a finite sum of terms
//   coeff * prod K(arg_i)^p_i * xi * L(w - xi; M omega0, W / tau)
// and G^(j) = 2i sqrt(w / (1 + w^2 gamma0^2)) times that sum. Each step
// integrates xi1 against two peaks: the peaked parts convolve exactly and K is
// sampled at the drive-side center xi1 = w - m omega0.

#include "dce/drive.hpp"
#include "dce/lorentz.hpp"
#include "dce/params.hpp"

#include <nlohmann/json_fwd.hpp>

#include <span>
#include <string>
#include <vector>

namespace dce {

  class RationalKernel {
  public:
    explicit RationalKernel(double gamma0) : gamma0_(gamma0) {}
    Complex operator()(double x) const noexcept { return Complex(0.0, x) / Complex(1.0, -x * gamma0_); }

  private:
    double gamma0_;
  };

  /// 2i sqrt(w / (1 + w^2 gamma0^2)); w >= 0.
  Complex root_prefactor(const NaturalParams &p, double omega);

  /// Integer-affine frequency omega_c * w + xi_c * xi + shift * omega0.
  struct FreqArg {
    int omega = 0;
    int xi = 0;
    int shift = 0;

    double value(double w, double xi_value, double omega0) const noexcept {
      return omega * w + xi * xi_value + shift * omega0;
    }
    friend auto operator<=>(const FreqArg &, const FreqArg &) = default;
  };

  struct KernelFactor {
    FreqArg arg;
    int power = 0;
    friend bool operator==(const KernelFactor &, const KernelFactor &) = default;
  };

  struct PathStep {
    int k; // power of the drive applied at this step
    int m; // signed harmonic picked from F_k
    friend auto operator<=>(const PathStep &, const PathStep &) = default;
  };

  struct GTerm {
    Complex coeff{1.0, 0.0};
    std::vector<KernelFactor> kernels;
    int harmonic = 0;      // M: peak center M omega0 in (w - xi)
    int width_index = 0;   // W: peak width W / tau; 0 marks the exact delta of order zero
    std::vector<PathStep> path; // outermost step first

    bool is_delta() const noexcept { return width_index == 0; }
    /// coeff * prod K(arg)^p. Excludes the root prefactor and the linear xi.
    Complex prefactor(const NaturalParams &p, double omega, double xi) const;
    Lorentzian peak(const NaturalParams &p) const;
    std::string signature() const;
    std::string describe() const;
  };

  struct GOrder {
    int j = 0;
    std::vector<GTerm> terms;
  };

  enum class Reduction { monochromatic, symbolic };

  inline constexpr int kMaxOrder = kMaxPower;

  /// O^(0): one delta term carrying K(xi1)^-1.
  GOrder identity_order();

  GOrder base_g(const NaturalParams &p, const DriveModel &drive);

  /// Order j = lower.size() from orders 0 .. j-1 (lower[i].j == i).
  GOrder raise_order(std::span<const GOrder> lower, const NaturalParams &p, const DriveModel &drive,
                     Reduction mode = Reduction::monochromatic, int max_order = kMaxOrder);

  /// G^(1) .. G^(N).
  std::vector<GOrder> build_all(const NaturalParams &p, const DriveModel &drive, int n);

  /// Full G^(j)(w, xi) including the root prefactor and the linear xi factor.
  Complex evaluate(const GOrder &g, const NaturalParams &p, double omega, double xi);

  /// Term table for inspection: signature, M, W, prefactor description.
  nlohmann::json dump_terms(const GOrder &g);

} // namespace dce
