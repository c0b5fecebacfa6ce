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

// Spectral distribution of created particles,
//   N(w) = sum'_{j,k} eps^{j+k} int_{-inf}^{0} dxi G^(j)*(w, xi) G^(k)(w, xi) / (|xi| (1 + xi^2 gamma0^2)),
// with j + k <= N + 1, evaluated in the monochromatic limit and split by
// total order p = j + k. Values are stored divided by tau.

#include "dce/drive.hpp"
#include "dce/params.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace dce {

  /// Identifies the overall constant in front of N(w). The kernels carry one
  /// gamma0 per recurrence step, the in/out Green-function factors cancel, and
  /// a(k) is delta-normalized in angular frequency, so no extra constant
  /// appears; the first-order result reproduces the reference parabolic band.
  inline constexpr double kSpectralNormalization = 1.0;
  inline constexpr const char *kNormalizationTag = "first-order-anchor/unit/gamma0-per-step";

  struct SpectralResult {
    std::vector<double> grid;                  // strictly increasing, > 0
    std::map<int, std::vector<double>> per_order; // p -> N_p(w) / tau (without eps^p)
    NaturalParams params;
    int order = 1;
    DriveKind drive = DriveKind::full;
    std::string normalization_tag = kNormalizationTag;

    /// sum_p eps^p N_p / tau at every grid point.
    std::vector<double> total() const;
    const std::vector<double> &order_values(int p) const;
  };

  /// Uniform grid of step omega0 / steps_per_omega0 on (0, upper * omega0];
  /// every multiple of omega0 / 2 is hit exactly.
  std::vector<double> default_grid(double omega0, double upper = 2.05, int steps_per_omega0 = 400);

  SpectralResult spectral_density(const NaturalParams &p, std::span<const double> grid, int n,
                                  DriveKind drive = DriveKind::full);

  /// gamma(t) = gamma0 [1 + eps f_1(t)]: f_k = 0 for k >= 2, order 3.
  SpectralResult dirichlet_toy(const NaturalParams &p, std::span<const double> grid);

  struct RateConvention {
    /// Frequency measure: 1 counts per unit angular frequency, 2 pi per unit
    /// cyclic frequency.
    double measure_divisor = 1.0;
    /// true: rate per effective drive time tau; false: number per pulse.
    bool per_tau = true;

    std::string describe() const;
    static RateConvention angular_per_tau() { return {1.0, true}; }
    static RateConvention cyclic_per_tau();
  };

  struct RateReport {
    double total_rate = 0.0;
    std::vector<double> band_rates; // [m omega0, (m+1) omega0]
    RateConvention convention;
    double base_rate = 0.0;         // eps^2 N_2 alone
    double enhancement = 1.0;       // total / base
    std::vector<double> band_fractions;
    double quadrature_error = 0.0;  // estimated absolute error of total_rate
  };

  RateReport photon_rate(const SpectralResult &result, const RateConvention &convention = {});

  nlohmann::json to_json(const SpectralResult &r);
  nlohmann::json to_json(const RateReport &r);

} // namespace dce
