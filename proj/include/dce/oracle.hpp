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

// Finite-tau reference values. The nested frequency integrals are evaluated
// by adaptive Gauss-Kronrod quadrature with the exact Lorentzian drive
// transforms, so nothing is localized or dropped.

#include "dce/drive.hpp"
#include "dce/lorentz.hpp"
#include "dce/params.hpp"

#include <map>

namespace dce {

  struct QuadSpec {
    double rel_tol = 1e-9;
    double abs_floor = 0.0;
    /// Infinite ranges are mapped to [0, 1) by xi = a +- s u / (1 - u) with
    /// s = tail_scale * omega0.
    double tail_scale = 1.0;
    int max_depth = 20;

    void validate() const;
  };

  inline constexpr int kOracleMaxOrder = 3;

  /// G^(j)(w, xi) at finite omega0 tau, j <= 3.
  Complex finite_tau_g(int j, double omega, double xi, const NaturalParams &p, const QuadSpec &quad = {},
                       DriveKind drive = DriveKind::full);

  struct OracleValue {
    double value = 0.0;                // sum_p eps^p N_p(w) / tau
    double error = 0.0;                // achieved absolute estimate
    std::map<int, double> per_order;   // N_p(w) / tau without eps^p
  };

  /// N(w) / tau at one frequency for truncation order N <= 3. w must sit at
  /// least three peak widths away from every multiple of omega0.
  OracleValue finite_tau_spectrum(double omega, const NaturalParams &p, int n, const QuadSpec &quad = {},
                                  DriveKind drive = DriveKind::full);

} // namespace dce
