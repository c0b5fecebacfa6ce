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

// Drive and boundary parameters. Physical inputs are SI; everything downstream
// works in natural units with hbar = v = 1, so lengths become times (L / v).

namespace dce {

  struct PhysicalParams {
    double gamma0_len = 0.0; // static Robin length [m]
    double omega0 = 0.0;     // drive angular frequency [rad/s]
    double epsilon = 0.0;    // drive amplitude, 0 < epsilon < 1
    double tau = 0.0;        // envelope decay time [s]
    double v = 0.0;          // waveguide light speed [m/s]
    int order = 1;           // perturbative truncation N
  };

  void validate(const PhysicalParams &p);

  /// Sign attached to gamma0. Stored separately from the magnitude and only
  /// applied where the caller asks for it.
  enum class Gamma0Sign { positive, negative };

  inline constexpr double kMonochromaticThreshold = 100.0;

  class NaturalParams {
  public:
    NaturalParams(double gamma0, double omega0, double epsilon, double tau, int order,
                  Gamma0Sign sign = Gamma0Sign::positive);

    double gamma0() const noexcept { return gamma0_; }
    double signed_gamma0() const noexcept { return sign_ == Gamma0Sign::negative ? -gamma0_ : gamma0_; }
    Gamma0Sign sign() const noexcept { return sign_; }
    double omega0() const noexcept { return omega0_; }
    double epsilon() const noexcept { return epsilon_; }
    double tau() const noexcept { return tau_; }
    int order() const noexcept { return order_; }

    /// Dimensionless gamma0 * omega0 (magnitude).
    double gamma0_omega0() const noexcept { return gamma0_omega0_; }
    double omega0_tau() const noexcept { return omega0_ * tau_; }

    NaturalParams with_tau(double tau) const;
    NaturalParams with_order(int order) const;
    NaturalParams with_sign(Gamma0Sign sign) const;

    friend bool operator==(const NaturalParams &, const NaturalParams &) = default;

  private:
    double gamma0_;
    double omega0_;
    double epsilon_;
    double tau_;
    int order_;
    Gamma0Sign sign_;
    double gamma0_omega0_;
  };

  /// Throws ValidationError unless omega0 * tau >= threshold.
  void require_monochromatic(const NaturalParams &p, double threshold = kMonochromaticThreshold);

  NaturalParams to_natural(const PhysicalParams &p, Gamma0Sign sign = Gamma0Sign::positive);

  struct SquidCircuit {
    double phi_bar0 = 0.0; // flux quantum scale
    double ej0 = 0.0;      // Josephson energy E_J^0
    double l0 = 0.0;       // inductance per unit length
  };

  /// Magnitude of the static Robin length, phi^2 / ((2 pi)^2 E_J L_0). The
  /// circuit formula carries an overall minus sign; use Gamma0Sign to keep it.
  double squid_gamma0(const SquidCircuit &c);

  /// Wilson et al. SQUID waveguide: 10.30 GHz drive, epsilon = 0.25,
  /// v = 1.2e8 m/s, gamma0 = 0.44 mm, order 3. tau = 1 us (any tau with
  /// omega0 * tau >> 1 gives the same N / tau).
  PhysicalParams squid_preset();

} // namespace dce
