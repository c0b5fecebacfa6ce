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

#include "dce/params.hpp"

#include "dce/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dce {

  namespace {

    void require_positive(double value, const char *field) {
      if (!std::isfinite(value) || !(value > 0.0))
        throw ValidationError(field, "must be finite and > 0 (got " + std::to_string(value) + ")");
    }

  } // namespace

  void validate(const PhysicalParams &p) {
    require_positive(p.gamma0_len, "gamma0_len");
    require_positive(p.omega0, "omega0");
    require_positive(p.tau, "tau");
    require_positive(p.v, "v");
    if (!std::isfinite(p.epsilon) || !(p.epsilon > 0.0 && p.epsilon < 1.0))
      throw ValidationError("epsilon", "must satisfy 0 < epsilon < 1 (got " + std::to_string(p.epsilon) + ")");
    if (p.order < 1)
      throw ValidationError("order", "must be >= 1 (got " + std::to_string(p.order) + ")");
  }

  NaturalParams::NaturalParams(double gamma0, double omega0, double epsilon, double tau, int order,
                               Gamma0Sign sign)
      : gamma0_(gamma0), omega0_(omega0), epsilon_(epsilon), tau_(tau), order_(order), sign_(sign),
        gamma0_omega0_(gamma0 * omega0) {
    require_positive(gamma0, "gamma0");
    require_positive(omega0, "omega0");
    require_positive(tau, "tau");
    if (!std::isfinite(epsilon) || !(epsilon > 0.0 && epsilon < 1.0))
      throw ValidationError("epsilon", "must satisfy 0 < epsilon < 1");
    if (order < 1)
      throw ValidationError("order", "must be >= 1 (got " + std::to_string(order) + ")");
    if (!std::isfinite(gamma0_omega0_))
      throw ValidationError("gamma0", "gamma0 * omega0 is not finite");
  }

  NaturalParams NaturalParams::with_tau(double tau) const {
    return {gamma0_, omega0_, epsilon_, tau, order_, sign_};
  }

  NaturalParams NaturalParams::with_order(int order) const {
    return {gamma0_, omega0_, epsilon_, tau_, order, sign_};
  }

  NaturalParams NaturalParams::with_sign(Gamma0Sign sign) const {
    return {gamma0_, omega0_, epsilon_, tau_, order_, sign};
  }

  void require_monochromatic(const NaturalParams &p, double threshold) {
    if (!(p.omega0_tau() >= threshold))
      throw ValidationError("tau", "omega0 * tau = " + std::to_string(p.omega0_tau()) +
                                       " is below the monochromatic threshold " + std::to_string(threshold));
  }

  NaturalParams to_natural(const PhysicalParams &p, Gamma0Sign sign) {
    validate(p);
    return {p.gamma0_len / p.v, p.omega0, p.epsilon, p.tau, p.order, sign};
  }

  double squid_gamma0(const SquidCircuit &c) {
    require_positive(c.phi_bar0, "phi_bar0");
    // zero E_J or L_0 would divide by zero
    require_positive(c.ej0, "ej0");
    require_positive(c.l0, "l0");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return c.phi_bar0 * c.phi_bar0 / (two_pi * two_pi * c.ej0 * c.l0);
  }

  PhysicalParams squid_preset() {
    PhysicalParams p;
    p.gamma0_len = 0.44e-3;
    p.omega0 = 2.0 * std::numbers::pi * 10.30e9;
    p.epsilon = 0.25;
    p.tau = 1.0e-6;
    p.v = 1.2e8;
    p.order = 3;
    return p;
  }

} // namespace dce
