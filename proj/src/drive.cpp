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

#include "dce/drive.hpp"

#include "dce/errors.hpp"
#include "dce/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dce {

  using std::numbers::pi;

  DriveProfile::DriveProfile(double omega0, double tau) : omega0_(omega0), tau_(tau) {
    if (!(omega0 > 0.0) || !std::isfinite(omega0))
      throw ValidationError("omega0", "must be finite and > 0");
    if (!(tau > 0.0) || !std::isfinite(tau))
      throw ValidationError("tau", "must be finite and > 0");
  }

  DriveProfile::DriveProfile(const NaturalParams &p) : DriveProfile(p.omega0(), p.tau()) {}

  double DriveProfile::operator()(double t) const noexcept {
    return std::cos(omega0_ * t) * std::exp(-std::abs(t) / tau_);
  }

  double DriveProfile::power(int k, double t) const noexcept { return std::pow(-(*this)(t), k); }

  double TrigExpansion::eval(const DriveProfile &profile, double t) const {
    const double envelope = std::exp(-k * std::abs(t) / profile.tau());
    double s = 0.0;
    for (const auto &h : harmonics)
      s += boost::rational_cast<double>(h.coeff) * std::cos(h.m * profile.omega0() * t);
    return s * envelope;
  }

  namespace {

    std::int64_t binomial(int n, int r) {
      std::int64_t b = 1;
      for (int i = 1; i <= r; ++i)
        b = b * (n - r + i) / i;
      return b;
    }

  } // namespace

  TrigExpansion expand_power(int k, int max_power) {
    if (k < 1 || k > max_power)
      throw ValidationError("k", "power index must be in [1, " + std::to_string(max_power) + "], got " +
                                     std::to_string(k));
    // cos^k = 2^-k sum_j C(k, j) cos((k - 2j) theta); j and k - j fold onto m = |k - 2j|.
    TrigExpansion e;
    e.k = k;
    const std::int64_t denom = std::int64_t{1} << k;
    const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
    for (int j = 0; 2 * j <= k; ++j) {
      const int m = k - 2 * j;
      const std::int64_t weight = (m == 0) ? binomial(k, j) : 2 * binomial(k, j);
      e.harmonics.push_back({m, Rational(sign * weight, denom)});
    }
    return e;
  }

  PeakedSum fourier_fk(const DriveProfile &profile, int k) {
    const auto e = expand_power(k);
    const double width = k / profile.tau();
    PeakedSum s;
    // Ascending centers: negative harmonics (largest |m| first), origin, positive.
    for (const auto &h : e.harmonics)
      if (h.m > 0)
        s.add(pi * boost::rational_cast<double>(h.coeff), Lorentzian(-h.m * profile.omega0(), width));
    for (auto it = e.harmonics.rbegin(); it != e.harmonics.rend(); ++it) {
      const double c = boost::rational_cast<double>(it->coeff);
      if (it->m == 0)
        s.add(2.0 * pi * c, Lorentzian(0.0, width));
      else
        s.add(pi * c, Lorentzian(it->m * profile.omega0(), width));
    }
    return s;
  }

  const char *to_string(DriveKind kind) {
    switch (kind) {
    case DriveKind::full:
      return "full";
    case DriveKind::mirror_toy:
      return "mirror_toy";
    case DriveKind::none:
      return "none";
    }
    return "?";
  }

  DriveKind drive_kind_from_string(const std::string &name) {
    if (name == "full")
      return DriveKind::full;
    if (name == "mirror_toy")
      return DriveKind::mirror_toy;
    if (name == "none")
      return DriveKind::none;
    throw ValidationError("drive", "unknown drive kind '" + name + "'");
  }

  DriveModel::DriveModel(DriveProfile profile, DriveKind kind) : profile_(profile), kind_(kind) {}

  TrigExpansion DriveModel::expansion(int k) const {
    auto e = expand_power(k);
    if (kind_ == DriveKind::none || (kind_ == DriveKind::mirror_toy && k >= 2))
      e.harmonics.clear();
    return e;
  }

  PeakedSum DriveModel::fourier(int k) const {
    if (kind_ == DriveKind::none || (kind_ == DriveKind::mirror_toy && k >= 2)) {
      expand_power(k); // range check only
      return {};
    }
    return fourier_fk(profile_, k);
  }

} // namespace dce
