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

// Drive profile f(t) = cos(omega0 t) exp(-|t| / tau), the powers
// f_k(t) = [-f(t)]^k that enter the Robin parameter, and their Fourier
// transforms F_k(w) = int f_k(t) exp(i w t) dt as sums of Lorentzians.

#include "dce/lorentz.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace dce {

  class NaturalParams;

  inline constexpr int kMaxPower = 8;

  class DriveProfile {
  public:
    DriveProfile(double omega0, double tau);
    explicit DriveProfile(const NaturalParams &p);

    double omega0() const noexcept { return omega0_; }
    double tau() const noexcept { return tau_; }

    double operator()(double t) const noexcept;
    /// f_k(t) = [-f(t)]^k, evaluated directly.
    double power(int k, double t) const noexcept;

  private:
    double omega0_;
    double tau_;
  };

  using Rational = boost::rational<std::int64_t>;

  struct Harmonic {
    int m;          // multiple of omega0, >= 0
    Rational coeff; // c_m
  };

  /// f_k(t) = sum_m c_m cos(m omega0 t) exp(-k |t| / tau).
  struct TrigExpansion {
    int k = 0;
    std::vector<Harmonic> harmonics; // m descending: k, k-2, ...

    double eval(const DriveProfile &profile, double t) const;
  };

  TrigExpansion expand_power(int k, int max_power = kMaxPower);

  /// Lorentzians of width k / tau at +-m omega0 with weight pi c_m (2 pi c_0
  /// at the origin). Terms ordered by center.
  PeakedSum fourier_fk(const DriveProfile &profile, int k);

  enum class DriveKind {
    full,       // gamma(t) expanded to all orders in epsilon
    mirror_toy, // gamma(t) = gamma0 [1 + epsilon f_1(t)] exactly: f_k = 0 for k >= 2
    none,       // no modulation
  };

  const char *to_string(DriveKind kind);
  DriveKind drive_kind_from_string(const std::string &name);

  class DriveModel {
  public:
    DriveModel(DriveProfile profile, DriveKind kind = DriveKind::full);

    const DriveProfile &profile() const noexcept { return profile_; }
    DriveKind kind() const noexcept { return kind_; }

    TrigExpansion expansion(int k) const;
    PeakedSum fourier(int k) const;

  private:
    DriveProfile profile_;
    DriveKind kind_;
  };

} // namespace dce
