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

#include "dce/spectrum.hpp"

#include "dce/errors.hpp"
#include "dce/lorentz.hpp"
#include "dce/recurrence.hpp"
#include "parallel.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace dce {

  std::vector<double> SpectralResult::total() const {
    std::vector<double> t(grid.size(), 0.0);
    for (const auto &[p, values] : per_order) {
      const double weight = std::pow(params.epsilon(), p);
      for (std::size_t i = 0; i < t.size(); ++i)
        t[i] += weight * values[i];
    }
    return t;
  }

  const std::vector<double> &SpectralResult::order_values(int p) const {
    const auto it = per_order.find(p);
    if (it == per_order.end())
      throw ValidationError("p", "order " + std::to_string(p) + " not present in result");
    return it->second;
  }

  std::vector<double> default_grid(double omega0, double upper, int steps_per_omega0) {
    if (!(omega0 > 0.0) || !(upper > 0.0) || steps_per_omega0 < 1)
      throw ValidationError("grid", "omega0, upper and steps must be positive");
    const auto count = static_cast<int>(std::floor(upper * steps_per_omega0 + 1e-9));
    std::vector<double> g;
    g.reserve(count);
    for (int i = 1; i <= count; ++i)
      g.push_back(omega0 * (static_cast<double>(i) / steps_per_omega0));
    return g;
  }

  namespace {

    void validate_grid(std::span<const double> grid, double upper) {
      if (grid.empty())
        throw ValidationError("grid", "must not be empty");
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || !(grid[i] > 0.0))
          throw ValidationError("grid", "frequencies must be finite and > 0");
        if (i > 0 && !(grid[i] > grid[i - 1]))
          throw ValidationError("grid", "must be strictly increasing");
      }
      if (grid.back() > upper)
        throw ValidationError("grid", "extends past (N + 1) * 1.2 * omega0");
    }

    // Peaks of G^(j)(w, .) as functions of xi: centers w - M omega0.
    PeakedSum kernel_in_xi(const GOrder &g, const NaturalParams &p, double omega) {
      const Complex root = root_prefactor(p, omega);
      PeakedSum s;
      for (const auto &t : g.terms) {
        const double center = omega - t.harmonic * p.omega0();
        s.add(root * t.prefactor(p, omega, center), Lorentzian(center, t.width_index / p.tau()));
      }
      return s;
    }

  } // namespace

  SpectralResult spectral_density(const NaturalParams &p, std::span<const double> grid, int n, DriveKind drive) {
    if (n < 1 || n > kMaxOrder)
      throw ValidationError("order", "N must be in [1, " + std::to_string(kMaxOrder) + "]");
    require_monochromatic(p);
    validate_grid(grid, (n + 1) * 1.2 * p.omega0());

    const DriveModel model(DriveProfile(p), drive);
    const auto kernels = build_all(p, model, n);

    SpectralResult result{std::vector<double>(grid.begin(), grid.end()), {}, p.with_order(n), n, drive};
    for (int order = 2; order <= n + 1; ++order)
      result.per_order[order].assign(grid.size(), 0.0);

    const double g0 = p.gamma0();
    // Theta(-xi) / (|xi| (1 + xi^2 gamma0^2)) times the xi^2 of the two kernels.
    const SmoothFn measure = [g0](double xi) -> Complex {
      if (!(xi < 0.0))
        return 0.0;
      return -xi / (1.0 + xi * xi * g0 * g0);
    };
    const double scale = p.omega0_tau();
    const double rel_cut = 1.0 / scale;

    detail::parallel_for(grid.size(), [&](std::size_t i) {
      const double omega = grid[i];
      std::vector<PeakedSum> in_xi;
      in_xi.reserve(kernels.size());
      for (const auto &g : kernels)
        in_xi.push_back(kernel_in_xi(g, p, omega));

      for (int order = 2; order <= n + 1; ++order) {
        Complex acc{};
        double magnitude = 0.0;
        for (int j = 1; j < order; ++j) {
          const int k = order - j;
          if (j > n || k > n)
            continue;
          const auto pairs = drop_subleading(pair_product(in_xi[j - 1], in_xi[k - 1]), scale, rel_cut);
          if (pairs.empty())
            continue;
          double tol = 0.0;
          for (const auto &pr : pairs)
            tol = std::max(tol, std::min(pr.a.width(), pr.b.width()) / 10.0);
          const Complex c = localize(measure, pairs, tol);
          acc += c;
          magnitude += std::abs(c);
        }
        acc *= kSpectralNormalization / p.tau();
        magnitude *= kSpectralNormalization / p.tau();
        if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
          throw SingularEvaluationError("N_" + std::to_string(order) + " is not finite at w = " +
                                        std::to_string(omega));
        if (std::abs(acc.imag()) > 1e-10 * magnitude)
          throw NumericalError("N_" + std::to_string(order) + " has an imaginary residue " +
                               std::to_string(acc.imag()) + " at w = " + std::to_string(omega));
        result.per_order[order][i] = acc.real();
      }
    });
    return result;
  }

  SpectralResult dirichlet_toy(const NaturalParams &p, std::span<const double> grid) {
    return spectral_density(p, grid, 3, DriveKind::mirror_toy);
  }

  RateConvention RateConvention::cyclic_per_tau() { return {2.0 * std::numbers::pi, true}; }

  std::string RateConvention::describe() const {
    std::ostringstream os;
    os << "rate = int N(w) dw";
    if (measure_divisor != 1.0)
      os << " / " << measure_divisor;
    os << (per_tau ? " / tau" : " (per pulse)");
    return os.str();
  }

  namespace {

    // Trapezoid of y over x restricted to [lo, hi]; y linear between nodes.
    double trapezoid(const std::vector<double> &x, const std::vector<double> &y, double lo, double hi) {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = std::max(x[i], lo);
        const double b = std::min(x[i + 1], hi);
        if (!(b > a))
          continue;
        const double slope = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        const double ya = y[i] + slope * (a - x[i]);
        const double yb = y[i] + slope * (b - x[i]);
        s += 0.5 * (ya + yb) * (b - a);
      }
      return s;
    }

  } // namespace

  RateReport photon_rate(const SpectralResult &result, const RateConvention &convention) {
    if (!(convention.measure_divisor > 0.0))
      throw ValidationError("measure_divisor", "must be > 0");
    const double omega0 = result.params.omega0();
    const int support_bands = (result.order + 1) / 2;
    if (result.grid.empty() || result.grid.back() < support_bands * omega0 * (1.0 - 1e-12))
      throw ValidationError("grid", "must span [0, " + std::to_string(support_bands) + " omega0]");
    if (result.grid.size() < static_cast<std::size_t>(200 * support_bands))
      throw ValidationError("grid", "needs at least " + std::to_string(200 * support_bands) + " points");

    // N(w) vanishes linearly at w = 0; the origin closes the first panel.
    std::vector<double> x{0.0};
    x.insert(x.end(), result.grid.begin(), result.grid.end());
    const auto total_values = result.total();
    std::vector<double> total{0.0};
    total.insert(total.end(), total_values.begin(), total_values.end());
    std::vector<double> base{0.0};
    if (result.per_order.count(2))
      for (double v : result.order_values(2))
        base.push_back(result.params.epsilon() * result.params.epsilon() * v);
    else
      base.resize(x.size(), 0.0);

    const double xmax = x.back();
    const double t_h = trapezoid(x, total, 0.0, xmax);

    std::vector<double> x2, y2;
    for (std::size_t i = 0; i < x.size(); i += 2) {
      x2.push_back(x[i]);
      y2.push_back(total[i]);
    }
    if (x2.back() != xmax) {
      x2.push_back(xmax);
      y2.push_back(total.back());
    }
    const double t_2h = trapezoid(x2, y2, 0.0, xmax);
    const double estimate = std::abs(t_h - t_2h) / 3.0;
    if (t_h != 0.0 && estimate > 0.005 * std::abs(t_h))
      throw ResolutionError("grid too coarse: estimated relative quadrature error " +
                                std::to_string(estimate / std::abs(t_h)),
                            estimate);

    const double unit = (convention.per_tau ? 1.0 : result.params.tau()) / convention.measure_divisor;
    RateReport r;
    r.convention = convention;
    const int bands = static_cast<int>(std::ceil(xmax / omega0 - 1e-9));
    for (int m = 0; m < bands; ++m)
      r.band_rates.push_back(unit * trapezoid(x, total, m * omega0, (m + 1) * omega0));
    r.total_rate = 0.0;
    for (double b : r.band_rates)
      r.total_rate += b;
    r.base_rate = unit * trapezoid(x, base, 0.0, xmax);
    r.enhancement = r.base_rate != 0.0 ? r.total_rate / r.base_rate : 1.0;
    for (double b : r.band_rates)
      r.band_fractions.push_back(r.total_rate != 0.0 ? b / r.total_rate : 0.0);
    r.quadrature_error = unit * estimate;
    return r;
  }

  nlohmann::json to_json(const SpectralResult &r) {
    nlohmann::json per_order = nlohmann::json::object();
    for (const auto &[p, values] : r.per_order)
      per_order[std::to_string(p)] = values;
    const auto &n = r.params;
    return {{"natural",
             {{"gamma0", n.gamma0()},
              {"gamma0_sign", n.sign() == Gamma0Sign::negative ? "-" : "+"},
              {"omega0", n.omega0()},
              {"epsilon", n.epsilon()},
              {"tau", n.tau()},
              {"gamma0_omega0", n.gamma0_omega0()},
              {"omega0_tau", n.omega0_tau()}}},
            {"order", r.order},
            {"drive", to_string(r.drive)},
            {"normalization_tag", r.normalization_tag},
            {"grid", r.grid},
            {"per_order_over_tau", per_order},
            {"total_over_tau", r.total()}};
  }

  nlohmann::json to_json(const RateReport &r) {
    return {{"convention",
             {{"measure_divisor", r.convention.measure_divisor},
              {"per_tau", r.convention.per_tau},
              {"description", r.convention.describe()}}},
            {"total_rate", r.total_rate},
            {"band_rates", r.band_rates},
            {"base_rate", r.base_rate},
            {"quadrature_error", r.quadrature_error},
            {"ratios", {{"enhancement", r.enhancement}, {"band_fractions", r.band_fractions}}}};
  }

} // namespace dce
