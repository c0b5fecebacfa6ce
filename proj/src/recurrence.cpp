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

#include "dce/recurrence.hpp"

#include "dce/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dce {

  using std::numbers::pi;

  Complex root_prefactor(const NaturalParams &p, double omega) {
    const double g = p.gamma0();
    return Complex(0.0, 2.0 * std::sqrt(omega / (1.0 + omega * omega * g * g)));
  }

  Complex GTerm::prefactor(const NaturalParams &p, double omega, double xi) const {
    const RationalKernel kernel(p.signed_gamma0());
    Complex v = coeff;
    for (const auto &f : kernels) {
      const Complex k = kernel(f.arg.value(omega, xi, p.omega0()));
      v *= f.power > 0 ? std::pow(k, f.power) : 1.0 / std::pow(k, -f.power);
    }
    return v;
  }

  Lorentzian GTerm::peak(const NaturalParams &p) const {
    if (is_delta())
      throw ValidationError("width_index", "the order-zero delta has no Lorentzian peak");
    return {harmonic * p.omega0(), width_index / p.tau()};
  }

  std::string GTerm::signature() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < path.size(); ++i)
      os << (i ? "." : "") << "F" << path[i].k << "[" << path[i].m << "]";
    return path.empty() ? "delta" : os.str();
  }

  namespace {

    std::string describe_arg(const FreqArg &a) {
      std::ostringstream os;
      bool first = true;
      auto put = [&](int c, const char *sym) {
        if (c == 0)
          return;
        if (c < 0)
          os << (first ? "-" : " - ");
        else if (!first)
          os << " + ";
        if (std::abs(c) != 1 || *sym == '\0')
          os << std::abs(c);
        os << sym;
        first = false;
      };
      put(a.omega, "w");
      put(a.xi, "xi");
      put(a.shift, "w0");
      if (first)
        os << "0";
      return os.str();
    }

    // Canonical factor list: merged by argument, zero powers removed.
    std::vector<KernelFactor> canonical(std::vector<KernelFactor> fs) {
      std::sort(fs.begin(), fs.end(), [](const auto &x, const auto &y) { return x.arg < y.arg; });
      std::vector<KernelFactor> out;
      for (const auto &f : fs) {
        if (!out.empty() && out.back().arg == f.arg)
          out.back().power += f.power;
        else
          out.push_back(f);
        if (out.back().power == 0)
          out.pop_back();
      }
      return out;
    }

    FreqArg substitute(const FreqArg &a, const FreqArg &outer) {
      return {a.omega * outer.omega, a.omega * outer.xi + a.xi, a.omega * outer.shift + a.shift};
    }

    // One recurrence step: gamma0 int dxi1/(2 pi) K(xi1) [c L(w - xi1; m w0)] T(xi1, xi).
    GTerm compose(int k, int m, Complex drive_coeff, const GTerm &lower, double gamma0) {
      // Where xi1 ends up: the delta pins it to xi exactly; otherwise the
      // kernel factors are sampled at the drive-side peak xi1 = w - m w0.
      const FreqArg xi1 = lower.is_delta() ? FreqArg{0, 1, 0} : FreqArg{1, 0, -m};

      GTerm t;
      t.coeff = lower.coeff * drive_coeff * (gamma0 / (2.0 * pi));
      t.kernels.push_back({xi1, 1});
      for (const auto &f : lower.kernels)
        t.kernels.push_back({substitute(f.arg, xi1), f.power});
      t.kernels = canonical(std::move(t.kernels));
      t.harmonic = lower.is_delta() ? m : m + lower.harmonic;
      t.width_index = k + lower.width_index;
      t.path.push_back({k, m});
      t.path.insert(t.path.end(), lower.path.begin(), lower.path.end());
      return t;
    }

    void sort_terms(std::vector<GTerm> &terms) {
      std::stable_sort(terms.begin(), terms.end(), [](const GTerm &x, const GTerm &y) {
        if (x.harmonic != y.harmonic)
          return x.harmonic < y.harmonic;
        if (x.width_index != y.width_index)
          return x.width_index < y.width_index;
        return x.path < y.path;
      });
    }

  } // namespace

  std::string GTerm::describe() const {
    std::ostringstream os;
    os << "(" << coeff.real() << (coeff.imag() < 0 ? "-" : "+") << std::abs(coeff.imag()) << "i)";
    for (const auto &f : kernels) {
      os << " K(" << describe_arg(f.arg) << ")";
      if (f.power != 1)
        os << "^" << f.power;
    }
    return os.str();
  }

  GOrder identity_order() {
    GTerm delta;
    delta.kernels.push_back({FreqArg{1, 0, 0}, -1});
    return {0, {delta}};
  }

  GOrder raise_order(std::span<const GOrder> lower, const NaturalParams &p, const DriveModel &drive,
                     Reduction mode, int max_order) {
    const int j = static_cast<int>(lower.size());
    if (mode == Reduction::symbolic)
      throw ValidationError("mode", "unreduced xi1 integrals are evaluated by the finite-tau oracle, not here");
    if (j < 1)
      throw ValidationError("lower", "need at least the order-zero operator");
    if (j > max_order)
      throw ValidationError("order", "order " + std::to_string(j) + " exceeds the configured bound " +
                                         std::to_string(max_order));
    for (int i = 0; i < j; ++i)
      if (lower[i].j != i)
        throw ValidationError("lower", "orders must be supplied as 0, 1, ..., j-1");

    GOrder out{j, {}};
    for (int k = 1; k <= j; ++k) {
      const auto expansion = drive.expansion(k);
      for (const auto &h : expansion.harmonics) {
        const double c = boost::rational_cast<double>(h.coeff);
        // F_k = sum pi c_m [L(m w0) + L(-m w0)], with 2 pi c_0 at the origin.
        std::vector<std::pair<int, double>> peaks;
        if (h.m == 0)
          peaks.emplace_back(0, 2.0 * pi * c);
        else {
          peaks.emplace_back(h.m, pi * c);
          peaks.emplace_back(-h.m, pi * c);
        }
        for (const auto &[m, weight] : peaks)
          for (const auto &term : lower[j - k].terms)
            out.terms.push_back(compose(k, m, weight, term, p.signed_gamma0()));
      }
    }
    sort_terms(out.terms);
    return out;
  }

  GOrder base_g(const NaturalParams &p, const DriveModel &drive) {
    const GOrder zero = identity_order();
    return raise_order(std::span<const GOrder>(&zero, 1), p, drive);
  }

  std::vector<GOrder> build_all(const NaturalParams &p, const DriveModel &drive, int n) {
    if (n < 1)
      throw ValidationError("order", "N must be >= 1");
    std::vector<GOrder> chain{identity_order()};
    for (int j = 1; j <= n; ++j)
      chain.push_back(raise_order(chain, p, drive));
    chain.erase(chain.begin());
    return chain;
  }

  Complex evaluate(const GOrder &g, const NaturalParams &p, double omega, double xi) {
    Complex s{};
    for (const auto &t : g.terms)
      s += t.prefactor(p, omega, xi) * t.peak(p)(omega - xi);
    return root_prefactor(p, omega) * xi * s;
  }

  nlohmann::json dump_terms(const GOrder &g) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &t : g.terms)
      rows.push_back({{"path", t.signature()},
                      {"M", t.harmonic},
                      {"W", t.width_index},
                      {"prefactor", t.describe()}});
    return {{"j", g.j}, {"term_count", g.terms.size()}, {"terms", rows}};
  }

} // namespace dce
